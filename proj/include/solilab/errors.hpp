#pragma once

#include <stdexcept>
#include <string>

namespace solilab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ShapeMismatch : public Error {
public:
    using Error::Error;
};

class SingularMatrix : public Error {
public:
    using Error::Error;
};

class SingularSubmatrix : public Error {
public:
    using Error::Error;
};

class SingularConstantTerm : public Error {
public:
    using Error::Error;
};

class SingularCell : public Error {
public:
    using Error::Error;
};

/// A Wronskian at lattice site `site` has no inverse.
class SingularWronskian : public Error {
public:
    SingularWronskian(int site, const std::string& what)
        : Error("singular Wronskian at site " + std::to_string(site) + ": " + what), site_(site) {}
    int site() const noexcept { return site_; }

private:
    int site_;
};

class NonInvertibleSolution : public Error {
public:
    NonInvertibleSolution(int site, const std::string& what)
        : Error("solution not invertible at site " + std::to_string(site) + ": " + what), site_(site) {}
    int site() const noexcept { return site_; }

private:
    int site_;
};

class NoncommutingExponents : public Error {
public:
    using Error::Error;
};

class InsufficientOrder : public Error {
public:
    using Error::Error;
};

class MissingVariable : public Error {
public:
    using Error::Error;
};

/// Frobenius-cell shape violated where the construction guarantees it.
class ShapeViolation : public Error {
public:
    using Error::Error;
};

class HypothesisViolated : public Error {
public:
    HypothesisViolated(std::string which, const std::string& what)
        : Error("hypothesis violated (" + which + "): " + what), which_(std::move(which)) {}
    const std::string& which() const noexcept { return which_; }

private:
    std::string which_;
};

class WindowTooSmall : public Error {
public:
    using Error::Error;
};

class BNotInvolutive : public Error {
public:
    using Error::Error;
};

class ClosedFormMismatch : public Error {
public:
    using Error::Error;
};

class EvaluationSingularity : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class InvalidParameters : public Error {
public:
    using Error::Error;
};

} // namespace solilab
