#pragma once

#include <gmpxx.h>

#include <cmath>
#include <limits>
#include <complex>
#include <string>
#include <string_view>
#include <type_traits>

#include "errors.hpp"

namespace solilab {

/// Exact rational number, always in lowest terms with positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
    Rational(long n, long d) {
        if (d == 0) throw Error("rational with zero denominator");
        v_ = mpq_class(n, d);
        v_.canonicalize();
    }
    explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

    const mpq_class& raw() const noexcept { return v_; }

    bool is_zero() const noexcept { return sgn(v_) == 0; }
    int sign() const noexcept { return sgn(v_); }
    double to_double() const { return v_.get_d(); }

    Rational inverse() const {
        if (is_zero()) throw SingularMatrix("division by rational zero");
        return Rational(mpq_class(1) / v_);
    }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw SingularMatrix("division by rational zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }

    /// "p" or "p/q".
    std::string str() const { return v_.get_str(); }
    static Rational parse(std::string_view text);

private:
    mpq_class v_{0};
};

Rational abs(const Rational& x);

/// a + b·i with exact rational parts.
class Gaussian {
public:
    Gaussian() = default;
    Gaussian(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
    Gaussian(Rational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
    Gaussian(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static Gaussian i() { return {Rational(0), Rational(1)}; }

    const Rational& re() const noexcept { return re_; }
    const Rational& im() const noexcept { return im_; }

    bool is_zero() const noexcept { return re_.is_zero() && im_.is_zero(); }
    Gaussian conj() const { return {re_, -im_}; }
    Rational norm() const { return re_ * re_ + im_ * im_; }
    std::complex<double> to_complex() const { return {re_.to_double(), im_.to_double()}; }

    Gaussian inverse() const {
        if (is_zero()) throw SingularMatrix("division by Gaussian zero");
        Rational n = norm();
        return {re_ / n, -im_ / n};
    }

    Gaussian& operator+=(const Gaussian& o) { re_ += o.re_; im_ += o.im_; return *this; }
    Gaussian& operator-=(const Gaussian& o) { re_ -= o.re_; im_ -= o.im_; return *this; }
    Gaussian& operator*=(const Gaussian& o) {
        Rational r = re_ * o.re_ - im_ * o.im_;
        im_ = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        return *this;
    }
    Gaussian& operator/=(const Gaussian& o) { return *this *= o.inverse(); }

    friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
    friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
    friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
    friend Gaussian operator/(Gaussian a, const Gaussian& b) { return a /= b; }
    friend Gaussian operator-(const Gaussian& a) { return {-a.re_, -a.im_}; }
    friend bool operator==(const Gaussian& a, const Gaussian& b) { return a.re_ == b.re_ && a.im_ == b.im_; }

    /// "a", "b*i", "a+b*i" with a, b in rational notation.
    std::string str() const;
    static Gaussian parse(std::string_view text);

private:
    Rational re_;
    Rational im_;
};

using Complex = std::complex<double>;

std::string format_complex(const Complex& z);
Complex parse_complex(std::string_view text);

/// Per-field operations the generic algebra layer relies on.
template <class F>
struct field_traits;

template <>
struct field_traits<Rational> {
    static constexpr bool exact = true;
    static constexpr const char* name = "rational";
    static double magnitude(const Rational& x) { return std::fabs(x.to_double()); }
    static Rational from_rational(const Rational& x) { return x; }
    static Rational inverse(const Rational& x) { return x.inverse(); }
    static Rational conj(const Rational& x) { return x; }
    static Complex to_complex(const Rational& x) { return {x.to_double(), 0.0}; }
    static std::string format(const Rational& x) { return x.str(); }
    static Rational parse(std::string_view s) { return Rational::parse(s); }
};

template <>
struct field_traits<Gaussian> {
    static constexpr bool exact = true;
    static constexpr const char* name = "gaussian-rational";
    static double magnitude(const Gaussian& x) { return std::abs(x.to_complex()); }
    static Gaussian from_rational(const Rational& x) { return Gaussian(x); }
    static Gaussian inverse(const Gaussian& x) { return x.inverse(); }
    static Gaussian conj(const Gaussian& x) { return x.conj(); }
    static Complex to_complex(const Gaussian& x) { return x.to_complex(); }
    static std::string format(const Gaussian& x) { return x.str(); }
    static Gaussian parse(std::string_view s) { return Gaussian::parse(s); }
};

/// Complex doubles are for numeric diagnostics only.
template <>
struct field_traits<Complex> {
    static constexpr bool exact = false;
    static constexpr const char* name = "complex-float";
    static constexpr double relative_tolerance = 1e-10;
    static double magnitude(const Complex& x) { return std::abs(x); }
    static Complex from_rational(const Rational& x) { return {x.to_double(), 0.0}; }
    static Complex inverse(const Complex& x) {
        if (x == Complex(0.0, 0.0)) throw SingularMatrix("division by complex zero");
        return 1.0 / x;
    }
    static Complex conj(const Complex& x) { return std::conj(x); }
    static Complex to_complex(const Complex& x) { return x; }
    static std::string format(const Complex& x) { return format_complex(x); }
    static Complex parse(std::string_view s) { return parse_complex(s); }
};

template <class T>
concept Field = requires { field_traits<T>::exact; };

// Scalar-level algebra protocol; the matrix, series and site-family layers
// overload the same names.
template <Field F>
F zero_like(const F&) { return F(field_traits<F>::from_rational(Rational(0))); }
template <Field F>
F one_like(const F&) { return F(field_traits<F>::from_rational(Rational(1))); }
template <Field F>
bool is_zero(const F& x) { return x == zero_like(x); }
template <Field F>
F inverse(const F& x) { return field_traits<F>::inverse(x); }
template <Field F>
F conj(const F& x) { return field_traits<F>::conj(x); }
template <Field F>
double magnitude(const F& x) { return field_traits<F>::magnitude(x); }
template <Field F>
F scale(const F& x, const F& s) { return x * s; }
template <Field F>
constexpr int valid_order(const F&) { return std::numeric_limits<int>::max(); }

} // namespace solilab
