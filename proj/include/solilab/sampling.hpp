#pragma once

#include <cstdint>
#include <random>

#include "matrix.hpp"

namespace solilab {

/// Deterministic source of small random exact parameters.
///
/// Rationals are nonzero with numerator and denominator bounded by `bound`;
/// Gaussian rationals have both parts drawn that way.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed, int bound = 7) : rng_(seed), bound_(bound) {}

    int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    Rational small_rational() {
        int num = 0;
        while (num == 0) num = uniform_int(-bound_, bound_);
        return Rational(num, uniform_int(1, bound_));
    }

    template <Field F>
    F scalar() {
        if constexpr (std::is_same_v<F, Rational>) {
            return small_rational();
        } else if constexpr (std::is_same_v<F, Gaussian>) {
            return Gaussian(small_rational(), small_rational());
        } else {
            Rational re = small_rational();
            Rational im = small_rational();
            return Complex(re.to_double(), im.to_double());
        }
    }

    template <Field F>
    Matrix<F> matrix(std::size_t dim) {
        Matrix<F> m(dim, zero_like(F{}));
        for (auto& e : m.entries()) e = scalar<F>();
        return m;
    }

    template <Field F>
    Matrix<F> invertible_matrix(std::size_t dim) {
        for (;;) {
            Matrix<F> m = matrix<F>(dim);
            if (invertible(m)) return m;
        }
    }

    std::mt19937_64& engine() noexcept { return rng_; }

private:
    std::mt19937_64 rng_;
    int bound_;
};

} // namespace solilab
