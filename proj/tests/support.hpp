#pragma once

#include <initializer_list>
#include <vector>

#include "solilab/matrix.hpp"
#include "solilab/sampling.hpp"
#include "solilab/series.hpp"
#include "solilab/solitons.hpp"

namespace solilab::testing {

using R = Rational;

template <class F = Rational>
Matrix<F> mat(std::initializer_list<std::initializer_list<F>> rows) {
    const std::size_t n = rows.size();
    Matrix<F> m(n, zero_like(F{}));
    std::size_t i = 0;
    for (const auto& row : rows) {
        std::size_t j = 0;
        for (const auto& x : row) m(i, j++) = x;
        ++i;
    }
    return m;
}

/// Random series with coefficients drawn from `make`.
template <class A, class Make>
Series<A> random_series(int arity, int cap, const A& proto, Make&& make) {
    Series<A> s(arity, cap, proto);
    for (std::size_t k = 0; k < s.size(); ++k) s[k] = make();
    return s;
}

/// Adds 1 to one scalar entry of one coefficient of total degree <= max_degree.
template <Field F>
Func<F> mutate(const Func<F>& s, Sampler& rng, int max_degree) {
    Func<F> out = s;
    const std::size_t terms = Func<F>::term_count(s.arity(), max_degree + 1);
    const std::size_t k = static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(terms) - 1));
    const std::size_t r = out[k].dim();
    const auto i = static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(r) - 1));
    const auto j = static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(r) - 1));
    out[k](i, j) += one_like(F{});
    return out;
}

} // namespace solilab::testing
