#pragma once

// JSON encoding of scalars, elements of S and series. Exact scalars are
// strings ("3/4", "1/2-2/3*i") so that nothing is lost in transit.

#include <string>
#include <vector>

#include "json.hpp"
#include "matrix.hpp"
#include "series.hpp"

namespace solilab {

using json = nlohmann::ordered_json;

template <Field F>
json encode(const F& x) {
    return field_traits<F>::format(x);
}

template <class A>
json encode(const Matrix<A>& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(encode(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

template <class A>
struct decoder;

template <Field F>
struct decoder<F> {
    static F apply(const json& j) {
        if (j.is_string()) return field_traits<F>::parse(j.get<std::string>());
        if (j.is_number_integer()) return field_traits<F>::from_rational(Rational(j.get<long>()));
        if (j.is_number_float()) {
            if constexpr (field_traits<F>::exact)
                throw ParseError("floating-point literal " + j.dump() + " in exact " + field_traits<F>::name +
                                 " mode; write it as a \"p/q\" string");
            else
                return F(j.get<double>());
        }
        throw ParseError("expected a scalar, got " + j.dump());
    }
};

template <class A>
struct decoder<Matrix<A>> {
    static Matrix<A> apply(const json& j) {
        if (!j.is_array() || j.empty()) throw ParseError("expected a non-empty square array of rows");
        const std::size_t n = j.size();
        std::vector<A> entries;
        for (const auto& row : j) {
            if (!row.is_array() || row.size() != n) throw ParseError("matrix rows must all have length " + std::to_string(n));
            for (const auto& x : row) entries.push_back(decoder<A>::apply(x));
        }
        Matrix<A> m(n, entries.front());
        for (std::size_t k = 0; k < entries.size(); ++k) m(k / n, k % n) = entries[k];
        return m;
    }
};

template <class A>
A decode(const json& j) {
    return decoder<A>::apply(j);
}

template <class A>
std::vector<A> decode_list(const json& j, const std::string& what) {
    if (!j.is_array()) throw ParseError(what + " must be an array");
    std::vector<A> out;
    for (const auto& x : j) out.push_back(decode<A>(x));
    return out;
}

/// Degree-lexicographic list of {exponents, coefficient} records for total
/// degrees up to `max_degree` (clipped to the valid part of the series).
template <class A>
json encode_series(const Series<A>& s, int max_degree) {
    json terms = json::array();
    const int top = std::min(max_degree, s.valid_order() - 1);
    for (std::size_t k = 0; k < s.size(); ++k) {
        const Monomial e = s.monomial(k);
        if (e.degree() > top) break;
        json exps = s.arity() == 1 ? json::array({e.m}) : json::array({e.m, e.n});
        terms.push_back({{"exponents", std::move(exps)}, {"coefficient", encode(s[k])}});
    }
    return terms;
}

} // namespace solilab
