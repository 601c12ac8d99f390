#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "matrix.hpp"

namespace solilab {

enum class Variable { u, v, t };

inline const char* variable_name(Variable x) {
    switch (x) {
        case Variable::u: return "u";
        case Variable::v: return "v";
        case Variable::t: return "t";
    }
    return "?";
}

/// A scalar multiple of a coordinate partial derivative: factor * d/dvar.
/// All such derivations commute with one another.
template <Field F>
struct Derivation {
    Variable var = Variable::t;
    F factor = one_like(F{});

    static Derivation d_u() { return {Variable::u, one_like(F{})}; }
    static Derivation d_v() { return {Variable::v, one_like(F{})}; }
    static Derivation d_t() { return {Variable::t, one_like(F{})}; }
    Derivation scaled(const F& s) const { return {var, factor * s}; }
};

/// Exponent (m, n) of u^m v^n, or (m, 0) of t^m for univariate series.
struct Monomial {
    int m = 0;
    int n = 0;
    int degree() const noexcept { return m + n; }
    friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Truncated formal power series in t (arity 1) or commuting u, v (arity 2)
/// with coefficients in an arbitrary algebra A.
///
/// Coefficients are stored densely by total degree below `cap`. Only those of
/// total degree below `valid_order` are meaningful; the rest are kept at zero.
/// Every derivation costs one order.
template <class A>
class Series {
public:
    using value_type = A;

    Series() = default;
    Series(int arity, int cap, const A& zero) : arity_(arity), cap_(cap), valid_(cap) {
        if (arity != 1 && arity != 2) throw ShapeMismatch("series arity must be 1 or 2");
        if (cap < 1) throw ShapeMismatch("series cap must be positive");
        c_.assign(term_count(arity, cap), zero_like(zero));
    }

    static Series constant(int arity, int cap, const A& value) {
        Series s(arity, cap, value);
        s.c_[0] = value;
        return s;
    }

    static std::size_t term_count(int arity, int cap) {
        return arity == 1 ? static_cast<std::size_t>(cap) : static_cast<std::size_t>(cap) * (cap + 1) / 2;
    }
    static std::size_t index(int arity, int m, int n) {
        if (arity == 1) return static_cast<std::size_t>(m);
        const int d = m + n;
        return static_cast<std::size_t>(d) * (d + 1) / 2 + n;
    }
    static Monomial monomial(int arity, std::size_t idx) {
        if (arity == 1) return {static_cast<int>(idx), 0};
        int d = 0;
        while (static_cast<std::size_t>(d + 1) * (d + 2) / 2 <= idx) ++d;
        const int n = static_cast<int>(idx - static_cast<std::size_t>(d) * (d + 1) / 2);
        return {d - n, n};
    }

    int arity() const noexcept { return arity_; }
    int cap() const noexcept { return cap_; }
    int valid_order() const noexcept { return valid_; }
    bool empty() const noexcept { return c_.empty(); }

    /// Number of stored terms whose total degree is below the valid order.
    std::size_t valid_terms() const { return term_count(arity_, valid_); }
    std::size_t size() const noexcept { return c_.size(); }

    const A& proto() const { return c_.front(); }
    const A& operator[](std::size_t idx) const { return c_[idx]; }
    A& operator[](std::size_t idx) { return c_[idx]; }
    Monomial monomial(std::size_t idx) const { return monomial(arity_, idx); }

    const A& coeff(int m, int n = 0) const { return c_.at(index(arity_, m, n)); }
    A& coeff(int m, int n = 0) { return c_.at(index(arity_, m, n)); }

    /// Lower the valid order; coefficients above it are cleared.
    void restrict_valid_order(int v) {
        v = std::max(0, v);
        if (v >= valid_) return;
        for (std::size_t k = term_count(arity_, v); k < c_.size(); ++k) c_[k] = zero_like(c_[k]);
        valid_ = v;
    }

    /// Explicit re-truncation to a smaller storage cap.
    Series retruncated(int cap) const {
        if (cap > cap_) throw ShapeMismatch("re-truncation cannot enlarge the cap");
        Series s(arity_, cap, proto());
        for (std::size_t k = 0; k < s.c_.size(); ++k) s.c_[k] = c_[k];
        s.valid_ = std::min(valid_, cap);
        return s;
    }

    template <class Fn>
    auto map(Fn&& fn) const -> Series<std::decay_t<decltype(fn(std::declval<const A&>()))>> {
        using B = std::decay_t<decltype(fn(std::declval<const A&>()))>;
        Series<B> out(arity_, cap_, fn(proto()));
        for (std::size_t k = 0; k < c_.size(); ++k) out[k] = fn(c_[k]);
        out.restrict_valid_order(valid_);
        return out;
    }

    void require_compatible(const Series& o) const {
        if (arity_ != o.arity_) throw ShapeMismatch("series arity mismatch");
    }

private:
    int arity_ = 1;
    int cap_ = 0;
    int valid_ = 0;
    std::vector<A> c_;
};

namespace detail {

template <class A>
Series<A> elementwise(const Series<A>& a, const Series<A>& b, bool subtract) {
    a.require_compatible(b);
    const int cap = std::min(a.cap(), b.cap());
    const int valid = std::min({a.valid_order(), b.valid_order(), cap});
    Series<A> out(a.arity(), cap, a.proto());
    const std::size_t terms = Series<A>::term_count(a.arity(), valid);
    for (std::size_t k = 0; k < terms; ++k) out[k] = subtract ? a[k] - b[k] : a[k] + b[k];
    out.restrict_valid_order(valid);
    return out;
}

} // namespace detail

template <class A>
Series<A> operator+(const Series<A>& a, const Series<A>& b) { return detail::elementwise(a, b, false); }
template <class A>
Series<A> operator-(const Series<A>& a, const Series<A>& b) { return detail::elementwise(a, b, true); }
template <class A>
Series<A> operator-(const Series<A>& a) {
    return a.map([](const A& x) { return -x; });
}
template <class A>
Series<A>& operator+=(Series<A>& a, const Series<A>& b) { return a = a + b; }
template <class A>
Series<A>& operator-=(Series<A>& a, const Series<A>& b) { return a = a - b; }

/// Cauchy product; coefficient order is preserved (a's coefficient on the left).
template <class A>
Series<A> operator*(const Series<A>& a, const Series<A>& b) {
    a.require_compatible(b);
    const int arity = a.arity();
    const int cap = std::min(a.cap(), b.cap());
    const int valid = std::min({a.valid_order(), b.valid_order(), cap});
    Series<A> out(arity, cap, a.proto());
    if (arity == 1) {
        for (int i = 0; i < valid; ++i) {
            const A& ai = a[i];
            if (is_zero(ai)) continue;
            for (int j = 0; i + j < valid; ++j) out[i + j] += ai * b[j];
        }
    } else {
        for (int d1 = 0; d1 < valid; ++d1) {
            for (int n1 = 0; n1 <= d1; ++n1) {
                const A& x = a[Series<A>::index(2, d1 - n1, n1)];
                if (is_zero(x)) continue;
                for (int d2 = 0; d1 + d2 < valid; ++d2) {
                    for (int n2 = 0; n2 <= d2; ++n2) {
                        out[Series<A>::index(2, d1 - n1 + d2 - n2, n1 + n2)] += x * b[Series<A>::index(2, d2 - n2, n2)];
                    }
                }
            }
        }
    }
    out.restrict_valid_order(valid);
    return out;
}

template <class A>
Series<A>& operator*=(Series<A>& a, const Series<A>& b) { return a = a * b; }

template <class A>
Series<A> operator*(const A& x, const Series<A>& s) {
    return s.map([&](const A& c) { return x * c; });
}
template <class A>
Series<A> operator*(const Series<A>& s, const A& x) {
    return s.map([&](const A& c) { return c * x; });
}

/// Equality of every coefficient below the common valid order.
template <class A>
bool operator==(const Series<A>& a, const Series<A>& b) {
    return a.arity() == b.arity() && is_zero(a - b);
}

template <class A>
Series<A> zero_like(const Series<A>& s) { return Series<A>(s.arity(), s.cap(), s.proto()); }

template <class A>
Series<A> one_like(const Series<A>& s) { return Series<A>::constant(s.arity(), s.cap(), one_like(s.proto())); }

template <class A>
bool is_zero(const Series<A>& s) {
    const std::size_t terms = s.valid_terms();
    for (std::size_t k = 0; k < terms; ++k)
        if (!is_zero(s[k])) return false;
    return true;
}

template <class A>
Series<A> conj(const Series<A>& s) {
    return s.map([](const A& c) { return conj(c); });
}

template <class A>
double magnitude(const Series<A>& s) {
    double best = 0.0;
    const std::size_t terms = s.valid_terms();
    for (std::size_t k = 0; k < terms; ++k) best = std::max(best, magnitude(s[k]));
    return best;
}

template <class A>
Series<A> scale(const Series<A>& s, const scalar_t<A>& x) {
    return s.map([&](const A& c) { return scale(c, x); });
}

template <class A>
int valid_order(const Series<A>& s) { return s.valid_order(); }

/// Formal partial derivative; the valid order drops by one.
template <class A, class F>
Series<A> derive(const Series<A>& s, const Derivation<F>& d) {
    static_assert(std::is_same_v<F, scalar_t<A>>, "derivation factor must live in the coefficient field");
    const bool univariate = s.arity() == 1;
    if (univariate != (d.var == Variable::t))
        throw MissingVariable(std::string("derivation d/d") + variable_name(d.var) + " on a series of arity " +
                              std::to_string(s.arity()));
    if (s.valid_order() < 1) throw InsufficientOrder("derivative of a series with no valid terms");
    Series<A> out(s.arity(), s.cap(), s.proto());
    const int valid = s.valid_order() - 1;
    const std::size_t terms = Series<A>::term_count(s.arity(), valid);
    for (std::size_t k = 0; k < terms; ++k) {
        Monomial e = Series<A>::monomial(s.arity(), k);
        int mult = 0;
        std::size_t src = 0;
        if (d.var == Variable::v) {
            mult = e.n + 1;
            src = Series<A>::index(2, e.m, e.n + 1);
        } else {
            mult = e.m + 1;
            src = Series<A>::index(s.arity(), e.m + 1, e.n);
        }
        const A& c = s[src];
        if (is_zero(c)) continue;
        out[k] = scale(c, field_traits<F>::from_rational(Rational(mult)) * d.factor);
    }
    out.restrict_valid_order(valid);
    return out;
}

template <class A, class F>
Matrix<A> derive(const Matrix<A>& m, const Derivation<F>& d) {
    return m.map([&](const A& e) { return derive(e, d); });
}

template <class A, class F>
auto derive_n(const A& x, const Derivation<F>& d, int times) {
    A out = x;
    for (int k = 0; k < times; ++k) out = derive(out, d);
    return out;
}

namespace detail {

template <class A>
void require_commuting(const A& x, const A& y) {
    if (!approx_equal(x * y, y * x))
        throw NoncommutingExponents("exponents of a linear exponential must commute");
}

template <class A>
std::vector<A> powers(const A& x, int count) {
    std::vector<A> p;
    p.reserve(count);
    p.push_back(one_like(x));
    for (int k = 1; k < count; ++k) p.push_back(p.back() * x);
    return p;
}

template <Field F>
F inverse_factorial(int k) {
    Rational f(1);
    for (int j = 2; j <= k; ++j) f *= Rational(j);
    return field_traits<F>::from_rational(f.inverse());
}

} // namespace detail

/// exp(cu*u + cv*v) truncated below total degree `cap`; cu and cv must commute.
template <class A>
Series<A> exp_linear(const A& cu, const A& cv, int cap) {
    using F = scalar_t<A>;
    detail::require_commuting(cu, cv);
    auto pu = detail::powers(cu, cap);
    auto pv = detail::powers(cv, cap);
    Series<A> out(2, cap, cu);
    for (std::size_t k = 0; k < out.size(); ++k) {
        Monomial e = out.monomial(k);
        out[k] = scale(pu[e.m] * pv[e.n], detail::inverse_factorial<F>(e.m) * detail::inverse_factorial<F>(e.n));
    }
    return out;
}

/// exp(c*t) truncated below degree `cap`.
template <class A>
Series<A> exp_linear(const A& c, int cap) {
    using F = scalar_t<A>;
    auto p = detail::powers(c, cap);
    Series<A> out(1, cap, c);
    for (int k = 0; k < cap; ++k) out[k] = scale(p[k], detail::inverse_factorial<F>(k));
    return out;
}

/// Two-sided inverse: s = c(1 + x) with x of positive valuation, solved
/// degree by degree from the right-inverse recurrence.
template <class A>
Series<A> inverse(const Series<A>& s) {
    A c0_inv;
    try {
        c0_inv = inverse(s[0]);
    } catch (const Error& e) {
        throw SingularConstantTerm(std::string("constant term not invertible: ") + e.what());
    }
    const int arity = s.arity();
    const int valid = s.valid_order();
    Series<A> b(arity, s.cap(), s.proto());
    if (valid == 0) {
        b.restrict_valid_order(0);
        return b;
    }
    b[0] = c0_inv;
    const std::size_t terms = s.valid_terms();
    for (std::size_t k = 1; k < terms; ++k) {
        Monomial beta = s.monomial(k);
        A acc = zero_like(s.proto());
        for (int m = 0; m <= beta.m; ++m) {
            for (int n = 0; n <= beta.n; ++n) {
                if (m == 0 && n == 0) continue;
                const A& sa = s[Series<A>::index(arity, m, n)];
                if (is_zero(sa)) continue;
                acc += sa * b[Series<A>::index(arity, beta.m - m, beta.n - n)];
            }
        }
        b[k] = -(c0_inv * acc);
    }
    b.restrict_valid_order(valid);
    return b;
}

/// Matrix over series -> series with matrix coefficients.
template <class A>
Series<Matrix<A>> to_series_form(const Matrix<Series<A>>& m) {
    const Series<A>& p = m.proto();
    int cap = p.cap();
    int valid = p.valid_order();
    for (const auto& e : m.entries()) {
        if (e.arity() != p.arity()) throw ShapeMismatch("mixed series arities in a matrix");
        cap = std::min(cap, e.cap());
        valid = std::min(valid, e.valid_order());
    }
    Series<Matrix<A>> out(p.arity(), cap, Matrix<A>(m.dim(), p.proto()));
    for (std::size_t k = 0; k < out.size(); ++k) {
        Matrix<A> c(m.dim(), p.proto());
        for (std::size_t i = 0; i < m.dim(); ++i)
            for (std::size_t j = 0; j < m.dim(); ++j) c(i, j) = m(i, j)[k];
        out[k] = std::move(c);
    }
    out.restrict_valid_order(valid);
    return out;
}

/// Series with matrix coefficients -> matrix over series.
template <class A>
Matrix<Series<A>> to_matrix_form(const Series<Matrix<A>>& s) {
    const std::size_t n = s.proto().dim();
    Matrix<Series<A>> out(n, Series<A>(s.arity(), s.cap(), s.proto().proto()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = entry(s, i, j);
    return out;
}

/// Series of the (i, j) entries of a matrix-coefficient series.
template <class A>
Series<A> entry(const Series<Matrix<A>>& s, std::size_t i, std::size_t j) {
    Series<A> out(s.arity(), s.cap(), s.proto().proto());
    for (std::size_t k = 0; k < s.size(); ++k) out[k] = s[k](i, j);
    out.restrict_valid_order(s.valid_order());
    return out;
}

/// Numeric value of a scalar series at (u, v) (or t = u), summing the valid terms.
template <Field F>
Complex evaluate(const Series<F>& s, Complex u, Complex v = {}) {
    Complex total = 0.0;
    const std::size_t terms = s.valid_terms();
    for (std::size_t k = 0; k < terms; ++k) {
        Monomial e = s.monomial(k);
        total += field_traits<F>::to_complex(s[k]) * std::pow(u, e.m) * std::pow(v, e.n);
    }
    return total;
}

} // namespace solilab
