#pragma once

#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "matrix.hpp"
#include "series.hpp"

namespace solilab {

/// Quasideterminant |X|_ij (0-based i, j):
///   x_ij - r_i(X)^(j) (X^ij)^{-1} c_j(X)^(i).
/// Throws SingularSubmatrix when X^ij has no inverse.
template <class A>
A quasideterminant(const Matrix<A>& x, std::size_t i, std::size_t j) {
    const std::size_t n = x.dim();
    if (i >= n || j >= n) throw ShapeMismatch("quasideterminant index out of range");
    if (n == 1) return x(0, 0);
    Matrix<A> sub_inv;
    try {
        sub_inv = inverse(x.submatrix(i, j));
    } catch (const Error& e) {
        throw SingularSubmatrix("submatrix (" + std::to_string(i) + "," + std::to_string(j) +
                                ") not invertible: " + e.what());
    }
    std::vector<A> row, col;
    for (std::size_t q = 0; q < n; ++q)
        if (q != j) row.push_back(x(i, q));
    for (std::size_t p = 0; p < n; ++p)
        if (p != i) col.push_back(x(p, j));
    A correction = zero_like(x.proto());
    for (std::size_t p = 0; p + 1 < n; ++p) {
        A left = zero_like(x.proto());
        for (std::size_t q = 0; q + 1 < n; ++q) left += row[q] * sub_inv(q, p);
        correction += left * col[p];
    }
    return x(i, j) - correction;
}

/// Wronski matrix W (row k holds d^k f_j) and its derivative dW.
template <class A>
struct WronskiPair {
    Matrix<A> W;
    Matrix<A> dW;
    /// derivatives[k][j] = d^k f_j for k = 0..N.
    std::vector<std::vector<A>> derivatives;
    Derivation<scalar_t<A>> derivation;

    std::size_t order() const noexcept { return W.dim(); }
};

template <class A>
WronskiPair<A> wronski(std::span<const A> fs, const Derivation<scalar_t<A>>& d) {
    if (fs.empty()) throw ShapeMismatch("Wronskian of no functions");
    const std::size_t n = fs.size();
    WronskiPair<A> wp;
    wp.derivation = d;
    wp.derivatives.emplace_back(fs.begin(), fs.end());
    for (std::size_t k = 1; k <= n; ++k) {
        std::vector<A> next;
        next.reserve(n);
        for (const A& f : wp.derivatives.back()) next.push_back(derive(f, d));
        wp.derivatives.push_back(std::move(next));
    }
    wp.W = Matrix<A>(n, fs.front());
    wp.dW = Matrix<A>(n, fs.front());
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < n; ++j) {
            wp.W(k, j) = wp.derivatives[k][j];
            wp.dW(k, j) = wp.derivatives[k + 1][j];
        }
    }
    return wp;
}

template <class A>
WronskiPair<A> wronski(const std::vector<A>& fs, const Derivation<scalar_t<A>>& d) {
    return wronski(std::span<const A>(fs), d);
}

/// Square matrix whose first N-1 rows are the shifted identity
/// (entry (p, q) = delta_{p+1, q}); only the bottom row is free.
template <class A>
class FrobeniusCell {
public:
    FrobeniusCell() = default;

    /// Throws ShapeViolation unless the top rows have the shifted-identity form.
    static FrobeniusCell from_matrix(Matrix<A> m) {
        const std::size_t n = m.dim();
        const A zero = zero_like(m.proto());
        const A one = one_like(m.proto());
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = 0; q < n; ++q) {
                const A& target = q == p + 1 ? one : zero;
                if (!negligible(m(p, q) - target, magnitude(m)))
                    throw ShapeViolation("entry (" + std::to_string(p) + "," + std::to_string(q) +
                                         ") breaks the Frobenius-cell shape");
            }
        }
        // Pin the structural entries to exact 0/1.
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = 0; q < n; ++q) m(p, q) = q == p + 1 ? one : zero;
        FrobeniusCell c;
        c.m_ = std::move(m);
        return c;
    }

    static FrobeniusCell from_bottom_row(const std::vector<A>& bottom) {
        if (bottom.empty()) throw ShapeMismatch("empty Frobenius cell");
        const std::size_t n = bottom.size();
        Matrix<A> m(n, zero_like(bottom.front()));
        for (std::size_t p = 0; p + 1 < n; ++p) m(p, p + 1) = one_like(bottom.front());
        for (std::size_t q = 0; q < n; ++q) m(n - 1, q) = bottom[q];
        FrobeniusCell c;
        c.m_ = std::move(m);
        return c;
    }

    const Matrix<A>& matrix() const noexcept { return m_; }
    std::size_t dim() const noexcept { return m_.dim(); }
    const A& bottom(std::size_t q) const { return m_(m_.dim() - 1, q); }

private:
    Matrix<A> m_;
};

/// How one reading of the quasideterminant formula for the bottom row fared.
struct ConventionCheck {
    std::string name;
    std::string formula;
    std::size_t entries = 0;
    std::size_t defined = 0;
    std::size_t matched = 0;

    bool holds() const noexcept { return entries > 0 && matched == entries; }
};

/// Accumulate counts of same-named checks (e.g. across lattice sites).
inline void merge_checks(std::vector<ConventionCheck>& into, const std::vector<ConventionCheck>& add) {
    for (const auto& c : add) {
        auto it = std::find_if(into.begin(), into.end(), [&](const ConventionCheck& x) { return x.name == c.name; });
        if (it == into.end()) {
            into.push_back(c);
            continue;
        }
        it->entries += c.entries;
        it->defined += c.defined;
        it->matched += c.matched;
    }
}

template <class A>
struct GammaResult {
    FrobeniusCell<A> cell;
    std::vector<ConventionCheck> conventions;
};

namespace detail {

/// The N x N matrix of derivative rows 0..N with row `skipped` omitted.
template <class A>
Matrix<A> wronski_minor(const WronskiPair<A>& wp, std::size_t skipped) {
    const std::size_t n = wp.order();
    Matrix<A> m(n, wp.W.proto());
    for (std::size_t k = 0, r = 0; k <= n; ++k) {
        if (k == skipped) continue;
        for (std::size_t j = 0; j < n; ++j) m(r, j) = wp.derivatives[k][j];
        ++r;
    }
    return m;
}

template <class A>
ConventionCheck check_bottom_row_reading(const WronskiPair<A>& wp, const FrobeniusCell<A>& cell, std::string name,
                                         std::string formula, int skip_offset) {
    ConventionCheck c{std::move(name), std::move(formula)};
    const std::size_t n = wp.order();
    for (std::size_t q = 0; q < n; ++q) {
        ++c.entries;
        const long skipped = static_cast<long>(q) + skip_offset;
        if (skipped < 0 || skipped > static_cast<long>(n)) continue;
        try {
            A num = quasideterminant(wronski_minor(wp, static_cast<std::size_t>(skipped)), n - 1, n - 1);
            A den = quasideterminant(wp.W, q, n - 1);
            A eta = num * inverse(den);
            ++c.defined;
            if (approx_equal(eta, cell.bottom(q))) ++c.matched;
        } catch (const Error&) {
        }
    }
    return c;
}

} // namespace detail

/// Cross-check the bottom row of gamma against the quasideterminant
/// formula eta_Nq = |W^q|_NN |W|^{-1}_qN under both readings of which
/// derivative row W^q omits.
template <class A>
std::vector<ConventionCheck> quasideterminant_readings(const WronskiPair<A>& wp, const FrobeniusCell<A>& cell) {
    return {
        detail::check_bottom_row_reading(wp, cell, "omit-order-q-minus-1",
                                         "W^q omits derivative order q-1 (1-based row q of the extended Wronskian)", 0),
        detail::check_bottom_row_reading(wp, cell, "omit-order-q",
                                         "W^q omits derivative order q (0-based row index m = q)", 1),
    };
}

/// gamma = dW W^{-1}: a Frobenius cell whose bottom row solves
/// f_q^(N) = eta_N1 f_q^(0) + ... + eta_NN f_q^(N-1).
template <class A>
GammaResult<A> frobenius_gamma(const WronskiPair<A>& wp, bool cross_check = true, int site = 0) {
    Matrix<A> w_inv;
    try {
        w_inv = inverse(wp.W);
    } catch (const Error& e) {
        throw SingularWronskian(site, e.what());
    }
    GammaResult<A> out;
    out.cell = FrobeniusCell<A>::from_matrix(wp.dW * w_inv);
    if (cross_check) out.conventions = quasideterminant_readings(wp, out.cell);
    return out;
}

/// Residuals f_q^(N) - sum_m eta_{N,m} f_q^(m), one per column q.
template <class A>
std::vector<A> cramer_residuals(const WronskiPair<A>& wp, const FrobeniusCell<A>& cell) {
    const std::size_t n = wp.order();
    std::vector<A> out;
    for (std::size_t q = 0; q < n; ++q) {
        A acc = wp.derivatives[n][q];
        for (std::size_t m = 0; m < n; ++m) acc -= cell.bottom(m) * wp.derivatives[m][q];
        out.push_back(std::move(acc));
    }
    return out;
}

template <class A>
struct FrobeniusQuotient {
    /// Direct quotient K L^{-1}.
    Matrix<A> Y;
    /// Entry formula in terms of the bottom rows of K and L.
    Matrix<A> closed_form;
    bool closed_form_matches = false;
};

/// Y with K = Y L for Frobenius cells K, L. Requires the bottom-left entry
/// of L to be invertible (SingularCell otherwise).
template <class A>
FrobeniusQuotient<A> frobenius_quotient(const FrobeniusCell<A>& k, const FrobeniusCell<A>& l) {
    if (k.dim() != l.dim()) throw ShapeMismatch("Frobenius cells of different size");
    const std::size_t n = k.dim();
    A nu_inv;
    try {
        nu_inv = inverse(l.bottom(0));
    } catch (const Error& e) {
        throw SingularCell(std::string("bottom-left entry not invertible: ") + e.what());
    }
    FrobeniusQuotient<A> out;
    out.Y = k.matrix() * inverse(l.matrix());

    const A ratio = k.bottom(0) * nu_inv;
    Matrix<A> cf = Matrix<A>::identity(n, k.matrix().proto());
    for (std::size_t q = 0; q + 1 < n; ++q) cf(n - 1, q) = k.bottom(q + 1) - ratio * l.bottom(q + 1);
    cf(n - 1, n - 1) = ratio;
    out.closed_form = std::move(cf);
    out.closed_form_matches = approx_equal(out.Y, out.closed_form);
    return out;
}

} // namespace solilab
