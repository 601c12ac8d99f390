#pragma once

// Residual checkers: substitute candidate solutions into each system and
// report, per site and equation, whether every coefficient below the valid
// order vanishes.

#include <optional>
#include <string>
#include <vector>

#include "solitons.hpp"

namespace solilab {

struct ResidualEntry {
    std::string label;
    std::optional<int> site;
    std::string block;
    /// Every checked coefficient is the exact zero (or below tolerance in float mode).
    bool zero = false;
    double max_abs = 0.0;
    /// Coefficients of total degree < valid_order were checked.
    int valid_order = 0;

    bool pass() const noexcept { return zero && valid_order > 0; }
};

struct ResidualReport {
    explicit ResidualReport(std::string eq = {}) : equation(std::move(eq)) {}

    std::string equation;
    std::vector<ResidualEntry> entries;
    std::vector<std::string> notes;

    bool pass() const {
        if (entries.empty()) return false;
        for (const auto& e : entries)
            if (!e.pass()) return false;
        return true;
    }

    const ResidualEntry* first_failure() const {
        for (const auto& e : entries)
            if (!e.pass()) return &e;
        return nullptr;
    }

    /// Lowest valid order over all entries.
    int valid_order() const {
        int v = std::numeric_limits<int>::max();
        for (const auto& e : entries) v = std::min(v, e.valid_order);
        return entries.empty() ? 0 : v;
    }
};

enum class HypothesisPolicy { raise, record };

template <class X>
ResidualEntry residual_entry(std::string label, std::optional<int> site, const X& r, double reference,
                             std::string block = {}) {
    ResidualEntry e;
    e.label = std::move(label);
    e.site = site;
    e.block = std::move(block);
    e.zero = negligible(r, reference);
    e.max_abs = magnitude(r);
    e.valid_order = valid_order(r);
    return e;
}

namespace detail {

template <class X>
void add_family(ResidualReport& rep, const std::string& label, const SiteFamily<X>& fam, double reference) {
    for (int k : fam.sites()) rep.entries.push_back(residual_entry(label, k, fam[k], reference));
}

template <class X>
void hypothesis(ResidualReport& rep, HypothesisPolicy policy, const std::string& which, const SiteFamily<X>& fam,
                double reference) {
    if (fam.empty()) throw WindowTooSmall("no site left to check hypothesis " + which);
    for (int k : fam.sites()) {
        auto e = residual_entry("hypothesis:" + which, k, fam[k], reference);
        if (!e.pass() && policy == HypothesisPolicy::raise)
            throw HypothesisViolated(which, "fails at site " + std::to_string(k));
        rep.entries.push_back(std::move(e));
    }
}

template <class X>
SiteFamily<X> toda_residual(const SiteFamily<X>& g, const Derivation<scalar_t<X>>& d1,
                            const Derivation<scalar_t<X>>& d2) {
    const SiteFamily<X> ginv = inverse(g);
    const SiteFamily<X> log2 = derive(g, d2) * ginv;
    return derive(log2, d1) - g * ginv.shift(-1) + g.shift(1) * ginv;
}

} // namespace detail

/// n-periodic Toda system on scalar-level g_k (g is a cyclic family).
template <class X>
ResidualReport check_toda(const SiteFamily<X>& g, const Derivation<scalar_t<X>>& d1,
                          const Derivation<scalar_t<X>>& d2) {
    ResidualReport rep{"toda"};
    detail::add_family(rep, "toda", detail::toda_residual(g, d1, d2), magnitude(g));
    return rep;
}

/// Matrix-level Toda system for the Frobenius cells gamma_k, with a
/// breakdown by row.
template <Field F>
ResidualReport check_toda_gamma(const SiteFamily<Block<F>>& gamma, const Derivation<F>& d1, const Derivation<F>& d2) {
    ResidualReport rep{"toda-gamma"};
    const auto res = detail::toda_residual(gamma, d1, d2);
    const double ref = magnitude(gamma);
    for (int k : res.sites()) {
        const Block<F>& m = res[k];
        for (std::size_t p = 0; p < m.dim(); ++p) {
            Block<F> row = zero_like(m);
            for (std::size_t q = 0; q < m.dim(); ++q) row(p, q) = m(p, q);
            rep.entries.push_back(residual_entry("toda-gamma", k, row, ref, "row " + std::to_string(p + 1)));
        }
    }
    return rep;
}

/// Marchenko lemma for (Gamma, A) with alpha the site shift.
template <class X>
ResidualReport check_marchenko(const SiteFamily<X>& Gamma, const SiteFamily<X>& A,
                               const Derivation<scalar_t<X>>& d1, const Derivation<scalar_t<X>>& d2,
                               HypothesisPolicy policy = HypothesisPolicy::raise) {
    ResidualReport rep{"marchenko"};
    const double ref = std::max(magnitude(Gamma), magnitude(A));
    detail::hypothesis(rep, policy, "d1 A = 0", derive(A, d1), ref);
    detail::hypothesis(rep, policy, "d2 A = 0", derive(A, d2), ref);
    const SiteFamily<X> dG = derive(Gamma, d2);
    detail::hypothesis(rep, policy, "d1 d2 Gamma = Gamma", derive(dG, d1) - Gamma, ref);
    detail::hypothesis(rep, policy, "d2 Gamma = alpha(Gamma) A", dG - Gamma.shift(1) * A, ref);

    const SiteFamily<X> gamma = dG * inverse(Gamma);
    const SiteFamily<X> ginv = inverse(gamma);
    const SiteFamily<X> res = derive(derive(gamma, d2) * ginv, d1) - gamma * ginv.shift(-1) + gamma.shift(1) * ginv;
    detail::add_family(rep, "gamma-toda", res, ref);
    return rep;
}

/// Single-derivation (Langmuir) form of the Marchenko lemma for a single derivation, with the
/// intermediate identities as further entries.
template <class X>
ResidualReport check_marchenko_langmuir(const SiteFamily<X>& Gamma, const SiteFamily<X>& A, const Derivation<scalar_t<X>>& d,
                            HypothesisPolicy policy = HypothesisPolicy::raise) {
    ResidualReport rep{"marchenko-langmuir"};
    const double ref = std::max(magnitude(Gamma), magnitude(A));
    detail::hypothesis(rep, policy, "d A = 0", derive(A, d), ref);
    const SiteFamily<X> dG = derive(Gamma, d);
    detail::hypothesis(rep, policy, "d Gamma = alpha^2(Gamma)", dG - Gamma.shift(2), ref);
    detail::hypothesis(rep, policy, "d Gamma + Gamma = alpha(Gamma) A", dG + Gamma - Gamma.shift(1) * A, ref);

    const SiteFamily<X> gamma = dG * inverse(Gamma);
    const SiteFamily<X> one = one_like(gamma);
    const SiteFamily<X> U = gamma * inverse(gamma.shift(-1));
    const SiteFamily<X> step = gamma.shift(1) - gamma;
    detail::add_family(rep, "u-langmuir", derive(U, d) - U.shift(1) * U + U * U.shift(-1), ref);
    detail::add_family(rep, "gamma-step", step * (gamma + one) - derive(gamma, d), ref);
    detail::add_family(rep, "step-recursion", step.shift(1) * gamma - step, ref);
    detail::add_family(rep, "u-additive", U - (one + step), ref);
    return rep;
}

/// Generalized Langmuir equations on interior sites; `commutative` adds the
/// logarithmic-derivative forms.
template <class X>
ResidualReport check_langmuir(const SiteFamily<X>& g, const Derivation<scalar_t<X>>& d, bool commutative = false) {
    if (!g.is_cyclic() && g.size() < 3) throw WindowTooSmall("Langmuir check needs at least three sites");
    ResidualReport rep{"langmuir"};
    const double ref = magnitude(g);
    const SiteFamily<X> dg = derive(g, d);
    detail::add_family(rep, "langmuir", dg - g.shift(1) * g + g * g.shift(-1), ref);
    if (commutative) {
        const SiteFamily<X> diff = g.shift(1) - g.shift(-1);
        detail::add_family(rep, "langmuir-factored", dg - g * diff, ref);
        detail::add_family(rep, "langmuir-log", dg * inverse(g) - diff, ref);
    }
    return rep;
}

/// Matrix NLS equation for U with the optional embedded blocks q1 U q2, q2 U q1.
template <Field F>
ResidualReport check_nls(const Func<F>& U, const Elem<F>& b, const Derivation<F>& d0, const Derivation<F>& d,
                         const std::optional<Func<F>>& U12 = {}, const std::optional<Func<F>>& U21 = {}) {
    if (!approx_equal(b * b, one_like(b))) throw BNotInvolutive("b^2 must be the identity");
    ResidualReport rep{"nls"};
    const F two = field_traits<F>::from_rational(Rational(2));
    const double ref = magnitude(U);
    auto dd = [&](const Func<F>& x) { return derive(derive(x, d), d); };
    rep.entries.push_back(
        residual_entry("nls", std::nullopt, scale(b * derive(U, d0), two) + dd(U) + scale(U * U * U, two), ref));
    if (U12 && U21) {
        const Func<F>& x = *U12;
        const Func<F>& y = *U21;
        rep.entries.push_back(residual_entry("nls-u12", std::nullopt,
                                             scale(derive(x, d0), two) + dd(x) + scale(x * y * x, two), ref, "U12"));
        rep.entries.push_back(residual_entry("nls-u21", std::nullopt,
                                             scale(derive(y, d0), -two) + dd(y) + scale(y * x * y, two), ref, "U21"));
    }
    return rep;
}

/// Matrix-level identities for gamma = (dW) W^{-1} with B = diag(b, ..., b):
/// 2 B d0 U + d^2 U + 2 U^3 = 0 and B dV = U^2, U = gamma B - B gamma, V = gamma B + B gamma.
template <Field F>
ResidualReport check_nls_matrix(const Block<F>& gamma, const Elem<F>& b, const Derivation<F>& d0,
                                const Derivation<F>& d) {
    if (!approx_equal(b * b, one_like(b))) throw BNotInvolutive("b^2 must be the identity");
    ResidualReport rep{"nls-matrix"};
    const F two = field_traits<F>::from_rational(Rational(2));
    const Func<F>& proto = gamma.proto();
    const Block<F> B = detail::constant_diagonal<F>(std::vector<Elem<F>>(gamma.dim(), b), proto.arity(), proto.cap());
    const Block<F> U = gamma * B - B * gamma;
    const Block<F> V = gamma * B + B * gamma;
    const double ref = magnitude(gamma);
    rep.entries.push_back(residual_entry(
        "nls-cubic", std::nullopt, scale(B * derive(U, d0), two) + derive(derive(U, d), d) + scale(U * U * U, two), ref));
    rep.entries.push_back(residual_entry("nls-v", std::nullopt, B * derive(V, d) - U * U, ref));
    return rep;
}

// --------------------------------------------------------- linear data

/// Toda data: d1 f_ij = f_{i-1,j} a_ij^{-1}, d2 f_ij = f_{i+1,j} a_{i+1,j}.
template <Field F>
ResidualReport check_toda_data(const std::vector<std::vector<Func<F>>>& f, const std::vector<std::vector<Elem<F>>>& a,
                               const Derivation<F>& d1, const Derivation<F>& d2) {
    ResidualReport rep{"toda-data"};
    const int n = static_cast<int>(f.size());
    double ref = 0.0;
    for (const auto& row : f)
        for (const auto& x : row) ref = std::max(ref, magnitude(x));
    for (int i = 0; i < n; ++i) {
        const int im = (i + n - 1) % n, ip = (i + 1) % n;
        for (std::size_t j = 0; j < f[i].size(); ++j) {
            const std::string blk = "j=" + std::to_string(j + 1);
            rep.entries.push_back(
                residual_entry("toda-data-d1", i, derive(f[i][j], d1) - f[im][j] * inverse(a[i][j]), ref, blk));
            rep.entries.push_back(residual_entry("toda-data-d2", i, derive(f[i][j], d2) - f[ip][j] * a[ip][j], ref, blk));
        }
    }
    rep.notes.push_back("a_ij are constants of S, so d1 a_ij = d2 a_ij = 0 holds by construction");
    return rep;
}

/// Langmuir data: d f_ij = f_{i+2,j} and d f_ij + f_ij = f_{i+1,j} a_j.
template <Field F>
ResidualReport check_langmuir_data(const SiteFamily<std::vector<Func<F>>>& f, const std::vector<Elem<F>>& a,
                                   const Derivation<F>& d) {
    ResidualReport rep{"langmuir-data"};
    double ref = 0.0;
    for (const auto& row : f.values())
        for (const auto& x : row) ref = std::max(ref, magnitude(x));
    for (int i : f.sites()) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            const std::string blk = "j=" + std::to_string(j + 1);
            const Func<F> df = derive(f[i][j], d);
            if (f.contains(i + 2)) rep.entries.push_back(residual_entry("langmuir-data-shift2", i, df - f[i + 2][j], ref, blk));
            if (f.contains(i + 1))
                rep.entries.push_back(
                    residual_entry("langmuir-data-shift1", i, df + f[i][j] - f[i + 1][j] * a[j], ref, blk));
        }
    }
    rep.notes.push_back("a_j = mu_j + mu_j^{-1} are constants of S");
    return rep;
}

/// NLS data: d0 W + B d^2 W = 0 and B dW = W A (C = 0, no d1).
template <Field F>
ResidualReport check_nls_data(const Block<F>& W, const Elem<F>& b, const Block<F>& A, const Derivation<F>& d0,
                              const Derivation<F>& d) {
    ResidualReport rep{"nls-data"};
    const Func<F>& proto = W.proto();
    const Block<F> B = detail::constant_diagonal<F>(std::vector<Elem<F>>(W.dim(), b), proto.arity(), proto.cap());
    const double ref = magnitude(W);
    const Block<F> dW = derive(W, d);
    rep.entries.push_back(residual_entry("nls-data-evolution", std::nullopt, derive(W, d0) + B * derive(dW, d), ref));
    rep.entries.push_back(residual_entry("nls-data-dispersion", std::nullopt, B * dW - W * A, ref));
    return rep;
}

} // namespace solilab
