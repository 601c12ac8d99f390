#pragma once

// Explicit solution families: periodic Toda, sine-Gordon, Langmuir and NLS.
// The coefficient algebra S is always r x r matrices over a field F; the
// function algebra is S-valued truncated series.

#include <optional>
#include <string>
#include <vector>

#include "quasidet.hpp"
#include "sampling.hpp"
#include "series.hpp"
#include "sites.hpp"

namespace solilab {

template <Field F> using Elem = Matrix<F>;
template <Field F> using Func = Series<Matrix<F>>;
template <Field F> using Block = Matrix<Func<F>>;

namespace detail {

template <class A>
A power(const A& x, int k) {
    A base = k < 0 ? inverse(x) : x;
    A out = one_like(x);
    for (int j = 0; j < std::abs(k); ++j) out = out * base;
    return out;
}

template <Field F>
Block<F> constant_diagonal(const std::vector<Elem<F>>& diag, int arity, int cap) {
    Block<F> m(diag.size(), Func<F>(arity, cap, diag.front()));
    for (std::size_t k = 0; k < diag.size(); ++k) m(k, k) = Func<F>::constant(arity, cap, diag[k]);
    return m;
}

template <Field F>
void require_invertible(const Elem<F>& x, const std::string& what) {
    if (!invertible(x)) throw InvalidParameters(what + " must be invertible");
}

template <Field F>
void require_dims(const std::vector<Elem<F>>& xs, std::size_t count, int r, const std::string& what) {
    if (xs.size() != count)
        throw InvalidParameters(what + ": expected " + std::to_string(count) + " entries, got " +
                                std::to_string(xs.size()));
    for (const auto& x : xs)
        if (x.dim() != static_cast<std::size_t>(r)) throw InvalidParameters(what + ": entries must be r x r");
}

template <Field F>
F imaginary_unit() {
    if constexpr (std::is_same_v<F, Gaussian>) {
        return Gaussian::i();
    } else if constexpr (std::is_same_v<F, Complex>) {
        return Complex(0.0, 1.0);
    } else {
        throw InvalidParameters("the Schroedinger mode needs i; use gaussian-rational scalars or the heat mode");
    }
}

/// Bottom-row entry |dW|_NN |W|^{-1}_{1N}, compared against `value`.
template <class A>
bool bottom_left_expression_matches(const WronskiPair<A>& wp, const A& value) {
    const std::size_t n = wp.order();
    try {
        A num = quasideterminant(wp.dW, n - 1, n - 1);
        A den = quasideterminant(wp.W, 0, n - 1);
        return approx_equal(num * inverse(den), value);
    } catch (const Error&) {
        return false;
    }
}

} // namespace detail

// ---------------------------------------------------------------- Toda

template <Field F>
struct TodaParams {
    int n = 2;
    int N = 1;
    int r = 1;
    int cap = 8;
    /// a[i][j], i in Z/n.
    std::vector<std::vector<Elem<F>>> a;
    /// p[j][i]: the row vector p_j.
    std::vector<std::vector<Elem<F>>> p;

    void validate() const {
        if (n < 1) throw InvalidParameters("period n must be at least 1");
        if (N < 1) throw InvalidParameters("soliton number N must be at least 1");
        if (r < 1) throw InvalidParameters("block size r must be at least 1");
        if (cap < N + 3) throw InvalidParameters("cap must be at least N + 3");
        if (a.size() != static_cast<std::size_t>(n)) throw InvalidParameters("a must have n rows");
        for (int i = 0; i < n; ++i) {
            detail::require_dims(a[i], N, r, "a[" + std::to_string(i) + "]");
            for (int j = 0; j < N; ++j)
                detail::require_invertible(a[i][j], "a[" + std::to_string(i) + "][" + std::to_string(j) + "]");
        }
        if (p.size() != static_cast<std::size_t>(N)) throw InvalidParameters("p must have N rows");
        for (int j = 0; j < N; ++j) detail::require_dims(p[j], n, r, "p[" + std::to_string(j) + "]");
    }
};

template <Field F>
TodaParams<F> random_toda(int n, int N, int r, int cap, Sampler& rng) {
    TodaParams<F> prm{n, N, r, cap, {}, {}};
    prm.a.assign(n, {});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < N; ++j) prm.a[i].push_back(rng.invertible_matrix<F>(r));
    prm.p.assign(N, {});
    for (int j = 0; j < N; ++j)
        for (int i = 0; i < n; ++i) prm.p[j].push_back(rng.matrix<F>(r));
    return prm;
}

/// f[i][j] = (p_j e_j)_i with e_j = exp(R_j^{-1} u + R_j v) and R_j = a_j R,
/// where R is the cyclic shift with (xR)_i = x_{i+1}.
template <Field F>
std::vector<std::vector<Func<F>>> toda_build_f(const TodaParams<F>& prm) {
    prm.validate();
    const std::size_t n = prm.n;
    const Elem<F> zero(prm.r, zero_like(F{}));
    const Elem<F> one = Elem<F>::identity(prm.r, F{});
    Matrix<Elem<F>> shift(n, zero);
    for (std::size_t i = 0; i < n; ++i) shift((i + 1) % n, i) = one;

    std::vector<std::vector<Func<F>>> f(n, std::vector<Func<F>>(prm.N, Func<F>(2, prm.cap, zero)));
    for (int j = 0; j < prm.N; ++j) {
        std::vector<Elem<F>> diag;
        for (std::size_t i = 0; i < n; ++i) diag.push_back(prm.a[i][j]);
        Matrix<Elem<F>> rj = Matrix<Elem<F>>::diagonal(diag) * shift;
        Series<Matrix<Elem<F>>> e = exp_linear(inverse(rj), rj, prm.cap);
        for (std::size_t i = 0; i < n; ++i) {
            Func<F>& out = f[i][j];
            for (std::size_t k = 0; k < e.size(); ++k) {
                Elem<F> acc = zero;
                for (std::size_t l = 0; l < n; ++l) acc += prm.p[j][l] * e[k](l, i);
                out[k] = std::move(acc);
            }
        }
    }
    return f;
}

template <Field F>
struct TodaSolution {
    int n = 0;
    int N = 0;
    std::vector<std::vector<Func<F>>> f;
    std::vector<WronskiPair<Func<F>>> wronskians;
    /// Gamma = (W_k) and the constant family (A_{k+1}) with dW_k/dv = W_{k+1} A_{k+1}.
    SiteFamily<Block<F>> Gamma;
    SiteFamily<Block<F>> A;
    SiteFamily<Block<F>> gamma;
    SiteFamily<Func<F>> g;
    /// Readings of the bottom-row quasideterminant formula, summed over sites,
    /// plus the bottom-left expression |dW|_NN |W|^{-1}_1N.
    std::vector<ConventionCheck> conventions;
};

/// Runs the Wronskian pipeline on prepared data f[i][j] with constants a[i][j].
template <Field F>
TodaSolution<F> toda_pipeline(std::vector<std::vector<Func<F>>> f, const std::vector<std::vector<Elem<F>>>& a,
                              bool cross_check = true) {
    TodaSolution<F> sol;
    sol.n = static_cast<int>(f.size());
    sol.N = static_cast<int>(f.front().size());
    const int cap = f.front().front().cap();
    const auto dv = Derivation<F>::d_v();
    std::vector<Block<F>> ws, as, gammas;
    std::vector<Func<F>> gs;
    ConventionCheck expr{"bottom-left-expression", "g_k = |dW_k|_NN |W_k|^{-1}_1N"};
    for (int k = 0; k < sol.n; ++k) {
        auto wp = wronski(f[k], dv);
        GammaResult<Func<F>> res = frobenius_gamma(wp, cross_check, k);
        merge_checks(sol.conventions, res.conventions);
        Func<F> gk = res.cell.bottom(0);
        if (cross_check) {
            ++expr.entries;
            ++expr.defined;
            if (detail::bottom_left_expression_matches(wp, gk)) ++expr.matched;
        }
        ws.push_back(wp.W);
        as.push_back(detail::constant_diagonal<F>(a[(k + 1) % sol.n], 2, cap));
        gammas.push_back(res.cell.matrix());
        gs.push_back(std::move(gk));
        sol.wronskians.push_back(std::move(wp));
    }
    if (cross_check) sol.conventions.push_back(expr);
    sol.f = std::move(f);
    sol.Gamma = SiteFamily<Block<F>>::cyclic(std::move(ws));
    sol.A = SiteFamily<Block<F>>::cyclic(std::move(as));
    sol.gamma = SiteFamily<Block<F>>::cyclic(std::move(gammas));
    sol.g = SiteFamily<Func<F>>::cyclic(std::move(gs));
    return sol;
}

template <Field F>
TodaSolution<F> toda_solution(const TodaParams<F>& prm, bool cross_check = true) {
    return toda_pipeline<F>(toda_build_f(prm), prm.a, cross_check);
}

// ---------------------------------------------------------- sine-Gordon

template <Field F>
struct SineGordonParams {
    int N = 1;
    int r = 1;
    int cap = 8;
    std::vector<Elem<F>> p, q, a;

    void validate() const {
        if (N < 1) throw InvalidParameters("soliton number N must be at least 1");
        if (r < 1) throw InvalidParameters("block size r must be at least 1");
        if (cap < N + 3) throw InvalidParameters("cap must be at least N + 3");
        detail::require_dims(p, N, r, "p");
        detail::require_dims(q, N, r, "q");
        detail::require_dims(a, N, r, "a");
        for (int j = 0; j < N; ++j) detail::require_invertible(a[j], "a[" + std::to_string(j) + "]");
    }

    /// The same data as a 2-periodic Toda parameter set: a_0j = a_1j = a_j,
    /// p-row (p_j + q_j, p_j - q_j).
    TodaParams<F> as_toda() const {
        TodaParams<F> t{2, N, r, cap, {a, a}, {}};
        for (int j = 0; j < N; ++j) t.p.push_back({p[j] + q[j], p[j] - q[j]});
        return t;
    }
};

template <Field F>
SineGordonParams<F> random_sine_gordon(int N, int r, int cap, Sampler& rng) {
    SineGordonParams<F> prm{N, r, cap, {}, {}, {}};
    for (int j = 0; j < N; ++j) {
        prm.p.push_back(rng.matrix<F>(r));
        prm.q.push_back(rng.matrix<F>(r));
        prm.a.push_back(rng.invertible_matrix<F>(r));
    }
    return prm;
}

template <Field F>
struct SineGordonSolution {
    TodaSolution<F> toda;
    /// Whether the data equals the generic Toda construction for as_toda().
    bool matches_toda_construction = false;
    /// N = 1 closed form gamma_0, gamma_1 (empty otherwise).
    std::vector<Func<F>> closed_form;
    bool closed_form_matches = false;
    /// N = 2: readings of the displayed two-line formula, entries = 2 sites.
    std::vector<ConventionCheck> readings;
};

namespace detail {

template <Field F>
struct SgPieces {
    // P_ij = p_j + s_i q_j eta_j and M_ij = p_j - s_i q_j eta_j, s_i = (-1)^i.
    std::vector<std::vector<Func<F>>> plus, minus;
};

template <Field F>
SgPieces<F> sine_gordon_pieces(const SineGordonParams<F>& prm) {
    SgPieces<F> out{std::vector<std::vector<Func<F>>>(2), std::vector<std::vector<Func<F>>>(2)};
    const F two = field_traits<F>::from_rational(Rational(2));
    for (int j = 0; j < prm.N; ++j) {
        Func<F> eta = exp_linear(scale(inverse(prm.a[j]), -two), scale(prm.a[j], -two), prm.cap);
        for (int i = 0; i < 2; ++i) {
            Func<F> qe = prm.q[j] * eta;
            Func<F> p = Func<F>::constant(2, prm.cap, prm.p[j]);
            out.plus[i].push_back(i == 0 ? p + qe : p - qe);
            out.minus[i].push_back(i == 0 ? p - qe : p + qe);
        }
    }
    return out;
}

} // namespace detail

template <Field F>
SineGordonSolution<F> sine_gordon_solution(const SineGordonParams<F>& prm, bool cross_check = true) {
    prm.validate();
    const int cap = prm.cap;
    std::vector<std::vector<Func<F>>> f(2);
    for (int j = 0; j < prm.N; ++j) {
        Func<F> ep = exp_linear(inverse(prm.a[j]), prm.a[j], cap);
        Func<F> em = exp_linear(-inverse(prm.a[j]), -prm.a[j], cap);
        f[0].push_back(prm.p[j] * ep + prm.q[j] * em);
        f[1].push_back(prm.p[j] * ep - prm.q[j] * em);
    }
    SineGordonSolution<F> sol;
    const auto toda_f = toda_build_f(prm.as_toda());
    sol.matches_toda_construction = true;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < prm.N; ++j)
            if (!approx_equal(toda_f[i][j], f[i][j])) sol.matches_toda_construction = false;

    sol.toda = toda_pipeline<F>(f, {prm.a, prm.a}, cross_check);
    auto pc = detail::sine_gordon_pieces(prm);

    if (prm.N == 1) {
        for (int i = 0; i < 2; ++i) sol.closed_form.push_back(pc.minus[i][0] * prm.a[0] * inverse(pc.plus[i][0]));
        sol.closed_form_matches =
            approx_equal(sol.closed_form[0], sol.toda.g[0]) && approx_equal(sol.closed_form[1], sol.toda.g[1]);
        if (!sol.closed_form_matches) throw ClosedFormMismatch("N=1 sine-Gordon closed form differs from the pipeline");
    } else if (prm.N == 2) {
        const auto& a1 = prm.a[0];
        const auto& a2 = prm.a[1];
        const Elem<F> a1i = inverse(a1), a2i = inverse(a2);
        auto check = [&](std::string name, std::string formula, auto&& value) {
            ConventionCheck c{std::move(name), std::move(formula)};
            for (int i = 0; i < 2; ++i) {
                ++c.entries;
                try {
                    Func<F> v = value(i);
                    ++c.defined;
                    if (approx_equal(v, sol.toda.g[i])) ++c.matched;
                } catch (const Error&) {
                }
            }
            sol.readings.push_back(std::move(c));
        };
        auto first_line = [&](int i, int weird) {
            const int im = 1 - i;
            const auto& fi1 = f[i][0];
            const auto& fi2 = f[i][1];
            Func<F> fm1_inv = inverse(f[im][0]);
            Func<F> num = fi2 * (a2 * a2) - fi1 * a1 * fm1_inv * f[im][1] * a2;
            const Func<F>& last = weird ? f[0][1] : f[im][1];
            Func<F> den = fi2 - fi1 * a1i * fm1_inv * last * a2;
            return num * inverse(den);
        };
        auto second_line = [&](int i, bool trailing) {
            const auto& P1 = pc.plus[i][0];
            const auto& P2 = pc.plus[i][1];
            Func<F> cross = P1 * a1 * inverse(pc.minus[i][0]) * pc.minus[i][1];
            Func<F> cross_inv = P1 * a1i * inverse(pc.minus[i][0]) * pc.minus[i][1];
            Func<F> num = P2 * a2 - cross;
            Func<F> den = P2 * a2i - (trailing ? cross_inv * a2i : cross_inv);
            return num * inverse(den);
        };
        check("first-line-as-printed", "second factor uses f_{02}", [&](int i) { return first_line(i, 1); });
        check("first-line-f_{i-1,2}", "second factor uses f_{i-1,2}", [&](int i) { return first_line(i, 0); });
        check("second-line-as-printed", "second factor without a trailing a_2^{-1}",
              [&](int i) { return second_line(i, false); });
        check("second-line-trailing-a2-inverse", "second factor subtracts (...)(p_2 - s q_2 eta_2) a_2^{-1}",
              [&](int i) { return second_line(i, true); });
        bool any = false;
        for (const auto& c : sol.readings) any = any || c.holds();
        if (!any) throw ClosedFormMismatch("no reading of the N=2 sine-Gordon display matches the pipeline");
    }
    return sol;
}

// ------------------------------------------------------------- Langmuir

template <Field F>
struct LangmuirParams {
    int N = 1;
    int r = 1;
    int cap = 10;
    std::vector<Elem<F>> p, q, mu;
    /// Output window of g_k (ignored in periodic mode).
    int lo = 0;
    int hi = 4;
    /// Periodic lattice of this period; requires mu_j^period = 1.
    std::optional<int> period;

    void validate() const {
        if (N < 1) throw InvalidParameters("soliton number N must be at least 1");
        if (r < 1) throw InvalidParameters("block size r must be at least 1");
        if (cap < N + 3) throw InvalidParameters("cap must be at least N + 3");
        detail::require_dims(p, N, r, "p");
        detail::require_dims(q, N, r, "q");
        detail::require_dims(mu, N, r, "mu");
        for (int j = 0; j < N; ++j) {
            detail::require_invertible(mu[j], "mu[" + std::to_string(j) + "]");
            detail::require_invertible<F>(mu[j] + inverse(mu[j]), "mu[" + std::to_string(j) + "] + mu^{-1}");
        }
        if (period) {
            if (*period < 1) throw InvalidParameters("period must be positive");
            for (int j = 0; j < N; ++j)
                if (!approx_equal(detail::power(mu[j], *period), one_like(mu[j])))
                    throw InvalidParameters("mu[" + std::to_string(j) + "]^period must be the identity");
        } else if (hi < lo) {
            throw InvalidParameters("empty site window");
        }
    }

    /// a_j = mu_j + mu_j^{-1}.
    Elem<F> a(int j) const { return mu[j] + inverse(mu[j]); }
};

template <Field F>
LangmuirParams<F> random_langmuir(int N, int r, int cap, int lo, int hi, Sampler& rng) {
    LangmuirParams<F> prm{N, r, cap, {}, {}, {}, lo, hi, std::nullopt};
    for (int j = 0; j < N; ++j) {
        prm.p.push_back(rng.matrix<F>(r));
        prm.q.push_back(rng.matrix<F>(r));
        for (;;) {
            // mu - mu^{-1} invertible keeps the two exponentials distinct.
            Elem<F> m = rng.invertible_matrix<F>(r);
            if (invertible(m + inverse(m)) && invertible(m - inverse(m))) {
                prm.mu.push_back(m);
                break;
            }
        }
    }
    return prm;
}

/// f_ij(t) on the sites one below to one above the output window (or all
/// residues mod the period).
template <Field F>
SiteFamily<std::vector<Func<F>>> langmuir_build_f(const LangmuirParams<F>& prm) {
    prm.validate();
    std::vector<Func<F>> ep, em;
    for (int j = 0; j < prm.N; ++j) {
        Elem<F> mi = inverse(prm.mu[j]);
        ep.push_back(exp_linear(prm.mu[j] * prm.mu[j], prm.cap));
        em.push_back(exp_linear(mi * mi, prm.cap));
    }
    auto site = [&](int i) {
        std::vector<Func<F>> row;
        for (int j = 0; j < prm.N; ++j)
            row.push_back(prm.p[j] * detail::power(prm.mu[j], i) * ep[j] +
                          prm.q[j] * detail::power(prm.mu[j], -i) * em[j]);
        return row;
    };
    std::vector<std::vector<Func<F>>> rows;
    if (prm.period) {
        for (int i = 0; i < *prm.period; ++i) rows.push_back(site(i));
        return SiteFamily<std::vector<Func<F>>>::cyclic(std::move(rows));
    }
    for (int i = prm.lo - 1; i <= prm.hi + 1; ++i) rows.push_back(site(i));
    return SiteFamily<std::vector<Func<F>>>::window(prm.lo - 1, std::move(rows));
}

template <Field F>
struct LangmuirCandidate {
    std::string name;
    std::string formula;
    SiteFamily<Func<F>> g;
    bool equals_pipeline = false;
};

template <Field F>
struct LangmuirSolution {
    SiteFamily<std::vector<Func<F>>> f;
    SiteFamily<Block<F>> Gamma;
    SiteFamily<Block<F>> A;
    SiteFamily<Block<F>> gamma;
    /// U_k = gamma_k gamma_{k-1}^{-1}.
    SiteFamily<Block<F>> U;
    /// Pipeline answer: the (N, N) entry of U_k, on the output window.
    SiteFamily<Func<F>> g;
    std::vector<LangmuirCandidate<F>> candidates;
    /// N = 1 closed form (empty family otherwise).
    std::optional<SiteFamily<Func<F>>> closed_form;
    bool closed_form_matches = false;
    /// Frobenius-quotient closed form agreed at every site.
    bool quotient_closed_form_holds = true;
    std::vector<ConventionCheck> conventions;
};

template <Field F>
LangmuirSolution<F> langmuir_solution(const LangmuirParams<F>& prm, bool cross_check = true) {
    LangmuirSolution<F> sol;
    sol.f = langmuir_build_f(prm);
    const auto dt = Derivation<F>::d_t();
    const std::size_t n = prm.N;
    std::vector<Block<F>> ws, as, gammas;
    std::vector<Func<F>> eta_n1;
    for (int k : sol.f.sites()) {
        auto wp = wronski(sol.f[k], dt);
        auto res = frobenius_gamma(wp, cross_check, k);
        merge_checks(sol.conventions, res.conventions);
        ws.push_back(wp.W);
        std::vector<Elem<F>> ak;
        for (int j = 0; j < prm.N; ++j) ak.push_back(prm.a(j));
        as.push_back(detail::constant_diagonal<F>(ak, 1, prm.cap));
        gammas.push_back(res.cell.matrix());
    }
    auto make = [&](std::vector<Block<F>> v) {
        return prm.period ? SiteFamily<Block<F>>::cyclic(std::move(v))
                          : SiteFamily<Block<F>>::window(sol.f.lo(), std::move(v));
    };
    sol.Gamma = make(std::move(ws));
    sol.A = make(std::move(as));
    sol.gamma = make(std::move(gammas));
    sol.U = sol.gamma * inverse(sol.gamma.shift(-1));

    auto entry = [](const SiteFamily<Block<F>>& fam, std::size_t i, std::size_t j) {
        return fam.map([&](const Block<F>& m) { return m(i, j); });
    };
    auto trim = [&](const SiteFamily<Func<F>>& fam) {
        if (prm.period) return fam;
        std::vector<Func<F>> v;
        for (int k = prm.lo; k <= prm.hi; ++k) v.push_back(fam[k]);
        return SiteFamily<Func<F>>::window(prm.lo, std::move(v));
    };
    sol.g = trim(entry(sol.U, n - 1, n - 1));

    if (cross_check) {
        for (int k : sol.U.sites()) {
            auto q = frobenius_quotient(FrobeniusCell<Func<F>>::from_matrix(sol.gamma[k]),
                                        FrobeniusCell<Func<F>>::from_matrix(sol.gamma[k - 1]));
            if (!q.closed_form_matches || !approx_equal(q.Y, sol.U[k])) sol.quotient_closed_form_holds = false;
        }
    }

    const SiteFamily<Func<F>> one = one_like(entry(sol.gamma, n - 1, 0));
    const auto eta1 = entry(sol.gamma, n - 1, 0);
    const auto etan = entry(sol.gamma, n - 1, n - 1);
    auto add = [&](std::string name, std::string formula, SiteFamily<Func<F>> g) {
        LangmuirCandidate<F> c{std::move(name), std::move(formula), trim(g)};
        c.equals_pipeline = approx_equal(c.g, sol.g);
        sol.candidates.push_back(std::move(c));
    };
    add("product", "g_k = eta_k eta_{k-1}^{-1}, eta_k = (gamma_k)_N1", eta1 * inverse(eta1.shift(-1)));
    add("additive-N1", "g_k = 1 + (gamma_{k+1})_N1 - (gamma_k)_N1", one + eta1.shift(1) - eta1);
    add("additive-NN", "g_k = 1 + (gamma_{k+1})_NN - (gamma_k)_NN", one + etan.shift(1) - etan);
    add("additive-N1-lower", "g_k = 1 + (gamma_k)_N1 - (gamma_{k-1})_N1", one + eta1 - eta1.shift(-1));

    if (prm.N == 1) {
        const Elem<F>& mu = prm.mu[0];
        const Elem<F> mu2 = mu * mu;
        const Elem<F> mu2i = inverse(mu2);
        Func<F> e = exp_linear(mu2 - mu2i, prm.cap);
        Func<F> qc = Func<F>::constant(1, prm.cap, prm.q[0]);
        auto term = [&](int pw) { return qc + prm.p[0] * detail::power(mu, pw) * e; };
        std::vector<Func<F>> v;
        for (int k : sol.g.sites())
            v.push_back(term(2 * k + 4) * mu2i * inverse(term(2 * k)) * term(2 * k - 2) * mu2 *
                        inverse(term(2 * k + 2)));
        sol.closed_form = prm.period ? SiteFamily<Func<F>>::cyclic(std::move(v))
                                     : SiteFamily<Func<F>>::window(prm.lo, std::move(v));
        sol.closed_form_matches = approx_equal(*sol.closed_form, sol.g);
    }
    return sol;
}

// ------------------------------------------------------------------ NLS

template <Field F>
struct NlsParams {
    int N = 1;
    int r = 2;
    int cap = 8;
    Elem<F> b;
    std::vector<Elem<F>> c, d, a;
    /// Nonlinear heat variant: d_0 = d/du and exponents a v - a^2 u.
    bool heat = false;

    void validate() const {
        if (N < 1) throw InvalidParameters("soliton number N must be at least 1");
        if (r < 1) throw InvalidParameters("block size r must be at least 1");
        if (cap < N + 3) throw InvalidParameters("cap must be at least N + 3");
        if (b.dim() != static_cast<std::size_t>(r)) throw InvalidParameters("b must be r x r");
        if (!approx_equal(b * b, one_like(b))) throw BNotInvolutive("b^2 must be the identity");
        detail::require_dims(c, N, r, "c");
        detail::require_dims(d, N, r, "d");
        detail::require_dims(a, N, r, "a");
    }

    Elem<F> q1() const { return scale(one_like(b) + b, field_traits<F>::from_rational(Rational(1, 2))); }
    Elem<F> q2() const { return scale(one_like(b) - b, field_traits<F>::from_rational(Rational(1, 2))); }

    Derivation<F> d0() const {
        return heat ? Derivation<F>::d_u() : Derivation<F>::d_u().scaled(detail::imaginary_unit<F>());
    }
};

/// b = diag(1,...,1,-1,...,-1) with r1 leading ones.
template <Field F>
Elem<F> signature_matrix(int r, int r1) {
    Elem<F> b = Elem<F>::identity(r, F{});
    for (int k = r1; k < r; ++k) b(k, k) = -b(k, k);
    return b;
}

template <Field F>
NlsParams<F> random_nls(int N, int r, int cap, bool heat, Sampler& rng) {
    NlsParams<F> prm{N, r, cap, signature_matrix<F>(r, (r + 1) / 2), {}, {}, {}, heat};
    for (int j = 0; j < N; ++j) {
        prm.c.push_back(rng.matrix<F>(r));
        prm.d.push_back(rng.matrix<F>(r));
        prm.a.push_back(rng.matrix<F>(r));
    }
    return prm;
}

template <Field F>
struct NlsCandidate {
    std::string name;
    Func<F> g;
    Func<F> U;
};

template <Field F>
struct NlsSolution {
    std::vector<Func<F>> f;
    WronskiPair<Func<F>> wronskian;
    Block<F> gamma;
    Block<F> A;
    /// Pipeline answer g and U = g b - b g.
    Func<F> g;
    Func<F> U;
    std::string entry;
    /// Both bottom-row candidates: (N,1) and (N,N).
    std::vector<NlsCandidate<F>> candidates;
    /// Embedded blocks q1 U q2 and q2 U q1 (present when b is a signature matrix).
    std::optional<Func<F>> U12, U21;
    /// N = 1: readings of the displayed g = (q1 c e^x +- q2 d e^-x) a (...)^{-1},
    /// compared with the pipeline (entries = 1).
    std::vector<ConventionCheck> display_readings;
    bool closed_form_matches = false;
    std::vector<ConventionCheck> conventions;
};

namespace detail {

template <Field F>
bool is_signature_matrix(const Elem<F>& b) {
    bool seen_minus = false;
    for (std::size_t i = 0; i < b.dim(); ++i)
        for (std::size_t j = 0; j < b.dim(); ++j) {
            const F& x = b(i, j);
            if (i != j) {
                if (!is_zero(x)) return false;
            } else if (approx_equal(x, one_like(x))) {
                if (seen_minus) return false;
            } else if (approx_equal(x, -one_like(x))) {
                seen_minus = true;
            } else {
                return false;
            }
        }
    return true;
}

} // namespace detail

/// `entry` selects which bottom-row entry of gamma is taken as g:
/// "NN" (default) or "N1"; both are always computed as candidates.
template <Field F>
NlsSolution<F> nls_solution(const NlsParams<F>& prm, const std::string& entry = "NN", bool cross_check = true) {
    prm.validate();
    if (entry != "NN" && entry != "N1") throw InvalidParameters("NLS entry must be NN or N1");
    NlsSolution<F> sol;
    const Elem<F> q1 = prm.q1(), q2 = prm.q2();
    const F iu = prm.heat ? -one_like(F{}) : detail::imaginary_unit<F>();
    std::vector<Func<F>> eplus, eminus;
    for (int j = 0; j < prm.N; ++j) {
        const Elem<F>& a = prm.a[j];
        Elem<F> cu = scale(a * a, iu);
        eplus.push_back(exp_linear(cu, a, prm.cap));
        eminus.push_back(exp_linear(-cu, -a, prm.cap));
        sol.f.push_back(q1 * prm.c[j] * eplus.back() + q2 * prm.d[j] * eminus.back());
    }
    sol.wronskian = wronski(sol.f, Derivation<F>::d_v());
    auto res = frobenius_gamma(sol.wronskian, cross_check);
    sol.conventions = res.conventions;
    sol.gamma = res.cell.matrix();
    sol.A = detail::constant_diagonal<F>(prm.a, 2, prm.cap);
    const std::size_t n = prm.N;
    for (auto [name, col] : {std::pair<const char*, std::size_t>{"N1", 0}, {"NN", n - 1}}) {
        Func<F> g = sol.gamma(n - 1, col);
        Func<F> u = g * prm.b - prm.b * g;
        sol.candidates.push_back({name, g, u});
        if (entry == name) {
            sol.g = g;
            sol.U = u;
            sol.entry = name;
        }
    }
    if (cross_check) {
        ConventionCheck expr{"bottom-left-expression", "g = |dW|_NN |W|^{-1}_1N"};
        expr.entries = expr.defined = 1;
        if (detail::bottom_left_expression_matches(sol.wronskian, sol.candidates[0].g)) expr.matched = 1;
        sol.conventions.push_back(expr);
    }
    if (detail::is_signature_matrix(prm.b)) {
        sol.U12 = q1 * sol.U * q2;
        sol.U21 = q2 * sol.U * q1;
    }
    if (prm.N == 1) {
        const Elem<F>& a = prm.a[0];
        const Elem<F> cu = scale(a * a, iu);
        const Func<F> ep = q1 * prm.c[0] * eplus[0];
        const Func<F> em = q2 * prm.d[0] * eminus[0];
        auto reading = [&](std::string name, std::string formula, auto&& value) {
            ConventionCheck c{std::move(name), std::move(formula), 1};
            try {
                Func<F> v = value();
                c.defined = 1;
                if (approx_equal(v, sol.g)) c.matched = 1;
            } catch (const Error&) {
            }
            sol.display_readings.push_back(std::move(c));
        };
        reading("as-printed", "(q1 c e^x + q2 d e^-x) a (q1 c e^{au + i a^2 v} + q2 d e^-x)^{-1}",
                [&] { return (ep + em) * a * inverse(q1 * prm.c[0] * exp_linear(a, cu, prm.cap) + em); });
        reading("plus-sign", "(q1 c e^x + q2 d e^-x) a f^{-1}", [&] { return (ep + em) * a * inverse(ep + em); });
        reading("minus-sign", "(q1 c e^x - q2 d e^-x) a f^{-1}", [&] { return (ep - em) * a * inverse(ep + em); });
        for (const auto& c : sol.display_readings) sol.closed_form_matches = sol.closed_form_matches || c.holds();
    }
    return sol;
}

/// Outcome of comparing the truncated scalar NLS series with the classical
/// one-soliton formula at sample points of two radii.
struct NlsClosedFormRecord {
    int valid_order = 0;
    std::vector<double> radii;
    /// Max |w_series - w_closed| over the sample directions, per radius.
    std::vector<double> max_deviation;
    /// log2(dev(radii[0]) / dev(radii[1])).
    double log2_ratio = 0.0;
    double origin_deviation = 0.0;
    /// Same comparison at radii[0] for two other readings of the formula:
    /// exp(2x) in place of exp(-2x) in the denominator, and y defined by
    /// exp(y) = alpha exp(2x) / beta.
    double deviation_exp_plus_2x = 0.0;
    double deviation_unconjugated_y = 0.0;
    /// gamma_21 equals the conjugate of gamma_12 coefficientwise.
    bool hermitian = false;
    /// Whether 2 d0 w + d^2 w + 2 s w conj(w) w vanishes for s = +1 / s = -1.
    bool cubic_plus = false;
    bool cubic_minus = false;
};

/// Requires |alpha| != |beta| (so sinh R does not vanish at the origin)
/// and a + conj(a) != 0.
NlsClosedFormRecord nls_scalar_closed_form(const Gaussian& a, const Gaussian& alpha, const Gaussian& beta, int cap,
                                           const std::vector<double>& radii = {0.125, 0.0625}, int directions = 12);

} // namespace solilab
