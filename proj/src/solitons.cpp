#include "solilab/solitons.hpp"

#include <cmath>
#include <numbers>

namespace solilab {

namespace {

using G = Gaussian;
using C = Complex;

Elem<G> mat2(const G& a, const G& b, const G& c, const G& d) {
    Elem<G> m(2, G{});
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = d;
    return m;
}

// w(u, v) = 2(a + conj a) / (conj(alpha) e^{2 conj x} / conj(beta) - beta e^{t x} / alpha)
// with x = a v + i a^2 u and t = -2 (the conjugation-consistent form) or +2.
C direct_form(C a, C alpha, C beta, double u, double v, double t) {
    const C i(0.0, 1.0);
    const C x = a * v + i * a * a * u;
    const C den = std::conj(alpha) * std::exp(2.0 * std::conj(x)) / std::conj(beta) - beta * std::exp(t * x) / alpha;
    if (std::abs(den) < 1e-300) throw EvaluationSingularity("closed-form denominator vanishes");
    return 2.0 * (a + std::conj(a)) / den;
}

// (a + conj a) e^{-i I} / sinh R with y = R + i I.
C sinh_form(C a, C y) {
    const double s = std::sinh(y.real());
    if (std::abs(s) < 1e-12) throw EvaluationSingularity("sinh R vanishes at a sample point");
    return (a + std::conj(a)) * std::exp(C(0.0, -y.imag())) / s;
}

} // namespace

NlsClosedFormRecord nls_scalar_closed_form(const Gaussian& a, const Gaussian& alpha, const Gaussian& beta, int cap,
                                           const std::vector<double>& radii, int directions) {
    if (alpha.is_zero() || beta.is_zero()) throw InvalidParameters("alpha and beta must be nonzero");
    if ((a + a.conj()).is_zero()) throw InvalidParameters("a + conj(a) must be nonzero");
    if (radii.size() < 2) throw InvalidParameters("need at least two sample radii");

    NlsParams<G> prm;
    prm.N = 1;
    prm.r = 2;
    prm.cap = cap;
    prm.b = signature_matrix<G>(2, 1);
    prm.a = {mat2(a, G{}, G{}, -a.conj())};
    prm.c = {mat2(alpha, beta.conj(), G{}, G{})};
    prm.d = {mat2(G{}, G{}, beta, alpha.conj())};
    const auto sol = nls_solution(prm, "NN", false);

    const Func<G>& gamma = sol.gamma(0, 0);
    const Series<G> g12 = gamma.map([](const Elem<G>& m) { return m(0, 1); });
    const Series<G> g21 = gamma.map([](const Elem<G>& m) { return m(1, 0); });
    const Series<G> w = scale(g12, G(Rational(-2)));

    NlsClosedFormRecord rec;
    rec.valid_order = w.valid_order();
    rec.radii = radii;
    rec.hermitian = is_zero(g21 - conj(g12));

    const auto d0 = prm.d0();
    const auto dv = Derivation<G>::d_v();
    const Series<G> linear = scale(derive(w, d0), G(Rational(2))) + derive(derive(w, dv), dv);
    const Series<G> cubic = scale(w * conj(w) * w, G(Rational(2)));
    rec.cubic_plus = is_zero(linear + cubic);
    rec.cubic_minus = is_zero(linear - cubic);

    const C ac = a.to_complex(), al = alpha.to_complex(), be = beta.to_complex();
    const C i(0.0, 1.0);
    auto y_conj = [&](double u, double v) {
        const C xbar = std::conj(ac) * v - i * std::conj(ac) * std::conj(ac) * u;
        return std::log(std::conj(al) / std::conj(be)) + 2.0 * xbar;
    };
    auto y_plain = [&](double u, double v) {
        const C x = ac * v + i * ac * ac * u;
        return std::log(al / be) + 2.0 * x;
    };

    rec.origin_deviation = std::abs(evaluate(w, C(0.0), C(0.0)) - sinh_form(ac, y_conj(0.0, 0.0)));
    for (std::size_t k = 0; k < radii.size(); ++k) {
        double worst = 0.0;
        for (int dir = 0; dir < directions; ++dir) {
            const double th = 2.0 * std::numbers::pi * (dir + 0.5) / directions;
            const double u = radii[k] * std::cos(th);
            const double v = radii[k] * std::sin(th);
            const C series = evaluate(w, C(u), C(v));
            worst = std::max(worst, std::abs(series - sinh_form(ac, y_conj(u, v))));
            if (k == 0) {
                rec.deviation_exp_plus_2x =
                    std::max(rec.deviation_exp_plus_2x, std::abs(series - direct_form(ac, al, be, u, v, 2.0)));
                rec.deviation_unconjugated_y =
                    std::max(rec.deviation_unconjugated_y, std::abs(series - sinh_form(ac, y_plain(u, v))));
            }
        }
        rec.max_deviation.push_back(worst);
    }
    rec.log2_ratio = std::log2(rec.max_deviation[0] / rec.max_deviation[1]);
    return rec;
}

} // namespace solilab
