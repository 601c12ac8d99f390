#include "doctest.h"

#include "solilab/residual.hpp"
#include "support.hpp"

using namespace solilab;
using solilab::testing::mat;
using solilab::testing::mutate;
using R = Rational;
using G = Gaussian;
using M = Matrix<R>;

namespace {

const auto du = Derivation<R>::d_u();
const auto dv = Derivation<R>::d_v();
const auto dt = Derivation<R>::d_t();

template <class X>
SiteFamily<X> rebuild(const SiteFamily<X>& like, std::vector<X> values) {
    return like.is_cyclic() ? SiteFamily<X>::cyclic(std::move(values))
                            : SiteFamily<X>::window(like.lo(), std::move(values));
}

SiteFamily<Func<R>> constant_family(const std::vector<M>& cs, int arity, int cap, bool cyclic) {
    std::vector<Func<R>> xs;
    for (const auto& c : cs) xs.push_back(Func<R>::constant(arity, cap, c));
    return cyclic ? SiteFamily<Func<R>>::cyclic(std::move(xs)) : SiteFamily<Func<R>>::window(0, std::move(xs));
}

} // namespace

TEST_CASE("constant families solve Toda and Langmuir") {
    const std::vector<M> cs{mat({{R(1), R(2)}, {R(0), R(3)}}), mat({{R(2), R(0)}, {R(1), R(1)}}),
                            mat({{R(1, 2), R(1)}, {R(1), R(3)}})};
    // Constant sites solve both systems only when they are all equal.
    auto rep = check_toda(constant_family({cs[1], cs[1], cs[1]}, 2, 6, true), du, dv);
    CHECK(rep.pass());
    CHECK_FALSE(check_toda(constant_family(cs, 2, 6, true), du, dv).pass());
    CHECK(rep.entries.size() == 3);
    CHECK(rep.valid_order() == 4);

    auto lang = check_langmuir(constant_family({cs[0], cs[0], cs[0], cs[0]}, 1, 6, false), dt, false);
    CHECK(lang.pass());
    CHECK(lang.entries.size() == 2);
    CHECK_FALSE(check_langmuir(constant_family(cs, 1, 6, false), dt).pass());
}

TEST_CASE("a short window is rejected") {
    const M c = mat({{R(1)}});
    CHECK_THROWS_AS(check_langmuir(constant_family({c, c}, 1, 6, false), dt), WindowTooSmall);
}

TEST_CASE("an empty report does not pass") {
    ResidualReport rep{"empty"};
    CHECK_FALSE(rep.pass());
    CHECK(rep.valid_order() == 0);
}

TEST_CASE("mutated Toda solutions fail at the mutated site or its neighbours") {
    Sampler rng(21);
    for (int trial = 0; trial < 4; ++trial) {
        auto sol = toda_solution(random_toda<R>(3, 2, 1, 8, rng), false);
        REQUIRE(check_toda(sol.g, du, dv).pass());
        auto values = sol.g.values();
        const int site = rng.uniform_int(0, 2);
        values[site] = mutate(values[site], rng, valid_order(values[site]) - 3);
        auto rep = check_toda(rebuild(sol.g, values), du, dv);
        CHECK_FALSE(rep.pass());
        REQUIRE(rep.first_failure() != nullptr);
        const int bad = *rep.first_failure()->site;
        CHECK((bad == site || bad == (site + 1) % 3 || bad == (site + 2) % 3));
    }
}

TEST_CASE("matrix-level Toda passes for gamma and breaks down by row") {
    Sampler rng(22);
    auto sol = toda_solution(random_toda<R>(2, 2, 2, 8, rng), false);
    auto rep = check_toda_gamma(sol.gamma, du, dv);
    CHECK(rep.pass());
    CHECK(rep.entries.size() == 4);
    CHECK(rep.entries[1].block == "row 2");
}

TEST_CASE("Marchenko lemma on Toda data") {
    Sampler rng(23);
    for (int n = 1; n <= 3; ++n) {
        auto sol = toda_solution(random_toda<R>(n, 2, 1, 8, rng), false);
        auto rep = check_marchenko(sol.Gamma, sol.A, du, dv);
        CHECK(rep.pass());
    }
}

TEST_CASE("Marchenko hypotheses are enforced or recorded") {
    Sampler rng(24);
    auto sol = toda_solution(random_toda<R>(2, 1, 1, 7, rng), false);
    // A non-constant family in place of A.
    CHECK_THROWS_AS(check_marchenko(sol.Gamma, sol.Gamma, du, dv), HypothesisViolated);
    auto rep = check_marchenko(sol.Gamma, sol.Gamma, du, dv, HypothesisPolicy::record);
    CHECK_FALSE(rep.pass());
    CHECK(rep.first_failure()->label == "hypothesis:d1 A = 0");
}

TEST_CASE("single-derivation Marchenko form on Langmuir data") {
    Sampler rng(25);
    auto sol = langmuir_solution(random_langmuir<R>(2, 1, 10, 0, 4, rng), false);
    auto rep = check_marchenko_langmuir(sol.Gamma, sol.A, dt);
    CHECK(rep.pass());

    auto values = sol.Gamma.values();
    values[2] = values[2].map([&](const Func<R>& x) { return mutate(x, rng, 2); });
    CHECK_THROWS_AS(check_marchenko_langmuir(rebuild(sol.Gamma, values), sol.A, dt), HypothesisViolated);
    auto rec = check_marchenko_langmuir(rebuild(sol.Gamma, values), sol.A, dt, HypothesisPolicy::record);
    CHECK_FALSE(rec.pass());
}

TEST_CASE("mutated Langmuir solution fails") {
    Sampler rng(26);
    auto sol = langmuir_solution(random_langmuir<R>(1, 2, 10, 0, 4, rng), false);
    REQUIRE(check_langmuir(sol.g, dt).pass());
    auto values = sol.g.values();
    values[2] = mutate(values[2], rng, valid_order(values[2]) - 3);
    CHECK_FALSE(check_langmuir(rebuild(sol.g, values), dt).pass());
}

TEST_CASE("NLS residuals") {
    Sampler rng(27);
    const auto b = signature_matrix<G>(2, 1);
    const auto dvg = Derivation<G>::d_v();
    const auto d0 = Derivation<G>::d_u().scaled(G(R(0), R(1)));
    const Func<G> zero(2, 6, Elem<G>(2, G{}));
    CHECK(check_nls(zero, b, d0, dvg).pass());
    CHECK_THROWS_AS(check_nls(zero, Elem<G>(2, G{}), d0, dvg), BNotInvolutive);

    auto prm = random_nls<G>(2, 2, 8, false, rng);
    auto sol = nls_solution(prm, "NN", false);
    auto rep = check_nls(sol.U, prm.b, prm.d0(), dvg, sol.U12, sol.U21);
    CHECK(rep.pass());
    CHECK(rep.entries.size() == 3);
    const Func<G> bad = mutate(sol.U, rng, valid_order(sol.U) - 3);
    CHECK_FALSE(check_nls<G>(bad, prm.b, prm.d0(), dvg).pass());
}

TEST_CASE("corrupted linear data is reported with its equation and site") {
    Sampler rng(28);
    auto prm = random_toda<R>(3, 1, 2, 6, rng);
    auto f = toda_build_f(prm);
    f[1][0] = mutate(f[1][0], rng, 2);
    auto rep = check_toda_data(f, prm.a, du, dv);
    REQUIRE_FALSE(rep.pass());
    const auto* e = rep.first_failure();
    CHECK(e->label.rfind("toda-data", 0) == 0);
    CHECK((*e->site == 0 || *e->site == 1 || *e->site == 2));

    auto lp = random_langmuir<R>(1, 1, 8, 0, 3, rng);
    auto lf = langmuir_build_f(lp);
    auto rows = lf.values();
    rows[3][0] = mutate(rows[3][0], rng, 2);
    auto lrep = check_langmuir_data(rebuild(lf, rows), {lp.a(0)}, dt);
    REQUIRE_FALSE(lrep.pass());
    CHECK(lrep.first_failure()->label.rfind("langmuir-data", 0) == 0);
}

TEST_CASE("raising the cap raises the valid order") {
    Sampler rng(29);
    auto base = random_toda<R>(2, 1, 1, 6, rng);
    int last = 0;
    for (int cap = 6; cap <= 9; ++cap) {
        auto prm = base;
        prm.cap = cap;
        auto rep = check_toda(toda_solution(prm, false).g, du, dv);
        CHECK(rep.pass());
        CHECK(rep.valid_order() > last);
        last = rep.valid_order();
    }
}
