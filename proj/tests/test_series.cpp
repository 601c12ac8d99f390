#include "doctest.h"

#include "solilab/series.hpp"
#include "support.hpp"

using namespace solilab;
using solilab::testing::mat;
using solilab::testing::random_series;
using R = Rational;
using M = Matrix<R>;
using D = Derivation<R>;

namespace {

Series<R> poly2(int cap, std::initializer_list<std::pair<Monomial, R>> terms) {
    Series<R> s(2, cap, R(0));
    for (const auto& [e, c] : terms) s.coeff(e.m, e.n) = c;
    return s;
}

Series<M> random_matrix_series(Sampler& rng, int arity, int cap, std::size_t dim) {
    return random_series(arity, cap, M(dim, R(0)), [&] { return rng.matrix<R>(dim); });
}

} // namespace

TEST_CASE("monomial indexing is degree-lexicographic") {
    CHECK(Series<R>::term_count(2, 3) == 6);
    CHECK(Series<R>::monomial(2, 0) == Monomial{0, 0});
    CHECK(Series<R>::monomial(2, 1) == Monomial{1, 0});
    CHECK(Series<R>::monomial(2, 2) == Monomial{0, 1});
    CHECK(Series<R>::monomial(2, 3) == Monomial{2, 0});
    CHECK(Series<R>::monomial(2, 5) == Monomial{0, 2});
    for (std::size_t k = 0; k < Series<R>::term_count(2, 9); ++k) {
        Monomial e = Series<R>::monomial(2, k);
        CHECK(Series<R>::index(2, e.m, e.n) == k);
    }
}

TEST_CASE("series_mul scalar and noncommutative") {
    auto a = poly2(5, {{{0, 0}, R(1)}, {{1, 0}, R(1)}});
    auto b = poly2(5, {{{0, 0}, R(1)}, {{1, 0}, R(-1)}});
    CHECK(a * b == poly2(5, {{{0, 0}, R(1)}, {{2, 0}, R(-1)}}));

    M A = mat({{R(0), R(1)}, {R(0), R(0)}});
    M B = mat({{R(0), R(0)}, {R(1), R(0)}});
    REQUIRE(!(A * B == B * A));
    Series<M> au(2, 4, M(2, R(0)));
    au.coeff(1, 0) = A;
    Series<M> bv(2, 4, M(2, R(0)));
    bv.coeff(0, 1) = B;
    auto prod = au * bv;
    CHECK(prod.coeff(1, 1) == A * B);
    CHECK(!(prod.coeff(1, 1) == B * A));
}

TEST_CASE("series arithmetic is distributive and associative on random matrix series") {
    Sampler rng(3);
    for (int trial = 0; trial < 5; ++trial) {
        auto a = random_matrix_series(rng, 2, 5, 2);
        auto b = random_matrix_series(rng, 2, 5, 2);
        auto c = random_matrix_series(rng, 2, 5, 2);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a * b) * c == a * (b * c));
    }
}

TEST_CASE("valid order bookkeeping") {
    Sampler rng(4);
    auto a = random_matrix_series(rng, 2, 6, 2);
    auto b = random_matrix_series(rng, 2, 6, 2);
    b.restrict_valid_order(4);
    CHECK((a + b).valid_order() == 4);
    CHECK((a * b).valid_order() == 4);
    CHECK(derive(a, D::d_u()).valid_order() == 5);
    CHECK(inverse(one_like(a) + a.map([](const M& x) { return x; }) - a).valid_order() == 6);
    auto zero = Series<M>(2, 6, M(2, R(0)));
    zero.restrict_valid_order(0);
    CHECK_THROWS_AS(derive(zero, D::d_u()), InsufficientOrder);
    // coefficients beyond the valid order are cleared
    for (std::size_t k = b.valid_terms(); k < b.size(); ++k) CHECK(is_zero(b[k]));
}

TEST_CASE("series_derive") {
    auto uv = poly2(4, {{{1, 1}, R(1)}});
    CHECK(derive(uv, D::d_u()) == poly2(4, {{{0, 1}, R(1)}}));
    CHECK(is_zero(derive(poly2(4, {{{0, 0}, R(5)}}), D::d_u())));
    CHECK_THROWS_AS(derive(uv, D::d_t()), MissingVariable);
    CHECK_THROWS_AS(derive(Series<R>(1, 4, R(0)), D::d_u()), MissingVariable);

    Series<Gaussian> z(2, 4, Gaussian(0));
    z.coeff(2, 0) = Gaussian(1);
    auto d0 = Derivation<Gaussian>::d_u().scaled(Gaussian::i());
    auto dz = derive(z, d0);
    CHECK(dz.coeff(1, 0) == Gaussian(R(0), R(2)));
}

TEST_CASE("series_exp_linear") {
    CHECK(exp_linear(R(0), R(0), 6) == one_like(Series<R>(2, 6, R(0))));
    auto e = exp_linear(R(3), R(0), 6);
    CHECK(e.coeff(4, 0) == R(81, 24));
    CHECK(e.coeff(0, 1) == R(0));
    CHECK(exp_linear(R(2), 5).coeff(3) == R(8, 6));

    Sampler rng(9);
    M cv = rng.invertible_matrix<R>(3);
    M cu = inverse(cv);
    auto ex = exp_linear(cu, cv, 7);
    CHECK(derive(ex, D::d_u()) == ex * cu);
    CHECK(derive(ex, D::d_v()) == ex * cv);
    CHECK(derive(ex, D::d_u()).valid_order() == 6);

    M a = mat({{R(0), R(1)}, {R(0), R(0)}});
    M b = mat({{R(0), R(0)}, {R(1), R(0)}});
    CHECK_THROWS_AS(exp_linear(a, b, 4), NoncommutingExponents);
}

TEST_CASE("series_inverse") {
    Series<R> one_minus_u(2, 6, R(0));
    one_minus_u.coeff(0, 0) = R(1);
    one_minus_u.coeff(1, 0) = R(-1);
    auto inv = inverse(one_minus_u);
    for (int m = 0; m < 6; ++m) CHECK(inv.coeff(m, 0) == R(1));
    CHECK(inv.coeff(1, 1) == R(0));

    M c = mat({{R(1), R(2)}, {R(3), R(4)}});
    CHECK(inverse(Series<M>::constant(2, 4, c)) == Series<M>::constant(2, 4, inverse(c)));

    Sampler rng(21);
    for (int arity : {1, 2}) {
        for (int trial = 0; trial < 5; ++trial) {
            auto s = random_matrix_series(rng, arity, 6, 2);
            if (!invertible(s[0])) continue;
            auto si = inverse(s);
            CHECK(s * si == one_like(s));
            CHECK(si * s == one_like(s));
        }
    }
    Series<M> singular(2, 4, M(2, R(0)));
    CHECK_THROWS_AS(inverse(singular), SingularConstantTerm);
}

TEST_CASE("derivation properties: Leibniz, commutation, inverse-derivative identity") {
    Sampler rng(33);
    const D derivs[] = {D::d_u(), D::d_v()};
    for (int trial = 0; trial < 4; ++trial) {
        auto a = random_matrix_series(rng, 2, 6, 2);
        auto b = random_matrix_series(rng, 2, 6, 2);
        for (const D& d : derivs) {
            CHECK(derive(a * b, d) == derive(a, d) * b + a * derive(b, d));
            if (invertible(a[0])) {
                auto ai = inverse(a);
                CHECK(derive(ai, d) == -(ai * derive(a, d) * ai));
            }
        }
        CHECK(derive(derive(a, D::d_u()), D::d_v()) == derive(derive(a, D::d_v()), D::d_u()));
    }
}

TEST_CASE("matrix over series inverts via nesting swap") {
    Sampler rng(8);
    Matrix<Series<M>> w(2, Series<M>(2, 5, M(2, R(0))));
    for (auto& e : w.entries()) e = random_matrix_series(rng, 2, 5, 2);
    auto swapped = to_series_form(w);
    CHECK(to_matrix_form(swapped) == w);
    if (invertible(flatten(to_series_form(w)[0]))) {
        auto wi = inverse(w);
        CHECK(w * wi == one_like(w));
        CHECK(wi * w == one_like(w));
    }
}

TEST_CASE("numeric evaluation of scalar series") {
    auto e = exp_linear(R(1), R(-1), 12);
    Complex val = evaluate(e, {0.1, 0.0}, {0.05, 0.0});
    CHECK(val.real() == doctest::Approx(std::exp(0.05)).epsilon(1e-12));
}
