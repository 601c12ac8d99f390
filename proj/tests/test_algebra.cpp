#include "doctest.h"

#include "solilab/matrix.hpp"
#include "solilab/oracle.hpp"
#include "solilab/sampling.hpp"
#include "support.hpp"

using namespace solilab;
using solilab::testing::mat;
using R = Rational;

TEST_CASE("rationals are canonical") {
    CHECK(R(2, 4) == R(1, 2));
    CHECK(R(1, -2).str() == "-1/2");
    CHECK(R(6, 3).str() == "2");
    CHECK(R::parse(" -10/4 ") == R(-5, 2));
    CHECK(R::parse("+3") == R(3));
    CHECK_THROWS_AS(R::parse("1.5"), ParseError);
    CHECK_THROWS_AS(R::parse("1/0"), ParseError);
    CHECK_THROWS_AS(R::parse("1/-2"), ParseError);
}

TEST_CASE("gaussian rationals") {
    Gaussian i = Gaussian::i();
    CHECK(i * i == Gaussian(-1));
    CHECK(Gaussian::parse("1/2+3/4*i") == Gaussian(R(1, 2), R(3, 4)));
    CHECK(Gaussian::parse("-i") == Gaussian(R(0), R(-1)));
    CHECK(Gaussian::parse("2-i") == Gaussian(R(2), R(-1)));
    CHECK(Gaussian::parse("-5/3*i") == Gaussian(R(0), R(-5, 3)));
    CHECK(Gaussian::parse("7") == Gaussian(R(7)));
    for (const char* text : {"1/2+3/4*i", "-i", "i", "2-i", "-5/3*i", "0", "-1/7-2/3*i"})
        CHECK(Gaussian::parse(Gaussian::parse(text).str()).str() == Gaussian::parse(text).str());
    Gaussian z(R(3), R(-4));
    CHECK(z * z.inverse() == Gaussian(1));
    CHECK(z.conj() == Gaussian(R(3), R(4)));
}

TEST_CASE("complex float parsing") {
    Complex z = parse_complex("0.5-2*i");
    CHECK(z.real() == doctest::Approx(0.5));
    CHECK(z.imag() == doctest::Approx(-2.0));
    CHECK(parse_complex(format_complex(z)) == z);
}

TEST_CASE("mat_mul identity and order of factors") {
    Matrix<R> m = mat({{R(1), R(2)}, {R(3), R(4)}});
    CHECK(Matrix<R>::identity(2, R(0)) * m == m);
    Matrix<R> a = mat({{R(0), R(1)}, {R(0), R(0)}});
    Matrix<R> b = mat({{R(0), R(0)}, {R(1), R(0)}});
    CHECK(a * b == mat({{R(1), R(0)}, {R(0), R(0)}}));
    CHECK(b * a == mat({{R(0), R(0)}, {R(0), R(1)}}));
    CHECK_THROWS_AS(a * Matrix<R>(3, R(0)), ShapeMismatch);
}

TEST_CASE("mat_mul is associative on random 3x3 rationals") {
    Sampler rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        auto a = rng.matrix<R>(3), b = rng.matrix<R>(3), c = rng.matrix<R>(3);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("nested matrices multiply in block order") {
    using M2 = Matrix<R>;
    Sampler rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        Matrix<M2> a(2, M2(2, R(0))), b(2, M2(2, R(0)));
        for (auto& e : a.entries()) e = rng.matrix<R>(2);
        for (auto& e : b.entries()) e = rng.matrix<R>(2);
        CHECK(flatten(a * b) == flatten(a) * flatten(b));
        CHECK(renest(flatten(a), a.proto()) == a);
    }
}

TEST_CASE("mat_inverse") {
    CHECK(inverse(Matrix<R>::identity(3, R(0))) == Matrix<R>::identity(3, R(0)));
    Matrix<R> m = mat({{R(1), R(2)}, {R(3), R(4)}});
    Matrix<R> inv = inverse(m);
    CHECK(inv == mat({{R(-2), R(1)}, {R(3, 2), R(-1, 2)}}));
    CHECK(m * inv == Matrix<R>::identity(2, R(0)));
    CHECK_THROWS_AS(inverse(mat({{R(1), R(2)}, {R(2), R(4)}})), SingularMatrix);
}

TEST_CASE("inverse is two-sided on random invertible matrices, flat and nested") {
    Sampler rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        auto m = rng.invertible_matrix<R>(4);
        auto inv = inverse(m);
        CHECK(m * inv == one_like(m));
        CHECK(inv * m == one_like(m));
    }
    using M2 = Matrix<R>;
    for (int trial = 0; trial < 10; ++trial) {
        Matrix<M2> m(3, M2(2, R(0)));
        for (auto& e : m.entries()) e = rng.matrix<R>(2);
        if (!invertible(m)) continue;
        auto inv = inverse(m);
        CHECK(m * inv == one_like(m));
        CHECK(inv * m == one_like(m));
    }
    Matrix<Gaussian> g(3, Gaussian(0));
    for (auto& e : g.entries()) e = rng.scalar<Gaussian>();
    CHECK(g * inverse(g) == one_like(g));
}

TEST_CASE("complex float inversion is approximate") {
    Sampler rng(2);
    auto m = rng.invertible_matrix<Complex>(3);
    CHECK(approx_equal(m * inverse(m), one_like(m)));
    Matrix<Complex> singular(2, Complex(1.0, 0.0));
    CHECK_THROWS_AS(inverse(singular), SingularMatrix);
}

TEST_CASE("leibniz determinant oracle") {
    CHECK(leibniz_determinant(mat({{R(1), R(2)}, {R(3), R(4)}})) == R(-2));
    CHECK(leibniz_determinant(Matrix<R>::identity(4, R(0))) == R(1));
    auto m = mat({{R(2), R(0), R(1)}, {R(1), R(3), R(2)}, {R(1), R(1), R(2)}});
    CHECK(leibniz_determinant(m) == R(6));
}

TEST_CASE("commutator") {
    Matrix<R> a = mat({{R(0), R(1)}, {R(0), R(0)}});
    Matrix<R> b = mat({{R(0), R(0)}, {R(1), R(0)}});
    CHECK(commutator(a, b) == mat({{R(1), R(0)}, {R(0), R(-1)}}));
}
