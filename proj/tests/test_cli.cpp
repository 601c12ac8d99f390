#include "doctest.h"

#include "solilab/cli.hpp"
#include "support.hpp"

using namespace solilab;
using solilab::testing::mat;
using R = Rational;
using G = Gaussian;

namespace {

cli::RunConfig config(const std::string& text) { return cli::config_from_json(json::parse(text)); }

json report(const cli::RunResult& r) { return json::parse(r.report); }

} // namespace

TEST_CASE("exact scalars round-trip through strings") {
    const auto m = mat<G>({{G(R(1, 2), R(-2, 3)), G(R(3))}, {G(R(0), R(1)), G(R(-7, 5))}});
    const json j = encode(m);
    CHECK(j[0][0] == "1/2-2/3*i");
    CHECK(j[1][0] == "i");
    CHECK(decode<Matrix<G>>(j) == m);
    CHECK(decode<R>(json(3)) == R(3));
}

TEST_CASE("floats are rejected in exact modes only") {
    CHECK_THROWS_AS(decode<R>(json(0.5)), ParseError);
    CHECK_THROWS_AS(decode<G>(json(0.5)), ParseError);
    CHECK(decode<Complex>(json(0.5)) == Complex(0.5, 0.0));
    CHECK_THROWS_AS(decode<Matrix<R>>(json::parse(R"([["1","2"],["3"]])")), ParseError);
}

TEST_CASE("series dumps are degree-lexicographic and clipped") {
    Series<R> s(2, 4, R(0));
    s.coeff(1, 0) = R(2);
    s.coeff(0, 1) = R(1, 3);
    const json d = encode_series(s, 1);
    REQUIRE(d.size() == 3);
    CHECK(d[0]["exponents"] == json::array({0, 0}));
    CHECK(d[1]["exponents"] == json::array({1, 0}));
    CHECK(d[1]["coefficient"] == "2");
    CHECK(d[2]["coefficient"] == "1/3");
    CHECK(encode_series(s, 10).size() == 10);
}

TEST_CASE("config documents are validated") {
    CHECK_THROWS_AS(config(R"({"system": "toda", "colour": 1})"), ParseError);
    CHECK_THROWS_AS(config(R"({"system": "toda", "n": "three"})"), ParseError);
    auto c = config(R"({"system": "langmuir", "N": 2, "period": 6, "seed": 9})");
    CHECK(c.N == 2);
    CHECK(c.period == 6);
    CHECK(c.seed == 9);
    CHECK_FALSE(c.n.has_value());
}

TEST_CASE("exit codes") {
    CHECK(cli::run(config(R"({"system": "toda", "n": 3, "N": 2, "cap": 8, "seed": 42})")).exit_code == 0);
    CHECK(cli::run(config(R"({"system": "toda", "n": 0})")).exit_code == 2);
    CHECK(cli::run(config(R"({"system": "hyperbolic"})")).exit_code == 2);
    CHECK(cli::run(config(R"({"system": "nls", "mode": "rational"})")).exit_code == 2);
    CHECK(cli::run(config(R"({"system": "quasidet-selftest", "trials": 10})")).exit_code == 0);

    // Two identical exponential families: the Wronskian is singular and
    // explicit parameters are never resampled.
    auto singular = cli::run(config(R"({"system": "toda", "params": {
        "a": [[[["2"]], [["2"]]], [[["3"]], [["3"]]]],
        "p": [[[["1"]], [["1"]]], [[["1"]], [["1"]]]]}})"));
    CHECK(singular.exit_code == 3);
    CHECK(report(singular)["verdict"] == "singular");

    auto floats = cli::run(config(R"({"system": "sine-gordon", "params": {
        "p": [[[1.5]]], "q": [[["1"]]], "a": [[["2"]]]}})"));
    CHECK(floats.exit_code == 2);
}

TEST_CASE("explicit parameters reproduce the documented shape") {
    auto res = cli::run(config(R"({"system": "langmuir", "cap": 8, "lo": 0, "hi": 4, "params": {
        "p": [[["1", "2"], ["0", "1"]]], "q": [[["2", "1"], ["0", "1"]]], "mu": [[["0", "-1"], ["1", "-1"]]]}})"));
    CHECK(res.exit_code == 0);
    auto j = report(res);
    CHECK(j["dimensions"]["N"] == 1);
    CHECK(j["dimensions"]["r"] == 2);
    CHECK(j["parameters"]["mu"][0][0][1] == "-1");

    auto mismatch = cli::run(config(R"({"system": "langmuir", "N": 2, "params": {
        "p": [[["1"]]], "q": [[["2"]]], "mu": [[["3"]]]}})"));
    CHECK(mismatch.exit_code == 2);
}

TEST_CASE("reports carry conventions, valid orders and optional dumps") {
    auto res = cli::run(config(R"({"system": "nls", "mode": "gaussian-rational", "N": 2, "seed": 3,
                                   "dump_series": true, "dump_degree": 1})"));
    REQUIRE(res.exit_code == 0);
    auto j = report(res);
    CHECK(j["verdict"] == "pass");
    CHECK(j["exact_through_degree"] == j["valid_order"].get<int>() - 1);
    CHECK(j["entry"] == "NN");
    CHECK(j["candidates"][0]["nls_residual_zero"] == false);
    CHECK(j["candidates"][1]["nls_residual_zero"] == true);
    CHECK(j["series"]["g"].size() == 3);
    CHECK_FALSE(j.contains("timings"));
    bool found = false;
    for (const auto& c : j["conventions"])
        if (c["name"] == "omit-order-q-minus-1") found = c["holds"].get<bool>();
    CHECK(found);
}

TEST_CASE("lemma checks record hypotheses instead of raising") {
    auto res = cli::run(config(R"({"system": "toda", "n": 2, "N": 1, "seed": 5, "lemmas": true})"));
    CHECK(res.exit_code == 0);
    auto j = report(res);
    bool marchenko = false;
    for (const auto& c : j["checks"]) marchenko = marchenko || c["equation"] == "marchenko";
    CHECK(marchenko);
}

TEST_CASE("reports are byte-identical for a fixed seed") {
    for (const char* sys : {"toda", "sine-gordon", "langmuir"}) {
        auto c = config(std::string(R"({"system": ")") + sys + R"(", "N": 2, "r": 2, "seed": 11})");
        CHECK(cli::run(c).report == cli::run(c).report);
    }
    auto c = config(R"({"system": "toda", "seed": 1, "timings": true})");
    CHECK(report(cli::run(c)).contains("timings"));
}
