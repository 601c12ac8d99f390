#include "solilab/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <set>

#include "CLI11.hpp"
#include "solilab/oracle.hpp"
#include "solilab/residual.hpp"

namespace solilab::cli {

namespace {

const std::set<std::string> kSystems{"toda", "sine-gordon", "langmuir", "nls", "quasidet-selftest"};
const std::set<std::string> kModes{"rational", "gaussian-rational", "complex-float"};

// Raised once resampling is exhausted (or parameters were explicit).
class Exhausted : public Error {
public:
    using Error::Error;
};

bool is_singularity(const Error& e) {
    return dynamic_cast<const SingularMatrix*>(&e) || dynamic_cast<const SingularSubmatrix*>(&e) ||
           dynamic_cast<const SingularConstantTerm*>(&e) || dynamic_cast<const SingularCell*>(&e) ||
           dynamic_cast<const SingularWronskian*>(&e) || dynamic_cast<const NonInvertibleSolution*>(&e) ||
           dynamic_cast<const EvaluationSingularity*>(&e);
}

bool is_config_error(const Error& e) {
    return dynamic_cast<const InvalidParameters*>(&e) || dynamic_cast<const ParseError*>(&e) ||
           dynamic_cast<const BNotInvolutive*>(&e) || dynamic_cast<const ShapeMismatch*>(&e);
}

json entry_json(const ResidualEntry& e) {
    json j;
    j["label"] = e.label;
    j["site"] = e.site ? json(*e.site) : json(nullptr);
    if (!e.block.empty()) j["block"] = e.block;
    j["zero"] = e.zero;
    j["max_abs"] = e.max_abs;
    j["valid_order"] = e.valid_order;
    return j;
}

json report_json(const ResidualReport& r) {
    json j;
    j["equation"] = r.equation;
    j["pass"] = r.pass();
    j["valid_order"] = r.valid_order();
    j["exact_through_degree"] = r.valid_order() - 1;
    json entries = json::array();
    for (const auto& e : r.entries) entries.push_back(entry_json(e));
    j["entries"] = std::move(entries);
    if (!r.notes.empty()) j["notes"] = r.notes;
    return j;
}

json conventions_json(const std::vector<ConventionCheck>& cs) {
    json out = json::array();
    for (const auto& c : cs)
        out.push_back({{"name", c.name},
                       {"formula", c.formula},
                       {"entries", c.entries},
                       {"defined", c.defined},
                       {"matched", c.matched},
                       {"holds", c.holds()}});
    return out;
}

template <class A>
json encode_list(const std::vector<A>& xs) {
    json out = json::array();
    for (const auto& x : xs) out.push_back(encode(x));
    return out;
}

template <class A>
json encode_grid(const std::vector<std::vector<A>>& xs) {
    json out = json::array();
    for (const auto& row : xs) out.push_back(encode_list(row));
    return out;
}

template <class A>
std::vector<std::vector<A>> decode_grid(const json& j, const std::string& what) {
    if (!j.is_array()) throw ParseError(what + " must be an array of arrays");
    std::vector<std::vector<A>> out;
    for (const auto& row : j) out.push_back(decode_list<A>(row, what));
    return out;
}

const json& param(const json& params, const std::string& key) {
    if (!params.contains(key)) throw InvalidParameters("explicit parameters need '" + key + "'");
    return params.at(key);
}

int elem_dim(const json& m) {
    if (!m.is_array() || m.empty()) throw ParseError("S elements must be non-empty square arrays");
    return static_cast<int>(m.size());
}

class Stopwatch {
public:
    void lap(const std::string& name) {
        const auto now = std::chrono::steady_clock::now();
        laps_[name] = std::chrono::duration<double, std::milli>(now - last_).count();
        last_ = now;
    }
    json to_json() const {
        json j;
        double total = 0;
        for (const auto& [k, v] : laps_) {
            j[k + "_ms"] = v;
            total += v;
        }
        j["total_ms"] = total;
        return j;
    }

private:
    std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
    std::map<std::string, double> laps_;
};

/// Collects checks and the overall verdict of one run.
struct Session {
    const RunConfig& cfg;
    Sampler rng;
    json out;
    bool ok = true;
    int valid = std::numeric_limits<int>::max();
    int attempts_used = 0;
    Stopwatch clock;

    explicit Session(const RunConfig& c) : cfg(c), rng(c.seed) {
        out["checks"] = json::array();
        out["conventions"] = json::array();
    }

    bool explicit_params() const { return !cfg.params.is_null(); }

    void add(const ResidualReport& r) {
        out["checks"].push_back(report_json(r));
        ok = ok && r.pass();
        valid = std::min(valid, r.valid_order());
    }

    void require(const std::string& name, bool holds, const std::string& what) {
        out["checks"].push_back({{"equation", name}, {"pass", holds}, {"statement", what}});
        ok = ok && holds;
    }

    void conventions(const std::vector<ConventionCheck>& cs) {
        for (auto& c : conventions_json(cs)) out["conventions"].push_back(c);
    }

    void note(const std::string& text) { out["notes"].push_back(text); }

    HypothesisPolicy policy() const { return HypothesisPolicy::record; }

    /// Draws parameters and solves, resampling on singular draws.
    template <class Fn>
    auto solve(Fn&& attempt) {
        const int limit = explicit_params() ? 1 : std::max(1, cfg.attempts);
        for (int k = 1;; ++k) {
            attempts_used = k;
            try {
                return attempt();
            } catch (const Error& e) {
                if (!is_singularity(e)) throw;
                if (k >= limit)
                    throw Exhausted(std::string(e.what()) + " (after " + std::to_string(k) + " attempt" +
                                    (k == 1 ? "" : "s") + ")");
            }
        }
    }

    template <class X>
    void dump(const std::string& name, const SiteFamily<Series<X>>& fam) {
        if (!cfg.dump_series) return;
        json sites = json::array();
        for (int k : fam.sites()) sites.push_back({{"site", k}, {"terms", encode_series(fam[k], cfg.dump_degree)}});
        out["series"][name] = std::move(sites);
    }

    template <class X>
    void dump(const std::string& name, const Series<X>& s) {
        if (!cfg.dump_series) return;
        out["series"][name] = encode_series(s, cfg.dump_degree);
    }
};

// ------------------------------------------------------------------ Toda

template <Field F>
TodaParams<F> toda_params(const RunConfig& cfg, Sampler& rng) {
    if (cfg.params.is_null()) {
        const int N = cfg.N.value_or(1);
        return random_toda<F>(cfg.n.value_or(2), N, cfg.r.value_or(1), cfg.cap.value_or(N + 6), rng);
    }
    TodaParams<F> prm;
    prm.a = decode_grid<Elem<F>>(param(cfg.params, "a"), "a");
    prm.p = decode_grid<Elem<F>>(param(cfg.params, "p"), "p");
    prm.n = cfg.n.value_or(static_cast<int>(prm.a.size()));
    prm.N = cfg.N.value_or(static_cast<int>(prm.p.size()));
    prm.r = cfg.r.value_or(prm.a.empty() || prm.a[0].empty() ? 1 : static_cast<int>(prm.a[0][0].dim()));
    prm.cap = cfg.cap.value_or(prm.N + 6);
    prm.validate();
    return prm;
}

template <Field F>
void run_toda(Session& s) {
    const auto du = Derivation<F>::d_u(), dv = Derivation<F>::d_v();
    auto [prm, sol] = s.solve([&] {
        auto prm = toda_params<F>(s.cfg, s.rng);
        auto sol = toda_solution(prm);
        return std::pair{prm, sol};
    });
    s.out["dimensions"] = {{"n", prm.n}, {"N", prm.N}, {"r", prm.r}, {"cap", prm.cap}};
    s.out["parameters"] = {{"a", encode_grid(prm.a)}, {"p", encode_grid(prm.p)}};
    s.clock.lap("solve");
    s.add(check_toda_data(sol.f, prm.a, du, dv));
    s.add(check_toda(sol.g, du, dv));
    s.add(check_toda_gamma(sol.gamma, du, dv));
    if (s.cfg.lemmas) s.add(check_marchenko(sol.Gamma, sol.A, du, dv, s.policy()));
    s.clock.lap("check");
    s.conventions(sol.conventions);
    s.note("R_j = a_j R with (xR)_i = x_{i+1}");
    s.note("Marchenko constants: A_k = diag(a_{k+1,1}, ..., a_{k+1,N}), so d_v W_k = W_{k+1} A_k");
    s.note("g_k is the bottom-left entry of gamma_k = (d_v W_k) W_k^{-1}");
    s.dump("g", sol.g);
}

// ----------------------------------------------------------- sine-Gordon

template <Field F>
SineGordonParams<F> sine_gordon_params(const RunConfig& cfg, Sampler& rng) {
    if (cfg.n && *cfg.n != 2) throw InvalidParameters("sine-Gordon is the 2-periodic Toda system; n must be 2");
    if (cfg.params.is_null()) return random_sine_gordon<F>(cfg.N.value_or(1), cfg.r.value_or(1), cfg.cap.value_or(8), rng);
    SineGordonParams<F> prm;
    prm.p = decode_list<Elem<F>>(param(cfg.params, "p"), "p");
    prm.q = decode_list<Elem<F>>(param(cfg.params, "q"), "q");
    prm.a = decode_list<Elem<F>>(param(cfg.params, "a"), "a");
    prm.N = cfg.N.value_or(static_cast<int>(prm.a.size()));
    prm.r = cfg.r.value_or(prm.a.empty() ? 1 : static_cast<int>(prm.a[0].dim()));
    prm.cap = cfg.cap.value_or(8);
    prm.validate();
    return prm;
}

template <Field F>
void run_sine_gordon(Session& s) {
    const auto du = Derivation<F>::d_u(), dv = Derivation<F>::d_v();
    auto [prm, sol] = s.solve([&] {
        auto prm = sine_gordon_params<F>(s.cfg, s.rng);
        auto sol = sine_gordon_solution(prm);
        return std::pair{prm, sol};
    });
    s.out["dimensions"] = {{"n", 2}, {"N", prm.N}, {"r", prm.r}, {"cap", prm.cap}};
    s.out["parameters"] = {{"p", encode_list(prm.p)}, {"q", encode_list(prm.q)}, {"a", encode_list(prm.a)}};
    s.clock.lap("solve");
    s.add(check_toda_data(sol.toda.f, prm.as_toda().a, du, dv));
    s.add(check_toda(sol.toda.g, du, dv));
    s.add(check_toda_gamma(sol.toda.gamma, du, dv));
    if (s.cfg.lemmas) s.add(check_marchenko(sol.toda.Gamma, sol.toda.A, du, dv, s.policy()));
    s.require("toda-construction", sol.matches_toda_construction,
              "f_0j = p_j e_j + q_j e_j^-, f_1j = p_j e_j - q_j e_j^- is the Toda data for p-row (p+q, p-q)");
    if (prm.N == 1)
        s.require("closed-form", sol.closed_form_matches, "N=1 closed form equals the pipeline at both sites");
    s.clock.lap("check");
    s.conventions(sol.toda.conventions);
    s.conventions(sol.readings);
    if (prm.N == 2)
        s.note("two-line N=2 display: the first line needs f_{i-1,2} in place of f_{02}; the second holds as printed");
    s.dump("g", sol.toda.g);
}

// -------------------------------------------------------------- Langmuir

template <Field F>
LangmuirParams<F> langmuir_params(const RunConfig& cfg, Sampler& rng) {
    LangmuirParams<F> prm;
    if (cfg.params.is_null()) {
        prm = random_langmuir<F>(cfg.N.value_or(1), cfg.r.value_or(1), cfg.cap.value_or(10), cfg.lo, cfg.hi, rng);
    } else {
        prm.p = decode_list<Elem<F>>(param(cfg.params, "p"), "p");
        prm.q = decode_list<Elem<F>>(param(cfg.params, "q"), "q");
        prm.mu = decode_list<Elem<F>>(param(cfg.params, "mu"), "mu");
        prm.N = cfg.N.value_or(static_cast<int>(prm.mu.size()));
        prm.r = cfg.r.value_or(prm.mu.empty() ? 1 : static_cast<int>(prm.mu[0].dim()));
        prm.cap = cfg.cap.value_or(10);
        prm.lo = cfg.lo;
        prm.hi = cfg.hi;
    }
    prm.period = cfg.period;
    prm.validate();
    return prm;
}

template <Field F>
void run_langmuir(Session& s) {
    const auto dt = Derivation<F>::d_t();
    auto [prm, sol] = s.solve([&] {
        auto prm = langmuir_params<F>(s.cfg, s.rng);
        auto sol = langmuir_solution(prm);
        return std::pair{prm, sol};
    });
    s.out["dimensions"] = {{"N", prm.N}, {"r", prm.r}, {"cap", prm.cap}};
    if (prm.period) s.out["period"] = *prm.period;
    else s.out["window"] = {prm.lo, prm.hi};
    s.out["parameters"] = {{"p", encode_list(prm.p)}, {"q", encode_list(prm.q)}, {"mu", encode_list(prm.mu)}};
    s.clock.lap("solve");
    std::vector<Elem<F>> as;
    for (int j = 0; j < prm.N; ++j) as.push_back(prm.a(j));
    s.add(check_langmuir_data(sol.f, as, dt));
    s.add(check_langmuir(sol.g, dt, prm.r == 1));
    if (s.cfg.lemmas) s.add(check_marchenko_langmuir(sol.Gamma, sol.A, dt, s.policy()));
    s.require("frobenius-quotient", sol.quotient_closed_form_holds,
              "U_k = gamma_k gamma_{k-1}^{-1} equals its Frobenius-quotient closed form");
    if (prm.N == 1) s.require("closed-form", sol.closed_form_matches, "N=1 closed form equals the pipeline");
    s.clock.lap("check");
    s.conventions(sol.conventions);
    json cands = json::array();
    for (const auto& c : sol.candidates)
        cands.push_back({{"name", c.name}, {"formula", c.formula}, {"equals_pipeline", c.equals_pipeline}});
    s.out["candidates"] = std::move(cands);
    s.note("g_k is the (N,N) entry of U_k = gamma_k gamma_{k-1}^{-1}; the additive form uses (N,N) entries");
    s.dump("g", sol.g);
}

// ------------------------------------------------------------------- NLS

template <Field F>
NlsParams<F> nls_params(const RunConfig& cfg, Sampler& rng) {
    NlsParams<F> prm;
    if (cfg.params.is_null()) {
        prm = random_nls<F>(cfg.N.value_or(1), cfg.r.value_or(2), cfg.cap.value_or(8), cfg.heat, rng);
    } else {
        prm.c = decode_list<Elem<F>>(param(cfg.params, "c"), "c");
        prm.d = decode_list<Elem<F>>(param(cfg.params, "d"), "d");
        prm.a = decode_list<Elem<F>>(param(cfg.params, "a"), "a");
        prm.N = cfg.N.value_or(static_cast<int>(prm.a.size()));
        if (cfg.params.contains("b")) {
            prm.r = cfg.r.value_or(elem_dim(cfg.params["b"]));
            prm.b = decode<Elem<F>>(cfg.params["b"]);
        } else {
            prm.r = cfg.r.value_or(prm.a.empty() ? 2 : static_cast<int>(prm.a[0].dim()));
            prm.b = signature_matrix<F>(prm.r, (prm.r + 1) / 2);
        }
        prm.cap = cfg.cap.value_or(8);
        prm.heat = cfg.heat;
    }
    prm.validate();
    return prm;
}

template <Field F>
void run_nls(Session& s) {
    const auto dv = Derivation<F>::d_v();
    auto [prm, sol] = s.solve([&] {
        auto prm = nls_params<F>(s.cfg, s.rng);
        auto sol = nls_solution(prm, s.cfg.entry);
        return std::pair{prm, sol};
    });
    s.out["dimensions"] = {{"N", prm.N}, {"r", prm.r}, {"cap", prm.cap}};
    s.out["variant"] = prm.heat ? "heat" : "schroedinger";
    s.out["entry"] = sol.entry;
    s.out["parameters"] = {
        {"b", encode(prm.b)}, {"c", encode_list(prm.c)}, {"d", encode_list(prm.d)}, {"a", encode_list(prm.a)}};
    s.clock.lap("solve");
    const auto d0 = prm.d0();
    s.add(check_nls_data(sol.wronskian.W, prm.b, sol.A, d0, dv));
    s.add(check_nls(sol.U, prm.b, d0, dv, sol.U12, sol.U21));
    s.add(check_nls_matrix(sol.gamma, prm.b, d0, dv));
    if (prm.N == 1)
        s.require("closed-form", sol.closed_form_matches, "some reading of the N=1 display equals the pipeline");
    json cands = json::array();
    for (const auto& c : sol.candidates)
        cands.push_back({{"entry", c.name}, {"nls_residual_zero", check_nls<F>(c.U, prm.b, d0, dv).pass()}});
    s.out["candidates"] = std::move(cands);
    s.clock.lap("check");
    s.conventions(sol.conventions);
    s.conventions(sol.display_readings);
    s.note("U = g b - b g with g the (N,N) entry of gamma; the (N,1) entry solves the system only for N = 1");
    s.dump("g", sol.g);
    s.dump("U", sol.U);
}

// ------------------------------------------------------- quasidet oracle

template <Field F>
void run_selftest(Session& s) {
    json sizes = json::array();
    for (std::size_t n = 2; n <= 4; ++n) {
        std::size_t checked = 0, skipped = 0, failed = 0;
        for (int t = 0; t < s.cfg.trials; ++t) {
            const Matrix<F> x = s.rng.matrix<F>(n);
            const F det = leibniz_determinant(x);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    const F minor = leibniz_determinant(x.submatrix(i, j));
                    if (!invertible(minor)) {
                        ++skipped;
                        continue;
                    }
                    ++checked;
                    const F sign = (i + j) % 2 ? -one_like(det) : one_like(det);
                    if (!approx_equal(quasideterminant(x, i, j) * minor, sign * det)) ++failed;
                }
        }
        sizes.push_back({{"size", n}, {"checked", checked}, {"skipped_singular_minor", skipped}, {"failed", failed}});
        s.ok = s.ok && failed == 0 && checked > 0;
    }
    s.out["dimensions"] = {{"trials", s.cfg.trials}};
    s.out["quasideterminant_oracle"] = std::move(sizes);
    s.note("oracle: |X|_ij det X^ij = (-1)^(i+j) det X with Leibniz determinants");
    s.clock.lap("check");
}

template <Field F>
void dispatch(Session& s) {
    const std::string& sys = s.cfg.system;
    if (sys == "toda") run_toda<F>(s);
    else if (sys == "sine-gordon") run_sine_gordon<F>(s);
    else if (sys == "langmuir") run_langmuir<F>(s);
    else if (sys == "nls") run_nls<F>(s);
    else run_selftest<F>(s);
}

template <class T>
void read_key(const json& doc, const char* key, T& into) {
    if (doc.contains(key)) into = doc.at(key).get<T>();
}

template <class T>
void read_key(const json& doc, const char* key, std::optional<T>& into) {
    if (doc.contains(key) && !doc.at(key).is_null()) into = doc.at(key).get<T>();
}

void validate_config(const RunConfig& c) {
    if (!kSystems.count(c.system)) throw InvalidParameters("unknown system '" + c.system + "'");
    if (!kModes.count(c.mode)) throw InvalidParameters("unknown scalar mode '" + c.mode + "'");
    for (auto [name, v] : {std::pair{"n", c.n}, {"N", c.N}, {"r", c.r}, {"cap", c.cap}})
        if (v && *v < 1) throw InvalidParameters(std::string(name) + " must be at least 1");
    if (c.trials < 1) throw InvalidParameters("trials must be at least 1");
    if (c.dump_degree < 0) throw InvalidParameters("dump-degree must be non-negative");
    if (c.entry != "NN" && c.entry != "N1") throw InvalidParameters("entry must be NN or N1");
    if (!c.params.is_null() && !c.params.is_object()) throw InvalidParameters("params must be an object");
}

} // namespace

RunConfig config_from_json(const json& doc) {
    static const std::set<std::string> known{"system", "mode",  "n",           "N",           "r",
                                             "cap",    "seed",  "params",      "lo",          "hi",
                                             "period", "heat",  "entry",       "dump_series", "dump_degree",
                                             "report", "trials", "attempts",   "lemmas",      "timings"};
    if (!doc.is_object()) throw ParseError("config must be a JSON object");
    for (const auto& [k, v] : doc.items())
        if (!known.count(k)) throw ParseError("unknown config key '" + k + "'");
    RunConfig c;
    try {
        read_key(doc, "system", c.system);
        read_key(doc, "mode", c.mode);
        read_key(doc, "n", c.n);
        read_key(doc, "N", c.N);
        read_key(doc, "r", c.r);
        read_key(doc, "cap", c.cap);
        read_key(doc, "seed", c.seed);
        if (doc.contains("params")) c.params = doc.at("params");
        read_key(doc, "lo", c.lo);
        read_key(doc, "hi", c.hi);
        read_key(doc, "period", c.period);
        read_key(doc, "heat", c.heat);
        read_key(doc, "entry", c.entry);
        read_key(doc, "dump_series", c.dump_series);
        read_key(doc, "dump_degree", c.dump_degree);
        read_key(doc, "report", c.report_path);
        read_key(doc, "trials", c.trials);
        read_key(doc, "attempts", c.attempts);
        read_key(doc, "lemmas", c.lemmas);
        read_key(doc, "timings", c.timings);
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad config value: ") + e.what());
    }
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError("config " + path + " is not valid JSON: " + e.what());
    }
    return config_from_json(doc);
}

RunResult run(const RunConfig& config) {
    RunResult res;
    json report;
    report["system"] = config.system;
    report["mode"] = config.mode;
    report["seed"] = config.seed;
    report["explicit_parameters"] = !config.params.is_null();
    report["verdict"] = nullptr;

    Session s(config);
    s.out["notes"] = json::array();
    std::string error;
    try {
        validate_config(config);
        if (config.mode == "rational") dispatch<Rational>(s);
        else if (config.mode == "gaussian-rational") dispatch<Gaussian>(s);
        else dispatch<Complex>(s);
        res.exit_code = s.ok ? ExitCode::pass : ExitCode::residual_failure;
    } catch (const Exhausted& e) {
        error = e.what();
        res.exit_code = ExitCode::singular;
    } catch (const Error& e) {
        error = e.what();
        if (is_config_error(e)) res.exit_code = ExitCode::config_error;
        else if (is_singularity(e)) res.exit_code = ExitCode::singular;
        else res.exit_code = ExitCode::residual_failure;  // e.g. a closed form that does not match
    }

    static const char* verdicts[] = {"pass", "fail", "config-error", "singular"};
    report["verdict"] = verdicts[res.exit_code];
    if (!error.empty()) report["error"] = error;
    if (config.system != "quasidet-selftest" && s.valid != std::numeric_limits<int>::max()) {
        report["valid_order"] = s.valid;
        report["exact_through_degree"] = s.valid - 1;
    }
    if (s.attempts_used) report["attempts_used"] = s.attempts_used;
    for (auto& [k, v] : s.out.items()) report[k] = v;
    if (config.timings) report["timings"] = s.clock.to_json();

    res.report = report.dump(2) + "\n";
    res.summary = config.system + ": " + verdicts[res.exit_code] + (error.empty() ? "" : " (" + error + ")");
    return res;
}

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (!args.empty() && args.front() == "run") args.erase(args.begin());
    std::reverse(args.begin(), args.end());  // CLI11 consumes a reversed vector

    CLI::App app{"Wronskian soliton constructions with exact residual checks"};
    std::string system, config_path, mode, report_path;
    int n = 0, N = 0, r = 0, cap = 0, trials = 0, attempts = 0, dump_degree = 0, period = 0, lo = 0, hi = 0;
    std::uint64_t seed = 0;
    std::string entry;
    bool dump = false, lemmas = false, timings = false, heat = false;

    app.add_option("system", system, "toda | sine-gordon | langmuir | nls | quasidet-selftest");
    auto* o_config = app.add_option("--config", config_path, "JSON parameter file");
    auto* o_n = app.add_option("--n", n, "lattice period n");
    auto* o_N = app.add_option("--N", N, "soliton number N");
    auto* o_r = app.add_option("--r", r, "size of the r x r blocks of S");
    auto* o_cap = app.add_option("--cap", cap, "series truncation cap");
    auto* o_seed = app.add_option("--seed", seed, "seed for random parameters");
    auto* o_mode = app.add_option("--mode", mode, "rational | gaussian-rational | complex-float");
    auto* o_report = app.add_option("--report", report_path, "report path");
    auto* o_dump = app.add_flag("--dump-series", dump, "include truncated series in the report");
    auto* o_degree = app.add_option("--dump-degree", dump_degree, "highest total degree dumped");
    auto* o_trials = app.add_option("--trials", trials, "random matrices per size (quasidet-selftest)");
    auto* o_attempts = app.add_option("--attempts", attempts, "resampling attempts on singular draws");
    auto* o_lemmas = app.add_flag("--lemmas", lemmas, "also run the Marchenko-lemma checkers");
    auto* o_timings = app.add_flag("--timings", timings, "record wall-clock timings (reports stop being reproducible)");
    auto* o_period = app.add_option("--period", period, "periodic Langmuir lattice");
    auto* o_lo = app.add_option("--lo", lo, "first Langmuir site");
    auto* o_hi = app.add_option("--hi", hi, "last Langmuir site");
    auto* o_heat = app.add_flag("--heat", heat, "nonlinear heat variant of NLS");
    auto* o_entry = app.add_option("--entry", entry, "NLS bottom-row entry: NN or N1");

    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : ExitCode::config_error;
    }

    RunConfig cfg;
    try {
        if (*o_config) cfg = load_config(config_path);
    } catch (const Error& e) {
        std::cerr << "solilab: " << e.what() << "\n";
        return ExitCode::config_error;
    }
    if (!system.empty()) cfg.system = system;
    if (*o_n) cfg.n = n;
    if (*o_N) cfg.N = N;
    if (*o_r) cfg.r = r;
    if (*o_cap) cfg.cap = cap;
    if (*o_seed) cfg.seed = seed;
    if (*o_mode) cfg.mode = mode;
    if (*o_report) cfg.report_path = report_path;
    if (*o_dump) cfg.dump_series = dump;
    if (*o_degree) cfg.dump_degree = dump_degree;
    if (*o_trials) cfg.trials = trials;
    if (*o_attempts) cfg.attempts = attempts;
    if (*o_lemmas) cfg.lemmas = lemmas;
    if (*o_timings) cfg.timings = timings;
    if (*o_period) cfg.period = period;
    if (*o_lo) cfg.lo = lo;
    if (*o_hi) cfg.hi = hi;
    if (*o_heat) cfg.heat = heat;
    if (*o_entry) cfg.entry = entry;
    if (cfg.system.empty()) {
        std::cerr << "solilab: no system given\n" << app.help();
        return ExitCode::config_error;
    }

    const RunResult res = run(cfg);
    std::string path;
    if (cfg.report_path) {
        path = *cfg.report_path;
    } else if (const char* dir = std::getenv("SOLILAB_REPORT_DIR"); dir && *dir) {
        path = (std::filesystem::path(dir) / (cfg.system + "-" + std::to_string(cfg.seed) + ".json")).string();
    }
    if (path.empty()) {
        std::cout << res.report;
    } else {
        std::ofstream out(path);
        if (!out) {
            std::cerr << "solilab: cannot write report " << path << "\n";
            return ExitCode::config_error;
        }
        out << res.report;
        std::cout << res.summary << "\n";
    }
    if (res.exit_code != ExitCode::pass) std::cerr << "solilab: " << res.summary << "\n";
    return res.exit_code;
}

} // namespace solilab::cli
