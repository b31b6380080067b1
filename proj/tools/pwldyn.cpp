// pwldyn: command-line front end for the F_{a,b} toolkit.
//
// Exit codes: 0 success, 1 usage, 2 undecided, 3 invariance violation,
// 4 unsupported parameters, 5 verification failure.

#include "pwl/acceptance.hpp"
#include "pwl/graph_catalog.hpp"
#include "pwl/report.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>

using namespace pwl;

namespace {

enum Exit { kOk = 0, kUsage = 1, kUndecided = 2, kInvariance = 3, kUnsupported = 4, kVerifyFailed = 5 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Unsupported : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;
    std::string a = "-1", b, x, y, lo, hi, X, Y, Z;  // rational strings
    std::optional<long> max_iters;
    int depth = 12;
    std::string tol = "1/1000";
    std::string format = "json";
    std::string out;
    unsigned seed = 1;
    int samples = 200;
    int steps = 20;
    std::string suite = "fast";
    std::string report, svg, json, what = "cover";
};

Rational parse_arg(const std::string& name, const std::string& text) {
    if (text.empty()) throw UsageError("missing --" + name);
    Rational r;
    try {
        r = parse_rational(text);
    } catch (const std::exception&) {
        throw UsageError("--" + name + ": not a rational number: " + text);
    }
    if (is_decimal_literal(text)) std::cerr << "warning: --" << name << " " << text << " read exactly as " << to_string(r) << "\n";
    return r;
}

// Iteration budget: the flag, else PWLDYN_BUDGET, else the library default.
long budget(const RunConfig& cfg, long fallback) {
    if (cfg.max_iters) return *cfg.max_iters;
    if (const char* env = std::getenv("PWLDYN_BUDGET")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (*env == '\0' || *end != '\0' || v <= 0) throw UsageError("PWLDYN_BUDGET must be a positive integer");
        return v;
    }
    return fallback;
}

MapParams params_of(const RunConfig& cfg) { return {parse_arg("a", cfg.a), parse_arg("b", cfg.b)}; }

// Graph, entropy and rotation need a < 0.
MapParams negative_params(const RunConfig& cfg) {
    auto m = params_of(cfg);
    if (m.a >= 0) throw Unsupported("this command needs a < 0 (got a=" + to_string(m.a) + ")");
    return m;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << text)) throw std::runtime_error("cannot write " + path);
}

void emit(const RunConfig& cfg, const std::string& text) { write_text(cfg.out, text); }
void emit_json(const RunConfig& cfg, const Json& j) { emit(cfg, j.dump(2) + "\n"); }

int cmd_orbit(const RunConfig& cfg) {
    auto m = params_of(cfg);
    Point start{parse_arg("x", cfg.x), parse_arg("y", cfg.y)};
    auto r = classify_orbit(m, start, budget(cfg, kDefaultMaxIters));
    if (cfg.format == "csv") {
        std::ostringstream os;
        write_orbit_csv(os, m, start, r.decided() ? r.preperiod + *r.period : cfg.steps);
        emit(cfg, os.str());
    } else {
        emit_json(cfg, orbit_json(m, start, r));
    }
    return r.decided() ? kOk : kUndecided;
}

// Classifies a seeded sample of lattice points and groups the cycles found.
int cmd_classify(const RunConfig& cfg) {
    auto m = params_of(cfg);
    long iters = budget(cfg, kDefaultMaxIters);
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<long> num(-20 * 12, 20 * 12), den(1, 12);
    struct Attractor {
        std::vector<Point> cycle;
        std::optional<Integer> slope;
        long count = 0;
    };
    std::map<Point, Attractor> found;  // keyed by the least cycle point
    long undecided = 0;
    for (int i = 0; i < cfg.samples; ++i) {
        Point p{normalize(num(rng), den(rng)), normalize(num(rng), den(rng))};
        auto r = classify_orbit(m, p, iters);
        if (!r.decided()) {
            ++undecided;
            continue;
        }
        auto least = std::min_element(r.cycle.begin(), r.cycle.end());
        std::rotate(r.cycle.begin(), least, r.cycle.end());
        auto& a = found[r.cycle.front()];
        if (a.count++ == 0) {
            a.cycle = r.cycle;
            a.slope = r.slope_product;
        }
    }
    Json list = Json::array();
    for (auto& [key, a] : found) {
        Json cyc = Json::array();
        for (auto& p : a.cycle) cyc.push_back(point_json(p));
        list.push_back({{"period", a.cycle.size()},
                        {"cycle", cyc},
                        {"count", a.count},
                        {"slope_product", a.slope ? Json(a.slope->get_str()) : Json(nullptr)}});
    }
    emit_json(cfg, {{"a", rational_json(m.a)},
                    {"b", rational_json(m.b)},
                    {"samples", cfg.samples},
                    {"seed", cfg.seed},
                    {"max_iters", iters},
                    {"undecided", undecided},
                    {"attractors", list}});
    return undecided ? kUndecided : kOk;
}

int cmd_graph_build(const RunConfig& cfg) {
    auto m = negative_params(cfg);
    emit_json(cfg, graph_json(m, graph_for(m)));
    return kOk;
}

int cmd_graph_check(const RunConfig& cfg) {
    auto m = negative_params(cfg);
    auto g = graph_for(m);
    auto rep = verify_invariance(m, g);
    Rational b = normalize_params(m).params.b;
    auto unit = build_gamma(b);
    Json sampled = Json::array();
    for (int q : {1, 3}) {
        try {
            sampled.push_back(arrival_time(m, q, g));
        } catch (const std::exception&) {
            sampled.push_back(nullptr);
        }
    }
    int n1 = exact_arrival(1, Rational(-1), b, unit, 60), n3 = exact_arrival(3, Rational(-1), b, unit, 60);
    auto table = tabulated_arrival(b);
    Json violations = Json::array();
    for (auto& s : rep.violations) violations.push_back(Json::array({point_json(s.p), point_json(s.q)}));
    Json pv = Json::array();
    for (auto& p : rep.point_violations) pv.push_back(point_json(p));
    emit_json(cfg, {{"a", rational_json(m.a)},
                    {"b", rational_json(m.b)},
                    {"case", atlas_lookup(b).id},
                    {"invariant", rep.ok()},
                    {"edges_checked", rep.edges_checked},
                    {"violations", violations},
                    {"point_violations", pv},
                    {"arrival",
                     {{"sampled", sampled},
                      {"exact", Json::array({n1, n3})},
                      {"table", Json::array({table.first, table.second})}}},
                    {"table_match", n1 == table.first && n3 == table.second}});
    if (!rep.ok()) {
        for (auto& s : rep.violations) std::cerr << "invariance violation: " << to_string(s.p) << " - " << to_string(s.q) << "\n";
        for (auto& p : rep.point_violations) std::cerr << "invariance violation: " << to_string(p) << "\n";
        return kInvariance;
    }
    return kOk;
}

int cmd_graph_export(const RunConfig& cfg) {
    auto m = negative_params(cfg);
    auto g = graph_for(m);
    Rational b = normalize_params(m).params.b;
    std::string title = atlas_lookup(b).id + " a=" + to_string(m.a) + " b=" + to_string(m.b);
    if (!cfg.json.empty()) write_text(cfg.json, graph_json(m, g).dump(2) + "\n");
    if (!cfg.svg.empty() || cfg.json.empty()) write_text(cfg.svg.empty() ? cfg.out : cfg.svg, graph_svg(g, title));
    return kOk;
}

int cmd_entropy(const RunConfig& cfg) {
    emit_json(cfg, case_entropy_json(entropy_of_case(negative_params(cfg))));
    return kOk;
}

int cmd_rotation(const RunConfig& cfg) {
    auto m = negative_params(cfg);
    auto g = graph_for(m);
    if (!is_circle(g)) throw Unsupported("the invariant graph at b=" + to_string(m.b) + " is not a circle");
    auto r = rotation_number(m, g, budget(cfg, kDefaultRotationBudget));
    Json j = rotation_json(r);
    j["a"] = rational_json(m.a);
    j["b"] = rational_json(m.b);
    emit_json(cfg, j);
    return r.exact() ? kOk : kUndecided;
}

int cmd_periods(const RunConfig& cfg) {
    Rational lo = parse_arg("lo", cfg.lo), hi = parse_arg("hi", cfg.hi);
    if (!(0 <= lo && lo < hi)) throw UsageError("need 0 <= lo < hi");
    emit_json(cfg, period_set_json(lo, hi, period_set(lo, hi), period_threshold_real(lo, hi)));
    return kOk;
}

int cmd_trapezoid(const RunConfig& cfg) {
    if (!cfg.b.empty()) {
        auto m = params_of(cfg);
        ReturnMapReduction r = [&] {
            try {
                return reduce_return_map(m);
            } catch (const UnsupportedWindow& e) {
                throw Unsupported(e.what());
            }
        }();
        auto h = interval_entropy(r.trapezoid);
        Json j = reduction_json(r, h);
        j["a"] = rational_json(m.a);
        j["b"] = rational_json(m.b);
        j["Z_closed_form"] = rational_json(trapezoid_z(r.window, normalize_params(m).params.b));
        emit_json(cfg, j);
        return kOk;
    }
    TrapezoidParams p{parse_arg("X", cfg.X), parse_arg("Y", cfg.Y), parse_arg("Z", cfg.Z)};
    PLIntervalMap t = [&] {
        try {
            return make_trapezoid(p);
        } catch (const std::domain_error& e) {
            throw UsageError(e.what());
        }
    }();
    auto h = lap_entropy(t, cfg.depth);
    emit_json(cfg, {{"X", rational_json(p.X)},
                    {"Y", rational_json(p.Y)},
                    {"Z", rational_json(p.Z)},
                    {"map", interval_map_json(t)},
                    {"entropy", interval_entropy_json(h)}});
    return kOk;
}

// Parameters where the invariant graph or the entropy changes: atlas case
// boundaries and the two onset windows with their bisection brackets.
int cmd_critical(const RunConfig& cfg) {
    Rational tol = parse_arg("tol", cfg.tol);
    if (tol <= 0) throw UsageError("--tol must be positive");
    Json bounds = Json::array();
    for (std::size_t i = 0; i + 1 < atlas().size(); ++i) {
        auto& left = atlas()[i];
        auto& right = atlas()[i + 1];
        bounds.push_back({{"b", rational_json(*left.validity.hi)},
                          {"left", left.id},
                          {"right", right.id},
                          {"owner", left.validity.hi_open ? right.id : left.id}});
    }
    Json onsets;
    bool flagged = false;
    for (auto w : {Onset::alpha, Onset::beta}) {
        auto br = bracket_onset(w, tol);
        flagged = flagged || br.flagged;
        onsets[to_string(w)] = onset_json(w, br);
    }
    emit_json(cfg, {{"tol", rational_json(tol)}, {"atlas_boundaries", bounds}, {"onsets", onsets}});
    return flagged ? kUndecided : kOk;
}

int cmd_verify(const RunConfig& cfg) {
    auto suite = parse_suite(cfg.suite);
    if (!suite) throw UsageError("--suite must be fast, full or atlas");
    auto results = run_suite(*suite);
    bool all = true;
    std::ostringstream os;
    for (auto& r : results) {
        os << "criterion " << r.id << ": " << (r.pass ? "PASS" : "FAIL") << "  " << r.title << "\n";
        for (auto& n : r.notes) os << "    " << n << "\n";
        all = all && r.pass;
    }
    std::cout << os.str();
    if (!cfg.report.empty()) write_text(cfg.report, suite_json(results).dump(2) + "\n");
    if (all) return kOk;
    return *suite == Suite::atlas ? kInvariance : kVerifyFailed;
}

int cmd_export(const RunConfig& cfg) {
    if (cfg.what == "atlas") {
        Json all = Json::array();
        for (auto& c : atlas()) all.push_back(Json::parse(atlas_case_json(c)));
        emit_json(cfg, all);
        return kOk;
    }
    if (cfg.what == "orbit") {
        auto m = params_of(cfg);
        std::ostringstream os;
        write_orbit_csv(os, m, {parse_arg("x", cfg.x), parse_arg("y", cfg.y)}, cfg.steps);
        emit(cfg, os.str());
        return kOk;
    }
    if (cfg.what == "cover") {
        auto m = negative_params(cfg);
        Rational b = normalize_params(m).params.b;
        MapParams unit{Rational(-1), b};
        auto g = build_gamma(b);
        bool closed = true;
        auto cuts = markov_cuts(unit, g, 200000, &closed);
        auto cv = build_cover(unit, g, cuts);
        std::ostringstream os;
        write_dot(os, cv.exact, atlas_lookup(b).id + " b=" + to_string(b) + (cv.markov ? "" : " (not Markov)"));
        emit(cfg, os.str());
        return kOk;
    }
    throw UsageError("--what must be cover, atlas or orbit");
}

void add_params(CLI::App* app, RunConfig& cfg, bool need_b = true) {
    app->add_option("--a", cfg.a, "parameter a (rational, default -1)");
    auto* b = app->add_option("--b", cfg.b, "parameter b (rational)");
    if (need_b) b->required();
}

void add_out(CLI::App* app, RunConfig& cfg) { app->add_option("-o,--out", cfg.out, "output file (default stdout)"); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact dynamics of F(x,y) = (|x| - y + a, x - |y| + b)"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::map<CLI::App*, int (*)(const RunConfig&)> handlers;

    auto* orbit = app.add_subcommand("orbit", "classify the orbit of one point");
    add_params(orbit, cfg);
    orbit->add_option("--x", cfg.x)->required();
    orbit->add_option("--y", cfg.y)->required();
    orbit->add_option("--max-iters", cfg.max_iters, "iteration budget")->check(CLI::PositiveNumber);
    orbit->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "csv"}));
    orbit->add_option("--steps", cfg.steps, "CSV rows when the orbit is undecided")->check(CLI::PositiveNumber);
    add_out(orbit, cfg);
    handlers[orbit] = cmd_orbit;

    auto* classify = app.add_subcommand("classify", "attractors reached from a seeded sample of points");
    add_params(classify, cfg);
    classify->add_option("--samples", cfg.samples)->check(CLI::PositiveNumber);
    classify->add_option("--seed", cfg.seed);
    classify->add_option("--max-iters", cfg.max_iters)->check(CLI::PositiveNumber);
    add_out(classify, cfg);
    handlers[classify] = cmd_classify;

    auto* graph = app.add_subcommand("graph", "invariant graph for a < 0");
    graph->require_subcommand(1);
    auto* gbuild = graph->add_subcommand("build", "graph as JSON");
    auto* gcheck = graph->add_subcommand("check", "invariance and arrival times");
    auto* gexport = graph->add_subcommand("export", "SVG and/or JSON files");
    for (auto* s : {gbuild, gcheck, gexport}) {
        add_params(s, cfg);
        add_out(s, cfg);
    }
    gexport->add_option("--svg", cfg.svg);
    gexport->add_option("--json", cfg.json);
    handlers[gbuild] = cmd_graph_build;
    handlers[gcheck] = cmd_graph_check;
    handlers[gexport] = cmd_graph_export;

    auto* entropy = app.add_subcommand("entropy", "entropy of F on its invariant graph");
    add_params(entropy, cfg);
    add_out(entropy, cfg);
    handlers[entropy] = cmd_entropy;

    auto* rotation = app.add_subcommand("rotation", "rotation number on a circle graph");
    add_params(rotation, cfg);
    rotation->add_option("--max-iters", cfg.max_iters)->check(CLI::PositiveNumber);
    add_out(rotation, cfg);
    handlers[rotation] = cmd_rotation;

    auto* periods = app.add_subcommand("periods", "periods forced by a rotation interval");
    periods->add_option("--lo", cfg.lo)->required();
    periods->add_option("--hi", cfg.hi)->required();
    add_out(periods, cfg);
    handlers[periods] = cmd_periods;

    auto* trap = app.add_subcommand("trapezoid", "return-map reduction (--b) or a trapezoid (--X --Y --Z)");
    add_params(trap, cfg, false);
    trap->add_option("--X", cfg.X);
    trap->add_option("--Y", cfg.Y);
    trap->add_option("--Z", cfg.Z);
    trap->add_option("--depth", cfg.depth, "lap count depth")->check(CLI::PositiveNumber);
    add_out(trap, cfg);
    handlers[trap] = cmd_trapezoid;

    auto* critical = app.add_subcommand("critical", "atlas boundaries and onset brackets");
    critical->add_option("--tol", cfg.tol);
    add_out(critical, cfg);
    handlers[critical] = cmd_critical;

    auto* verify = app.add_subcommand("verify", "run the acceptance suite");
    verify->add_option("--suite", cfg.suite)->check(CLI::IsMember({"fast", "full", "atlas"}));
    verify->add_option("--report", cfg.report, "JSON report file");
    handlers[verify] = cmd_verify;

    auto* exp = app.add_subcommand("export", "cover DOT, atlas JSON or orbit CSV");
    exp->add_option("--what", cfg.what)->check(CLI::IsMember({"cover", "atlas", "orbit"}));
    add_params(exp, cfg, false);
    exp->add_option("--x", cfg.x);
    exp->add_option("--y", cfg.y);
    exp->add_option("--steps", cfg.steps)->check(CLI::PositiveNumber);
    add_out(exp, cfg);
    handlers[exp] = cmd_export;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }
    try {
        for (auto& [sub, run] : handlers) {
            if (!sub->parsed()) continue;
            cfg.command = sub->get_name();
            return run(cfg);
        }
        return kUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const Unsupported& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return kUnsupported;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
}
