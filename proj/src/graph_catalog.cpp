#include "pwl/graph_catalog.hpp"

#include "json.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>

namespace pwl {

using nlohmann::json;

std::pair<int, int> tabulated_arrival(const Rational& b) {
    if (b <= -2) return {8, 5};
    if (b <= Rational(-1, 4)) return {6, 5};
    if (b < 0) return {5, 4};
    if (b <= Rational(3, 16)) return {6, 4};
    if (b < Rational(4, 15)) return {11, 9};
    if (b <= Rational(2, 3)) return {6, 4};
    if (b <= Rational(7, 4)) return {5, 4};
    return {5, 5};
}

bool Validity::contains(const Rational& b) const {
    if (lo && (lo_open ? b <= *lo : b < *lo)) return false;
    if (hi && (hi_open ? b >= *hi : b > *hi)) return false;
    return true;
}

std::vector<Rational> Validity::interior_samples(int n) const {
    std::vector<Rational> out;
    for (int i = 1; i <= n; ++i) {
        Rational t = normalize(i, n + 1);
        Rational v;
        if (lo && hi) v = *lo + t * (*hi - *lo);
        else if (lo) v = *lo + normalize(4 * i, 3);
        else if (hi) v = *hi - normalize(4 * i, 3);
        else v = Rational(i);
        out.push_back(v);
    }
    return out;
}

const ParamPoint& AtlasCase::vertex(const std::string& name) const {
    for (auto& [n, p] : vertices)
        if (n == name) return p;
    throw std::out_of_range("no vertex " + name + " in case " + id);
}

namespace {

ParamScalar scalar_from(const json& j) { return {parse_rational(j.at("c0").get<std::string>()), parse_rational(j.at("c1").get<std::string>())}; }

json scalar_to(const ParamScalar& p) { return {{"c0", to_string(p.c0)}, {"c1", to_string(p.c1)}}; }

ParamPoint point_from(const json& j) { return {scalar_from(j.at("x")), scalar_from(j.at("y"))}; }

json point_to(const ParamPoint& p) { return {{"x", scalar_to(p.x)}, {"y", scalar_to(p.y)}}; }

}  // namespace

AtlasCase parse_atlas_case(const std::string& text) {
    json j = json::parse(text);
    AtlasCase c;
    c.id = j.at("id").get<std::string>();
    auto& v = j.at("validity");
    if (!v.at("lo").is_null()) c.validity.lo = parse_rational(v.at("lo").get<std::string>());
    if (!v.at("hi").is_null()) c.validity.hi = parse_rational(v.at("hi").get<std::string>());
    c.validity.lo_open = v.at("lo_open").get<bool>();
    c.validity.hi_open = v.at("hi_open").get<bool>();
    for (auto& [name, pt] : j.at("vertices").items()) c.vertices.push_back({name, point_from(pt)});
    if (j.contains("edges"))
        for (auto& e : j.at("edges")) c.edges.push_back({e.at(0).get<std::string>(), e.at(1).get<std::string>()});
    if (j.contains("isolated"))
        for (auto& p : j.at("isolated")) c.isolated.push_back(point_from(p));
    if (j.contains("caption_vertices")) c.caption_vertices = j.at("caption_vertices").get<std::vector<std::string>>();
    if (j.contains("arrival")) {
        c.n1 = j.at("arrival").at("N1").get<int>();
        c.n3 = j.at("arrival").at("N3").get<int>();
    }
    if (j.contains("plateaus")) c.plateaus = j.at("plateaus").get<int>();
    return c;
}

std::string atlas_case_json(const AtlasCase& c) {
    json j;
    j["id"] = c.id;
    json v;
    v["lo"] = c.validity.lo ? json(to_string(*c.validity.lo)) : json(nullptr);
    v["hi"] = c.validity.hi ? json(to_string(*c.validity.hi)) : json(nullptr);
    v["lo_open"] = c.validity.lo_open;
    v["hi_open"] = c.validity.hi_open;
    j["validity"] = v;
    json verts = json::object();
    for (auto& [name, p] : c.vertices) verts[name] = point_to(p);
    j["vertices"] = verts;
    json edges = json::array();
    for (auto& [p, q] : c.edges) edges.push_back({p, q});
    j["edges"] = edges;
    json iso = json::array();
    for (auto& p : c.isolated) iso.push_back(point_to(p));
    j["isolated"] = iso;
    j["caption_vertices"] = c.caption_vertices;
    j["arrival"] = {{"N1", c.n1}, {"N3", c.n3}};
    j["plateaus"] = c.plateaus;
    return j.dump(1) + "\n";
}

std::vector<AtlasCase> load_atlas(const std::string& dir) {
    std::vector<AtlasCase> out;
    for (auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.path().extension() != ".json") continue;
        std::ifstream in(entry.path());
        std::stringstream ss;
        ss << in.rdbuf();
        out.push_back(parse_atlas_case(ss.str()));
    }
    std::sort(out.begin(), out.end(), [](const AtlasCase& p, const AtlasCase& q) {
        if (!p.validity.lo) return bool(q.validity.lo);
        if (!q.validity.lo) return false;
        return *p.validity.lo < *q.validity.lo;
    });
    return out;
}

const std::vector<AtlasCase>& atlas() {
    static std::once_flag once;
    static std::vector<AtlasCase> cases;
    std::call_once(once, [] { cases = load_atlas(std::string(PWL_DATA_DIR) + "/atlas"); });
    return cases;
}

const AtlasCase& atlas_lookup(const Rational& b) {
    const AtlasCase* hit = nullptr;
    for (auto& c : atlas())
        if (c.validity.contains(b)) {
            if (hit) throw std::logic_error("atlas cases overlap at b=" + to_string(b));
            hit = &c;
        }
    if (!hit) throw std::logic_error("atlas has a gap at b=" + to_string(b));
    return *hit;
}

PlanarGraph instantiate(const AtlasCase& c, const Rational& b) {
    PlanarGraph g;
    for (auto& [p, q] : c.edges) g.add_segment(c.vertex(p).eval(b), c.vertex(q).eval(b));
    for (auto& p : c.isolated) g.add_point(p.eval(b));
    return g;
}

static PlanarGraph scaled(const PlanarGraph& g, const Rational& k) {
    PlanarGraph out;
    for (auto& e : g.edges()) out.add_segment(k * e.p, k * e.q);
    for (auto& p : g.points()) out.add_point(k * p);
    return out;
}

PlanarGraph graph_for(const MapParams& params) {
    if (params.a >= 0) throw std::invalid_argument("graph atlas needs a<0");
    Rational k = abs_value(params.a);
    Rational b = params.b / k;
    return scaled(instantiate(atlas_lookup(b), b), k);
}

std::vector<Point> exceptional_points(const MapParams& params) {
    if (params.a >= 0) throw std::invalid_argument("exceptional points need a<0");
    Rational k = abs_value(params.a);
    auto out = exceptional_points_at(Rational(params.b / k));
    for (auto& p : out) p = k * p;
    return out;
}

PlanarGraph build_gamma(const Rational& b) { return gamma_graph(b); }

InvarianceReport verify_invariance(const MapParams& params, const PlanarGraph& g) {
    InvarianceReport rep;
    for (auto& e : g.edges()) {
        for (auto& part : split_at_axes(e)) {
            ++rep.edges_checked;
            auto img = segment_image(params, part);
            if (!g.contains_segment(img.p, img.q)) rep.violations.push_back(part);
        }
    }
    for (auto& p : g.isolated())
        if (!g.contains_point(apply(params, p))) rep.point_violations.push_back(p);
    return rep;
}

int arrival_time(const MapParams& params, int quadrant, const PlanarGraph& g, int budget, int grid) {
    if (quadrant != 1 && quadrant != 3) throw std::invalid_argument("quadrant must be 1 or 3");
    int s = quadrant == 1 ? 1 : -1;
    Rational window = 4 * (abs_value(params.b) + 2 * abs_value(params.a) + 1);
    std::vector<Point> witnesses;
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j) {
            Rational u = window * normalize(i, grid - 1), v = window * normalize(j, grid - 1);
            witnesses.push_back({s * u, s * v});
        }
    for (int k = 0; k < 8; ++k) {
        Rational t = 125 * k;
        witnesses.push_back({Rational(s * 1000), s * t});
        witnesses.push_back({s * t, Rational(s * 1000)});
    }
    std::vector<bool> arrived(witnesses.size(), false);
    for (int n = 1; n <= budget; ++n) {
        bool all = true;
        for (std::size_t i = 0; i < witnesses.size(); ++i) {
            witnesses[i] = apply(params, witnesses[i]);
            if (!arrived[i]) arrived[i] = g.contains_point(witnesses[i]);
            all = all && arrived[i];
        }
        if (all) return n;
    }
    throw std::runtime_error("arrival budget exceeded");
}

std::vector<Segment> plateaus(const PlanarGraph& g) {
    std::vector<Segment> out;
    for (auto& e : g.edges()) {
        auto d = segment_direction(e);
        bool q1 = in_closed_quadrant(e.p, 1) && in_closed_quadrant(e.q, 1);
        bool q3 = in_closed_quadrant(e.p, 3) && in_closed_quadrant(e.q, 3);
        if (!((d == Direction::v3 && q1) || (d == Direction::v4 && q3))) continue;
        // Elementary edges come sorted, so a continuation follows its predecessor.
        auto it = std::find_if(out.begin(), out.end(), [&](const Segment& s) {
            return s.q == e.p && segment_direction(s) == d;
        });
        if (it != out.end()) it->q = e.q;
        else out.push_back(e);
    }
    return out;
}

std::vector<OrbitReport> plateau_omega_limits(const MapParams& params, const PlanarGraph& g) {
    std::vector<OrbitReport> out;
    std::vector<std::vector<Point>> seen;
    for (auto& pl : plateaus(g)) {
        Point img = segment_image(params, pl).p;
        auto rep = classify_orbit(params, img);
        if (!rep.decided()) {
            out.push_back(rep);
            continue;
        }
        auto key = rep.cycle;
        std::sort(key.begin(), key.end());
        if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
        seen.push_back(key);
        out.push_back(rep);
    }
    return out;
}

}  // namespace pwl
