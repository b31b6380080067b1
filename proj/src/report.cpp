#include "pwl/report.hpp"

#include "pwl/graph_catalog.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace pwl {

Json rational_json(const Rational& r) { return to_string(r); }

Json point_json(const Point& p) { return Json::array({rational_json(p.x), rational_json(p.y)}); }

Json interval_json(const RootInterval& r) {
    return {{"lo", rational_json(r.lo)}, {"hi", rational_json(r.hi)}, {"approx", r.mid()}};
}

Json poly_json(const IntPoly& p) {
    Json out = Json::array();
    for (auto& c : p.coeffs()) {
        if (c.fits_slong_p()) out.push_back(c.get_si());
        else out.push_back(c.get_str());
    }
    return out;
}

namespace {

Json points_json(const std::vector<Point>& ps) {
    Json out = Json::array();
    for (auto& p : ps) out.push_back(point_json(p));
    return out;
}

Json rationals_json(const std::vector<Rational>& xs) {
    Json out = Json::array();
    for (auto& x : xs) out.push_back(rational_json(x));
    return out;
}

}  // namespace

Json orbit_json(const MapParams& params, const Point& start, const OrbitReport& r) {
    Json j = {{"a", rational_json(params.a)},
              {"b", rational_json(params.b)},
              {"start", point_json(start)},
              {"decided", r.decided()},
              {"preperiod", r.preperiod}};
    if (!r.decided()) {
        j["period"] = nullptr;
        j["last"] = point_json(r.last);
        return j;
    }
    j["period"] = *r.period;
    j["cycle"] = points_json(r.cycle);
    j["itinerary"] = r.itinerary;
    j["plateau_absorbed"] = r.plateau_absorbed;
    j["slope_product"] = r.slope_product ? Json(r.slope_product->get_str()) : Json(nullptr);
    return j;
}

Json graph_json(const MapParams& params, const PlanarGraph& g) {
    Json edges = Json::array();
    for (auto& e : g.edges()) edges.push_back(Json::array({point_json(e.p), point_json(e.q)}));
    Rational b = normalize_params(params).params.b;
    return {{"a", rational_json(params.a)},
            {"b", rational_json(params.b)},
            {"case", atlas_lookup(b).id},
            {"vertices", points_json(g.vertices())},
            {"edges", edges},
            {"isolated", points_json(g.isolated())},
            {"plateaus", plateaus(g).size()}};
}

Json case_entropy_json(const CaseEntropy& e) {
    Json j = {{"b", rational_json(e.b)},
              {"kind", to_string(e.kind)},
              {"value", interval_json(e.value)},
              {"poly", poly_json(e.poly)},
              {"method", e.method},
              {"intervals", e.intervals},
              {"claim", {{"kind", to_string(e.claim.kind)}, {"window", e.claim.window}, {"constant", e.claim.constant}}},
              {"consistent", e.consistent}};
    if (e.trapezoid) j["trapezoid"] = interval_json(*e.trapezoid);
    return j;
}

Json rotation_json(const RotationResult& r) {
    Json j = {{"method", to_string(r.method)}, {"lo", rational_json(r.lo)}, {"hi", rational_json(r.hi)}, {"steps", r.steps}};
    if (r.exact()) {
        j["rotation"] = rational_json(r.value());
        j["period"] = r.period;
        j["winding"] = r.winding.get_str();
        j["witness"] = points_json(r.witness);
    } else {
        j["rotation"] = nullptr;
    }
    return j;
}

Json period_set_json(const Rational& lo, const Rational& hi, const PeriodSet& s, long threshold_real) {
    return {{"lo", rational_json(lo)},
            {"hi", rational_json(hi)},
            {"threshold", s.threshold},
            {"threshold_real", threshold_real},
            {"excluded", s.excluded}};
}

Json interval_map_json(const PLIntervalMap& f) {
    return {{"breaks", rationals_json(f.breaks())}, {"values", rationals_json(f.values())}};
}

Json interval_entropy_json(const IntervalEntropy& h) {
    Json laps = Json::array();
    for (auto& n : h.laps) laps.push_back(n.get_str());
    return {{"value", interval_json(h.value)}, {"exact", h.exact},         {"poly", poly_json(h.poly)},
            {"partition", h.partition},        {"laps", laps},             {"truncated", h.truncated}};
}

Json reduction_json(const ReturnMapReduction& r, const IntervalEntropy& h) {
    Json j = {{"window", to_string(r.window)},
              {"period", r.period},
              {"raw", interval_map_json(r.raw)},
              {"unit", interval_map_json(r.unit)},
              {"extended", interval_map_json(r.extended.map)},
              {"x1", rational_json(r.extended.x1)},
              {"x2", rational_json(r.extended.x2)},
              {"trapezoid", interval_map_json(r.trapezoid)},
              {"X", rational_json(r.params.X)},
              {"Y", rational_json(r.params.Y)},
              {"Z", rational_json(r.params.Z)},
              {"entropy", interval_entropy_json(h)}};
    j["collapsed"] = r.collapsed ? interval_map_json(*r.collapsed) : Json(nullptr);
    return j;
}

Json onset_json(Onset w, const OnsetBracket& br) {
    auto win = onset_window(w);
    return {{"window", Json::array({rational_json(win.lo), rational_json(win.hi)})},
            {"period", win.period},
            {"bracket", Json::array({rational_json(br.lo), rational_json(br.hi)})},
            {"probes", br.probes},
            {"flagged", br.flagged}};
}

Json suite_json(const std::vector<CriterionResult>& results) {
    Json list = Json::array();
    bool all = true;
    for (auto& r : results) {
        list.push_back({{"id", r.id}, {"title", r.title}, {"status", r.pass ? "PASS" : "FAIL"}, {"notes", r.notes}});
        all = all && r.pass;
    }
    return {{"criteria", list}, {"passed", all}};
}

namespace {

std::string num(const Rational& r) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", to_double(r));
    return buf;
}

}  // namespace

std::string graph_svg(const PlanarGraph& g, const std::string& title) {
    if (!g.bounded()) throw std::domain_error("cannot draw an unbounded graph");
    std::vector<Point> pts = g.vertices();
    for (auto& p : g.isolated()) pts.push_back(p);
    if (pts.empty()) throw std::domain_error("empty graph");
    Rational xlo = pts[0].x, xhi = xlo, ylo = pts[0].y, yhi = ylo;
    for (auto& p : pts) {
        xlo = std::min(xlo, p.x);
        xhi = std::max(xhi, p.x);
        ylo = std::min(ylo, p.y);
        yhi = std::max(yhi, p.y);
    }
    const Rational size = 640, margin = 40;
    Rational span = std::max(xhi - xlo, yhi - ylo);
    Rational scale = span == 0 ? Rational(1) : Rational((size - 2 * margin) / span);
    // centre the box; y grows downwards in SVG
    Rational ox = margin + ((size - 2 * margin) - scale * (xhi - xlo)) / 2;
    Rational oy = margin + ((size - 2 * margin) - scale * (yhi - ylo)) / 2;
    auto sx = [&](const Rational& x) { return Rational(ox + scale * (x - xlo)); };
    auto sy = [&](const Rational& y) { return Rational(oy + scale * (yhi - y)); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" viewBox=\"0 0 640 640\">\n";
    os << "  <title>" << title << "</title>\n";
    os << "  <rect width=\"640\" height=\"640\" fill=\"white\"/>\n";
    if (xlo <= 0 && 0 <= xhi)
        os << "  <line x1=\"" << num(sx(0)) << "\" y1=\"0\" x2=\"" << num(sx(0))
           << "\" y2=\"640\" stroke=\"#bbb\" stroke-width=\"1\"/>\n";
    if (ylo <= 0 && 0 <= yhi)
        os << "  <line x1=\"0\" y1=\"" << num(sy(0)) << "\" x2=\"640\" y2=\"" << num(sy(0))
           << "\" stroke=\"#bbb\" stroke-width=\"1\"/>\n";
    for (auto& e : g.edges())
        os << "  <line x1=\"" << num(sx(e.p.x)) << "\" y1=\"" << num(sy(e.p.y)) << "\" x2=\"" << num(sx(e.q.x))
           << "\" y2=\"" << num(sy(e.q.y)) << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
    for (auto& p : g.vertices())
        os << "  <circle cx=\"" << num(sx(p.x)) << "\" cy=\"" << num(sy(p.y)) << "\" r=\"3\" fill=\"black\"/>\n";
    for (auto& p : g.isolated())
        os << "  <circle cx=\"" << num(sx(p.x)) << "\" cy=\"" << num(sy(p.y)) << "\" r=\"4\" fill=\"red\"/>\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace pwl
