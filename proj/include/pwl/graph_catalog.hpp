#pragma once

// Atlas of invariant graphs for a=-1 and the checks run against it.

#include "pwl/gamma.hpp"
#include "pwl/map.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pwl {

struct Validity {
    std::optional<Rational> lo, hi;  // empty = unbounded
    bool lo_open = true, hi_open = true;
    bool contains(const Rational& b) const;
    // A few rational points strictly inside the interval.
    std::vector<Rational> interior_samples(int n) const;
};

struct ParamPoint {
    ParamScalar x, y;
    Point eval(const Rational& b) const { return {x.eval(b), y.eval(b)}; }
};

struct AtlasCase {
    std::string id;
    Validity validity;
    std::vector<std::pair<std::string, ParamPoint>> vertices;
    std::vector<std::pair<std::string, std::string>> edges;
    std::vector<ParamPoint> isolated;
    std::vector<std::string> caption_vertices;
    int n1 = 0, n3 = 0;  // tabulated arrival times
    int plateaus = 0;

    const ParamPoint& vertex(const std::string& name) const;
};

const std::vector<AtlasCase>& atlas();
std::vector<AtlasCase> load_atlas(const std::string& dir);
AtlasCase parse_atlas_case(const std::string& json_text);
std::string atlas_case_json(const AtlasCase& c);

const AtlasCase& atlas_lookup(const Rational& b);

PlanarGraph instantiate(const AtlasCase& c, const Rational& b);

// Graph for any a<0 by rescaling the a=-1 instantiation.
PlanarGraph graph_for(const MapParams& params);

// Direct construction from forward images of Q1 and Q3 plus the exceptional
// periodic points; independent of the stored atlas.
PlanarGraph build_gamma(const Rational& b);

struct InvarianceReport {
    std::vector<Segment> violations;
    std::vector<Point> point_violations;
    std::size_t edges_checked = 0;
    bool ok() const { return violations.empty() && point_violations.empty(); }
};

InvarianceReport verify_invariance(const MapParams& params, const PlanarGraph& g);

// Sampling check: smallest N such that F^N maps every witness point of the
// quadrant into g. Throws when budget is exceeded.
int arrival_time(const MapParams& params, int quadrant, const PlanarGraph& g, int budget = 11, int grid = 9);

std::vector<Point> exceptional_points(const MapParams& params);

std::vector<Segment> plateaus(const PlanarGraph& g);

std::vector<OrbitReport> plateau_omega_limits(const MapParams& params, const PlanarGraph& g);

}  // namespace pwl
