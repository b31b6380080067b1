#pragma once

// Structured output: JSON documents for the analyses, SVG drawings of
// invariant graphs. Rationals are written as "p/q" strings; floats appear
// only as "approx" companions and in SVG coordinates.

#include "pwl/acceptance.hpp"
#include "pwl/circle_dynamics.hpp"
#include "pwl/interval_reduction.hpp"
#include "pwl/markov_entropy.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace pwl {

using Json = nlohmann::json;

Json rational_json(const Rational& r);
Json point_json(const Point& p);
Json interval_json(const RootInterval& r);     // {lo, hi, approx}
Json poly_json(const IntPoly& p);              // ascending integer coefficients

Json orbit_json(const MapParams& params, const Point& start, const OrbitReport& r);
Json graph_json(const MapParams& params, const PlanarGraph& g);
Json case_entropy_json(const CaseEntropy& e);
Json rotation_json(const RotationResult& r);
Json period_set_json(const Rational& lo, const Rational& hi, const PeriodSet& s, long threshold_real);
Json interval_map_json(const PLIntervalMap& f);
Json reduction_json(const ReturnMapReduction& r, const IntervalEntropy& h);
Json interval_entropy_json(const IntervalEntropy& h);
Json onset_json(Onset w, const OnsetBracket& br);
Json suite_json(const std::vector<CriterionResult>& results);  // no timings, so reruns are byte-identical

// Fixed 640x640 viewport fitted to the bounding box of the vertices. The
// transform is exact; coordinates become doubles only when printed. Throws
// std::domain_error for unbounded graphs.
std::string graph_svg(const PlanarGraph& g, const std::string& title);

}  // namespace pwl
