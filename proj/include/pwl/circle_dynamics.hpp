#pragma once

// Degree-one circle maps on graphs that are topological circles: charts,
// lifts, rotation numbers, and periods forced by a rotation interval.

#include "pwl/map.hpp"
#include "pwl/planar_graph.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pwl {

struct CircleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Arcs of a circle graph in counterclockwise order. The chart sends arc k,
// traversed from p to q, affinely onto [k, k+1), so the circle has length
// L = number of arcs. Isolated points of the graph are ignored.
class CircleChart {
public:
    static CircleChart from_graph(const PlanarGraph& g);

    const std::vector<Segment>& arcs() const { return arcs_; }
    Rational length() const { return Rational(static_cast<long>(arcs_.size())); }
    Rational position(const Point& p) const;  // in [0, L); throws if p is off the circle
    Point point_at(const Rational& x) const;  // x taken mod L

private:
    std::vector<Segment> arcs_;
};

// Lift of F restricted to the circle: G(x + L) = G(x) + L, non-decreasing,
// with G(0) in [0, L).
class CircleLift {
public:
    // Throws CircleError when F does not map the circle into itself as a
    // non-decreasing degree-one map.
    CircleLift(const MapParams& params, CircleChart chart);

    const CircleChart& chart() const { return chart_; }
    Rational operator()(const Rational& x) const;

private:
    Rational lift_on_arc(std::size_t k, const Point& image) const;
    MapParams params_;
    CircleChart chart_;
    std::vector<Rational> vertex_lift_;  // G at the chart integers 0..L
};

struct RotationResult {
    enum class Method { cycle_detected, bounded_estimate };
    Method method = Method::bounded_estimate;
    Rational lo, hi;             // rotation number in turns; lo == hi when exact
    long period = 0;             // cycle length when detected
    Integer winding = 0;         // turns made by the cycle
    std::vector<Rational> cycle; // chart positions of the periodic orbit
    std::vector<Point> witness;  // the same orbit on the graph (F only)
    long steps = 0;

    bool exact() const { return method == Method::cycle_detected; }
    Rational value() const { return lo; }
};

std::string to_string(RotationResult::Method m);

constexpr long kDefaultRotationBudget = 200000;

// Rotation number of a degree-one lift of period L from x0: exact when the
// orbit of x0 mod L closes within budget, otherwise the monotone-lift bound
// |G^n(x) - x - n rho L| < L.
RotationResult rotation_of_lift(const std::function<Rational(const Rational&)>& lift, const Rational& length,
                                const Rational& x0, long budget = kDefaultRotationBudget);

// Rotation number of F on a circle graph, starting from start (default: the
// first arc's origin). Throws CircleError when g is not a circle.
RotationResult rotation_number(const MapParams& params, const PlanarGraph& g, long budget = kDefaultRotationBudget,
                               std::optional<Point> start = std::nullopt);

bool is_circle(const PlanarGraph& g);

long divisor_count(long n);

// An irreducible l/n with lo <= l/n <= hi.
bool has_irreducible_fraction(long n, const Rational& lo, const Rational& hi);

// Least n0 with 4n < (floor(n (hi - lo)) - 1)^2 and floor(n (hi - lo)) > 1
// for every n >= n0, found by an exact scan.
long period_threshold(const Rational& lo, const Rational& hi);

// Same bound without the floor: 2 sqrt(n) < n (hi - lo) - 1.
long period_threshold_real(const Rational& lo, const Rational& hi);

struct PeriodSet {
    long threshold = 0;
    std::vector<long> excluded;  // denominators below the threshold with no irreducible fraction
};

PeriodSet period_set(const Rational& lo, const Rational& hi);

// Nonnegative (m, n) with 6m + 7n = q, smallest n first.
std::optional<std::pair<long, long>> period_form_check(long q);

}  // namespace pwl
