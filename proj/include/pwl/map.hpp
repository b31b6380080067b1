#pragma once

// The map F_{a,b}(x,y) = (|x| - y + a, x - |y| + b), its quadrant pieces,
// orbit classification and images of segments.

#include "pwl/geometry.hpp"

#include <algorithm>
#include <optional>
#include <type_traits>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace pwl {

struct MapParams {
    Rational a;
    Rational b;
};

struct QuadrantPiece {
    int tag;                 // 1..4
    int m[2][2];             // linear part
};

const QuadrantPiece& piece(int tag);

template <class S>
PointT<S> apply_piece(int tag, const S& a, const S& b, const PointT<S>& p) {
    const auto& m = piece(tag).m;
    return {Rational(m[0][0]) * p.x + Rational(m[0][1]) * p.y + a, Rational(m[1][0]) * p.x + Rational(m[1][1]) * p.y + b};
}

template <class S>
PointT<S> apply(const S& a, const S& b, const PointT<S>& p) {
    return {abs_value(p.x) - p.y + a, p.x - abs_value(p.y) + b};
}

Point apply(const MapParams& params, const Point& p);
Point iterate(const MapParams& params, Point p, long n);

// Every piece whose closed quadrant contains p, ascending.
std::vector<int> piece_at(const Point& p);

// Lowest admissible tag and whether p lies on an axis.
template <class S>
std::pair<int, bool> quadrant_of(const PointT<S>& p) {
    int sx = sgn(p.x), sy = sgn(p.y);
    bool boundary = sx == 0 || sy == 0;
    if (sx >= 0 && sy >= 0) return {1, boundary};
    if (sx <= 0 && sy >= 0) return {2, boundary};
    if (sx <= 0 && sy <= 0) return {3, boundary};
    return {4, boundary};
}

struct Normalized {
    MapParams params;  // a in {-1,0,1}
    Rational lambda;   // lambda * F_{a,b}(x/lambda, y/lambda) = F_{lambda a, lambda b}(x,y)
};

Normalized normalize_params(const MapParams& params);

struct DirectionImage {
    int scalar;
    Direction direction;
};

// A_piece(d) = scalar * d'.
DirectionImage direction_image(int tag, Direction d);

struct OrbitReport {
    long preperiod = 0;
    std::optional<long> period;      // empty when undecided
    std::vector<Point> cycle;
    std::vector<int> itinerary;      // quadrant tag per iterate 0..preperiod+period-1
    std::vector<bool> boundary;      // iterate lies on an axis
    std::optional<Integer> slope_product;  // signed product of direction scalars along the cycle
    bool plateau_absorbed = false;   // the direction algebra reaches zero on the cycle
    Point last;                      // last state reached (meaningful when undecided)

    bool decided() const { return period.has_value(); }
};

constexpr long kDefaultMaxIters = 100000;

// Brent cycle detection with exact equality; never guesses.
OrbitReport classify_orbit(const MapParams& params, const Point& start, long max_iters = kDefaultMaxIters);

// Direction-algebra product along a cycle, starting from the first Q1/Q3
// visit. Empty when the cycle only visits Q2/Q4 interiors.
std::optional<Integer> cycle_slope_product(const std::vector<Point>& cycle, bool* plateau = nullptr);

void write_orbit_csv(std::ostream& os, const MapParams& params, const Point& start, long count);

struct SplitRequired : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Closed quadrant containing both endpoints, or 0.
template <class S>
int common_quadrant(const PointT<S>& p, const PointT<S>& q) {
    for (int k = 1; k <= 4; ++k)
        if (in_closed_quadrant(p, k) && in_closed_quadrant(q, k)) return k;
    return 0;
}

// Exact image of a segment lying in one closed quadrant. The result may be
// degenerate (a plateau collapses to a point).
template <class S>
SegmentT<S> segment_image(const S& a, const S& b, const SegmentT<S>& s) {
    int k = common_quadrant(s.p, s.q);
    if (k == 0) throw SplitRequired("split required");
    return SegmentT<S>::make(apply_piece(k, a, b, s.p), apply_piece(k, a, b, s.q));
}

Segment segment_image(const MapParams& params, const Segment& s);

// Splits at axis crossings; pieces are returned in order from s.p to s.q.
// Crossing points of lines with direction in V stay affine in b, so the
// cut points are computed from the integer direction vector.
template <class S>
std::vector<SegmentT<S>> split_at_axes(const SegmentT<S>& s) {
    if (s.degenerate()) return {s};
    S dx = s.q.x - s.p.x, dy = s.q.y - s.p.y;
    auto dir = displacement_direction(dx, dy);
    std::vector<PointT<S>> inner;
    S zero = from_rational<S>(Rational(0));
    auto strictly_inside = [&](const PointT<S>& c) {
        // c is on the line through p,q; inside iff it differs from both ends and
        // lies between them coordinatewise.
        S ax = c.x - s.p.x, ay = c.y - s.p.y, bx = s.q.x - c.x, by = s.q.y - c.y;
        int s1 = sgn(ax) != 0 ? sgn(ax) * sgn(bx) : sgn(ay) * sgn(by);
        return s1 > 0;
    };
    if (dir) {
        auto u = direction_vector(*dir);
        if (u[0] != 0 && sgn(s.p.x) * sgn(s.q.x) < 0)
            inner.push_back({zero, s.p.y - s.p.x * normalize(u[1], u[0])});
        if (u[1] != 0 && sgn(s.p.y) * sgn(s.q.y) < 0)
            inner.push_back({s.p.x - s.p.y * normalize(u[0], u[1]), zero});
    } else {
        if constexpr (std::is_same_v<S, Rational>) {
            if (sgn(s.p.x) * sgn(s.q.x) < 0) {
                Rational t = -s.p.x / dx;
                inner.push_back({zero, Rational(s.p.y + t * dy)});
            }
            if (sgn(s.p.y) * sgn(s.q.y) < 0) {
                Rational t = -s.p.y / dy;
                inner.push_back({Rational(s.p.x + t * dx), zero});
            }
        } else {
            throw std::invalid_argument("non-atlas direction");
        }
    }
    std::vector<PointT<S>> cuts{s.p};
    std::vector<PointT<S>> kept;
    for (auto& c : inner)
        if (strictly_inside(c)) kept.push_back(c);
    if (kept.size() == 2) {
        // order by distance from p along the segment
        S d0 = kept[0].x - s.p.x + (kept[0].y - s.p.y);
        S d1 = kept[1].x - s.p.x + (kept[1].y - s.p.y);
        S ref = dx + dy;
        if (sgn(ref) == 0) {
            d0 = kept[0].x - s.p.x;
            d1 = kept[1].x - s.p.x;
            ref = dx;
        }
        if (sgn(ref) * sgn(d1 - d0) < 0) std::swap(kept[0], kept[1]);
        if (kept[0] == kept[1]) kept.pop_back();
    }
    for (auto& c : kept) cuts.push_back(c);
    cuts.push_back(s.q);
    std::vector<SegmentT<S>> out;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) out.push_back(SegmentT<S>{cuts[i], cuts[i + 1]});
    return out;
}

}  // namespace pwl
