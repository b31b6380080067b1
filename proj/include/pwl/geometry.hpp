#pragma once

// Points, directions and segments over an exact scalar type S
// (Rational or Tracked).

#include "pwl/exact.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>

namespace pwl {

enum class Direction { v1, v2, v3, v4, zero };

std::string to_string(Direction d);
// Integer representative: v1=(1,0), v2=(0,1), v3=(1,1), v4=(1,-1).
std::array<int, 2> direction_vector(Direction d);

template <class S>
struct PointT {
    S x;
    S y;

    friend PointT operator+(const PointT& p, const PointT& q) { return {p.x + q.x, p.y + q.y}; }
    friend PointT operator-(const PointT& p, const PointT& q) { return {p.x - q.x, p.y - q.y}; }
    friend PointT operator*(const Rational& k, const PointT& p) { return {k * p.x, k * p.y}; }
    friend bool operator==(const PointT& p, const PointT& q) { return p.x == q.x && p.y == q.y; }
    friend bool operator<(const PointT& p, const PointT& q) {
        int sx = sgn(p.x - q.x);
        if (sx != 0) return sx < 0;
        return sgn(p.y - q.y) < 0;
    }
};

using Point = PointT<Rational>;

std::string to_string(const Point& p);

// Direction tag of a displacement, nullopt when it is not parallel to any
// of v1..v4; Direction::zero for the null vector.
template <class S>
std::optional<Direction> displacement_direction(const S& dx, const S& dy) {
    int sx = sgn(dx), sy = sgn(dy);
    if (sx == 0 && sy == 0) return Direction::zero;
    if (sy == 0) return Direction::v1;
    if (sx == 0) return Direction::v2;
    if (dx == dy) return Direction::v3;
    if (dx == -dy) return Direction::v4;
    return std::nullopt;
}

// Closed segment with endpoints in lexicographic order.
template <class S>
struct SegmentT {
    PointT<S> p;
    PointT<S> q;

    static SegmentT make(PointT<S> a, PointT<S> b) {
        if (b < a) std::swap(a, b);
        return {std::move(a), std::move(b)};
    }
    bool degenerate() const { return p == q; }
    friend bool operator==(const SegmentT& s, const SegmentT& t) { return s.p == t.p && s.q == t.q; }
};

using Segment = SegmentT<Rational>;

// Throws std::invalid_argument("non-atlas direction") for a displacement
// outside V and for degenerate segments.
Direction segment_direction(const Segment& s);

Rational squared_length(const Segment& s);

// Quadrant membership (closed quadrants 1..4).
template <class S>
bool in_closed_quadrant(const PointT<S>& p, int quadrant) {
    int sx = sgn(p.x), sy = sgn(p.y);
    switch (quadrant) {
        case 1: return sx >= 0 && sy >= 0;
        case 2: return sx <= 0 && sy >= 0;
        case 3: return sx <= 0 && sy <= 0;
        case 4: return sx >= 0 && sy <= 0;
    }
    return false;
}

}  // namespace pwl
