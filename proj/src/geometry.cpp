#include "pwl/geometry.hpp"

#include <stdexcept>

namespace pwl {

std::string to_string(Direction d) {
    switch (d) {
        case Direction::v1: return "v1";
        case Direction::v2: return "v2";
        case Direction::v3: return "v3";
        case Direction::v4: return "v4";
        case Direction::zero: return "zero";
    }
    return "?";
}

std::array<int, 2> direction_vector(Direction d) {
    switch (d) {
        case Direction::v1: return {1, 0};
        case Direction::v2: return {0, 1};
        case Direction::v3: return {1, 1};
        case Direction::v4: return {1, -1};
        case Direction::zero: return {0, 0};
    }
    return {0, 0};
}

std::string to_string(const Point& p) { return "(" + to_string(p.x) + "," + to_string(p.y) + ")"; }

Direction segment_direction(const Segment& s) {
    if (s.degenerate()) throw std::invalid_argument("degenerate segment has no direction");
    auto d = displacement_direction<Rational>(s.q.x - s.p.x, s.q.y - s.p.y);
    if (!d) throw std::invalid_argument("non-atlas direction");
    return *d;
}

Rational squared_length(const Segment& s) {
    Rational dx = s.q.x - s.p.x, dy = s.q.y - s.p.y;
    return dx * dx + dy * dy;
}

}  // namespace pwl
