#include "pwl/map.hpp"

#include <stdexcept>

namespace pwl {

namespace {
const QuadrantPiece kPieces[4] = {
    {1, {{1, -1}, {1, -1}}},
    {2, {{-1, -1}, {1, -1}}},
    {3, {{-1, -1}, {1, 1}}},
    {4, {{1, -1}, {1, 1}}},
};
}  // namespace

const QuadrantPiece& piece(int tag) {
    if (tag < 1 || tag > 4) throw std::out_of_range("quadrant tag");
    return kPieces[tag - 1];
}

Point apply(const MapParams& params, const Point& p) { return apply<Rational>(params.a, params.b, p); }

Point iterate(const MapParams& params, Point p, long n) {
    for (long i = 0; i < n; ++i) p = apply(params, p);
    return p;
}

std::vector<int> piece_at(const Point& p) {
    std::vector<int> tags;
    for (int k = 1; k <= 4; ++k)
        if (in_closed_quadrant(p, k)) tags.push_back(k);
    return tags;
}

Normalized normalize_params(const MapParams& params) {
    if (params.a != 0) {
        Rational lambda = 1 / abs_value(params.a);
        return {{Rational(sgn(params.a)), Rational(params.b * lambda)}, lambda};
    }
    if (params.b != 0) {
        Rational lambda = 1 / abs_value(params.b);
        return {{Rational(0), Rational(sgn(params.b))}, lambda};
    }
    return {{Rational(0), Rational(0)}, Rational(1)};
}

DirectionImage direction_image(int tag, Direction d) {
    if (d == Direction::zero) return {0, Direction::zero};
    const auto& m = piece(tag).m;
    auto u = direction_vector(d);
    int x = m[0][0] * u[0] + m[0][1] * u[1];
    int y = m[1][0] * u[0] + m[1][1] * u[1];
    if (x == 0 && y == 0) return {0, Direction::zero};
    if (y == 0) return {x, Direction::v1};
    if (x == 0) return {y, Direction::v2};
    if (x == y) return {x, Direction::v3};
    if (x == -y) return {x, Direction::v4};
    throw std::logic_error("direction algebra left V");
}

std::optional<Integer> cycle_slope_product(const std::vector<Point>& cycle, bool* plateau) {
    if (plateau) *plateau = false;
    std::size_t n = cycle.size();
    if (n == 0) return std::nullopt;
    std::size_t start = n;
    for (std::size_t i = 0; i < n; ++i) {
        int q = quadrant_of(cycle[i]).first;
        if (q == 1 || q == 3) {
            start = i;
            break;
        }
    }
    if (start == n) return std::nullopt;
    // The image of any direction under a Q1 (resp. Q3) piece is a multiple of
    // v3 (resp. v4); follow that direction once around the cycle.
    Direction d = quadrant_of(cycle[start]).first == 1 ? Direction::v3 : Direction::v4;
    Integer product = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        int q = quadrant_of(cycle[(start + k) % n]).first;
        auto img = direction_image(q, d);
        if (img.scalar == 0) {
            if (plateau) *plateau = true;
            return Integer(0);
        }
        product *= img.scalar;
        d = img.direction;
    }
    return product;
}

OrbitReport classify_orbit(const MapParams& params, const Point& start, long max_iters) {
    if (max_iters < 1) throw std::invalid_argument("max_iters must be positive");
    OrbitReport rep;
    // Brent: find the cycle length lam.
    long power = 1, lam = 1, evals = 0;
    Point tortoise = start;
    Point hare = apply(params, start);
    ++evals;
    while (!(tortoise == hare)) {
        if (evals >= max_iters) {
            rep.last = hare;
            return rep;
        }
        if (power == lam) {
            tortoise = hare;
            power *= 2;
            lam = 0;
        }
        hare = apply(params, hare);
        ++evals;
        ++lam;
    }
    // Minimal preperiod mu.
    Point t = start, h = iterate(params, start, lam);
    long mu = 0;
    while (!(t == h)) {
        t = apply(params, t);
        h = apply(params, h);
        ++mu;
    }
    rep.preperiod = mu;
    rep.period = lam;
    Point p = start;
    for (long i = 0; i < mu + lam; ++i) {
        auto [q, bd] = quadrant_of(p);
        rep.itinerary.push_back(q);
        rep.boundary.push_back(bd);
        if (i >= mu) rep.cycle.push_back(p);
        p = apply(params, p);
    }
    rep.last = p;
    bool plateau = false;
    rep.slope_product = cycle_slope_product(rep.cycle, &plateau);
    rep.plateau_absorbed = plateau;
    return rep;
}

void write_orbit_csv(std::ostream& os, const MapParams& params, const Point& start, long count) {
    os << "iter,x,y,quadrant\n";
    Point p = start;
    for (long i = 0; i <= count; ++i) {
        os << i << ',' << to_string(p.x) << ',' << to_string(p.y) << ',' << quadrant_of(p).first << '\n';
        p = apply(params, p);
    }
}

Segment segment_image(const MapParams& params, const Segment& s) { return segment_image<Rational>(params.a, params.b, s); }

}  // namespace pwl
