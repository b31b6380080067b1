#pragma once

// Forward images of the quadrants Q1 and Q3 for a=-1 and the invariant
// graph they settle on.

#include "pwl/planar_graph.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace pwl {

// Table of arrival times (N1, N3) for a=-1.
std::pair<int, int> tabulated_arrival(const Rational& b);

// F(Q1) is the full line {(s-1, s+b)}; F(Q3) is the half line
// {(-s-1, s+b) : s <= 0}.
template <class S>
PlanarGraphT<S> first_image(int quadrant, const S& a, const S& b) {
    PlanarGraphT<S> g;
    PointT<S> o{a, b};
    if (quadrant == 1) {
        g.add_ray(o, {1, 1});
        g.add_ray(o, {-1, -1});
    } else if (quadrant == 3) {
        g.add_ray(o, {1, -1});
    } else {
        throw std::invalid_argument("quadrant must be 1 or 3");
    }
    return g;
}

template <class S>
PlanarGraphT<S> quadrant_image(int quadrant, const S& a, const S& b, int n) {
    if (n < 1) throw std::invalid_argument("iterate must be positive");
    auto g = first_image(quadrant, a, b);
    for (int i = 1; i < n; ++i) g = image(a, b, g);
    return g;
}

struct GammaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Smallest forward-invariant union containing u.
template <class S>
PlanarGraphT<S> forward_closure(const S& a, const S& b, PlanarGraphT<S> u, int max_steps = 200) {
    for (int step = 0; step < max_steps; ++step) {
        auto v = image(a, b, u);
        if (u.contains(v)) {
            if (!u.bounded()) throw GammaError("forward images stay unbounded");
            return u;
        }
        u.add_all(v);
    }
    throw GammaError("union of images did not close within budget");
}

// Smallest forward-invariant union containing F^{n1}(Q1) and F^{n3}(Q3).
template <class S>
PlanarGraphT<S> invariant_hull(const S& a, const S& b, int n1, int n3, int max_steps = 200) {
    auto u = quadrant_image(1, a, b, n1);
    u.add_all(quadrant_image(3, a, b, n3));
    return forward_closure(a, b, std::move(u), max_steps);
}

// Hull of late images: raise n until the hull of F^n(Q1) and F^n(Q3) stops
// shrinking. Early images can drag in transient edges that later images drop.
template <class S>
PlanarGraphT<S> eventual_hull(const S& a, const S& b, int start = 11, int max_n = 120) {
    auto q1 = quadrant_image(1, a, b, start);
    auto q3 = quadrant_image(3, a, b, start);
    auto hull_of = [&] {
        auto u = q1;
        u.add_all(q3);
        return forward_closure(a, b, std::move(u));
    };
    auto prev = hull_of();
    for (int n = start + 1; n <= max_n; ++n) {
        q1 = image(a, b, q1);
        q3 = image(a, b, q3);
        auto next = hull_of();
        if (next == prev) return next;
        prev = std::move(next);
    }
    throw GammaError("late hulls did not stabilise");
}

// Periodic points of Q2 and Q4 whose orbits never meet Q1 or Q3 (a=-1).
template <class S>
std::vector<PointT<S>> exceptional_points_at(const S& b) {
    auto r = [](int n, int d) { return from_rational<S>(normalize(n, d)); };
    std::vector<PointT<S>> out;
    if (b > r(1, 2)) out.push_back({r(-1, 5) * (r(2, 1) + b), r(1, 5) * (r(2, 1) * b - r(1, 1))});
    if (b < r(0, 1)) out.push_back({-b, r(-1, 1)});
    if (r(3, 4) < b && b < r(2, 1)) {
        out.push_back({r(1, 5) * (r(2, 1) - b), r(-1, 5) * (r(2, 1) * b + r(1, 1))});
        out.push_back({r(1, 5) * (b - r(2, 1)), r(1, 5) * (r(2, 1) * b + r(1, 1))});
        out.push_back({r(-1, 5) * (r(3, 1) * b + r(4, 1)), r(1, 5) * (r(4, 1) * b - r(3, 1))});
    }
    return out;
}

// Eventual hull together with the exceptional points.
template <class S>
PlanarGraphT<S> gamma_graph(const S& b) {
    auto g = eventual_hull(from_rational<S>(Rational(-1)), b);
    for (auto& p : exceptional_points_at(b)) g.add_point(p);
    return g;
}

// Smallest n <= budget with F^n(Q) inside g, 0 when none.
template <class S>
int exact_arrival(int quadrant, const S& a, const S& b, const PlanarGraphT<S>& g, int budget) {
    auto img = first_image(quadrant, a, b);
    for (int n = 1; n <= budget; ++n) {
        if (img.bounded() && g.contains(img)) return n;
        img = image(a, b, img);
    }
    return 0;
}

}  // namespace pwl
