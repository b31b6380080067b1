#include "doctest.h"
#include "pwl/map.hpp"

#include <random>
#include <set>
#include <sstream>

using namespace pwl;

namespace {

Rational R(const char* s) { return parse_rational(s); }
MapParams P(const char* a, const char* b) { return {R(a), R(b)}; }

Rational random_rational(std::mt19937_64& rng, long span = 50, long den = 12) {
    std::uniform_int_distribution<long> n(-span * den, span * den), d(1, den);
    return normalize(n(rng), d(rng));
}

}  // namespace

TEST_CASE("apply examples") {
    CHECK(apply(P("1", "0"), Point{2, 1}) == Point{2, 1});
    CHECK(apply(P("0", "0"), Point{0, 0}) == Point{0, 0});
    MapParams m = P("1", "3");
    Point p{1, 1};
    p = apply(m, p);
    CHECK(p == Point{1, 3});
    p = apply(m, p);
    CHECK(p == Point{-1, 1});
    p = apply(m, p);
    CHECK(p == Point{1, 1});
}

TEST_CASE("quadrant pieces match the formula") {
    // F1..F4 written out independently.
    auto f = [](int k, Rational x, Rational y, Rational a, Rational b) -> Point {
        switch (k) {
            case 1: return {x - y + a, x - y + b};
            case 2: return {-x - y + a, x - y + b};
            case 3: return {-x - y + a, x + y + b};
            default: return {x - y + a, x + y + b};
        }
    };
    std::mt19937_64 rng(11);
    for (int i = 0; i < 500; ++i) {
        Point p{random_rational(rng), random_rational(rng)};
        Rational a = random_rational(rng), b = random_rational(rng);
        for (int k : piece_at(p)) {
            CHECK(apply_piece<Rational>(k, a, b, p) == f(k, p.x, p.y, a, b));
            CHECK(apply_piece<Rational>(k, a, b, p) == apply(MapParams{a, b}, p));
        }
    }
}

TEST_CASE("piece_at") {
    CHECK(piece_at({1, 2}) == std::vector<int>{1});
    CHECK(piece_at({0, 3}) == std::vector<int>{1, 2});
    CHECK(piece_at({0, 0}) == std::vector<int>{1, 2, 3, 4});
    MapParams m = P("-1", "5/3");
    CHECK(apply_piece<Rational>(1, m.a, m.b, {0, 3}) == apply_piece<Rational>(2, m.a, m.b, {0, 3}));
}

TEST_CASE("normalize_params") {
    auto n = normalize_params(P("-2", "3"));
    CHECK(n.params.a == -1);
    CHECK(n.params.b == R("3/2"));
    CHECK(n.lambda == R("1/2"));
    n = normalize_params(P("0", "-5"));
    CHECK(n.params.a == 0);
    CHECK(n.params.b == -1);
    CHECK(n.lambda == R("1/5"));
    n = normalize_params(P("1", "0"));
    CHECK(n.params.b == 0);
    CHECK(n.lambda == 1);
}

TEST_CASE("classify_orbit examples") {
    auto r = classify_orbit(P("0", "-1"), {5, 7});
    REQUIRE(r.decided());
    CHECK(*r.period == 1);
    CHECK(r.cycle.front() == Point{1, 0});
    CHECK(r.preperiod <= 6);

    r = classify_orbit(P("0", "0"), {3, 0});
    REQUIRE(r.decided());
    CHECK(r.preperiod == 2);
    CHECK(*r.period == 1);
    CHECK(r.cycle.front() == Point{0, 0});
    CHECK(apply(P("0", "0"), {3, 0}) == Point{3, 3});

    r = classify_orbit(P("-1", "-3"), {1, -1});
    REQUIRE(r.decided());
    CHECK(*r.period == 7);
    CHECK(r.preperiod == 0);
    std::vector<Point> expected{{1, -1}, {1, -3}, {3, -5}, {7, -5}, {11, -1}, {11, 7}, {3, 1}};
    CHECK(r.cycle == expected);

    r = classify_orbit(P("-1", "-3"), {0, 0}, 3);
    CHECK_FALSE(r.decided());
}

TEST_CASE("direction_image") {
    auto d = direction_image(1, Direction::v3);
    CHECK(d.scalar == 0);
    CHECK(d.direction == Direction::zero);
    d = direction_image(2, Direction::v4);
    CHECK(d.scalar == 2);
    CHECK(d.direction == Direction::v2);
    d = direction_image(4, Direction::v4);
    CHECK(d.scalar == 2);
    CHECK(d.direction == Direction::v1);
    // Full table written out by hand.
    struct Row { int tag; Direction in; int k; Direction out; };
    Row rows[] = {
        {1, Direction::v1, 1, Direction::v3}, {1, Direction::v2, -1, Direction::v3}, {1, Direction::v4, 2, Direction::v3},
        {2, Direction::v1, -1, Direction::v4}, {2, Direction::v2, -1, Direction::v3}, {2, Direction::v3, -2, Direction::v1},
        {3, Direction::v1, -1, Direction::v4}, {3, Direction::v2, -1, Direction::v4}, {3, Direction::v3, -2, Direction::v4},
        {3, Direction::v4, 0, Direction::zero},
        {4, Direction::v1, 1, Direction::v3}, {4, Direction::v2, -1, Direction::v4}, {4, Direction::v3, 2, Direction::v2},
    };
    for (auto& row : rows) {
        auto img = direction_image(row.tag, row.in);
        CHECK(img.scalar == row.k);
        CHECK(img.direction == row.out);
    }
}

TEST_CASE("segment_image examples") {
    auto s = segment_image(P("-1", "1"), Segment::make({1, 1}, {2, 2}));
    CHECK(s.degenerate());
    CHECK(s.p == Point{-1, 1});

    Segment j = Segment::make({0, 0}, {1, 0});
    s = segment_image(P("-1", "0"), j);
    CHECK(s == Segment::make({-1, 0}, {0, 1}));
    CHECK(squared_length(s) == 2 * squared_length(j));

    j = Segment::make({3, 1}, {4, 0});
    s = segment_image(P("-1", "0"), j);
    CHECK(s == Segment::make({1, 2}, {3, 4}));
    CHECK(squared_length(s) == 4 * squared_length(j));

    CHECK_THROWS_AS(segment_image(P("-1", "0"), Segment::make({-1, 1}, {1, -1})), SplitRequired);
}

TEST_CASE("split_at_axes") {
    auto parts = split_at_axes(Segment::make({-1, 1}, {1, -1}));
    REQUIRE(parts.size() == 1 + 1);
    parts = split_at_axes(Segment::make({-3, -1}, {1, 3}));
    REQUIRE(parts.size() == 3);
    CHECK(parts[0].q == Point{-2, 0});
    CHECK(parts[1].q == Point{0, 2});
    for (auto& piece : parts) CHECK(common_quadrant(piece.p, piece.q) != 0);
}

TEST_CASE("property: scaling conjugacy is exact") {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 10000; ++i) {
        Rational a = random_rational(rng, 5), b = random_rational(rng, 5);
        std::uniform_int_distribution<long> ln(1, 40), ld(1, 17);
        Rational lambda = normalize(ln(rng), ld(rng));
        Point p{random_rational(rng), random_rational(rng)};
        Point lhs = Rational(lambda) * apply(MapParams{a, b}, Point{p.x / lambda, p.y / lambda});
        Point rhs = apply(MapParams{lambda * a, lambda * b}, p);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("property: boundary pieces agree") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 1000; ++i) {
        Rational t = random_rational(rng), a = random_rational(rng, 3), b = random_rational(rng, 3);
        Point p = (i % 2) ? Point{t, 0} : Point{0, t};
        auto tags = piece_at(p);
        CHECK(tags.size() >= 2);
        Point img = apply_piece<Rational>(tags[0], a, b, p);
        for (int k : tags) CHECK(apply_piece<Rational>(k, a, b, p) == img);
    }
}

TEST_CASE("property: plateau collapse and length scaling") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> dpick(0, 3), qpick(1, 4);
    for (int i = 0; i < 1000; ++i) {
        Rational a = random_rational(rng, 3), b = random_rational(rng, 3);
        int q = qpick(rng);
        int sx = (q == 1 || q == 4) ? 1 : -1, sy = (q == 1 || q == 2) ? 1 : -1;
        Direction d = static_cast<Direction>(dpick(rng));
        auto u = direction_vector(d);
        // Start well inside the quadrant, short enough to stay there.
        Rational x0 = sx * (10 + abs_value(random_rational(rng, 5))), y0 = sy * (10 + abs_value(random_rational(rng, 5)));
        std::uniform_int_distribution<long> ln(1, 90);
        Rational len = normalize(ln(rng), 10);
        Segment j = Segment::make({x0, y0}, {x0 + len * u[0], y0 + len * u[1]});
        REQUIRE(common_quadrant(j.p, j.q) == q);
        Segment img = segment_image(MapParams{a, b}, j);
        bool plateau = (q == 1 && d == Direction::v3) || (q == 3 && d == Direction::v4);
        bool doubling = (q == 1 && d == Direction::v4) || (q == 3 && d == Direction::v3);
        if (plateau) CHECK(img.degenerate());
        else if (doubling) CHECK(squared_length(img) == 4 * squared_length(j));
        else CHECK(squared_length(img) == 2 * squared_length(j));
        if (!img.degenerate()) CHECK_NOTHROW(segment_direction(img));
    }
}

TEST_CASE("property: lattice closure") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
        std::uniform_int_distribution<long> n(-40, 40);
        long q = 1 + i % 9;
        MapParams m{normalize(n(rng), q), normalize(n(rng), q)};
        Point p{normalize(n(rng), q), normalize(n(rng), q)};
        for (int k = 0; k < 60; ++k) {
            p = apply(m, p);
            CHECK(Rational(p.x * q).get_den() == 1);
            CHECK(Rational(p.y * q).get_den() == 1);
        }
    }
}

TEST_CASE("property: detected cycles off plateaus are repulsive") {
    std::mt19937_64 rng(17);
    int checked = 0;
    for (int i = 0; i < 400; ++i) {
        std::uniform_int_distribution<long> n(-60, 60);
        MapParams m{Rational(-1), normalize(n(rng), 12)};
        Point p{normalize(n(rng), 4), normalize(n(rng), 4)};
        auto r = classify_orbit(m, p, 20000);
        if (!r.decided() || !r.slope_product || r.plateau_absorbed) continue;
        Integer k = abs(*r.slope_product);
        CHECK(k >= 2);
        CHECK((k & (k - 1)) == 0);
        ++checked;
    }
    CHECK(checked > 0);
}

TEST_CASE("slope product of the 3-cycle Q for a=1, b=3") {
    MapParams m = P("1", "3");
    auto r = classify_orbit(m, {R("1/3"), R("5/3")});
    REQUIRE(r.decided());
    CHECK(*r.period == 3);
    REQUIRE(r.slope_product);
    CHECK(*r.slope_product == 4);
    r = classify_orbit(m, {1, 1});
    CHECK(r.plateau_absorbed);
}

TEST_CASE("orbit csv") {
    std::ostringstream os;
    write_orbit_csv(os, P("0", "0"), {3, 0}, 2);
    CHECK(os.str() == "iter,x,y,quadrant\n0,3,0,1\n1,3,3,1\n2,0,0,1\n");
}

TEST_CASE("a >= 0: orbits end on the closed-form cycles") {
    std::mt19937_64 rng(41);
    std::vector<Point> pts;
    for (int i = 0; i < 100; ++i) pts.push_back({random_rational(rng), random_rational(rng)});
    for (auto b : {R("-3"), R("-1/2"), R("1"), R("2")}) {
        MapParams m{1, b};
        Point p{2 - b, 1};
        for (auto& x : pts) CHECK(iterate(m, x, b >= R("-1/2") ? 5 : 6) == p);
    }
    for (auto b : {R("3"), R("5")}) {
        MapParams m{1, b};
        Rational t = (b - 2) / 3, u = (2 * b - 1) / 3;
        std::set<Point> allowed{{(2 - b) / 5, (1 + 2 * b) / 5}, {b - 2, 1}, {b - 2, 2 * b - 3}, {2 - b, 1},
                                {t, u},                          {-t, u},   {-t, 1}};
        for (auto& x : pts) {
            auto r = classify_orbit(m, x);
            REQUIRE(r.decided());
            CHECK(*r.period == 3);
            for (auto& q : r.cycle) CHECK(allowed.count(q) == 1);
        }
    }
    for (auto& x : pts) {
        CHECK(iterate(P("0", "-1"), x, 6) == Point{1, 0});
        CHECK(iterate(P("0", "0"), x, 5) == Point{0, 0});
        auto r = classify_orbit(P("0", "1"), x);
        REQUIRE(r.decided());
        CHECK(*r.period == 3);
    }
}
