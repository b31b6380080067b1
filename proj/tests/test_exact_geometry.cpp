#include "doctest.h"
#include "pwl/exact.hpp"
#include "pwl/geometry.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <random>

using namespace pwl;
using boost::multiprecision::cpp_int;

namespace {

// Independent fraction arithmetic on boost integers.
struct Frac {
    cpp_int n, d;
    Frac(cpp_int a, cpp_int b) : n(a), d(b) {
        if (d < 0) { n = -n; d = -d; }
        cpp_int g = boost::multiprecision::gcd(n < 0 ? cpp_int(-n) : n, d);
        if (g != 0) { n /= g; d /= g; }
    }
};
Frac operator*(const Frac& a, const Frac& b) { return {a.n * b.n, a.d * b.d}; }
Frac operator/(const Frac& a, const Frac& b) { return {a.n * b.d, a.d * b.n}; }
Frac operator-(const Frac& a, const Frac& b) { return {a.n * b.d - b.n * a.d, a.d * b.d}; }

Rational R(const char* s) { return parse_rational(s); }

}  // namespace

TEST_CASE("normalize reduces and fixes the sign") {
    CHECK(to_string(normalize(6, -4)) == "-3/2");
    Rational z = normalize(0, 7);
    CHECK(z.get_num() == 0);
    CHECK(z.get_den() == 1);
    CHECK_THROWS_AS(normalize(1, 0), std::domain_error);
}

TEST_CASE("Z at b=-13/16 agrees with an independent fraction oracle") {
    Rational b = R("-13/16");
    Rational z = 55 * b / (16 * (3 * b - 1));
    Frac fb(-13, 16);
    Frac oracle = Frac(55, 1) * fb / (Frac(16, 1) * (Frac(3, 1) * fb - Frac(1, 1)));
    CHECK(z.get_num().get_str() == oracle.n.str());
    CHECK(z.get_den().get_str() == oracle.d.str());
    CHECK(to_string(z) == "13/16");
}

TEST_CASE("parse and print round trip") {
    for (const char* s : {"0", "-3/2", "7", "123456789012345678901234567891/7"}) CHECK(to_string(R(s)) == s);
    CHECK(to_string(R("-0.15")) == "-3/20");
    CHECK(to_string(R("0.2")) == "1/5");
    CHECK_THROWS(R("1/0"));
    CHECK_THROWS(R("abc"));
    CHECK_THROWS(R("1/-2"));
}

TEST_CASE("eval_param") {
    ParamScalar p1(Rational(-2), Rational(-1));  // -b-2
    CHECK(p1.eval(R("-3")) == 1);
    ParamScalar p2(Rational(-1), Rational(2));  // 2b-1
    CHECK(p2.eval(R("1/2")) == 0);
    ParamScalar p3(Rational(0), Rational(-5));
    CHECK(p3.eval(R("-1/5")) == 1);
    CHECK(to_string(p1) == "-b-2");
    CHECK(to_string(ParamScalar(R("-2/5"), R("1/5"))) == "(b-2)/5");
}

TEST_CASE("segment_direction") {
    CHECK(segment_direction(Segment::make({0, 0}, {2, 2})) == Direction::v3);
    CHECK(segment_direction(Segment::make({1, -1}, {1, -3})) == Direction::v2);
    CHECK(segment_direction(Segment::make({3, 1}, {4, 0})) == Direction::v4);
    CHECK(segment_direction(Segment::make({5, 1}, {-4, 1})) == Direction::v1);
    CHECK_THROWS_WITH(segment_direction(Segment::make({0, 0}, {1, 2})), "non-atlas direction");
}

TEST_CASE("canonical segment form is idempotent and order free") {
    Segment s = Segment::make({3, 1}, {1, 2});
    CHECK(s.p == Point{1, 2});
    Segment t = Segment::make(s.q, s.p);
    CHECK(s == t);
    CHECK(Segment::make(s.p, s.q) == s);
}

TEST_CASE("property: arithmetic round-trips through strings and eval is additive") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> num(-100000, 100000), den(1, 5000);
    for (int i = 0; i < 2000; ++i) {
        Rational x = normalize(num(rng), den(rng)), y = normalize(num(rng), den(rng));
        for (Rational r : {Rational(x + y), Rational(x - y), Rational(x * y)}) CHECK(R(to_string(r).c_str()) == r);
        if (y != 0) {
            Rational q = x / y;
            CHECK(R(to_string(q).c_str()) == q);
        }
        ParamScalar p(x, y), q(y, x);
        Rational b = normalize(num(rng), den(rng));
        CHECK((p + q).eval(b) == p.eval(b) + q.eval(b));
        CHECK((Rational(3) * p).eval(b) == 3 * p.eval(b));
    }
}

TEST_CASE("tracked scalars decide signs symbolically first") {
    Tracked b = Tracked::parameter(R("-3"));
    Tracked e = b - b;
    CHECK(sgn(e) == 0);
    Tracked m = -b - Tracked::constant(2);  // -b-2 = 1 at the probe
    CHECK(sgn(m) == 1);
    CHECK(m.form() == ParamScalar(Rational(-2), Rational(-1)));
    Tracked degenerate = b + Tracked::constant(3);
    CHECK_THROWS_AS(sgn(degenerate), std::logic_error);
}
