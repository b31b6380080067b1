#include "doctest.h"
#include "pwl/graph_catalog.hpp"
#include "pwl/markov_entropy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

using namespace pwl;

namespace {

Rational R(const char* s) { return parse_rational(s); }
MapParams at(const Rational& b) { return {Rational(-1), b}; }

IntPoly poly(std::initializer_list<long> ascending) {
    std::vector<Integer> c;
    for (long v : ascending) c.emplace_back(v);
    return IntPoly(std::move(c));
}

// Directed graph from vertex names and "X>Y" arrows.
CoverMatrix digraph(const std::vector<std::string>& names, const std::vector<std::string>& arrows) {
    IntMatrix m(names.size(), std::vector<int>(names.size(), 0));
    auto idx = [&](const std::string& s) {
        auto it = std::find(names.begin(), names.end(), s);
        REQUIRE(it != names.end());
        return static_cast<int>(it - names.begin());
    };
    for (auto& a : arrows) {
        auto k = a.find('>');
        m[idx(a.substr(0, k))][idx(a.substr(k + 1))] = 1;
    }
    return cover_matrix(m, names);
}

int index_of(const CoverMatrix& m, const std::string& s) {
    return static_cast<int>(std::find(m.names.begin(), m.names.end(), s) - m.names.begin());
}

// Independent oracle for det(xI - M): fraction-free Bareiss elimination at
// x = 0..n, then Lagrange interpolation.
Integer bareiss_det(std::vector<std::vector<Integer>> a) {
    std::size_t n = a.size();
    if (n == 0) return 1;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

IntPoly oracle_char_poly(const IntMatrix& m) {
    std::size_t n = m.size();
    std::vector<Rational> xs, ys;
    for (std::size_t k = 0; k <= n; ++k) {
        std::vector<std::vector<Integer>> a(n, std::vector<Integer>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a[i][j] = (i == j ? Integer(static_cast<long>(k)) : Integer(0)) - m[i][j];
        xs.emplace_back(static_cast<long>(k));
        ys.emplace_back(bareiss_det(std::move(a)));
    }
    std::vector<Rational> coef(n + 1, Rational(0));
    for (std::size_t i = 0; i <= n; ++i) {
        std::vector<Rational> basis{Rational(1)};
        Rational denom = 1;
        for (std::size_t j = 0; j <= n; ++j) {
            if (j == i) continue;
            std::vector<Rational> next(basis.size() + 1, Rational(0));
            for (std::size_t t = 0; t < basis.size(); ++t) {
                next[t + 1] += basis[t];
                next[t] -= xs[j] * basis[t];
            }
            basis = std::move(next);
            denom *= xs[i] - xs[j];
        }
        for (std::size_t t = 0; t <= n; ++t) coef[t] += ys[i] * basis[t] / denom;
    }
    std::vector<Integer> out;
    for (auto& c : coef) {
        REQUIRE(c.get_den() == 1);
        out.push_back(c.get_num());
    }
    return IntPoly(std::move(out));
}

double log_mid(const IntPoly& p) { return std::log(perron_root(p).mid()); }

// Twelve-vertex graph with rome {A, E}.
CoverMatrix twelve_vertex_graph() {
    return digraph({"A", "D", "G", "I", "K", "N", "V", "B", "E", "H", "J", "M"},
                   {"A>D", "D>G", "G>I", "I>K", "K>N", "N>V", "V>B", "B>E", "E>H", "H>J", "J>M", "A>E", "N>A",
                    "M>V", "M>A"});
}

CoverMatrix two_loops(int p, int q) {
    // loops of lengths p and q through vertex 0
    std::vector<std::string> names{"C"};
    std::vector<std::string> arrows;
    for (int len : {p, q}) {
        std::string prev = "C";
        for (int i = 1; i < len; ++i) {
            std::string v = "L" + std::to_string(len) + "_" + std::to_string(i);
            names.push_back(v);
            arrows.push_back(prev + ">" + v);
            prev = v;
        }
        arrows.push_back(prev + ">C");
    }
    return digraph(names, arrows);
}

CoverResult markov_cover(const Rational& b) {
    auto g = build_gamma(b);
    return build_cover(at(b), g, markov_cuts(at(b), g));
}

}  // namespace

TEST_CASE("Berkowitz agrees with the interpolation oracle") {
    std::vector<IntMatrix> cases = {
        {},
        {{0}},
        {{1}},
        {{0, 1}, {1, 0}},
        {{1, 1}, {1, 0}},
        {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}},
        {{0, 1, 0, 1}, {1, 0, 1, 0}, {0, 0, 0, 1}, {1, 1, 0, 0}},
        {{2, -1, 3}, {0, 4, -2}, {5, 1, 0}},
    };
    for (auto& m : cases) CHECK(char_poly(m) == oracle_char_poly(m));
    CHECK(char_poly(IntMatrix{{1, 1}, {1, 0}}) == poly({-1, -1, 1}));
}

TEST_CASE("entropy constants from their polynomials") {
    // ln of the largest roots, against the printed five-decimal values
    CHECK(std::abs(log_mid(poly({-2, -1, 0, 0, 0, 0, 1})) - 0.19463) < 5e-6);
    CHECK(std::abs(log_mid(poly({-1, -1, 0, 0, 0, 0, 1})) - 0.12639) < 5e-6);
    CHECK(std::abs(log_mid(poly({-1, 0, 0, -1, 0, 0, 0, 1})) - 0.12943) < 5e-6);
    auto h5 = poly({-1, 0, 0, -1, -1, 0, 0, 1});
    CHECK(std::abs(log_mid(h5) - 0.25344) < 5e-6);
    auto r = perron_root(h5);
    CHECK(r.hi - r.lo <= default_root_tol());
    CHECK(r.lo >= R("1.288452"));
    CHECK(r.hi <= R("1.288453"));
    CHECK(h5.sign_at(r.lo) <= 0);
    CHECK(h5.sign_at(r.hi) >= 0);
}

TEST_CASE("root isolation") {
    CHECK(count_real_roots(poly({-2, 0, 1}), 0, 2) == 1);
    CHECK(count_real_roots(poly({-2, 0, 1}), -2, 2) == 2);
    CHECK(count_real_roots(poly({1, 0, 1}), -10, 10) == 0);
    // repeated roots counted once
    CHECK(count_real_roots(poly({1, -2, 1}) * poly({-2, 1}), 0, 3) == 2);
    auto r = perron_root(poly({-4, 0, 1}));
    CHECK(r.exact());
    CHECK(r.lo == 2);
    CHECK(perron_root(poly({1, 1})).hi == 0);  // no positive root
    CHECK(to_string(poly({-1, 0, 0, -1, -1, 0, 0, 1})) == "x^7 - x^4 - x^3 - 1");
}

TEST_CASE("rome of the twelve-vertex graph") {
    auto m = twelve_vertex_graph();
    int a = index_of(m, "A"), e = index_of(m, "E");
    REQUIRE(is_rome(m, {a, e}));
    CHECK_FALSE(is_rome(m, {a}));
    CHECK_FALSE(is_rome(m, {e}));
    auto r = rome_paths(m, {a, e});
    auto lens = [&](int i, int j) {
        std::map<int, Integer> out;
        for (auto& [l, c] : r.paths[i][j]) out[l] = c;
        return out;
    };
    CHECK(lens(0, 0) == std::map<int, Integer>{{6, 1}});
    CHECK(lens(0, 1) == std::map<int, Integer>{{1, 1}, {8, 1}});
    CHECK(lens(1, 0) == std::map<int, Integer>{{4, 1}});
    CHECK(lens(1, 1) == std::map<int, Integer>{{6, 1}});
    auto expected = poly({-2, -1, 0, 0, 0, 0, 1}).shifted(6);
    CHECK(rome_char_poly(m, r) == expected);
    CHECK(char_poly(m) == expected);
    CHECK(oracle_char_poly(m.m) == expected);
    CHECK(std::abs(std::log(perron_root(m).mid()) - 0.19463) < 5e-6);
}

TEST_CASE("small romes") {
    auto loops = two_loops(5, 6);
    auto r = find_rome(loops);
    CHECK(r.vertices == std::vector<int>{0});
    CHECK(rome_char_poly(loops, r).without_low_power() == poly({-1, -1, 0, 0, 0, 0, 1}));

    auto self = cover_matrix({{1}});
    auto rs = find_rome(self);
    CHECK(rs.vertices == std::vector<int>{0});
    CHECK(rs.paths[0][0] == std::map<int, Integer>{{1, 1}});
    CHECK(rome_char_poly(self, rs) == poly({-1, 1}));

    IntMatrix chain(5, std::vector<int>(5, 0));
    for (int i = 0; i + 1 < 5; ++i) chain[i][i + 1] = 1;
    auto c = cover_matrix(chain);
    auto rc = find_rome(c);
    CHECK(rc.vertices.empty());
    CHECK(rome_char_poly(c, rc) == IntPoly::monomial(5));

    CHECK_THROWS(rome_char_poly(loops, rome_paths(loops, {})));
}

TEST_CASE("different romes give the same polynomial") {
    for (auto m : {twelve_vertex_graph(), two_loops(3, 7), two_loops(4, 4)}) {
        std::vector<int> all(m.size());
        for (std::size_t i = 0; i < m.size(); ++i) all[i] = static_cast<int>(i);
        auto p = rome_char_poly(m, find_rome(m));
        CHECK(rome_char_poly(m, rome_paths(m, all)) == p);
        CHECK(p == oracle_char_poly(m.m));
    }
}

TEST_CASE("zero matrix has radius zero") {
    auto z = cover_matrix(IntMatrix(4, std::vector<int>(4, 0)));
    auto r = perron_root(z);
    CHECK(r.lo == 0);
    CHECK(r.hi == 0);
    CHECK(char_poly(z) == IntPoly::monomial(4));
}

TEST_CASE("loop structure verdicts") {
    // loops of lengths 4 and 7 through A
    auto eight = digraph({"A", "B", "D", "E", "C", "I", "G", "H"},
                        {"A>B", "A>C", "B>D", "D>E", "E>A", "C>I", "I>G", "G>H", "H>D"});
    auto r = rome_paths(eight, {index_of(eight, "A")});
    REQUIRE(is_rome(eight, r.vertices));
    CHECK(r.paths[0][0] == std::map<int, Integer>{{4, 1}, {7, 1}});
    CHECK(loop_structure(eight, r) == LoopVerdict::positive);
    CHECK(rome_char_poly(eight, r).without_low_power() == poly({-1, 0, 0, -1, 0, 0, 0, 1}));
    CHECK(perron_root(eight).lo > 1);

    // two disjoint loops with a one-way transit between them
    auto disjoint = digraph({"A", "B", "C", "D", "M", "N", "P"},
                            {"A>B", "B>C", "C>D", "D>A", "A>M", "M>N", "N>P", "P>M"});
    auto rd = find_rome(disjoint);
    CHECK(loop_structure(disjoint, rd) == LoopVerdict::zero);
    auto root = perron_root(disjoint);
    CHECK(root.lo == 1);
    CHECK(root.hi == 1);

    auto empty = cover_matrix({});
    CHECK(loop_structure(empty, find_rome(empty)) == LoopVerdict::zero);

    // upper-bound loops are not genuine covers
    auto upper = eight;
    upper.mode = CoverMode::upper;
    CHECK(loop_structure(upper, r) == LoopVerdict::inconclusive);
    CHECK_THROWS(loop_structure(eight, rome_paths(eight, {})));
}

TEST_CASE("loop verdict agrees with the Perron root") {
    std::vector<CoverMatrix> ms = {twelve_vertex_graph(), two_loops(5, 6), two_loops(2, 2), cover_matrix({{1}}),
                                   cover_matrix({{0, 1}, {1, 0}}), cover_matrix({{1, 1}, {0, 1}})};
    for (auto& m : ms) {
        auto v = loop_structure(m, find_rome(m));
        auto root = perron_root(m);
        if (v == LoopVerdict::zero) CHECK(root.hi <= 1);
        else CHECK(root.lo > 1);
    }
}

TEST_CASE("cover at b=-3 is a seven-cycle") {
    auto g = build_gamma(-3);
    auto c = build_cover(at(-3), g);
    REQUIRE(c.partition.intervals.size() == 7);
    CHECK(c.markov);
    CHECK(c.exact.m == c.upper.m);
    for (auto& row : c.exact.m) CHECK(std::count(row.begin(), row.end(), 1) == 1);
    CHECK(cyclic_components(c.exact).size() == 1);
    CHECK(cyclic_components(c.exact)[0].size() == 7);
    CHECK(char_poly(c.exact) == poly({-1, 0, 0, 0, 0, 0, 0, 1}));
    auto r = perron_root(c.exact);
    CHECK(r.lo == 1);
    CHECK(r.hi == 1);
    CHECK(loop_structure(c.exact, find_rome(c.exact)) == LoopVerdict::zero);
}

TEST_CASE("cover at b=3 after Markov refinement") {
    auto c = markov_cover(3);
    REQUIRE(c.partition.intervals.size() == 8);
    CHECK(c.markov);
    CHECK(c.exact.m == c.upper.m);
    auto r = find_rome(c.exact);
    REQUIRE(r.vertices.size() == 1);
    CHECK(r.paths[0][0] == std::map<int, Integer>{{3, 1}, {4, 1}, {7, 1}});
    CHECK(loop_structure(c.exact, r) == LoopVerdict::positive);
    CHECK(char_poly(c.exact).without_low_power() == poly({-1, 0, 0, -1, -1, 0, 0, 1}));

    // without the orbit cuts one image only partially covers its target
    auto bare = build_cover(at(3), build_gamma(3));
    CHECK_FALSE(bare.markov);
}

TEST_CASE("single-point graph has an empty partition") {
    auto c = build_cover(at(R("1/5")), build_gamma(R("1/5")));
    CHECK(c.partition.intervals.empty());
    CHECK(c.markov);
    auto e = graph_entropy(at(R("1/5")), build_gamma(R("1/5")));
    CHECK(e.value.lo == 0);
    CHECK(e.value.hi == 0);
}

TEST_CASE("cover images must stay on the graph") {
    PlanarGraph g;
    g.add_segment(Point{0, 2}, Point{2, 0});  // image runs from (-3,1) to (1,5)
    CHECK_THROWS_AS(build_cover(at(3), g), CoverError);
}

TEST_CASE("graph entropy at b=3") {
    auto e = graph_entropy(at(3), build_gamma(3));
    CHECK(e.markov);
    CHECK(e.poly == poly({-1, 0, 0, -1, -1, 0, 0, 1}));
    CHECK(std::abs(e.value.mid() - 0.25344) < 5e-6);
}

TEST_CASE("growth numbers at b=3") {
    auto c = markov_cover(3);
    auto g = growth_number(at(3), c.partition.intervals, 24);
    REQUIRE(g.counts.size() == 24);
    CHECK_FALSE(g.truncated);
    double rho = perron_root(c.exact).mid();
    double h = std::log(rho);
    double envelope = INFINITY;
    for (int m = 1; m <= 24; ++m) {
        double est = std::log(g.counts[m - 1].get_d()) / m;
        CHECK(est >= h - 1e-9);  // submultiplicative counts stay above the limit
        envelope = std::min(envelope, est);
    }
    CHECK(std::log(g.counts[23].get_d()) / 24 <= envelope + 1e-12);
    CHECK(std::abs(g.ratios.back() - rho) < 0.05);
}

TEST_CASE("growth numbers of the seven-cycle") {
    auto c = build_cover(at(-3), build_gamma(-3));
    auto g = growth_number(at(-3), c.partition.intervals, 20);
    for (int m = 1; m <= 20; ++m) {
        CHECK(g.counts[m - 1] <= 7);
        CHECK(g.estimates[m - 1] <= std::pow(7.0, 1.0 / m) + 1e-12);
    }
    CHECK(g.counts.back() == 7);
}

TEST_CASE("growth number of a single interval") {
    // no interval of F is mapped onto itself (the linear parts have
    // eigenvalues 2, 0 and -1+-i), so a lone cycle interval is the
    // smallest case: its image leaves the partition at once
    auto c = build_cover(at(-3), build_gamma(-3));
    auto one = growth_number(at(-3), {c.partition.intervals[0]}, 10);
    CHECK(one.counts[0] == 1);
    CHECK(one.counts[1] == 0);
    CHECK(one.counts.back() == 0);
    CHECK_THROWS(growth_number(at(-3), c.partition.intervals, 0));
}

TEST_CASE("power entropy check") {
    CHECK(power_entropy_check(markov_cover(3).exact, 2));
    IntMatrix id(4, std::vector<int>(4, 0));
    for (int i = 0; i < 4; ++i) id[i][i] = 1;
    for (int n : {1, 2, 5}) CHECK(power_entropy_check(cover_matrix(id), n));
    CHECK(perron_root(cover_matrix(id)).hi == 1);
    CHECK(power_entropy_check(twelve_vertex_graph(), 3));
}

TEST_CASE("atlas covers: rome theorem, oracle and ordering") {
    int matrices = 0;
    for (auto& c : atlas()) {
        for (auto& b : c.validity.interior_samples(1)) {
            CAPTURE(c.id);
            auto g = build_gamma(b);
            auto bare = build_cover(at(b), g);
            auto cv = build_cover(at(b), g, markov_cuts(at(b), g));
            CHECK(cv.markov);
            for (auto* m : {&cv.exact, &bare.exact, &bare.upper}) {
                auto direct = char_poly(*m);
                CHECK(rome_char_poly(*m, find_rome(*m)) == direct);
                ++matrices;
            }
            CHECK(oracle_char_poly(cv.exact.m) == char_poly(cv.exact));
            auto lo = perron_root(bare.exact), hi = perron_root(bare.upper);
            CHECK(lo.lo <= hi.hi);
            auto mk = perron_root(cv.exact);
            CHECK(mk.lo <= hi.hi);
        }
    }
    CHECK(matrices >= 20);
}

TEST_CASE("DOT export") {
    std::ostringstream os;
    write_dot(os, digraph({"A", "B"}, {"A>B", "B>A"}), "g");
    CHECK(os.str() == "digraph \"g\" {\n  \"A\";\n  \"B\";\n  \"A\" -> \"B\";\n  \"B\" -> \"A\";\n}\n");
}
