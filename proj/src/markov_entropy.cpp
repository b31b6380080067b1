#include "pwl/markov_entropy.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <set>
#include <stdexcept>

namespace pwl {

CoverMatrix cover_matrix(const IntMatrix& m, std::vector<std::string> names) {
    CoverMatrix c;
    c.m = m;
    for (auto& row : m)
        if (row.size() != m.size()) throw std::invalid_argument("cover matrix must be square");
    if (names.empty())
        for (std::size_t i = 0; i < m.size(); ++i) names.push_back("I" + std::to_string(i + 1));
    c.names = std::move(names);
    return c;
}

namespace {

// Intervals grouped by supporting line, for overlap queries.
class LineIndex {
public:
    struct Entry {
        Rational lo, hi;
        int idx;
    };

    explicit LineIndex(const std::vector<Segment>& segs) {
        for (int i = 0; i < static_cast<int>(segs.size()); ++i) {
            auto& s = segs[i];
            auto d = segment_direction(s);
            Rational t0 = line_param(d, s.p), t1 = line_param(d, s.q);
            if (t1 < t0) std::swap(t0, t1);
            lines_[key(d, s.p)].push_back({t0, t1, i});
        }
        for (auto& [k, v] : lines_)
            std::sort(v.begin(), v.end(), [](const Entry& a, const Entry& b) { return a.lo < b.lo; });
    }

    // Entries on the line of s, together with s's parameter range.
    const std::vector<Entry>* on_line(const Segment& s, Direction d) const {
        auto it = lines_.find(key(d, s.p));
        return it == lines_.end() ? nullptr : &it->second;
    }

private:
    static std::pair<int, Rational> key(Direction d, const Point& p) { return {static_cast<int>(d), line_offset(d, p)}; }
    std::map<std::pair<int, Rational>, std::vector<Entry>> lines_;
};

std::pair<Rational, Rational> param_range(const Segment& s, Direction d) {
    Rational t0 = line_param(d, s.p), t1 = line_param(d, s.q);
    if (t1 < t0) std::swap(t0, t1);
    return {t0, t1};
}

bool on_segment(const Point& p, const Segment& s) {
    auto d = segment_direction(s);
    if (line_offset(d, p) != line_offset(d, s.p)) return false;
    auto [t0, t1] = param_range(s, d);
    Rational t = line_param(d, p);
    return t0 <= t && t <= t1;
}

struct ImageCover {
    bool point = false;
    std::vector<int> meets;     // interior overlap
    std::vector<int> contains;  // interval inside the image
};

ImageCover cover_of(const Segment& img, const LineIndex& index, const PlanarGraph& g) {
    ImageCover c;
    if (img.p == img.q) {
        if (!g.contains_point(img.p)) throw CoverError("image point " + to_string(img.p) + " leaves the graph");
        c.point = true;
        return c;
    }
    auto d = segment_direction(img);
    auto [k0, k1] = param_range(img, d);
    auto* line = index.on_line(img, d);
    Rational reached = k0;
    if (line)
        for (auto& e : *line) {
            if (e.hi <= k0 || e.lo >= k1) continue;
            c.meets.push_back(e.idx);
            if (k0 <= e.lo && e.hi <= k1) c.contains.push_back(e.idx);
            if (e.lo <= reached) reached = std::max(reached, e.hi);
        }
    if (reached < k1) throw CoverError("image segment " + to_string(img.p) + "-" + to_string(img.q) + " leaves the graph");
    return c;
}

}  // namespace

CoverResult build_cover(const MapParams& params, const PlanarGraph& g, const std::vector<Point>& cuts) {
    std::vector<Segment> all;
    for (auto& e : g.edges()) {
        auto d = segment_direction(e);
        std::vector<Point> inner;
        for (auto& c : cuts)
            if (c != e.p && c != e.q && on_segment(c, e)) inner.push_back(c);
        std::sort(inner.begin(), inner.end(),
                  [&](const Point& u, const Point& v) { return line_param(d, u) < line_param(d, v); });
        inner.erase(std::unique(inner.begin(), inner.end()), inner.end());
        bool forward = line_param(d, e.p) < line_param(d, e.q);
        if (!forward) std::reverse(inner.begin(), inner.end());
        Point from = e.p;
        for (auto& c : inner) {
            all.push_back({from, c});
            from = c;
        }
        all.push_back({from, e.q});
    }

    LineIndex index(all);
    std::vector<ImageCover> covers;
    covers.reserve(all.size());
    for (auto& s : all) covers.push_back(cover_of(segment_image(params, s), index, g));

    // Collapse: an interval goes once its image is a point or meets only
    // intervals that already went.
    std::size_t n = all.size();
    std::vector<bool> gone(n, false);
    std::vector<std::size_t> alive_targets(n);
    std::vector<std::vector<int>> preimages(n);
    std::deque<int> queue;
    for (std::size_t i = 0; i < n; ++i) {
        alive_targets[i] = covers[i].meets.size();
        for (int j : covers[i].meets) preimages[j].push_back(static_cast<int>(i));
        if (covers[i].point || alive_targets[i] == 0) {
            gone[i] = true;
            queue.push_back(static_cast<int>(i));
        }
    }
    while (!queue.empty()) {
        int j = queue.front();
        queue.pop_front();
        for (int i : preimages[j]) {
            if (gone[i]) continue;
            if (--alive_targets[i] == 0) {
                gone[i] = true;
                queue.push_back(i);
            }
        }
    }

    CoverResult r;
    std::vector<int> slot(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        if (gone[i]) {
            r.partition.collapse_set.push_back(all[i]);
            continue;
        }
        slot[i] = static_cast<int>(r.partition.intervals.size());
        r.partition.intervals.push_back(all[i]);
        r.partition.names.push_back("I" + std::to_string(r.partition.intervals.size()));
    }
    std::size_t k = r.partition.intervals.size();
    IntMatrix m(k, std::vector<int>(k, 0)), mu(k, std::vector<int>(k, 0));
    r.markov = true;
    for (std::size_t i = 0; i < n; ++i) {
        if (gone[i]) continue;
        // overlaps with collapsed intervals carry no itineraries
        std::size_t meets = 0, contains = 0;
        for (int j : covers[i].meets)
            if (slot[j] >= 0) {
                mu[slot[i]][slot[j]] = 1;
                ++meets;
            }
        for (int j : covers[i].contains)
            if (slot[j] >= 0) {
                m[slot[i]][slot[j]] = 1;
                ++contains;
            }
        if (meets != contains) r.markov = false;
    }
    r.exact = cover_matrix(m, r.partition.names);
    r.upper = cover_matrix(mu, r.partition.names);
    r.upper.mode = CoverMode::upper;
    return r;
}

std::vector<Point> markov_cuts(const MapParams& params, const PlanarGraph& g, std::size_t max_points,
                               bool* closed) {
    if (closed) *closed = true;
    std::set<Point> seen;
    std::deque<Point> queue;
    for (auto& v : g.vertices())
        if (seen.insert(v).second) queue.push_back(v);
    while (!queue.empty()) {
        Point q = apply(params, queue.front());
        queue.pop_front();
        if (seen.count(q) || !g.on_segments(q)) continue;
        if (seen.size() >= max_points) {
            if (!closed) throw CoverError("orbit closure exceeds point budget");
            *closed = false;
            break;
        }
        seen.insert(q);
        queue.push_back(q);
    }
    return {seen.begin(), seen.end()};
}

namespace {

// Kahn's algorithm on the vertices not in `removed`.
bool acyclic_without(const CoverMatrix& m, const std::vector<bool>& removed) {
    std::size_t n = m.size();
    std::vector<int> indeg(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        if (!removed[i])
            for (std::size_t j = 0; j < n; ++j)
                if (m.m[i][j] && !removed[j]) ++indeg[j];
    std::vector<int> stack;
    std::size_t alive = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (!removed[i]) {
            ++alive;
            if (indeg[i] == 0) stack.push_back(static_cast<int>(i));
        }
    std::size_t done = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        ++done;
        for (std::size_t j = 0; j < n; ++j)
            if (m.m[v][j] && !removed[j] && --indeg[j] == 0) stack.push_back(static_cast<int>(j));
    }
    return done == alive;
}

std::vector<bool> mask(std::size_t n, const std::vector<int>& r) {
    std::vector<bool> out(n, false);
    for (int v : r) {
        if (v < 0 || v >= static_cast<int>(n)) throw std::out_of_range("rome vertex out of range");
        out[v] = true;
    }
    return out;
}

// Tarjan's algorithm without recursion.
std::vector<std::vector<int>> components(const CoverMatrix& m) {
    int n = static_cast<int>(m.size());
    std::vector<std::vector<int>> succ(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (m.m[i][j]) succ[i].push_back(j);
    std::vector<int> index(n, -1), low(n, 0), stack;
    std::vector<bool> on_stack(n, false);
    std::vector<std::vector<int>> out;
    int counter = 0;
    for (int root = 0; root < n; ++root) {
        if (index[root] >= 0) continue;
        std::vector<std::pair<int, std::size_t>> work{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!work.empty()) {
            auto& [v, next] = work.back();
            if (next < succ[v].size()) {
                int w = succ[v][next++];
                if (index[w] < 0) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    work.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                std::vector<int> comp;
                int w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp.push_back(w);
                } while (w != v);
                std::sort(comp.begin(), comp.end());
                out.push_back(std::move(comp));
            }
            int done = v;
            work.pop_back();
            if (!work.empty()) low[work.back().first] = std::min(low[work.back().first], low[done]);
        }
    }
    return out;
}

}  // namespace

bool is_rome(const CoverMatrix& m, const std::vector<int>& r) { return acyclic_without(m, mask(m.size(), r)); }

Rome rome_paths(const CoverMatrix& m, std::vector<int> r) {
    std::size_t n = m.size();
    std::sort(r.begin(), r.end());
    auto removed = mask(n, r);
    if (!acyclic_without(m, removed)) throw std::invalid_argument("not a rome: a loop avoids it");
    std::vector<int> pos(n, -1);
    for (std::size_t i = 0; i < r.size(); ++i) pos[r[i]] = static_cast<int>(i);

    // topological order of the complement
    std::vector<int> indeg(n, 0), order;
    for (std::size_t i = 0; i < n; ++i)
        if (!removed[i])
            for (std::size_t j = 0; j < n; ++j)
                if (m.m[i][j] && !removed[j]) ++indeg[j];
    for (std::size_t i = 0; i < n; ++i)
        if (!removed[i] && indeg[i] == 0) order.push_back(static_cast<int>(i));
    for (std::size_t h = 0; h < order.size(); ++h)
        for (std::size_t j = 0; j < n; ++j)
            if (m.m[order[h]][j] && !removed[j] && --indeg[j] == 0) order.push_back(static_cast<int>(j));

    Rome rome;
    rome.vertices = r;
    rome.paths.assign(r.size(), std::vector<std::map<int, Integer>>(r.size()));
    for (std::size_t s = 0; s < r.size(); ++s) {
        std::vector<std::map<int, Integer>> count(n);
        auto push = [&](int to, int len, const Integer& c) {
            if (removed[to]) rome.paths[s][pos[to]][len] += c;
            else count[to][len] += c;
        };
        for (std::size_t j = 0; j < n; ++j)
            if (m.m[r[s]][j]) push(static_cast<int>(j), 1, Integer(m.m[r[s]][j]));
        for (int v : order) {
            if (count[v].empty()) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (!m.m[v][j]) continue;
                for (auto& [len, c] : count[v]) push(static_cast<int>(j), len + 1, c * m.m[v][j]);
            }
        }
    }
    return rome;
}

Rome find_rome(const CoverMatrix& m) {
    std::size_t n = m.size();
    std::vector<bool> in(n, false);
    // Greedy: while a loop avoids the rome, add the vertex with the most
    // loop-carrying traffic among the remaining cyclic component vertices.
    while (!acyclic_without(m, in)) {
        std::vector<int> keep;
        for (std::size_t i = 0; i < n; ++i)
            if (!in[i]) keep.push_back(static_cast<int>(i));
        auto sub = submatrix(m, keep);
        long best_score = -1;
        int best = -1;
        for (auto& comp : cyclic_components(sub)) {
            for (int v : comp) {
                long in_deg = 0, out_deg = 0;
                for (int w : comp) {
                    in_deg += sub.m[w][v] != 0;
                    out_deg += sub.m[v][w] != 0;
                }
                if (in_deg * out_deg > best_score) {
                    best_score = in_deg * out_deg;
                    best = keep[v];
                }
            }
        }
        in[best] = true;
    }
    // drop members that turned out to be unnecessary
    for (std::size_t i = 0; i < n; ++i) {
        if (!in[i]) continue;
        in[i] = false;
        if (!acyclic_without(m, in)) in[i] = true;
    }
    std::vector<int> r;
    for (std::size_t i = 0; i < n; ++i)
        if (in[i]) r.push_back(static_cast<int>(i));
    return rome_paths(m, r);
}

IntPoly rome_char_poly(const CoverMatrix& m, const Rome& r) {
    if (!is_rome(m, r.vertices)) throw std::invalid_argument("not a rome: a loop avoids it");
    std::size_t k = r.vertices.size();
    // A_R as polynomials in mu = 1/x
    std::vector<std::vector<IntPoly>> a(k, std::vector<IntPoly>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            for (auto& [len, c] : r.paths[i][j]) a[i][j] += IntPoly::monomial(len, c);
    auto coeffs = berkowitz<IntPoly>(a, IntPoly(), IntPoly::constant(1));
    IntPoly d;  // det(I - A_R)
    for (auto& c : coeffs) d += c;
    int n = static_cast<int>(m.size());
    if (d.degree() > n) throw std::logic_error("rome determinant has degree above n");
    std::vector<Integer> out(n + 1, Integer(0));
    for (int l = 0; l <= d.degree(); ++l) out[n - l] = d.coeff(l);
    return IntPoly(std::move(out));
}

IntPoly char_poly(const CoverMatrix& m) { return char_poly(m.m); }

CoverMatrix submatrix(const CoverMatrix& m, const std::vector<int>& idx) {
    IntMatrix s(idx.size(), std::vector<int>(idx.size(), 0));
    std::vector<std::string> names;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        names.push_back(m.names.empty() ? std::to_string(idx[i]) : m.names[idx[i]]);
        for (std::size_t j = 0; j < idx.size(); ++j) s[i][j] = m.m[idx[i]][idx[j]];
    }
    auto c = cover_matrix(s, names);
    c.mode = m.mode;
    return c;
}

std::vector<std::vector<int>> cyclic_components(const CoverMatrix& m) {
    std::vector<std::vector<int>> out;
    for (auto& comp : components(m))
        if (comp.size() > 1 || m.m[comp[0]][comp[0]]) out.push_back(comp);
    return out;
}

RootInterval perron_root(const IntPoly& p, const Rational& tol) { return largest_real_root(p, tol); }

namespace {

struct ComponentRoot {
    RootInterval root;
    IntPoly poly;
};

ComponentRoot component_root(const CoverMatrix& sub, const Rational& tol) {
    IntPoly p = rome_char_poly(sub, find_rome(sub)).without_low_power();
    // A component with a loop has radius at least 1; no root above 1 means
    // exactly 1.
    Rational bound = 1;
    for (auto& row : sub.m) {
        long s = 0;
        for (int x : row) s += x;
        bound = std::max(bound, Rational(s));
    }
    if (count_real_roots(p, 1, bound) == 0) return {{1, 1}, p};
    return {largest_real_root(p, tol), p};
}

}  // namespace

SpectralRadius spectral_radius(const CoverMatrix& m, const Rational& tol) {
    SpectralRadius out{{0, 0}, {}};
    for (auto& comp : cyclic_components(m)) {
        auto c = component_root(submatrix(m, comp), tol);
        if (out.poly.is_zero() || c.root.hi > out.root.hi) out.poly = c.poly;
        out.root.lo = std::max(out.root.lo, c.root.lo);
        out.root.hi = std::max(out.root.hi, c.root.hi);
    }
    return out;
}

RootInterval perron_root(const CoverMatrix& m, const Rational& tol) { return spectral_radius(m, tol).root; }

RootInterval collatz_wielandt(const CoverMatrix& m, int iterations) {
    RootInterval out{0, 0};
    for (auto& comp : cyclic_components(m)) {
        auto sub = submatrix(m, comp);
        std::size_t n = sub.size();
        std::vector<std::vector<int>> adj(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (sub.m[i][j]) adj[i].push_back(static_cast<int>(j));
        std::vector<double> v(n, 1.0), w(n);
        for (int it = 0; it < iterations; ++it) {
            double top = 0;
            for (std::size_t i = 0; i < n; ++i) {
                w[i] = v[i];
                for (int j : adj[i]) w[i] += v[j];
                top = std::max(top, w[i]);
            }
            for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / top;
        }
        // any positive integer vector will do; the bounds are exact for it
        std::vector<Integer> x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = Integer(std::ldexp(v[i], 50)) + 1;
        Rational lo, hi;
        for (std::size_t i = 0; i < n; ++i) {
            Integer mx = 0;
            for (int j : adj[i]) mx += x[j];
            Rational r(mx, x[i]);
            r.canonicalize();
            if (i == 0 || r < lo) lo = r;
            if (i == 0 || r > hi) hi = r;
        }
        out.lo = std::max(out.lo, lo);
        out.hi = std::max(out.hi, hi);
    }
    return out;
}

RootInterval radius_enclosure(const CoverMatrix& m, std::size_t max_exact) {
    return m.size() <= max_exact ? perron_root(m) : collatz_wielandt(m);
}

std::string to_string(LoopVerdict v) {
    switch (v) {
        case LoopVerdict::positive: return "positive";
        case LoopVerdict::zero: return "zero";
        default: return "inconclusive";
    }
}

LoopVerdict loop_structure(const CoverMatrix& m, const Rome& r) {
    if (!is_rome(m, r.vertices)) throw std::invalid_argument("not a rome: a loop avoids it");
    std::size_t k = r.vertices.size();
    IntMatrix reach(k, std::vector<int>(k, 0));
    bool positive = false;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            Integer total = 0;
            for (auto& [len, c] : r.paths[i][j]) total += c;
            reach[i][j] = total > 0;
            if (i == j && total >= 2) positive = true;
        }
    for (auto& comp : components(cover_matrix(reach)))
        if (comp.size() > 1) positive = true;
    if (!positive) return LoopVerdict::zero;
    // loops of the upper-bound matrix need not be genuine covers
    return m.mode == CoverMode::exact ? LoopVerdict::positive : LoopVerdict::inconclusive;
}

GrowthResult growth_number(const MapParams& params, const std::vector<Segment>& intervals, int m_max,
                           std::size_t max_pieces) {
    if (m_max < 1) throw std::invalid_argument("m_max must be at least 1");
    LineIndex index(intervals);
    std::vector<Segment> pieces;
    for (auto& s : intervals)
        if (s.p != s.q) pieces.push_back(s);
    GrowthResult out;
    for (int m = 1; m <= m_max; ++m) {
        if (m > 1) {
            std::vector<Segment> next;
            for (auto& k : pieces) {
                auto img = segment_image(params, k);
                if (img.p == img.q) continue;
                auto d = segment_direction(img);
                auto [k0, k1] = param_range(img, d);
                auto* line = index.on_line(img, d);
                if (!line) continue;
                for (auto& e : *line) {
                    Rational lo = std::max(k0, e.lo), hi = std::min(k1, e.hi);
                    if (lo >= hi) continue;
                    Rational c = line_offset(d, img.p);
                    next.push_back({line_point(d, c, lo), line_point(d, c, hi)});
                }
                if (next.size() > max_pieces) {
                    out.truncated = true;
                    return out;
                }
            }
            pieces = std::move(next);
        }
        Integer n(static_cast<unsigned long>(pieces.size()));
        out.counts.push_back(n);
        out.estimates.push_back(std::pow(static_cast<double>(pieces.size()), 1.0 / m));
        if (m > 1 && out.counts[m - 2] > 0) out.ratios.push_back(n.get_d() / out.counts[m - 2].get_d());
    }
    return out;
}

IntMatrix matrix_power(const IntMatrix& m, int n) {
    if (n < 1) throw std::invalid_argument("power must be positive");
    std::size_t k = m.size();
    IntMatrix r = m;
    for (int p = 1; p < n; ++p) {
        IntMatrix t(k, std::vector<int>(k, 0));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t l = 0; l < k; ++l)
                if (r[i][l])
                    for (std::size_t j = 0; j < k; ++j) t[i][j] += r[i][l] * m[l][j];
        r = std::move(t);
    }
    return r;
}

bool power_entropy_check(const CoverMatrix& m, int n, const Rational& tol) {
    auto r = perron_root(m, tol);
    auto rn = perron_root(cover_matrix(matrix_power(m.m, n)), tol);
    Rational lo = 1, hi = 1;
    for (int i = 0; i < n; ++i) {
        lo *= r.lo;
        hi *= r.hi;
    }
    return std::max(lo, rn.lo) <= std::min(hi, rn.hi);
}

GraphEntropy graph_entropy(const MapParams& params, const PlanarGraph& g, const Rational& tol) {
    GraphEntropy out;
    auto cover = build_cover(params, g, markov_cuts(params, g));
    out.markov = cover.markov;
    if (!cover.markov) throw std::logic_error("orbit-closed partition is not Markov");
    out.intervals = cover.partition.intervals.size();
    auto r = spectral_radius(cover.exact, tol);
    out.radius = r.root;
    out.poly = r.poly;
    if (out.radius.hi <= 1) {
        out.value = {0, 0};
    } else {
        out.value = log_interval({std::max(out.radius.lo, Rational(1)), out.radius.hi});
        if (out.value.lo < 0) out.value.lo = 0;
    }
    return out;
}

void write_dot(std::ostream& os, const CoverMatrix& m, const std::string& title) {
    os << "digraph \"" << title << "\" {\n";
    for (std::size_t i = 0; i < m.size(); ++i) os << "  \"" << m.names[i] << "\";\n";
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j)
            if (m.m[i][j]) os << "  \"" << m.names[i] << "\" -> \"" << m.names[j] << "\";\n";
    os << "}\n";
}

}  // namespace pwl
