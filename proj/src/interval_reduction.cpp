#include "pwl/interval_reduction.hpp"

#include "pwl/graph_catalog.hpp"
#include "pwl/markov_entropy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>

namespace pwl {

PLIntervalMap::PLIntervalMap(std::vector<Rational> breaks, std::vector<Rational> values) {
    if (breaks.size() < 2 || breaks.size() != values.size())
        throw IntervalMapError("need matching break and value lists with at least two entries");
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
        if (!(breaks[i] < breaks[i + 1])) throw IntervalMapError("breaks must be strictly ascending");
    breaks_.push_back(breaks[0]);
    values_.push_back(values[0]);
    for (std::size_t i = 1; i < breaks.size(); ++i) {
        std::size_t n = breaks_.size();
        if (i + 1 < breaks.size() && n >= 1) {
            // drop breaks[i] when it sits on the line through its neighbours
            Rational s1 = (values[i] - values_[n - 1]) / (breaks[i] - breaks_[n - 1]);
            Rational s2 = (values[i + 1] - values[i]) / (breaks[i + 1] - breaks[i]);
            if (s1 == s2) continue;
        }
        breaks_.push_back(breaks[i]);
        values_.push_back(values[i]);
    }
}

Rational PLIntervalMap::slope(std::size_t i) const {
    return (values_[i + 1] - values_[i]) / (breaks_[i + 1] - breaks_[i]);
}

Rational PLIntervalMap::operator()(const Rational& x) const {
    if (x < lo() || x > hi()) throw IntervalMapError("point " + to_string(x) + " outside the domain");
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
    std::size_t i = it == breaks_.end() ? breaks_.size() - 2 : static_cast<std::size_t>(it - breaks_.begin()) - 1;
    return values_[i] + slope(i) * (x - breaks_[i]);
}

Rational PLIntervalMap::min_value() const { return *std::min_element(values_.begin(), values_.end()); }
Rational PLIntervalMap::max_value() const { return *std::max_element(values_.begin(), values_.end()); }
bool PLIntervalMap::is_self_map() const { return min_value() >= lo() && max_value() <= hi(); }

PLIntervalMap compose(const PLIntervalMap& f, const PLIntervalMap& g) {
    if (g.min_value() < f.lo() || g.max_value() > f.hi())
        throw IntervalMapError("inner map leaves the domain of the outer one");
    const auto& fb = f.breaks();
    std::vector<Rational> xs{g.lo()}, ys{f(g.values()[0])};
    for (std::size_t i = 0; i < g.pieces(); ++i) {
        const Rational &a = g.breaks()[i], &b = g.breaks()[i + 1];
        const Rational &ya = g.values()[i], &yb = g.values()[i + 1];
        if (ya != yb) {
            const Rational& lo = std::min(ya, yb);
            const Rational& hi = std::max(ya, yb);
            auto first = std::upper_bound(fb.begin(), fb.end(), lo);
            auto last = std::lower_bound(fb.begin(), fb.end(), hi);
            Rational scale = (b - a) / (yb - ya);
            auto add = [&](const Rational& t, std::size_t k) {
                xs.push_back(a + (t - ya) * scale);
                ys.push_back(f.values()[k]);
            };
            if (ya < yb)
                for (auto it = first; it < last; ++it) add(*it, it - fb.begin());
            else
                for (auto it = last; it > first; --it) add(*(it - 1), it - 1 - fb.begin());
        }
        xs.push_back(b);
        ys.push_back(f(yb));
    }
    return PLIntervalMap(std::move(xs), std::move(ys));
}

PLIntervalMap rescale_to_unit(const PLIntervalMap& f) {
    Rational lo = f.lo(), w = f.hi() - f.lo();
    std::vector<Rational> xs, ys;
    for (std::size_t i = 0; i < f.breaks().size(); ++i) {
        xs.push_back((f.breaks()[i] - lo) / w);
        ys.push_back((f.values()[i] - lo) / w);
    }
    return PLIntervalMap(std::move(xs), std::move(ys));
}

PLIntervalMap collapse_trailing_plateau(const PLIntervalMap& f) {
    std::size_t n = f.pieces();
    if (n < 2 || f.slope(n - 1) != 0) throw IntervalMapError("last piece is not a proper constant piece");
    Rational c = f.breaks()[n - 1];
    std::vector<Rational> xs{f.lo()}, ys{std::min(f.values()[0], c)};
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const Rational &a = f.breaks()[i], &b = f.breaks()[i + 1];
        const Rational &ya = f.values()[i], &yb = f.values()[i + 1];
        if ((ya - c) * (yb - c) < 0) {
            xs.push_back(a + (c - ya) * (b - a) / (yb - ya));
            ys.push_back(c);
        }
        xs.push_back(b);
        ys.push_back(std::min(yb, c));
    }
    return PLIntervalMap(std::move(xs), std::move(ys));
}

long lap_number(const PLIntervalMap& f) {
    long laps = 1;
    int last = 0;
    for (std::size_t i = 0; i < f.pieces(); ++i) {
        int s = sgn(f.values()[i + 1] - f.values()[i]);
        if (s == 0) continue;
        if (last != 0 && s != last) ++laps;
        last = s;
    }
    return laps;
}

PLIntervalMap make_trapezoid(const TrapezoidParams& p) {
    for (auto* v : {&p.X, &p.Y, &p.Z})
        if (!(*v > 0 && *v < 1)) throw std::domain_error("trapezoid parameters must lie in (0,1)");
    Rational h = p.height();
    if (h > 1) throw std::domain_error("plateau height " + to_string(h) + " exceeds 1");
    return PLIntervalMap({0, p.X * h, p.X * h + p.Z, 1}, {0, h, h, 0});
}

std::optional<TrapezoidParams> as_trapezoid(const PLIntervalMap& f) {
    if (f.lo() != 0 || f.hi() != 1 || f.pieces() != 3) return std::nullopt;
    if (f.values()[0] != 0 || f.values()[3] != 0) return std::nullopt;
    Rational s1 = f.slope(0), s3 = f.slope(2);
    if (s1 <= 0 || f.slope(1) != 0 || s3 >= 0) return std::nullopt;
    TrapezoidParams p{1 / s1, -1 / s3, f.breaks()[2] - f.breaks()[1]};
    try {
        if (make_trapezoid(p) != f) return std::nullopt;
    } catch (const std::domain_error&) {
        return std::nullopt;
    }
    return p;
}

PlateauExtension extend_plateau(const PLIntervalMap& f, const std::optional<AffineBranch>& rising) {
    const auto& xs = f.breaks();
    const auto& ys = f.values();
    std::size_t k = f.pieces() == 3 ? 1 : 0;  // index of the constant piece
    bool shape = f.pieces() == 3 ? f.slope(0) > 0 : f.pieces() == 2;
    if (!shape || f.slope(k) != 0 || f.slope(k + 1) >= 0)
        throw IntervalMapError("extension needs pieces rising, constant, falling");
    AffineBranch up;
    if (k == 1) {
        up = {f.slope(0), ys[0] - f.slope(0) * xs[0]};
        if (rising && (rising->slope != up.slope || rising->intercept != up.intercept))
            throw IntervalMapError("rising piece is off the given branch");
    } else {
        if (!rising) throw IntervalMapError("rising piece is degenerate and no branch was given");
        up = *rising;
        if (up(xs[0]) != ys[0]) throw IntervalMapError("given branch misses the plateau start");
    }
    if (up.slope <= 1) throw IntervalMapError("rising branch is not expanding");
    Rational s3 = f.slope(k + 1);
    Rational x1 = up.intercept / (1 - up.slope);
    Rational x2 = xs[k + 1] + (x1 - ys[k + 1]) / s3;
    if (x1 > f.lo() || x2 < f.hi()) throw IntervalMapError("extension does not contain the domain");
    Rational rise_end = (ys[k] - up.intercept) / up.slope;
    return {PLIntervalMap({x1, rise_end, xs[k + 1], x2}, {x1, ys[k], ys[k + 1], x1}), x1, x2};
}

std::string to_string(Onset w) { return w == Onset::alpha ? "alpha" : "beta"; }

OnsetWindow onset_window(Onset w) {
    if (w == Onset::alpha) return {Rational(-112, 137), Rational(-13, 16), 6};
    return {Rational(603, 874), Rational(563, 816), 7};
}

Rational trapezoid_z(Onset w, const Rational& b) {
    if (w == Onset::alpha) return 55 * b / (16 * (3 * b - 1));
    return (45 - 60 * b) / (48 * b - 29);
}

namespace {

// A piece of the segment in its parameter x together with the current
// image of its endpoints.
struct Track {
    Rational x0, x1;
    Point p0, p1;
};

Rational param_of(const Point& c, const Track& t) {
    Rational s = t.p1.x != t.p0.x ? Rational((c.x - t.p0.x) / (t.p1.x - t.p0.x))
                                  : Rational((c.y - t.p0.y) / (t.p1.y - t.p0.y));
    return t.x0 + s * (t.x1 - t.x0);
}

}  // namespace

PLIntervalMap raw_return_map(const Rational& b, Onset w) {
    MapParams params{Rational(-1), b};
    Rational lo, hi;
    std::function<Point(const Rational&)> embed;
    std::function<bool(const Point&)> on_line;
    if (w == Onset::alpha) {
        lo = -9 * b - 8;
        hi = -b;
        embed = [b](const Rational& x) { return Point{x, x + b + 1}; };
        on_line = [b](const Point& p) { return p.y == p.x + b + 1; };
    } else {
        lo = 300 - 435 * b;
        hi = 29 * b - 20;
        Rational y = 2 * b - 1;
        embed = [y](const Rational& x) { return Point{x, y}; };
        on_line = [y](const Point& p) { return p.y == y; };
    }
    if (!(lo < hi)) throw UnsupportedWindow("return segment is empty at b=" + to_string(b));
    std::vector<Track> tracks{{lo, hi, embed(lo), embed(hi)}};
    for (int step = 0; step < onset_window(w).period; ++step) {
        std::vector<Track> next;
        for (auto& t : tracks) {
            for (auto& s : split_at_axes(Segment{t.p0, t.p1})) {
                Track sub{t.p0 == t.p1 ? t.x0 : param_of(s.p, t), t.p0 == t.p1 ? t.x1 : param_of(s.q, t), s.p, s.q};
                // endpoint by endpoint: segment_image does not keep the orientation
                int k = common_quadrant(s.p, s.q);
                next.push_back({sub.x0, sub.x1, apply_piece(k, params.a, params.b, s.p),
                                apply_piece(k, params.a, params.b, s.q)});
            }
        }
        tracks = std::move(next);
    }
    std::vector<Rational> xs{tracks.front().x0}, ys{tracks.front().p0.x};
    for (auto& t : tracks) {
        if (!on_line(t.p0) || !on_line(t.p1))
            throw UnsupportedWindow("return image leaves the segment's line at b=" + to_string(b));
        xs.push_back(t.x1);
        ys.push_back(t.p1.x);
    }
    return PLIntervalMap(std::move(xs), std::move(ys));
}

AffineBranch rising_branch(const Rational& b, Onset w) {
    return w == Onset::alpha ? AffineBranch{16, 7 * b + 16} : AffineBranch{16, 4 - 3 * b};
}

ReturnMapReduction reduce_return_map(const MapParams& params) {
    auto n = normalize_params(params);
    if (n.params.a != -1) throw UnsupportedWindow("return maps need a < 0");
    const Rational& b = n.params.b;
    std::optional<Onset> w;
    for (Onset c : {Onset::alpha, Onset::beta}) {
        auto win = onset_window(c);
        if (win.lo <= b && b <= win.hi) w = c;
    }
    if (!w) throw UnsupportedWindow("b=" + to_string(b) + " is outside both onset windows");
    auto raw = raw_return_map(b, *w);
    if (!raw.is_self_map()) throw UnsupportedWindow("return map is not a self-map");
    auto unit = rescale_to_unit(raw);
    std::optional<PLIntervalMap> collapsed;
    if (unit.slope(unit.pieces() - 1) == 0) collapsed = collapse_trailing_plateau(unit);
    // the rising branch in the coordinates of unit
    auto raw_up = rising_branch(b, *w);
    Rational lo = raw.lo(), width = raw.hi() - raw.lo();
    AffineBranch up{raw_up.slope, (raw_up.slope * lo + raw_up.intercept - lo) / width};
    auto ext = extend_plateau(collapsed ? *collapsed : unit, up);
    auto trap = rescale_to_unit(ext.map);
    auto tp = as_trapezoid(trap);
    if (!tp) throw std::logic_error("rescaled extension is not a trapezoid");
    return {*w, onset_window(*w).period, raw, unit, collapsed, ext, trap, *tp};
}

namespace {

RootInterval log_radius(const RootInterval& r) {
    if (r.hi <= 1) return {0, 0};
    auto v = log_interval({std::max(r.lo, Rational(1)), r.hi});
    if (v.lo < 0) v.lo = 0;
    return v;
}

// log(n)/m rounded up.
Rational log_ratio_up(const Integer& n, int m) {
    double v = std::log(n.get_d()) / m;
    for (int i = 0; i < 4; ++i) v = std::nextafter(v, INFINITY);
    return Rational(v);
}

}  // namespace

IntervalEntropy interval_entropy(const PLIntervalMap& f, std::size_t max_points, const Rational& tol) {
    if (!f.is_self_map()) throw IntervalMapError("entropy needs a self-map");
    IntervalEntropy out;
    std::set<Rational> seen(f.breaks().begin(), f.breaks().end());
    std::vector<Rational> frontier(f.breaks().begin(), f.breaks().end());
    out.exact = true;
    while (!frontier.empty() && out.exact) {
        std::vector<Rational> next;
        for (auto& x : frontier) {
            Rational y = f(x);
            if (seen.count(y)) continue;
            if (seen.size() >= max_points) {
                out.exact = false;
                out.truncated = true;
                break;
            }
            seen.insert(y);
            next.push_back(y);
        }
        frontier = std::move(next);
    }
    std::vector<Rational> s(seen.begin(), seen.end());
    std::size_t n = s.size() - 1;
    out.partition = n;
    IntMatrix m(n, std::vector<int>(n, 0)), mbar = m;
    for (std::size_t i = 0; i < n; ++i) {
        Rational u = f(s[i]), v = f(s[i + 1]);
        if (u > v) std::swap(u, v);
        if (u == v) continue;
        // intervals j with s[j+1] > u and s[j] < v meet the image interior
        auto first = std::upper_bound(s.begin(), s.end(), u) - s.begin() - 1;
        for (std::size_t j = std::max<long>(first, 0); j < n && s[j] < v; ++j) {
            mbar[i][j] = 1;
            if (u <= s[j] && s[j + 1] <= v) m[i][j] = 1;
        }
    }
    if (out.exact) {
        auto r = spectral_radius(cover_matrix(m), tol);
        out.value = log_radius(r.root);
        if (out.value.hi > 0) out.poly = r.poly;
    } else {
        out.value.lo = log_radius(radius_enclosure(cover_matrix(m))).lo;
        out.value.hi = log_radius(radius_enclosure(cover_matrix(mbar))).hi;
    }
    return out;
}

IntervalEntropy lap_entropy(const PLIntervalMap& f, int depth, std::size_t max_breaks, std::size_t max_points) {
    if (depth < 1) throw std::invalid_argument("depth must be at least 1");
    auto out = interval_entropy(f, max_points);
    PLIntervalMap fm = f;
    Rational upper = out.value.hi;
    for (int m = 1; m <= depth; ++m) {
        if (m > 1) {
            if (fm.breaks().size() * f.pieces() > max_breaks) {
                out.truncated = true;
                break;
            }
            fm = compose(f, fm);
        }
        Integer laps = lap_number(fm);
        out.laps.push_back(laps);
        upper = std::min(upper, laps == 1 ? Rational(0) : log_ratio_up(laps, m));
    }
    out.value.hi = std::max(upper, out.value.lo);
    return out;
}

OnsetVerdict onset_verdict(Onset w, const Rational& b) {
    auto red = reduce_return_map({Rational(-1), b});
    auto e = interval_entropy(red.trapezoid);
    if (e.value.lo > 0) return OnsetVerdict::positive;
    if (e.value.hi == 0) return OnsetVerdict::zero;
    return OnsetVerdict::undecided;
}

Rational simplest_between(const Rational& lo, const Rational& hi) {
    if (lo > hi) throw std::invalid_argument("empty interval");
    if (lo <= 0 && 0 <= hi) return 0;
    if (hi < 0) return -simplest_between(-hi, -lo);
    Integer n = floor_of(lo);
    if (Rational(n) == lo || Rational(n + 1) <= hi) return Rational(n) == lo ? lo : Rational(n + 1);
    return Rational(n) + 1 / simplest_between(1 / (hi - Rational(n)), 1 / (lo - Rational(n)));
}

OnsetBracket bracket_onset(Onset w, const Rational& tol) {
    if (tol <= 0) throw std::invalid_argument("tolerance must be positive");
    auto win = onset_window(w);
    OnsetBracket r{win.lo, win.hi};
    // a window already within tol is returned as is; otherwise both ends
    // are moved off the window before stopping
    bool interior = win.hi - win.lo <= tol;
    while (r.hi - r.lo > tol || (!interior && (r.lo == win.lo || r.hi == win.hi))) {
        Rational third = (r.hi - r.lo) / 3;
        std::optional<OnsetVerdict> v;
        for (Rational probe : {simplest_between(r.lo + third, r.hi - third), Rational((r.lo + r.hi) / 2)}) {
            ++r.probes;
            auto verdict = onset_verdict(w, probe);
            if (verdict == OnsetVerdict::undecided) continue;
            (verdict == OnsetVerdict::zero ? r.lo : r.hi) = probe;
            v = verdict;
            break;
        }
        if (!v) {
            r.flagged = true;
            break;
        }
    }
    return r;
}

std::string to_string(EntropyKind k) {
    switch (k) {
        case EntropyKind::exact: return "exact";
        case EntropyKind::zero: return "zero";
        case EntropyKind::lower_bound: return "lower-bound";
        case EntropyKind::positive: return "positive";
        default: return "onset";
    }
}

namespace {

IntPoly poly_of(std::initializer_list<long> ascending) {
    std::vector<Integer> c;
    for (long v : ascending) c.emplace_back(v);
    return IntPoly(std::move(c));
}

}  // namespace

const std::vector<NamedConstant>& entropy_constants() {
    static const std::vector<NamedConstant> table = {
        {"h1", poly_of({-2, -1, 0, 0, 0, 0, 1})},
        {"h2", poly_of({-1, -1, 0, 0, 0, 0, 1})},
        {"h3", poly_of({-1, 0, 0, -1, 0, 0, 0, 1})},
        {"h4", poly_of({-1, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0, 1})},
        {"h5", poly_of({-1, 0, 0, -1, -1, 0, 0, 1})},
        {"ln2/6", poly_of({-2, 0, 0, 0, 0, 0, 1})},
    };
    return table;
}

RootInterval constant_value(const std::string& name) {
    for (auto& c : entropy_constants())
        if (c.name == name) return log_interval(largest_real_root(c.poly, default_root_tol()));
    throw std::invalid_argument("unknown constant " + name);
}

namespace {

struct ClaimRow {
    std::optional<Rational> lo, hi;  // empty = unbounded
    bool lo_closed, hi_closed;
    EntropyKind kind;
    const char* constant;
};

std::string window_text(const ClaimRow& r) {
    std::string s = r.lo ? (r.lo_closed ? "[" : "(") + to_string(*r.lo) : "(-inf";
    s += ",";
    s += r.hi ? to_string(*r.hi) + (r.hi_closed ? "]" : ")") : "inf)";
    return s;
}

const std::vector<ClaimRow>& claim_rows() {
    using K = EntropyKind;
    auto q = [](long p, long d) { return std::optional<Rational>(Rational(p, d)); };
    auto z = [](long v) { return std::optional<Rational>(Rational(v)); };
    static const std::vector<ClaimRow> rows = {
        {std::nullopt, z(-2), false, true, K::zero, ""},
        {z(-2), z(-1), false, true, K::zero, ""},
        {z(-1), q(-8, 9), false, true, K::zero, ""},
        {q(-8, 9), q(-112, 137), false, false, K::zero, ""},
        {q(-112, 137), q(-13, 16), true, true, K::onset, ""},
        {q(-13, 16), q(-3, 4), false, true, K::positive, ""},
        {q(-3, 4), q(-1, 5), false, true, K::exact, "h1"},
        {q(-1, 5), q(-1, 9), false, false, K::lower_bound, "h2"},
        {q(-1, 9), q(-1, 16), true, true, K::exact, "h1"},
        {q(-1, 16), q(-1, 36), false, false, K::lower_bound, "ln2/6"},
        {q(-1, 36), z(0), true, false, K::zero, ""},
        {z(0), q(1, 2), true, true, K::zero, ""},
        {q(1, 2), q(2, 3), false, true, K::zero, ""},
        {q(2, 3), q(603, 874), false, false, K::zero, ""},
        {q(603, 874), q(563, 816), true, true, K::onset, ""},
        {q(563, 816), q(5, 7), false, true, K::positive, ""},
        {q(5, 7), q(3, 4), false, true, K::lower_bound, "h3"},
        {q(3, 4), q(4, 5), false, true, K::positive, ""},
        {q(4, 5), q(6, 7), false, true, K::lower_bound, "h3"},
        {q(6, 7), q(12, 13), false, true, K::lower_bound, "h4"},
        {q(12, 13), z(1), false, false, K::positive, ""},
        {z(1), z(1), true, true, K::zero, ""},
        {z(1), z(2), false, false, K::positive, ""},
        {z(2), z(4), true, true, K::exact, "h5"},
        {z(4), z(8), false, false, K::positive, ""},
        {z(8), std::nullopt, true, false, K::zero, ""},
    };
    return rows;
}

bool row_contains(const ClaimRow& r, const Rational& b) {
    if (r.lo && (r.lo_closed ? b < *r.lo : b <= *r.lo)) return false;
    if (r.hi && (r.hi_closed ? b > *r.hi : b >= *r.hi)) return false;
    return true;
}

bool overlaps(const RootInterval& a, const RootInterval& b) { return a.lo <= b.hi && b.lo <= a.hi; }

}  // namespace

CaseClaim case_claim(const Rational& b) {
    for (auto& r : claim_rows())
        if (row_contains(r, b)) return {r.kind, window_text(r), r.constant};
    throw std::logic_error("claim table has a gap at " + to_string(b));
}

CaseEntropy entropy_of_case(const MapParams& params) {
    if (params.a >= 0) throw std::invalid_argument("entropy_of_case needs a < 0");
    auto n = normalize_params(params);
    CaseEntropy out;
    out.b = n.params.b;
    auto g = build_gamma(out.b);
    bool closed = true;
    auto cuts = markov_cuts(n.params, g, 200000, &closed);
    auto cover = build_cover(n.params, g, cuts);
    out.intervals = cover.partition.intervals.size();
    if (closed && cover.markov) {
        auto lower = spectral_radius(cover.exact);
        out.value = log_radius(lower.root);
        out.method = "markov";
        out.kind = out.value.hi == 0 ? EntropyKind::zero : EntropyKind::exact;
        if (out.kind == EntropyKind::exact) out.poly = lower.poly;
    } else {
        out.method = "bracket";
        out.value.lo = log_radius(radius_enclosure(cover.exact)).lo;
        out.value.hi = log_radius(radius_enclosure(cover.upper)).hi;
        out.kind = out.value.hi == 0 ? EntropyKind::zero : EntropyKind::lower_bound;
    }

    out.claim = case_claim(out.b);
    switch (out.claim.kind) {
        case EntropyKind::zero: out.consistent = out.value.hi == 0; break;
        case EntropyKind::positive: out.consistent = out.value.lo > 0; break;
        case EntropyKind::exact: out.consistent = overlaps(out.value, constant_value(out.claim.constant)); break;
        case EntropyKind::lower_bound:
            out.consistent = out.value.hi >= constant_value(out.claim.constant).lo;
            break;
        case EntropyKind::onset: {
            auto red = reduce_return_map(n.params);
            auto t = interval_entropy(red.trapezoid);
            Rational k(red.period);
            out.trapezoid = RootInterval{t.value.lo / k, t.value.hi / k};
            // log enclosures are padded by a few ulps on each side
            Rational slack(1, 1000000000);
            out.consistent = out.trapezoid->lo <= out.value.hi + slack && out.value.lo <= out.trapezoid->hi + slack;
            break;
        }
    }
    return out;
}

}  // namespace pwl
