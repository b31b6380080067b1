#include "pwl/circle_dynamics.hpp"

#include <cmath>
#include <map>
#include <numeric>

namespace pwl {

namespace {

// Parameter of p on the segment a->b, or nullopt when p is off it.
std::optional<Rational> param_on(const Point& p, const Point& a, const Point& b) {
    Rational t = b.x != a.x ? Rational((p.x - a.x) / (b.x - a.x)) : Rational((p.y - a.y) / (b.y - a.y));
    if (t < 0 || t > 1) return std::nullopt;
    if (!(a + t * (b - a) == p)) return std::nullopt;
    return t;
}

Rational mod_length(const Rational& x, const Rational& length) {
    return x - Rational(floor_of(x / length)) * length;
}

// Representative of x mod length in [base, base + length).
Rational lift_above(const Rational& x, const Rational& base, const Rational& length) {
    return base + mod_length(x - base, length);
}

std::optional<std::vector<Segment>> ordered_cycle(const PlanarGraph& g) {
    auto edges = g.edges();
    if (edges.empty() || !g.bounded()) return std::nullopt;
    std::map<Point, std::vector<int>> incident;
    for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
        incident[edges[i].p].push_back(i);
        incident[edges[i].q].push_back(i);
    }
    for (auto& [v, es] : incident)
        if (es.size() != 2) return std::nullopt;
    std::vector<Segment> arcs;
    std::vector<bool> used(edges.size(), false);
    Point at = edges[0].p;
    int e = 0;
    while (!used[e]) {
        used[e] = true;
        Point next = edges[e].p == at ? edges[e].q : edges[e].p;
        arcs.push_back({at, next});
        at = next;
        auto& es = incident[at];
        e = es[0] == e ? es[1] : es[0];
    }
    if (arcs.size() != edges.size()) return std::nullopt;  // more than one cycle
    return arcs;
}

}  // namespace

bool is_circle(const PlanarGraph& g) { return ordered_cycle(g).has_value(); }

CircleChart CircleChart::from_graph(const PlanarGraph& g) {
    auto arcs = ordered_cycle(g);
    if (!arcs) throw CircleError("graph is not a topological circle");
    Rational area2 = 0;
    for (auto& s : *arcs) area2 += s.p.x * s.q.y - s.q.x * s.p.y;
    if (area2 < 0) {
        std::vector<Segment> rev;
        for (auto it = arcs->rbegin(); it != arcs->rend(); ++it) rev.push_back({it->q, it->p});
        *arcs = std::move(rev);
    }
    CircleChart c;
    c.arcs_ = std::move(*arcs);
    return c;
}

Rational CircleChart::position(const Point& p) const {
    for (std::size_t k = 0; k < arcs_.size(); ++k) {
        auto t = param_on(p, arcs_[k].p, arcs_[k].q);
        if (t && *t < 1) return Rational(static_cast<long>(k)) + *t;
    }
    throw CircleError("point " + to_string(p) + " is off the circle");
}

Point CircleChart::point_at(const Rational& x) const {
    Rational y = mod_length(x, length());
    Integer k = floor_of(y);
    Rational t = y - Rational(k);
    auto& s = arcs_[k.get_si()];
    return s.p + t * (s.q - s.p);
}

CircleLift::CircleLift(const MapParams& params, CircleChart chart) : params_(params), chart_(std::move(chart)) {
    const Rational length = chart_.length();
    std::size_t n = chart_.arcs().size();
    vertex_lift_.push_back(chart_.position(apply(params_, chart_.arcs()[0].p)));
    for (std::size_t k = 0; k < n; ++k) {
        auto& arc = chart_.arcs()[k];
        Rational end = lift_above(chart_.position(apply(params_, arc.q)), vertex_lift_[k], length);
        // the image of an arc is a straight segment, so it is either the
        // forward arc from G(k) to end or its complement
        Point mid = apply(params_, arc.p + Rational(1, 2) * (arc.q - arc.p));
        Rational m = lift_above(chart_.position(mid), vertex_lift_[k], length);
        if (m > end) throw CircleError("lift is decreasing on arc " + std::to_string(k));
        vertex_lift_.push_back(end);
    }
    if (vertex_lift_.back() != vertex_lift_.front() + length)
        throw CircleError("map does not have degree one on the circle");
}

Rational CircleLift::lift_on_arc(std::size_t k, const Point& image) const {
    return lift_above(chart_.position(image), vertex_lift_[k], chart_.length());
}

Rational CircleLift::operator()(const Rational& x) const {
    const Rational length = chart_.length();
    Integer turns = floor_of(x / length);
    Rational y = x - Rational(turns) * length;
    auto k = static_cast<std::size_t>(floor_of(y).get_si());
    return lift_on_arc(k, apply(params_, chart_.point_at(y))) + Rational(turns) * length;
}

std::string to_string(RotationResult::Method m) {
    return m == RotationResult::Method::cycle_detected ? "cycle-detected" : "bounded-estimate";
}

RotationResult rotation_of_lift(const std::function<Rational(const Rational&)>& lift, const Rational& length,
                                const Rational& x0, long budget) {
    if (length <= 0) throw std::invalid_argument("circle length must be positive");
    RotationResult r;
    std::map<Rational, std::pair<long, Rational>> seen;  // position mod L -> (step, lift value)
    Rational x = x0;
    for (long n = 0; n <= budget; ++n) {
        Rational pos = mod_length(x, length);
        auto [it, fresh] = seen.emplace(pos, std::make_pair(n, x));
        if (!fresh) {
            auto [m, xm] = it->second;
            r.method = RotationResult::Method::cycle_detected;
            r.period = n - m;
            Rational turns = (x - xm) / length;
            if (turns.get_den() != 1) throw CircleError("cycle closes off the lattice of turns");
            r.winding = turns.get_num();
            r.lo = r.hi = turns / Rational(r.period);
            Rational y = xm;
            for (long i = 0; i < r.period; ++i) {
                r.cycle.push_back(mod_length(y, length));
                y = lift(y);
            }
            r.steps = n;
            return r;
        }
        if (n < budget) x = lift(x);
    }
    Rational delta = x - x0;
    Rational scale = Rational(budget) * length;
    r.lo = (delta - length) / scale;
    r.hi = (delta + length) / scale;
    r.steps = budget;
    return r;
}

RotationResult rotation_number(const MapParams& params, const PlanarGraph& g, long budget, std::optional<Point> start) {
    CircleLift lift(params, CircleChart::from_graph(g));
    Rational x0 = start ? lift.chart().position(*start) : Rational(0);
    auto r = rotation_of_lift([&](const Rational& x) { return lift(x); }, lift.chart().length(), x0, budget);
    for (auto& c : r.cycle) r.witness.push_back(lift.chart().point_at(c));
    return r;
}

long divisor_count(long n) {
    if (n < 1) throw std::invalid_argument("divisor_count needs n >= 1");
    long count = 0;
    for (long d = 1; d * d <= n; ++d)
        if (n % d == 0) count += (d * d == n) ? 1 : 2;
    return count;
}

bool has_irreducible_fraction(long n, const Rational& lo, const Rational& hi) {
    Rational nn(n);
    Integer first = -floor_of(-lo * nn), last = floor_of(hi * nn);
    for (Integer l = first; l <= last; ++l)
        if (std::gcd(l.get_si(), n) == 1) return true;
    return false;
}

namespace {

// Scan n = 1, 2, ... for the last failure of pass(n). The scan stops once
// n is past the vertex of the convex bound (n w - c)^2 - 4n and that bound
// is positive, after which pass holds for good.
template <class Pass>
long last_failure_scan(const Rational& w, long c, Pass pass) {
    Rational vertex = (Rational(c) + Rational(2) / w) / w;
    long last_fail = 0;
    for (long n = 1;; ++n) {
        Rational nn(n);
        if (!pass(n)) last_fail = n;
        Rational lower = nn * w - Rational(c);
        if (nn >= vertex && lower > 0 && lower * lower > 4 * nn) return last_fail + 1;
    }
}

}  // namespace

long period_threshold(const Rational& lo, const Rational& hi) {
    if (!(0 <= lo && lo < hi)) throw std::invalid_argument("need 0 <= lo < hi");
    Rational w = hi - lo;
    // floor(n w) - 1 >= n w - 2
    return last_failure_scan(w, 2, [&](long n) {
        Integer f = floor_of(Rational(n) * w) - 1;
        return f > 0 && Integer(4 * n) < f * f;
    });
}

long period_threshold_real(const Rational& lo, const Rational& hi) {
    if (!(0 <= lo && lo < hi)) throw std::invalid_argument("need 0 <= lo < hi");
    Rational w = hi - lo;
    return last_failure_scan(w, 1, [&](long n) {
        Rational f = Rational(n) * w - 1;
        return f > 0 && 4 * Rational(n) < f * f;
    });
}

PeriodSet period_set(const Rational& lo, const Rational& hi) {
    PeriodSet s;
    s.threshold = period_threshold(lo, hi);
    for (long n = 1; n < s.threshold; ++n)
        if (!has_irreducible_fraction(n, lo, hi)) s.excluded.push_back(n);
    return s;
}

std::optional<std::pair<long, long>> period_form_check(long q) {
    if (q < 1) throw std::invalid_argument("period must be positive");
    for (long n = 0; 7 * n <= q; ++n)
        if ((q - 7 * n) % 6 == 0) return std::make_pair((q - 7 * n) / 6, n);
    return std::nullopt;
}

}  // namespace pwl
