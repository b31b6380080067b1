#pragma once

// Unions of segments, rays and points whose directions lie in V. Segments on
// a common line are merged into maximal spans, so two shapes are equal as
// sets exactly when their canonical forms agree.

#include "pwl/geometry.hpp"
#include "pwl/map.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pwl {

template <class S>
struct Span {
    S lo, hi;
    bool lo_inf = false, hi_inf = false;
    bool bounded() const { return !lo_inf && !hi_inf; }
};

// Line {v1: y=c, v2: x=c, v3: y-x=c, v4: y+x=c}; the parameter along the
// line is y for v2 and x otherwise.
template <class S>
struct LineKey {
    Direction dir;
    S offset;
};

template <class S>
S line_offset(Direction d, const PointT<S>& p) {
    switch (d) {
        case Direction::v1: return p.y;
        case Direction::v2: return p.x;
        case Direction::v3: return p.y - p.x;
        default: return p.y + p.x;
    }
}

template <class S>
S line_param(Direction d, const PointT<S>& p) {
    return d == Direction::v2 ? p.y : p.x;
}

template <class S>
PointT<S> line_point(Direction d, const S& c, const S& t) {
    switch (d) {
        case Direction::v1: return {t, c};
        case Direction::v2: return {c, t};
        case Direction::v3: return {t, t + c};
        default: return {t, c - t};
    }
}

// Intersection of two distinct-direction lines (always affine in b).
template <class S>
PointT<S> line_intersection(Direction d1, const S& c1, Direction d2, const S& c2) {
    if (d2 < d1) return line_intersection(d2, c2, d1, c1);
    using D = Direction;
    if (d1 == D::v1 && d2 == D::v2) return {c2, c1};
    if (d1 == D::v1 && d2 == D::v3) return {c1 - c2, c1};
    if (d1 == D::v1 && d2 == D::v4) return {c2 - c1, c1};
    if (d1 == D::v2 && d2 == D::v3) return {c1, c1 + c2};
    if (d1 == D::v2 && d2 == D::v4) return {c1, c2 - c1};
    // v3 and v4
    Rational half(1, 2);
    return {half * (c2 - c1), half * (c1 + c2)};
}

// A bounded or unbounded straight piece with direction in V.
template <class S>
struct Piece {
    PointT<S> p;
    std::optional<PointT<S>> q;  // set for segments
    std::array<int, 2> dir{0, 0};  // primitive direction for rays
    bool is_point() const { return q && *q == p; }
};

inline std::array<int, 2> primitive(int x, int y) {
    int g = std::gcd(std::abs(x), std::abs(y));
    if (g == 0) return {0, 0};
    return {x / g, y / g};
}

inline std::optional<Direction> direction_of_vector(int x, int y) {
    if (x == 0 && y == 0) return Direction::zero;
    if (y == 0) return Direction::v1;
    if (x == 0) return Direction::v2;
    if (x == y) return Direction::v3;
    if (x == -y) return Direction::v4;
    return std::nullopt;
}

template <class S>
class PlanarGraphT {
public:
    struct Line {
        Direction dir;
        S offset;
        std::vector<Span<S>> spans;  // disjoint, sorted, non-touching
    };

    const std::vector<Line>& lines() const { return lines_; }
    const std::vector<PointT<S>>& points() const { return points_; }

    bool empty() const { return lines_.empty() && points_.empty(); }

    bool bounded() const {
        for (auto& l : lines_)
            for (auto& s : l.spans)
                if (!s.bounded()) return false;
        return true;
    }

    void add_segment(const PointT<S>& a, const PointT<S>& b) {
        if (a == b) {
            add_point(a);
            return;
        }
        auto d = displacement_direction(b.x - a.x, b.y - a.y);
        if (!d) throw std::invalid_argument("non-atlas direction");
        S ta = line_param(*d, a), tb = line_param(*d, b);
        Span<S> sp;
        if (sgn(tb - ta) < 0) std::swap(ta, tb);
        sp.lo = ta;
        sp.hi = tb;
        insert_span(*d, line_offset(*d, a), sp);
    }

    void add_ray(const PointT<S>& a, std::array<int, 2> v) {
        auto d = direction_of_vector(v[0], v[1]);
        if (!d || *d == Direction::zero) throw std::invalid_argument("ray direction outside V");
        int forward = (*d == Direction::v2) ? v[1] : v[0];
        Span<S> sp;
        sp.lo = sp.hi = line_param(*d, a);
        if (forward > 0) sp.hi_inf = true;
        else sp.lo_inf = true;
        insert_span(*d, line_offset(*d, a), sp);
    }

    void add_point(const PointT<S>& p) {
        for (auto& q : points_)
            if (q == p) return;
        points_.push_back(p);
    }

    void add_piece(const Piece<S>& pc) {
        if (pc.q) add_segment(pc.p, *pc.q);
        else add_ray(pc.p, pc.dir);
    }

    void add_all(const PlanarGraphT& g) {
        for (auto& l : g.lines_)
            for (auto& s : l.spans) insert_span(l.dir, l.offset, s);
        for (auto& p : g.points_) add_point(p);
    }

    bool on_segments(const PointT<S>& p) const {
        for (auto& l : lines_) {
            if (sgn(line_offset(l.dir, p) - l.offset) != 0) continue;
            S t = line_param(l.dir, p);
            for (auto& s : l.spans)
                if (span_contains(s, t)) return true;
        }
        return false;
    }

    bool contains_point(const PointT<S>& p) const {
        if (on_segments(p)) return true;
        for (auto& q : points_)
            if (q == p) return true;
        return false;
    }

    bool contains_span(Direction d, const S& offset, const Span<S>& sp) const {
        for (auto& l : lines_) {
            if (l.dir != d || sgn(l.offset - offset) != 0) continue;
            for (auto& s : l.spans) {
                bool lo_ok = s.lo_inf || (!sp.lo_inf && sgn(sp.lo - s.lo) >= 0);
                bool hi_ok = s.hi_inf || (!sp.hi_inf && sgn(s.hi - sp.hi) >= 0);
                if (lo_ok && hi_ok) return true;
            }
        }
        return false;
    }

    bool contains_segment(const PointT<S>& a, const PointT<S>& b) const {
        if (a == b) return contains_point(a);
        auto d = displacement_direction(b.x - a.x, b.y - a.y);
        if (!d) return false;
        S ta = line_param(*d, a), tb = line_param(*d, b);
        if (sgn(tb - ta) < 0) std::swap(ta, tb);
        return contains_span(*d, line_offset(*d, a), Span<S>{ta, tb});
    }

    bool contains(const PlanarGraphT& g) const {
        for (auto& l : g.lines_)
            for (auto& s : l.spans)
                if (!contains_span(l.dir, l.offset, s)) return false;
        for (auto& p : g.points_)
            if (!contains_point(p)) return false;
        return true;
    }

    friend bool operator==(const PlanarGraphT& g, const PlanarGraphT& h) { return g.contains(h) && h.contains(g); }

    // Isolated points that do not lie on any segment.
    std::vector<PointT<S>> isolated() const {
        std::vector<PointT<S>> out;
        for (auto& p : points_)
            if (!on_segments(p)) out.push_back(p);
        return out;
    }

    // Pieces of every span: segments for bounded spans, one or two rays otherwise.
    std::vector<Piece<S>> pieces() const {
        std::vector<Piece<S>> out;
        for (auto& l : lines_) {
            auto u = direction_vector(l.dir);
            std::array<int, 2> fwd{u[0], u[1]}, bwd{-u[0], -u[1]};
            for (auto& s : l.spans) {
                if (s.bounded()) {
                    out.push_back({line_point(l.dir, l.offset, s.lo), line_point(l.dir, l.offset, s.hi), {0, 0}});
                } else if (s.lo_inf && s.hi_inf) {
                    S zero = from_rational<S>(Rational(0));
                    auto o = line_point(l.dir, l.offset, zero);
                    out.push_back({o, std::nullopt, fwd});
                    out.push_back({o, std::nullopt, bwd});
                } else if (s.hi_inf) {
                    out.push_back({line_point(l.dir, l.offset, s.lo), std::nullopt, fwd});
                } else {
                    out.push_back({line_point(l.dir, l.offset, s.hi), std::nullopt, bwd});
                }
            }
        }
        return out;
    }

    // Vertex set W: span endpoints, intersections of spans on different lines
    // and axis crossings. Only meaningful for bounded graphs.
    std::vector<PointT<S>> vertices() const {
        std::vector<PointT<S>> w;
        auto push = [&](const PointT<S>& p) {
            for (auto& q : w)
                if (q == p) return;
            w.push_back(p);
        };
        S zero = from_rational<S>(Rational(0));
        for (auto& l : lines_)
            for (auto& s : l.spans) {
                if (!s.lo_inf) push(line_point(l.dir, l.offset, s.lo));
                if (!s.hi_inf) push(line_point(l.dir, l.offset, s.hi));
                // axis crossings
                for (int axis = 0; axis < 2; ++axis) {
                    std::optional<PointT<S>> c;
                    if (axis == 0 && l.dir != Direction::v2) {
                        // x = 0
                        c = line_point(l.dir, l.offset, zero);
                    } else if (axis == 1 && l.dir != Direction::v1) {
                        // y = 0
                        c = line_intersection(l.dir, l.offset, Direction::v1, zero);
                    }
                    if (c && span_contains(s, line_param(l.dir, *c))) push(*c);
                }
            }
        for (std::size_t i = 0; i < lines_.size(); ++i)
            for (std::size_t j = i + 1; j < lines_.size(); ++j) {
                if (lines_[i].dir == lines_[j].dir) continue;
                auto c = line_intersection(lines_[i].dir, lines_[i].offset, lines_[j].dir, lines_[j].offset);
                bool in_i = false, in_j = false;
                for (auto& s : lines_[i].spans)
                    if (span_contains(s, line_param(lines_[i].dir, c))) in_i = true;
                for (auto& s : lines_[j].spans)
                    if (span_contains(s, line_param(lines_[j].dir, c))) in_j = true;
                if (in_i && in_j) push(c);
            }
        std::sort(w.begin(), w.end());
        return w;
    }

    // Elementary edges between consecutive vertices along each span.
    std::vector<SegmentT<S>> edges() const {
        auto w = vertices();
        std::vector<SegmentT<S>> out;
        for (auto& l : lines_) {
            std::vector<std::pair<S, PointT<S>>> on;
            for (auto& p : w)
                if (sgn(line_offset(l.dir, p) - l.offset) == 0) on.push_back({line_param(l.dir, p), p});
            std::sort(on.begin(), on.end(), [](const auto& u, const auto& v) { return sgn(u.first - v.first) < 0; });
            for (std::size_t i = 0; i + 1 < on.size(); ++i) {
                // Edge only if the open interval between them lies in a span.
                for (auto& s : l.spans)
                    if (span_contains(s, on[i].first) && span_contains(s, on[i + 1].first)) {
                        out.push_back(SegmentT<S>::make(on[i].second, on[i + 1].second));
                        break;
                    }
            }
        }
        std::sort(out.begin(), out.end(), [](const auto& u, const auto& v) {
            if (!(u.p == v.p)) return u.p < v.p;
            return u.q < v.q;
        });
        return out;
    }

    static bool span_contains(const Span<S>& s, const S& t) {
        return (s.lo_inf || sgn(t - s.lo) >= 0) && (s.hi_inf || sgn(s.hi - t) >= 0);
    }

private:
    void insert_span(Direction d, const S& offset, Span<S> sp) {
        Line* line = nullptr;
        for (auto& l : lines_)
            if (l.dir == d && sgn(l.offset - offset) == 0) {
                line = &l;
                break;
            }
        if (!line) {
            lines_.push_back(Line{d, offset, {}});
            line = &lines_.back();
        }
        std::vector<Span<S>> merged;
        std::vector<Span<S>> all = line->spans;
        all.push_back(sp);
        std::sort(all.begin(), all.end(), [](const Span<S>& u, const Span<S>& v) {
            if (u.lo_inf != v.lo_inf) return u.lo_inf;
            if (u.lo_inf) return false;
            return sgn(u.lo - v.lo) < 0;
        });
        for (auto& s : all) {
            if (!merged.empty()) {
                auto& m = merged.back();
                bool touches = m.hi_inf || s.lo_inf || sgn(s.lo - m.hi) <= 0;
                if (touches) {
                    if (s.hi_inf) m.hi_inf = true;
                    else if (!m.hi_inf && sgn(s.hi - m.hi) > 0) m.hi = s.hi;
                    continue;
                }
            }
            merged.push_back(s);
        }
        line->spans = std::move(merged);
    }

    std::vector<Line> lines_;
    std::vector<PointT<S>> points_;
};

using PlanarGraph = PlanarGraphT<Rational>;

// Image of a shape under F_{a,b}: every piece is split at the axes and
// mapped by the affine piece of its quadrant; rays whose direction is
// annihilated collapse to points.
template <class S>
PlanarGraphT<S> image(const S& a, const S& b, const PlanarGraphT<S>& g) {
    PlanarGraphT<S> out;
    S zero = from_rational<S>(Rational(0));
    for (auto& pc : g.pieces()) {
        if (pc.q) {
            for (auto& part : split_at_axes(SegmentT<S>{pc.p, *pc.q})) {
                auto img = segment_image(a, b, part);
                out.add_segment(img.p, img.q);
            }
            continue;
        }
        // Ray: cut at axis crossings ahead of the start.
        std::vector<PointT<S>> cuts{pc.p};
        auto v = pc.dir;
        std::vector<PointT<S>> crossings;
        if (v[0] != 0 && sgn(pc.p.x) * v[0] < 0)
            crossings.push_back({zero, pc.p.y - pc.p.x * normalize(v[1], v[0])});
        if (v[1] != 0 && sgn(pc.p.y) * v[1] < 0)
            crossings.push_back({pc.p.x - pc.p.y * normalize(v[0], v[1]), zero});
        if (crossings.size() == 2) {
            S d0 = (crossings[0].x - pc.p.x) * Rational(v[0]) + (crossings[0].y - pc.p.y) * Rational(v[1]);
            S d1 = (crossings[1].x - pc.p.x) * Rational(v[0]) + (crossings[1].y - pc.p.y) * Rational(v[1]);
            if (sgn(d1 - d0) < 0) std::swap(crossings[0], crossings[1]);
            if (crossings[0] == crossings[1]) crossings.pop_back();
        }
        for (auto& c : crossings)
            if (!(c == cuts.back())) cuts.push_back(c);
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            auto img = segment_image(a, b, SegmentT<S>{cuts[i], cuts[i + 1]});
            out.add_segment(img.p, img.q);
        }
        PointT<S> start = cuts.back();
        PointT<S> ahead{start.x + from_rational<S>(Rational(v[0])), start.y + from_rational<S>(Rational(v[1]))};
        int k = common_quadrant(start, ahead);
        if (k == 0) throw std::logic_error("ray tail not in a single quadrant");
        const auto& m = piece(k).m;
        int nx = m[0][0] * v[0] + m[0][1] * v[1], ny = m[1][0] * v[0] + m[1][1] * v[1];
        PointT<S> s0 = apply_piece(k, a, b, start);
        if (nx == 0 && ny == 0) out.add_point(s0);
        else out.add_ray(s0, primitive(nx, ny));
    }
    for (auto& p : g.points()) out.add_point(apply(a, b, p));
    return out;
}

}  // namespace pwl
