#include "pwl/polynomial.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace pwl {

IntPoly::IntPoly(std::vector<Integer> ascending) : c_(std::move(ascending)) { trim(); }

IntPoly IntPoly::monomial(int degree, Integer coeff) {
    std::vector<Integer> c(degree + 1, Integer(0));
    c[degree] = std::move(coeff);
    return IntPoly(std::move(c));
}

void IntPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

int IntPoly::low_degree() const {
    int k = 0;
    while (k < static_cast<int>(c_.size()) && c_[k] == 0) ++k;
    return is_zero() ? 0 : k;
}

IntPoly IntPoly::shifted(int k) const {
    if (is_zero()) return {};
    std::vector<Integer> c(k, Integer(0));
    c.insert(c.end(), c_.begin(), c_.end());
    return IntPoly(std::move(c));
}

IntPoly IntPoly::divided_by_x_power(int k) const {
    for (int i = 0; i < k && i < static_cast<int>(c_.size()); ++i)
        if (c_[i] != 0) throw std::invalid_argument("polynomial not divisible by x^k");
    if (k >= static_cast<int>(c_.size())) return {};
    return IntPoly(std::vector<Integer>(c_.begin() + k, c_.end()));
}

Integer IntPoly::sum() const {
    Integer s = 0;
    for (auto& x : c_) s += x;
    return s;
}

Rational IntPoly::eval(const Rational& x) const {
    Rational v = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + Rational(*it);
    return v;
}

int IntPoly::sign_at(const Rational& x) const { return sgn(eval(x)); }

IntPoly operator+(const IntPoly& p, const IntPoly& q) {
    std::vector<Integer> c(std::max(p.c_.size(), q.c_.size()), Integer(0));
    for (std::size_t i = 0; i < p.c_.size(); ++i) c[i] += p.c_[i];
    for (std::size_t i = 0; i < q.c_.size(); ++i) c[i] += q.c_[i];
    return IntPoly(std::move(c));
}

IntPoly operator-(const IntPoly& p) {
    auto c = p.c_;
    for (auto& x : c) x = -x;
    return IntPoly(std::move(c));
}

IntPoly operator-(const IntPoly& p, const IntPoly& q) { return p + (-q); }

IntPoly operator*(const IntPoly& p, const IntPoly& q) {
    if (p.is_zero() || q.is_zero()) return {};
    std::vector<Integer> c(p.c_.size() + q.c_.size() - 1, Integer(0));
    for (std::size_t i = 0; i < p.c_.size(); ++i) {
        if (p.c_[i] == 0) continue;
        for (std::size_t j = 0; j < q.c_.size(); ++j) c[i + j] += p.c_[i] * q.c_[j];
    }
    return IntPoly(std::move(c));
}

std::string to_string(const IntPoly& p, const std::string& var) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = p.degree(); i >= 0; --i) {
        Integer c = p.coeff(i);
        if (c == 0) continue;
        Integer m = abs(c);
        if (first) os << (c < 0 ? "-" : "");
        else os << (c < 0 ? " - " : " + ");
        first = false;
        if (m != 1 || i == 0) os << m.get_str();
        if (i > 0) os << var;
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

namespace {

// Sturm chains run on primitive integer polynomials: scaling a remainder by
// a positive constant does not change any sign.
using Poly = std::vector<Integer>;

void strip(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

void make_primitive(Poly& p) {
    strip(p);
    Integer g = 0;
    for (auto& c : p) g = gcd(g, c);
    if (g > 1)
        for (auto& c : p) c /= g;
}

Poly derivative(const Poly& p) {
    Poly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Integer(static_cast<unsigned long>(i)));
    strip(d);
    return d;
}

// Pseudo-remainder scaled so that it is a positive multiple of rem(a, b).
Poly positive_prem(Poly a, const Poly& b) {
    const Integer& lb = b.back();
    Integer s = lb < 0 ? Integer(-lb) : lb;
    int sb = lb < 0 ? -1 : 1;
    while (a.size() >= b.size() && !a.empty()) {
        // a <- s*a - sb*lead(a)*x^k*b  (multiplier s>0 keeps signs)
        Integer la = a.back();
        std::size_t k = a.size() - b.size();
        for (auto& c : a) c *= s;
        for (std::size_t i = 0; i < b.size(); ++i) a[i + k] -= sb * la * b[i];
        strip(a);
        make_primitive(a);
    }
    return a;
}

Poly poly_gcd(Poly a, Poly b) {
    make_primitive(a);
    make_primitive(b);
    while (!b.empty()) {
        Poly r = positive_prem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty() && a.back() < 0)
        for (auto& c : a) c = -c;
    return a;
}

// Exact quotient a / b for b dividing a.
Poly exact_div(Poly a, const Poly& b) {
    Poly q(a.size() - b.size() + 1, Integer(0));
    while (a.size() >= b.size() && !a.empty()) {
        std::size_t k = a.size() - b.size();
        Integer c = a.back() / b.back();
        q[k] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[i + k] -= c * b[i];
        strip(a);
    }
    return q;
}

std::vector<Poly> sturm_chain(const IntPoly& p) {
    Poly a(p.coeffs().begin(), p.coeffs().end());
    Poly g = poly_gcd(a, derivative(a));
    if (g.size() > 1) a = exact_div(a, g);
    make_primitive(a);
    std::vector<Poly> chain{a, derivative(a)};
    make_primitive(chain.back());
    while (!chain.back().empty() && chain.back().size() > 1) {
        Poly r = positive_prem(chain[chain.size() - 2], chain.back());
        for (auto& c : r) c = -c;
        if (r.empty()) break;
        chain.push_back(std::move(r));
    }
    return chain;
}

int sign_of(const Poly& p, const Rational& x) {
    Rational v = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + Rational(*it);
    return sgn(v);
}

int variations(const std::vector<Poly>& chain, const Rational& x) {
    int count = 0, last = 0;
    for (auto& p : chain) {
        int s = sign_of(p, x);
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

Rational cauchy_bound(const IntPoly& p) {
    Rational m = 0;
    Rational lead = abs(Rational(p.leading()));
    for (int i = 0; i < p.degree(); ++i) m = std::max(m, Rational(abs(Rational(p.coeff(i))) / lead));
    return m + 1;
}

}  // namespace

int count_real_roots(const IntPoly& p, const Rational& lo, const Rational& hi) {
    if (p.is_zero()) throw std::invalid_argument("zero polynomial");
    if (p.degree() == 0) return 0;
    auto chain = sturm_chain(p);
    return variations(chain, lo) - variations(chain, hi);
}

RootInterval largest_real_root(const IntPoly& p, const Rational& tol) {
    if (p.is_zero()) throw std::invalid_argument("zero polynomial");
    if (tol <= 0) throw std::invalid_argument("tolerance must be positive");
    if (p.degree() == 0) return {0, 0};
    auto chain = sturm_chain(p);
    Rational hi = cauchy_bound(p);
    int vhi = variations(chain, hi);
    Rational lo = 0;
    if (variations(chain, lo) - vhi == 0) return {0, 0};
    // invariant: the largest root lies in (lo, hi]
    while (hi - lo > tol) {
        Rational mid = (lo + hi) / 2;
        if (variations(chain, mid) - vhi > 0) lo = mid;
        else hi = mid;
    }
    if (sign_of(chain.front(), hi) == 0) return {hi, hi};
    // integer roots, the usual case for 0/1 matrices with rational spectra
    Rational k(-floor_of(-lo));
    if (k <= hi && sign_of(chain.front(), k) == 0) return {k, k};
    return {lo, hi};
}

RootInterval log_interval(const RootInterval& r) {
    if (r.lo <= 0) throw std::domain_error("log of a non-positive number");
    double lo = std::log(to_double(r.lo)), hi = std::log(to_double(r.hi));
    for (int i = 0; i < 4; ++i) {
        lo = std::nextafter(lo, -INFINITY);
        hi = std::nextafter(hi, INFINITY);
    }
    return {Rational(lo), Rational(hi)};
}

Rational default_root_tol() { return Rational(1) / Rational(Integer("1000000000000")); }

IntPoly char_poly(const std::vector<std::vector<int>>& m) {
    std::vector<std::vector<Integer>> a;
    for (auto& row : m) a.emplace_back(row.begin(), row.end());
    auto d = berkowitz<Integer>(a, Integer(0), Integer(1));
    return IntPoly(std::vector<Integer>(d.rbegin(), d.rend()));
}

}  // namespace pwl
