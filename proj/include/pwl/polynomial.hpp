#pragma once

// Integer polynomials, division-free characteristic polynomials and exact
// root isolation by Sturm sequences.

#include "pwl/exact.hpp"

#include <string>
#include <vector>

namespace pwl {

// Coefficients in ascending degree, trailing zeros stripped; the zero
// polynomial has no coefficients.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<Integer> ascending);
    static IntPoly monomial(int degree, Integer coeff = 1);
    static IntPoly constant(Integer c) { return monomial(0, std::move(c)); }

    const std::vector<Integer>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    Integer coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : Integer(0); }
    const Integer& leading() const { return c_.back(); }
    // Largest k with x^k dividing p (0 for the zero polynomial).
    int low_degree() const;
    IntPoly shifted(int k) const;  // times x^k, k >= 0
    IntPoly without_low_power() const { return divided_by_x_power(low_degree()); }
    IntPoly divided_by_x_power(int k) const;

    Integer sum() const;  // value at 1
    int sign_at(const Rational& x) const;
    Rational eval(const Rational& x) const;

    friend IntPoly operator+(const IntPoly& p, const IntPoly& q);
    friend IntPoly operator-(const IntPoly& p, const IntPoly& q);
    friend IntPoly operator-(const IntPoly& p);
    friend IntPoly operator*(const IntPoly& p, const IntPoly& q);
    friend bool operator==(const IntPoly& p, const IntPoly& q) { return p.c_ == q.c_; }
    IntPoly& operator+=(const IntPoly& q) { return *this = *this + q; }
    IntPoly& operator-=(const IntPoly& q) { return *this = *this - q; }

private:
    void trim();
    std::vector<Integer> c_;
};

std::string to_string(const IntPoly& p, const std::string& var = "x");

// Closed interval [lo, hi] with exact ends.
struct RootInterval {
    Rational lo, hi;
    bool exact() const { return lo == hi; }
    double mid() const { return to_double((lo + hi) / 2); }
};

// Number of distinct real roots in (lo, hi].
int count_real_roots(const IntPoly& p, const Rational& lo, const Rational& hi);

// Interval of width <= tol around the largest real root; [0,0] when the
// polynomial has no positive root. Throws for the zero polynomial.
RootInterval largest_real_root(const IntPoly& p, const Rational& tol);

// Interval for the natural log of a number known to lie in r (r.lo >= 1
// gives a nonnegative result), widened by the double rounding error.
RootInterval log_interval(const RootInterval& r);

Rational default_root_tol();  // 10^-12

// det(tI - A) by Berkowitz's algorithm, coefficients of t^n, t^(n-1), ...,
// t^0. Only ring operations, so it works for any commutative ring T.
template <class T>
std::vector<T> berkowitz(const std::vector<std::vector<T>>& a, const T& zero, const T& one) {
    std::size_t n = a.size();
    std::vector<T> p{one};
    for (std::size_t r = 0; r < n; ++r) {
        // q = (1, -a_rr, -R C, -R M C, ..., -R M^(r-1) C)
        std::vector<T> q{one, zero - a[r][r]};
        std::vector<T> v(r);  // M^k C
        for (std::size_t i = 0; i < r; ++i) v[i] = a[i][r];
        for (std::size_t k = 0; k < r; ++k) {
            T s = zero;
            for (std::size_t i = 0; i < r; ++i) s = s + a[r][i] * v[i];
            q.push_back(zero - s);
            std::vector<T> w(r, zero);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < r; ++j) w[i] = w[i] + a[i][j] * v[j];
            v = std::move(w);
        }
        std::vector<T> next(r + 2, zero);
        for (std::size_t i = 0; i < r + 2; ++i)
            for (std::size_t j = 0; j <= std::min(i, r); ++j) next[i] = next[i] + q[i - j] * p[j];
        p = std::move(next);
    }
    return p;
}

// det(xI - M) of an integer matrix as an IntPoly.
IntPoly char_poly(const std::vector<std::vector<int>>& m);

}  // namespace pwl
