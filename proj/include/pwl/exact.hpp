#pragma once

// Exact scalars: big rationals, affine forms in the parameter b, and
// "tracked" scalars that carry an affine form together with its value at
// a probe parameter so that sign decisions can be made symbolically.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pwl {

using Integer = mpz_class;
using Rational = mpq_class;

// Reduced fraction num/den. Throws std::domain_error on a zero denominator.
Rational normalize(const Integer& num, const Integer& den);

// "p/q" with q omitted when 1.
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

// Accepts "p", "p/q" and finite decimals such as "-0.15" (converted exactly).
// Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view s);

// True when the text was a decimal literal (callers may warn).
bool is_decimal_literal(std::string_view s);

int sgn(const Rational& r);
Rational abs_value(const Rational& r);
double to_double(const Rational& r);
Integer floor_of(const Rational& r);

struct RationalHash {
    std::size_t operator()(const Rational& r) const;
};

// c0 + c1*b
struct ParamScalar {
    Rational c0;
    Rational c1;

    ParamScalar() = default;
    ParamScalar(Rational constant) : c0(std::move(constant)), c1(0) {}
    ParamScalar(Rational constant, Rational slope) : c0(std::move(constant)), c1(std::move(slope)) {}

    static ParamScalar param() { return ParamScalar(Rational(0), Rational(1)); }

    Rational eval(const Rational& b) const { return c0 + c1 * b; }
    bool is_zero() const { return c0 == 0 && c1 == 0; }
    bool is_constant() const { return c1 == 0; }

    friend ParamScalar operator+(const ParamScalar& p, const ParamScalar& q) { return {p.c0 + q.c0, p.c1 + q.c1}; }
    friend ParamScalar operator-(const ParamScalar& p, const ParamScalar& q) { return {p.c0 - q.c0, p.c1 - q.c1}; }
    friend ParamScalar operator-(const ParamScalar& p) { return {-p.c0, -p.c1}; }
    friend ParamScalar operator*(const Rational& k, const ParamScalar& p) { return {k * p.c0, k * p.c1}; }
    friend ParamScalar operator*(const ParamScalar& p, const Rational& k) { return k * p; }
    friend bool operator==(const ParamScalar& p, const ParamScalar& q) { return p.c0 == q.c0 && p.c1 == q.c1; }
};

// Human form such as "-b-2", "2b-1", "(b-2)/5".
std::string to_string(const ParamScalar& p);

// An affine form plus its value at a fixed probe parameter. Equality is
// structural on the form; ordering uses the form when the difference is
// identically zero and the probe value otherwise.
struct TrackedDegenerate : std::logic_error {
    using std::logic_error::logic_error;
};

class Tracked {
public:
    Tracked() = default;
    Tracked(ParamScalar form, Rational value) : form_(std::move(form)), value_(std::move(value)) {}
    static Tracked constant(const Rational& r) { return Tracked(ParamScalar(r), r); }
    static Tracked parameter(const Rational& probe) { return Tracked(ParamScalar::param(), probe); }

    const ParamScalar& form() const { return form_; }
    const Rational& value() const { return value_; }

    friend Tracked operator+(const Tracked& p, const Tracked& q) { return {p.form_ + q.form_, p.value_ + q.value_}; }
    friend Tracked operator-(const Tracked& p, const Tracked& q) { return {p.form_ - q.form_, p.value_ - q.value_}; }
    friend Tracked operator-(const Tracked& p) { return {-p.form_, -p.value_}; }
    friend Tracked operator*(const Rational& k, const Tracked& p) { return {k * p.form_, k * p.value_}; }
    friend Tracked operator*(const Tracked& p, const Rational& k) { return k * p; }

    // Products are only meaningful when one side is constant.
    friend Tracked operator*(const Tracked& p, const Tracked& q);
    friend Tracked operator/(const Tracked& p, const Tracked& q);

    friend bool operator==(const Tracked& p, const Tracked& q) { return sgn(p - q) == 0; }
    friend std::strong_ordering operator<=>(const Tracked& p, const Tracked& q) {
        int s = sgn(p - q);
        return s < 0 ? std::strong_ordering::less : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    friend int sgn(const Tracked& t);

private:
    ParamScalar form_;
    Rational value_;
};

// Scalar traits used by the templated geometry.
inline Rational value_of(const Rational& r) { return r; }
inline Rational value_of(const Tracked& t) { return t.value(); }
inline Tracked abs_value(const Tracked& t) { return sgn(t) < 0 ? -t : t; }

template <class S>
S from_rational(const Rational& r);
template <>
inline Rational from_rational<Rational>(const Rational& r) { return r; }
template <>
inline Tracked from_rational<Tracked>(const Rational& r) { return Tracked::constant(r); }

std::ostream& operator<<(std::ostream& os, const ParamScalar& p);

}  // namespace pwl
