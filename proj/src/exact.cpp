#include "pwl/exact.hpp"

#include <cctype>
#include <sstream>

namespace pwl {

Rational normalize(const Integer& num, const Integer& den) {
    if (den == 0) throw std::domain_error("zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

bool is_decimal_literal(std::string_view s) { return s.find('.') != std::string_view::npos; }

static bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

static Integer parse_integer(std::string_view s) {
    std::string_view body = s;
    if (!body.empty() && (body[0] == '-' || body[0] == '+')) body.remove_prefix(1);
    if (!all_digits(body)) throw std::invalid_argument("malformed integer: " + std::string(s));
    std::string t(s);
    if (t[0] == '+') t.erase(0, 1);
    return Integer(t, 10);
}

Rational parse_rational(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) throw std::invalid_argument("empty rational");
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        Integer num = parse_integer(s.substr(0, slash));
        std::string_view ds = s.substr(slash + 1);
        if (!all_digits(ds)) throw std::invalid_argument("malformed denominator: " + std::string(s));
        Integer den(std::string(ds), 10);
        if (den == 0) throw std::domain_error("zero denominator");
        return normalize(num, den);
    }
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        bool neg = s[0] == '-';
        std::string_view ip = s.substr(0, dot);
        if (!ip.empty() && (ip[0] == '-' || ip[0] == '+')) ip.remove_prefix(1);
        std::string_view fp = s.substr(dot + 1);
        if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)) || (ip.empty() && fp.empty()))
            throw std::invalid_argument("malformed decimal: " + std::string(s));
        std::string digits = std::string(ip) + std::string(fp);
        Integer num(digits.empty() ? std::string("0") : digits, 10);
        Integer den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, fp.size());
        Rational r = normalize(num, den);
        return neg ? Rational(-r) : r;
    }
    return Rational(parse_integer(s));
}

int sgn(const Rational& r) { return ::sgn(r); }

Rational abs_value(const Rational& r) { return r < 0 ? Rational(-r) : r; }

double to_double(const Rational& r) { return r.get_d(); }

Integer floor_of(const Rational& r) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

std::size_t RationalHash::operator()(const Rational& r) const {
    std::size_t h1 = mpz_fdiv_ui(r.get_num_mpz_t(), 1000000007UL);
    std::size_t h2 = mpz_fdiv_ui(r.get_den_mpz_t(), 998244353UL);
    return h1 * 1000003u ^ h2;
}

std::string to_string(const ParamScalar& p) {
    std::ostringstream os;
    if (p.c1 == 0) return to_string(p.c0);
    Integer den;
    mpz_lcm(den.get_mpz_t(), p.c0.get_den_mpz_t(), p.c1.get_den_mpz_t());
    Rational k0 = p.c0 * den, k1 = p.c1 * den;
    std::string s;
    Integer n1 = k1.get_num();
    if (n1 == 1) s = "b";
    else if (n1 == -1) s = "-b";
    else s = n1.get_str() + "b";
    Integer n0 = k0.get_num();
    if (n0 > 0) s += "+" + n0.get_str();
    else if (n0 < 0) s += n0.get_str();
    if (den != 1) s = "(" + s + ")/" + den.get_str();
    return s;
}

std::ostream& operator<<(std::ostream& os, const ParamScalar& p) { return os << to_string(p); }

int sgn(const Tracked& t) {
    if (t.form_.is_zero()) return 0;
    int s = ::sgn(t.value_);
    if (s == 0) throw TrackedDegenerate("probe parameter is degenerate for form " + to_string(t.form_));
    return s;
}

Tracked operator*(const Tracked& p, const Tracked& q) {
    if (p.form_.is_constant()) return p.form_.c0 * q;
    if (q.form_.is_constant()) return q.form_.c0 * p;
    throw std::logic_error("product of two non-constant affine forms");
}

Tracked operator/(const Tracked& p, const Tracked& q) {
    if (!q.form_.is_constant() || q.form_.c0 == 0) throw std::logic_error("division by a non-constant affine form");
    return Rational(1 / q.form_.c0) * p;
}

}  // namespace pwl
