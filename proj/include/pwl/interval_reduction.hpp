#pragma once

// Continuous piecewise-affine interval maps: trapezoidal maps, the return
// maps of F near the two chaos onsets, lap counts and interval entropy, and
// the entropy of F on its attractor by parameter window.

#include "pwl/map.hpp"
#include "pwl/polynomial.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pwl {

struct IntervalMapError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct UnsupportedWindow : std::domain_error {
    using std::domain_error::domain_error;
};

// Continuous map on [breaks.front(), breaks.back()], affine between
// consecutive breaks. Collinear neighbouring pieces are merged on
// construction, so the representation is canonical.
class PLIntervalMap {
public:
    PLIntervalMap(std::vector<Rational> breaks, std::vector<Rational> values);

    const Rational& lo() const { return breaks_.front(); }
    const Rational& hi() const { return breaks_.back(); }
    const std::vector<Rational>& breaks() const { return breaks_; }
    const std::vector<Rational>& values() const { return values_; }
    std::size_t pieces() const { return breaks_.size() - 1; }
    Rational slope(std::size_t i) const;

    Rational operator()(const Rational& x) const;
    Rational min_value() const;
    Rational max_value() const;
    bool is_self_map() const;

    friend bool operator==(const PLIntervalMap&, const PLIntervalMap&) = default;

private:
    std::vector<Rational> breaks_, values_;
};

// f o g. Throws IntervalMapError when g leaves the domain of f.
PLIntervalMap compose(const PLIntervalMap& f, const PLIntervalMap& g);

// The orientation-preserving affine conjugate on [0,1].
PLIntervalMap rescale_to_unit(const PLIntervalMap& f);

// Removes a constant last piece [c, hi] by the semiconjugacy x -> min(x, c):
// the result is min(f, c) on [lo, c].
PLIntervalMap collapse_trailing_plateau(const PLIntervalMap& f);

// Number of maximal monotone pieces; constant pieces do not split a lap.
long lap_number(const PLIntervalMap& f);

struct TrapezoidParams {
    Rational X, Y, Z;
    Rational height() const { return (1 - Z) / (X + Y); }
};

// Slope 1/X up to height (1-Z)/(X+Y), a plateau of length Z, slope -1/Y
// back to 0. Throws std::domain_error unless 0 < X, Y, Z < 1 and the
// plateau height is at most 1.
PLIntervalMap make_trapezoid(const TrapezoidParams& p);

// Inverse of make_trapezoid on maps of [0,1] with that shape.
std::optional<TrapezoidParams> as_trapezoid(const PLIntervalMap& f);

// y = slope x + intercept
struct AffineBranch {
    Rational slope, intercept;
    Rational operator()(const Rational& x) const { return slope * x + intercept; }
};

// Plateau extension of a map with pieces increasing, constant, decreasing:
// the increasing branch is continued down to its repelling fixed point x1,
// the decreasing one until it returns to x1. The rising branch may be
// given explicitly, which is needed when its piece has shrunk to a point;
// a rising piece of positive length must lie on it.
struct PlateauExtension {
    PLIntervalMap map;
    Rational x1, x2;
};
PlateauExtension extend_plateau(const PLIntervalMap& f, const std::optional<AffineBranch>& rising = std::nullopt);

enum class Onset { alpha, beta };
std::string to_string(Onset w);

struct OnsetWindow {
    Rational lo, hi;   // entropy is zero at lo and positive at hi
    int period = 0;    // return time of the invariant segment
};
OnsetWindow onset_window(Onset w);

// Plateau length of the trapezoid the return map reduces to, in closed form.
Rational trapezoid_z(Onset w, const Rational& b);

// F^period on the invariant segment of the window, in the x coordinate.
// Alpha: the segment y = x + b + 1, x in [-9b-8, -b]. Beta: y = 2b - 1,
// x in [300-435b, 29b-20]. Throws UnsupportedWindow when the image leaves
// the line. No window check, so the displayed formulas can be probed
// outside the range where the segment is invariant.
PLIntervalMap raw_return_map(const Rational& b, Onset w);

// The rising branch of raw_return_map: 16x + 7b + 16 (alpha), 16x + 4 - 3b
// (beta).
AffineBranch rising_branch(const Rational& b, Onset w);

struct ReturnMapReduction {
    Onset window;
    int period = 0;
    PLIntervalMap raw;                       // F^period on the segment
    PLIntervalMap unit;                      // conjugated to [0,1]
    std::optional<PLIntervalMap> collapsed;  // trailing plateau removed (alpha)
    PlateauExtension extended;
    PLIntervalMap trapezoid;                 // rescaled extension
    TrapezoidParams params;
};

// Needs a = -1 after normalisation and b in one of the two onset windows;
// throws UnsupportedWindow otherwise.
ReturnMapReduction reduce_return_map(const MapParams& params);

struct IntervalEntropy {
    RootInterval value;          // encloses h(f)
    bool exact = false;          // breakpoint orbits closed into a Markov partition
    IntPoly poly;                // carries the radius when exact and positive
    std::size_t partition = 0;
    std::vector<Integer> laps;   // lap(f^m), m = 1.. (lap_entropy only)
    bool truncated = false;      // a point or breakpoint budget was hit
};

constexpr std::size_t kDefaultOrbitPoints = 1500;
constexpr std::size_t kDefaultLapBreaks = 1000000;

// Partition at the forward orbits of the breakpoints of a self-map. When the
// orbits close the partition is Markov and the value is exact; otherwise it
// is [log rho(M), log rho(Mbar)] for the covering and meeting matrices.
IntervalEntropy interval_entropy(const PLIntervalMap& f, std::size_t max_points = kDefaultOrbitPoints,
                                 const Rational& tol = default_root_tol());

// Exact lap counts of f^m for m = 1..depth by composition. Since laps are
// submultiplicative, log lap(f^m)/m >= h for every m; the enclosure is the
// orbit partition bracket cut down by the least of these.
IntervalEntropy lap_entropy(const PLIntervalMap& f, int depth, std::size_t max_breaks = kDefaultLapBreaks,
                            std::size_t max_points = kDefaultOrbitPoints);

enum class OnsetVerdict { zero, positive, undecided };
OnsetVerdict onset_verdict(Onset w, const Rational& b);

struct OnsetBracket {
    Rational lo, hi;
    bool flagged = false;   // an undecided probe stopped the bisection
    int probes = 0;
};

// Bisection over the window with the simplest rational in the middle third
// as probe. Relies on the entropy being nondecreasing in b there. A window
// of width at most tol comes back unchanged; otherwise both ends of the
// result are probed interior points.
OnsetBracket bracket_onset(Onset w, const Rational& tol);

// Simplest fraction (least denominator) in [lo, hi].
Rational simplest_between(const Rational& lo, const Rational& hi);

enum class EntropyKind { exact, zero, lower_bound, positive, onset };
std::string to_string(EntropyKind k);

// Reference entropies.
struct NamedConstant {
    std::string name;
    IntPoly poly;   // the constant is log of its largest root
};
const std::vector<NamedConstant>& entropy_constants();
RootInterval constant_value(const std::string& name);

// What is known about h(F|Gamma) on the window containing b (a = -1).
struct CaseClaim {
    EntropyKind kind;
    std::string window;     // e.g. "[2,4]"
    std::string constant;   // for exact and lower_bound
};
CaseClaim case_claim(const Rational& b);

struct CaseEntropy {
    Rational b;                 // after normalisation to a = -1
    EntropyKind kind;           // exact, zero or lower_bound (bracket)
    RootInterval value;
    IntPoly poly;
    std::string method;         // "markov", "bracket"
    std::size_t intervals = 0;
    CaseClaim claim;
    bool consistent = false;    // value agrees with the claim
    std::optional<RootInterval> trapezoid;  // h(T)/period inside an onset window
};

// Entropy of F on Gamma. Needs a < 0; any such F is conjugate to one with
// a = -1.
CaseEntropy entropy_of_case(const MapParams& params);

}  // namespace pwl
