#pragma once

// Interval partitions of an invariant graph, covering matrices, romes and
// entropy from Perron roots.

#include "pwl/planar_graph.hpp"
#include "pwl/polynomial.hpp"

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace pwl {

using IntMatrix = std::vector<std::vector<int>>;

struct IntervalPartition {
    std::vector<std::string> names;
    std::vector<Segment> intervals;  // survivors, indexed like the matrix
    std::vector<Segment> collapse_set;
};

enum class CoverMode { exact, upper };

struct CoverMatrix {
    std::vector<std::string> names;
    IntMatrix m;
    CoverMode mode = CoverMode::exact;
    std::size_t size() const { return m.size(); }
};

CoverMatrix cover_matrix(const IntMatrix& m, std::vector<std::string> names = {});

struct CoverResult {
    IntervalPartition partition;
    CoverMatrix exact;  // I_j inside F(I_i)
    CoverMatrix upper;  // F(I_i) meets the interior of I_j
    bool markov = false;  // exact == upper on the surviving intervals
};

struct CoverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Partition of the edges of g at its vertices and at the given cut points,
// collapse elimination, then both covering matrices. Throws CoverError when
// an interval image leaves g.
CoverResult build_cover(const MapParams& params, const PlanarGraph& g, const std::vector<Point>& cuts = {});

// Forward orbits of every vertex of g, restricted to its segments. For
// rational parameters the orbits are eventually periodic, so the set is
// finite and cutting at it makes the partition Markov. Past max_points it
// throws CoverError, or, when closed is given, stops and clears *closed.
std::vector<Point> markov_cuts(const MapParams& params, const PlanarGraph& g, std::size_t max_points = 200000,
                               bool* closed = nullptr);

struct Rome {
    std::vector<int> vertices;
    // paths[i][j][len]: number of paths of that length from vertices[i] to
    // vertices[j] whose inner vertices avoid the rome.
    std::vector<std::vector<std::map<int, Integer>>> paths;
};

bool is_rome(const CoverMatrix& m, const std::vector<int>& r);
Rome rome_paths(const CoverMatrix& m, std::vector<int> r);
Rome find_rome(const CoverMatrix& m);

// det(xI - M) computed from the rome; throws if r is not a rome.
IntPoly rome_char_poly(const CoverMatrix& m, const Rome& r);

// Direct det(xI - M).
IntPoly char_poly(const CoverMatrix& m);

// Strongly connected components that carry at least one loop.
std::vector<std::vector<int>> cyclic_components(const CoverMatrix& m);
CoverMatrix submatrix(const CoverMatrix& m, const std::vector<int>& idx);

// Spectral radius of M, enclosed to width tol; evaluated componentwise with
// romes so that large sparse matrices stay cheap.
RootInterval perron_root(const CoverMatrix& m, const Rational& tol = default_root_tol());
RootInterval perron_root(const IntPoly& p, const Rational& tol = default_root_tol());

// The same radius with the char poly (x^k stripped) of the component that
// carries it; the poly is zero when M has no cycle.
struct SpectralRadius {
    RootInterval root;
    IntPoly poly;
};
SpectralRadius spectral_radius(const CoverMatrix& m, const Rational& tol = default_root_tol());

// Collatz-Wielandt enclosure: for irreducible M and positive v,
// min (Mv)_i/v_i <= rho <= max (Mv)_i/v_i, evaluated exactly per cyclic
// component. v comes from a floating power iteration on I+M, which is
// primitive, so the enclosure tightens with the iteration count. Cheap for
// matrices too large for char polys.
RootInterval collatz_wielandt(const CoverMatrix& m, int iterations = 400);

// spectral_radius below max_exact states, collatz_wielandt above.
RootInterval radius_enclosure(const CoverMatrix& m, std::size_t max_exact = 150);

enum class LoopVerdict { positive, zero, inconclusive };
std::string to_string(LoopVerdict v);
LoopVerdict loop_structure(const CoverMatrix& m, const Rome& r);

struct GrowthResult {
    std::vector<Integer> counts;     // N(m) for m = 1..
    std::vector<double> estimates;   // N(m)^(1/m), never below the limit
    std::vector<double> ratios;      // N(m)/N(m-1), from m = 2; converges faster
    bool truncated = false;
};

// Number of itineraries of length m realised by cylinders of positive
// length, by pushing cylinder images forward through the partition.
GrowthResult growth_number(const MapParams& params, const std::vector<Segment>& intervals, int m_max,
                           std::size_t max_pieces = 2000000);

IntMatrix matrix_power(const IntMatrix& m, int n);
bool power_entropy_check(const CoverMatrix& m, int n, const Rational& tol = default_root_tol());

// Entropy of F restricted to g for rational parameters, via the Markov
// refinement. The interval encloses log of the spectral radius (or is
// [0,0] when the radius is at most 1).
struct GraphEntropy {
    RootInterval value;
    RootInterval radius;
    IntPoly poly;  // char poly of the component carrying the radius, x^k stripped
    std::size_t intervals = 0;
    bool markov = false;
};
GraphEntropy graph_entropy(const MapParams& params, const PlanarGraph& g, const Rational& tol = default_root_tol());

void write_dot(std::ostream& os, const CoverMatrix& m, const std::string& title = "cover");

}  // namespace pwl
