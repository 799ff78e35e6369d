#pragma once

#include <string>

#include "quipu/exactnum.hpp"
#include "quipu/graph.hpp"
#include "quipu/transfer.hpp"

namespace quipu {

enum class RadiusEvidence { SignChange, PowerIterBound, ExactSturm };

std::string evidence_name(RadiusEvidence e);

struct RadiusBracket {
  double lo = 0.0;
  double hi = 0.0;
  RadiusEvidence evidence = RadiusEvidence::SignChange;

  double mid() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
};

enum class ThresholdCertKind { SturmExact, NumericMargin };

struct ThresholdVerdict {
  bool below = false;
  ThresholdCertKind certificate = ThresholdCertKind::SturmExact;
  // For NumericMargin verdicts: distance from the threshold to the nearer
  // power-iteration bound (positive = decided with room to spare).
  double margin = 0.0;
};

// --- characteristic polynomials --------------------------------------------

// Exact characteristic polynomial of the adjacency matrix (monic, degree n).
// Tree and unicyclic components use the vertex/edge deletion recurrences with
// a shared cache of path polynomials; other components use the dense route.
IntPoly char_poly(const Graph& g);

// Fraction-free integer determinant evaluation at n+1 points plus exact
// interpolation; independent of the recurrences, exposed for cross-checks.
IntPoly char_poly_dense(const Graph& g);

// Characteristic polynomial of the path on m vertices (cached, thread-safe).
IntPoly path_char_poly(long m);

// --- radii ------------------------------------------------------------------

// Certified bracket of width <= tol around the largest adjacency eigenvalue.
// Exact dyadic Sturm bisection seeded by power iteration; cycles and the
// two-junction family with radius exactly 2 are answered structurally.
RadiusBracket spectral_radius(const Graph& g, double tol = 1e-12);

// Heuristic double-precision Collatz quotient bounds from a power-iterated
// positive vector: lo <= rho(G) <= hi up to floating rounding.
struct PowerBounds {
  double lo = 0.0;
  double hi = 0.0;
  double estimate = 0.0;
};
PowerBounds power_bounds(const Graph& g, int iters = 200);

// Integer Rayleigh certificate: returns true only when rho(G) > (3/2)sqrt(2)
// provably, via 2 (v^T A v)^2 > 9 (v^T v)^2 for an integer vector v.
bool certified_above_threshold(const Graph& g);

// --- threshold predicates ---------------------------------------------------

// Exact: true iff phi has no root above (3/2)sqrt(2).
bool below_threshold_exact(const IntPoly& phi);

// Number of distinct eigenvalues strictly above sqrt(2+sqrt(5)).
int count_eigen_above_theta(const IntPoly& phi);

ThresholdVerdict is_below_threshold(const Graph& g, bool exact_mode = true);

// --- family radius solvers --------------------------------------------------

// Largest root in (2,3) of d_m^(2) x2^((k-1)/2) - d_m^(1) x1^((k-1)/2) = 0,
// the common radius of the straight and circular m,k families.
RadiusBracket rho_mk(long m, long k, double tol = 1e-12);

// Largest root of d_m^(2) = 0 (equivalently x2^2 - 2 + x1^(2m+2) = 0), the
// k -> infinity limit of rho_mk.
RadiusBracket rho_limit(long m, double tol = 1e-12);

struct CoveringRecord {
  long m = 0, k = 0, r = 0;
  RadiusBracket rho_r;     // radius of the r-fold graph
  RadiusBracket rho_base;  // radius of the base graph (r = 1)
  bool equal = false;
};

// Verifies |rho(C_{m,k,r}) - rho(C_{m,k,1})| <= 2 tol on built graphs; throws
// std::runtime_error carrying both brackets when the check fails.
CoveringRecord rho_c_mkr_equal(long m, long k, long r, double tol = 1e-12);

}  // namespace quipu
