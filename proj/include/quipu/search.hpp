#pragma once
// Desk-scale exhaustive verification: canonical quipu enumeration, diameter
// bound scans, spectral-radius minimizer searches with exact tie resolution,
// and graph6-based spot checks of the window classification.

#include <iosfwd>
#include <string>
#include <vector>

#include "quipu/exactnum.hpp"
#include "quipu/graph.hpp"
#include "quipu/spectral.hpp"

namespace quipu {

// One scanned spec. `d` is the BFS diameter (-1 when not computed); the radius
// bracket is certified and is zero-width-at-zero when not computed.
struct ScanRow {
  std::string family;  // "open", "closed", "dagger", "path", "cycle"
  std::string spec;    // canonical spec string
  long n = 0;
  int d = -1;
  double rho_lo = 0.0;
  double rho_hi = 0.0;
  std::string verdict;

  bool operator==(const ScanRow& o) const = default;
  bool operator<(const ScanRow& o) const;
};

// Outcome of one exhaustive scan. `rows` lists the interesting members found
// (equality cases, boundary exceptions, winners, window members); a nonempty
// `counterexamples` list means the scanned claim failed somewhere. Wall time
// is reporting-only and never serialized, so data files are reproducible.
struct VerificationReport {
  std::string theorem;  // short id of the scanned claim
  std::string range;    // human-readable description of the scanned range
  long scanned = 0;     // specs examined
  long hits = 0;        // specs in the scan's target set (see each scan)
  std::vector<ScanRow> rows;
  std::vector<ScanRow> counterexamples;
  double wall_seconds = 0.0;

  bool ok() const { return counterexamples.empty(); }
};

// Minimizer of the spectral radius at fixed order and diameter. `argmin`
// holds every spec attaining the minimum; ties and uniqueness are decided by
// exact comparison of largest characteristic-polynomial roots, not numerics.
struct MinimizerResult {
  long n = 0;
  int d = 0;
  std::vector<ScanRow> argmin;
  RadiusBracket rho;
  bool unique = false;
};

// Every canonical open (order >= 4) / closed (order >= 3) quipu spec of the
// given order exactly once, sorted. T-shapes are the r = 0 open specs; the
// bare cycle is the closed spec with a single pendent-free junction.
std::vector<OpenQuipuSpec> enumerate_open_quipus(long n);
std::vector<ClosedQuipuSpec> enumerate_closed_quipus(long n);

// Scans every open quipu with 6 <= order <= n_max, plus the dagger of each
// order, keeping those whose radius is provably below (3/2)sqrt(2). Each kept
// graph must satisfy 3D >= 2n - 4; equality rows must be exactly the family
// P^(1,m)_(1,m-2,m), and daggers must be strict. hits = kept graphs.
VerificationReport verify_theorem_1_1(long n_max, int workers = 1);

// Scans every closed quipu with 13 <= order <= n_max below the threshold:
// every kept graph must satisfy n/3 < D <= (2n-2)/3, and the sharper bound
// 3D <= 2n - 4 may fail only on the one-junction straight families with gap
// 2m+3 or 2m+5. hits = kept graphs; rows = the sharp-bound exceptions.
VerificationReport verify_theorem_1_2(long n_max, int workers = 1);

// Exhaustive minimization over daggers, open quipus, closed quipus, paths and
// cycles with the given order and diameter. Throws std::runtime_error when no
// candidate family member has the requested diameter.
MinimizerResult find_minimizer(long n, int d, double tol = 1e-12);

// The predicted winner C^(D-floor(n/2), D-ceil(n/2))_(n-D-1, n-D-1) in
// canonical form; only meaningful for ceil(n/2) <= D <= floor((2n-7)/3).
ClosedQuipuSpec minimizer_prediction(long n, int d);

// Runs find_minimizer for 13 <= n <= n_max over every diameter in
// [ceil(n/2), floor((2n-7)/3)] (empty for n = 13 and 15) and checks that the
// predicted spec wins uniquely, that the winner is unicyclic with pendent
// paths no longer than D - floor(n/2) (hence embeds in the urchin with that
// arm length and, having a cycle, in no tree). hits = confirmed (n, D) pairs;
// rows = the winners.
VerificationReport verify_theorem_1_3(long n_max, double tol = 1e-12);

// One (n, D) instance of the same check.  Requires ceil(n/2) <= D (so the
// predicted spec exists); the theorem's regime additionally wants
// D <= floor((2n-7)/3).
VerificationReport verify_theorem_1_3_at(long n, int d, double tol = 1e-12);

// Reads graph6 lines (connected graphs) and classifies every graph whose
// radius lies strictly between sqrt(2 + sqrt(5)) and (3/2)sqrt(2). Window
// membership is decided exactly; integer average-degree and power-iteration
// prefilters only skip graphs provably outside. Each window graph must be a
// dagger, an open quipu (T-shapes included) or a closed quipu; anything else
// is a counterexample. hits = window members; throws std::invalid_argument
// on a disconnected input graph.
VerificationReport woo_neumaier_spotcheck(std::istream& graph6, int workers = 1);

// Exact order of the largest real roots of two integer polynomials
// (-1: first smaller, 0: equal, +1: first larger). Equality is certified by a
// shared squarefree factor carrying the common largest root. Throws
// std::invalid_argument when an input has no real root.
int compare_largest_roots(const IntPoly& a, const IntPoly& b);

// Deterministic serialization. Schema: one row per spec with family, spec, n,
// d, rho_lo, rho_hi, verdict; wall time is excluded so repeated runs are
// byte-identical.
void write_json(const VerificationReport& rep, std::ostream& out);
void write_csv(const VerificationReport& rep, std::ostream& out);
void write_json(const MinimizerResult& res, std::ostream& out);
void write_csv(const MinimizerResult& res, std::ostream& out);

}  // namespace quipu
