#pragma once
// Analytic predicates for pendent-path interactions on open quipus: the f/g/h
// sign functions, their exact dyadic values at the threshold (3/2)sqrt(2), the
// greater/less rule tables with their boundary exceptions, and the
// necessary/sufficient segment-length checkers.

#include <vector>

#include "quipu/exactnum.hpp"
#include "quipu/graph.hpp"
#include "quipu/transfer.hpp"

namespace quipu {

// Which rule family produced a verdict: the three necessary segment rules
// (interior, left end, right end) and the sufficient-gap rule.
enum class ConditionRule { Cor42_1, Cor42_2, Cor42_3, Thm43 };

const char* rule_name(ConditionRule r);

// Outcome of a segment-length check. Indices refer to positions in the spec's
// segment list k (0 .. r+1). For a failed check, `rule` identifies the rule of
// the first (lowest-index) violation.
struct ConditionReport {
  bool passed = true;
  std::vector<int> violated_indices;
  ConditionRule rule = ConditionRule::Cor42_1;
};

// f_{m,m',k} = (x2^2 - 2 + x1^{2m+2})(x2^2 - 2 + x1^{2m'+2})
//              - x1^{2k+2} (1 - x1^{2m})(1 - x1^{2m'})
// g_{m,m',k} = (x2^2 - 2 + x1^{2m})(x2^2 - 2 + x1^{2m'+2})
//              - x1^{2k+2} (1 - x1^{2m}(2 - x1^2))(1 - x1^{2m'})
// h_{m,m',k} = (x2^2 - 2 + x1^{2m})(x2^2 - 2 + x1^{2m'})
//              - x1^{2k+2} (1 - x1^{2m}(2 - x1^2))(1 - x1^{2m'}(2 - x1^2))
// The largest root of f (resp. g, h) is the two-sided (resp. one-sided,
// zero-sided) limit of spectral radii of the double-pendant comparison trees
// P^{(m,m')}_{(i,k,j)} as the free end paths grow. Preconditions: m, m' >= 1,
// k >= 0 (std::invalid_argument otherwise).
Quad eval_f(long m, long mp, long k, const LambdaPoint& pt);
Quad eval_g(long m, long mp, long k, const LambdaPoint& pt);
Quad eval_h(long m, long mp, long k, const LambdaPoint& pt);

// Exact values at lambda = (3/2)sqrt(2), where x1^2 = 1/2 and x2^2 = 2 make
// every term a dyadic rational.
Rat eval_f_at_threshold(long m, long mp, long k);
Rat eval_g_at_threshold(long m, long mp, long k);
Rat eval_h_at_threshold(long m, long mp, long k);

// Rule tables: does the comparison value exceed the threshold? Boundary
// equality cases are explicit exception data, not formulas.
//   item1: lim_{i,j -> inf} rho(P^{(m,m')}_{(i,k,j)})   (symmetric in m, m')
//   item2: lim_{j -> inf}  rho(P^{(m,m')}_{(m,k,j)})    (left end pinned)
//   item3: rho(P^{(m,m')}_{(m,k,m')})                   (both ends pinned;
//          symmetric, since the graph is)
bool item1_gt(long m, long mp, long k);
bool item1_eq(long m, long mp, long k);  // exactly the triple (1,1,1)
bool item2_gt(long m, long mp, long k);
bool item3_gt(long m, long mp, long k);

// Necessary segment-length conditions for rho < (3/2)sqrt(2). The spec is
// canonicalized first. A segment is flagged only when a comparison subgraph
// certifies rho above the threshold:
//   r = 0: no internal segments, always passes.
//   r = 1: k_1 flagged iff item3 on (m_0, m_1) says greater.
//   r >= 2: end segments use item3 on the two adjacent pendent paths, guarded
//           by the far-side spine being long enough to contain the comparison
//           tree; interior segments use the item1 limit rule.
// passed ==> no such certificate exists; every quipu below the threshold
// passes (validated exhaustively at small orders).
ConditionReport check_necessary(const OpenQuipuSpec& spec);

// Sufficient conditions for rho < (3/2)sqrt(2), strict form: r >= 1, both end
// pendent paths of length >= 2 with the end segments exactly matching them
// (k_0 = m_0, k_{r+1} = m_r), interior gaps k_i >= m_{i-1} + m_i + 3
// (2 <= i <= r-1) and k_j >= m_{j-1} + m_j + 1 at j = 1, r.
// passed ==> rho < (3/2)sqrt(2), certified independently by Sturm counts.
ConditionReport check_sufficient(const OpenQuipuSpec& spec);

// rho_{m,k} < (3/2)sqrt(2)?  True iff k >= 4 (m = 1) or k >= 2m+3 (m >= 2).
// Preconditions m >= 1, k >= 1 (std::invalid_argument otherwise).
bool corollary33(long m, long k);

}  // namespace quipu
