#pragma once
// The x1/x2 calculus: path polynomials evaluated at a spectral point, the
// (p, q) decomposition, transfer matrices B_m and A^s, the d_m functions, and
// product formulas for quipu characteristic polynomial values.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <utility>

#include "quipu/graph.hpp"

namespace quipu {

// 113-bit significand binary float: enough headroom that 1e-12 brackets keep
// ~20 guard digits.
using Quad = boost::multiprecision::cpp_bin_float_quad;

// A spectral point lambda > 2 with the roots x1 <= 1 <= x2 of x^2 - lambda x + 1.
struct LambdaPoint {
  Quad lambda, x1, x2, gap;  // gap = x2 - x1 = sqrt(lambda^2 - 4)

  explicit LambdaPoint(const Quad& lam);
  explicit LambdaPoint(double lam) : LambdaPoint(Quad(lam)) {}
};

// The pair (p_{(G,v)}, q_{(G,v)}) at a fixed point.
struct PQPair {
  Quad p{}, q{};
};

struct Transfer2x2 {
  Quad a{}, b{}, c{}, d{};  // row-major [[a, b], [c, d]]

  PQPair apply(const PQPair& v) const { return {a * v.p + b * v.q, c * v.p + d * v.q}; }
  Transfer2x2 operator*(const Transfer2x2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  Quad det() const { return a * d - b * c; }
  Quad trace() const { return a + d; }
};

// Value represented as mant * 2^exp2 so long products never overflow.
struct ScaledValue {
  Quad mant{};
  long exp2 = 0;

  int sign() const;
  Quad to_quad() const;     // may saturate to infinity for huge exponents
  double log2_abs() const;  // -inf for zero
};

// phi_{P_m}(lambda) = (x2^{m+1} - x1^{m+1})/(x2 - x1); phi_{P_0} = 1 and
// phi_{P_{-1}} = 0 by the same formula.
Quad phi_path(long m, const LambdaPoint& pt);

// The single-vertex pair (p1, q1) = (-x1^2, x2^2)/(x2 - x1).
PQPair pq_single(const LambdaPoint& pt);

// Solve (phi_G, phi_{G-v}) <-> (p, q): phi_G = p + q, phi_{G-v} = x2 p + x1 q.
PQPair pq_split(const Quad& phiG, const Quad& phiGv, const LambdaPoint& pt);
std::pair<Quad, Quad> pq_join(const PQPair& v, const LambdaPoint& pt);

// The odd path P_{2k+1} rooted at its center vertex (k >= 0).
PQPair pq_odd_path_center(long k, const LambdaPoint& pt);

// B_m maps the pair at the attachment vertex v' of H to the pair at the new
// leaf v after appending a pendent path P_{m+1} whose vertex adjacent to both
// carries the length-m pendent; B_0 = diag(x1, x2).
Transfer2x2 transfer_B(long m, const LambdaPoint& pt);

// A^s = diag(x1^s, x2^s).
Transfer2x2 transfer_A(long s, const LambdaPoint& pt);

// d_m^{(1)} = phi_{P_m} - x1^{m+2};  d_m^{(2)} = x2^{m+2} - phi_{P_m}.
Quad d1(long m, const LambdaPoint& pt);
Quad d2(long m, const LambdaPoint& pt);

// Characteristic polynomial value of a quipu at the point, by the transfer
// product (open) or the trace formula (closed). The scaled variants are exact
// in sign for any size; the plain ones may overflow for enormous graphs.
ScaledValue quipu_phi_scaled(const OpenQuipuSpec& s, const LambdaPoint& pt);
ScaledValue quipu_phi_scaled(const ClosedQuipuSpec& s, const LambdaPoint& pt);
Quad quipu_phi_transfer(const OpenQuipuSpec& s, const LambdaPoint& pt);
Quad quipu_phi_transfer(const ClosedQuipuSpec& s, const LambdaPoint& pt);

}  // namespace quipu
