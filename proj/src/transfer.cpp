#include "quipu/transfer.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace quipu {

namespace {

using boost::multiprecision::abs;
using boost::multiprecision::frexp;
using boost::multiprecision::ldexp;
using boost::multiprecision::pow;
using boost::multiprecision::sqrt;

Quad qpow(const Quad& x, long e) { return pow(x, static_cast<int>(e)); }

}  // namespace

LambdaPoint::LambdaPoint(const Quad& lam) : lambda(lam) {
  if (!(lam > 2)) throw std::domain_error("lambda must exceed 2");
  gap = sqrt(lambda * lambda - 4);
  x1 = (lambda - gap) / 2;
  x2 = (lambda + gap) / 2;
}

int ScaledValue::sign() const {
  if (mant > 0) return 1;
  if (mant < 0) return -1;
  return 0;
}

Quad ScaledValue::to_quad() const { return ldexp(mant, static_cast<int>(exp2)); }

double ScaledValue::log2_abs() const {
  if (mant == 0) return -std::numeric_limits<double>::infinity();
  int e;
  frexp(mant, &e);
  return static_cast<double>(exp2 + e);
}

Quad phi_path(long m, const LambdaPoint& pt) {
  if (m < -1) throw std::invalid_argument("negative path length");
  return (qpow(pt.x2, m + 1) - qpow(pt.x1, m + 1)) / pt.gap;
}

PQPair pq_single(const LambdaPoint& pt) {
  return {-pt.x1 * pt.x1 / pt.gap, pt.x2 * pt.x2 / pt.gap};
}

PQPair pq_split(const Quad& phiG, const Quad& phiGv, const LambdaPoint& pt) {
  return {(-pt.x1 * phiG + phiGv) / pt.gap, (pt.x2 * phiG - phiGv) / pt.gap};
}

std::pair<Quad, Quad> pq_join(const PQPair& v, const LambdaPoint& pt) {
  return {v.p + v.q, pt.x2 * v.p + pt.x1 * v.q};
}

PQPair pq_odd_path_center(long k, const LambdaPoint& pt) {
  if (k < 0) throw std::invalid_argument("negative path parameter");
  Quad pre = (qpow(pt.x2, k + 1) - qpow(pt.x1, k + 1)) / (pt.gap * pt.gap * pt.gap);
  Quad pu = qpow(pt.x2, k - 1) - 2 * qpow(pt.x1, k + 1) + qpow(pt.x1, k + 3);
  Quad qu = qpow(pt.x1, k - 1) - 2 * qpow(pt.x2, k + 1) + qpow(pt.x2, k + 3);
  return {pre * pu, pre * qu};
}

Transfer2x2 transfer_B(long m, const LambdaPoint& pt) {
  if (m < 0) throw std::invalid_argument("negative pendent length");
  Quad phim1 = phi_path(m - 1, pt);
  return {d1(m, pt) / pt.gap, pt.x1 * phim1 / pt.gap, -pt.x2 * phim1 / pt.gap,
          d2(m, pt) / pt.gap};
}

Transfer2x2 transfer_A(long s, const LambdaPoint& pt) {
  if (s < 0) throw std::invalid_argument("negative power");
  return {qpow(pt.x1, s), 0, 0, qpow(pt.x2, s)};
}

Quad d1(long m, const LambdaPoint& pt) { return phi_path(m, pt) - qpow(pt.x1, m + 2); }
Quad d2(long m, const LambdaPoint& pt) { return qpow(pt.x2, m + 2) - phi_path(m, pt); }

namespace {

// Pull the binary exponent out of the largest-magnitude component.
void renorm(Quad* vals, int count, long& exp2) {
  Quad mx = 0;
  for (int i = 0; i < count; ++i) mx = std::max(mx, abs(vals[i]));
  if (mx == 0) return;
  int e;
  frexp(mx, &e);
  if (e > -64 && e < 64) return;  // close enough to 1, skip the rescale
  for (int i = 0; i < count; ++i) vals[i] = ldexp(vals[i], -e);
  exp2 += e;
}

ScaledValue combine_difference(const ScaledValue& a, const ScaledValue& b) {
  // a - b with exponent alignment.
  if (a.mant == 0) return {-b.mant, b.exp2};
  if (b.mant == 0) return a;
  long e = std::max(a.exp2, b.exp2);
  long da = a.exp2 - e, db = b.exp2 - e;
  Quad m = (da < -200 ? Quad(0) : ldexp(a.mant, static_cast<int>(da))) -
           (db < -200 ? Quad(0) : ldexp(b.mant, static_cast<int>(db)));
  ScaledValue out{m, e};
  Quad vals[1] = {out.mant};
  renorm(vals, 1, out.exp2);
  out.mant = vals[0];
  return out;
}

}  // namespace

ScaledValue quipu_phi_scaled(const OpenQuipuSpec& s, const LambdaPoint& pt) {
  if (!s.valid()) throw std::invalid_argument("invalid spec");
  int r = s.r();
  PQPair v = pq_single(pt);
  long exp2 = 0;
  auto apply_and_renorm = [&](const Transfer2x2& M) {
    v = M.apply(v);
    Quad vals[2] = {v.p, v.q};
    renorm(vals, 2, exp2);
    v.p = vals[0];
    v.q = vals[1];
  };
  apply_and_renorm(transfer_A(s.k.front() - 1, pt));
  for (int i = 0; i <= r; ++i) {
    apply_and_renorm(transfer_B(s.m[i], pt));
    apply_and_renorm(transfer_A(s.k[i + 1], pt));
  }
  ScaledValue out{v.p + v.q, exp2};
  Quad vals[1] = {out.mant};
  renorm(vals, 1, out.exp2);
  out.mant = vals[0];
  return out;
}

ScaledValue quipu_phi_scaled(const ClosedQuipuSpec& s, const LambdaPoint& pt) {
  if (!s.valid()) throw std::invalid_argument("invalid spec");
  // trace(prod_i B_{m_i} A^{k_i}) - 2 prod_i phi_{P_{m_i}}
  Transfer2x2 M{1, 0, 0, 1};
  long expM = 0;
  for (int i = 0; i < s.r(); ++i) {
    M = M * (transfer_B(s.m[i], pt) * transfer_A(s.k[i], pt));
    Quad vals[4] = {M.a, M.b, M.c, M.d};
    renorm(vals, 4, expM);
    M.a = vals[0];
    M.b = vals[1];
    M.c = vals[2];
    M.d = vals[3];
  }
  ScaledValue tr{M.trace(), expM};

  Quad prod = 2;
  long expP = 0;
  for (int i = 0; i < s.r(); ++i) {
    prod *= phi_path(s.m[i], pt);
    Quad vals[1] = {prod};
    renorm(vals, 1, expP);
    prod = vals[0];
  }
  return combine_difference(tr, ScaledValue{prod, expP});
}

Quad quipu_phi_transfer(const OpenQuipuSpec& s, const LambdaPoint& pt) {
  return quipu_phi_scaled(s, pt).to_quad();
}

Quad quipu_phi_transfer(const ClosedQuipuSpec& s, const LambdaPoint& pt) {
  return quipu_phi_scaled(s, pt).to_quad();
}

}  // namespace quipu
