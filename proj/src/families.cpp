#include "quipu/families.hpp"

#include <algorithm>
#include <stdexcept>

namespace quipu {

namespace {

void require_fgh_args(long m, long mp, long k) {
  if (m < 1 || mp < 1) throw std::invalid_argument("pendent lengths must be >= 1");
  if (k < 0) throw std::invalid_argument("segment length must be >= 0");
}

// 1 / 2^e as an exact rational.
Rat dyadic(long e) {
  Rat r(1);
  r /= Rat(Int(1) << e);
  return r;
}

using boost::multiprecision::pow;

}  // namespace

const char* rule_name(ConditionRule r) {
  switch (r) {
    case ConditionRule::Cor42_1: return "Cor42_1";
    case ConditionRule::Cor42_2: return "Cor42_2";
    case ConditionRule::Cor42_3: return "Cor42_3";
    case ConditionRule::Thm43: return "Thm43";
  }
  return "?";
}

Quad eval_f(long m, long mp, long k, const LambdaPoint& pt) {
  require_fgh_args(m, mp, k);
  Quad head = pt.x2 * pt.x2 - 2;
  Quad left = head + pow(pt.x1, static_cast<unsigned>(2 * m + 2));
  Quad right = head + pow(pt.x1, static_cast<unsigned>(2 * mp + 2));
  Quad tail = pow(pt.x1, static_cast<unsigned>(2 * k + 2)) *
              (1 - pow(pt.x1, static_cast<unsigned>(2 * m))) *
              (1 - pow(pt.x1, static_cast<unsigned>(2 * mp)));
  return left * right - tail;
}

Quad eval_g(long m, long mp, long k, const LambdaPoint& pt) {
  require_fgh_args(m, mp, k);
  Quad head = pt.x2 * pt.x2 - 2;
  Quad x1sq = pt.x1 * pt.x1;
  Quad left = head + pow(pt.x1, static_cast<unsigned>(2 * m));
  Quad right = head + pow(pt.x1, static_cast<unsigned>(2 * mp + 2));
  Quad tail = pow(pt.x1, static_cast<unsigned>(2 * k + 2)) *
              (1 - pow(pt.x1, static_cast<unsigned>(2 * m)) * (2 - x1sq)) *
              (1 - pow(pt.x1, static_cast<unsigned>(2 * mp)));
  return left * right - tail;
}

Quad eval_h(long m, long mp, long k, const LambdaPoint& pt) {
  require_fgh_args(m, mp, k);
  Quad head = pt.x2 * pt.x2 - 2;
  Quad x1sq = pt.x1 * pt.x1;
  Quad left = head + pow(pt.x1, static_cast<unsigned>(2 * m));
  Quad right = head + pow(pt.x1, static_cast<unsigned>(2 * mp));
  Quad tail = pow(pt.x1, static_cast<unsigned>(2 * k + 2)) *
              (1 - pow(pt.x1, static_cast<unsigned>(2 * m)) * (2 - x1sq)) *
              (1 - pow(pt.x1, static_cast<unsigned>(2 * mp)) * (2 - x1sq));
  return left * right - tail;
}

// At the threshold x2^2 - 2 vanishes, so only the pendent-path powers remain.
Rat eval_f_at_threshold(long m, long mp, long k) {
  require_fgh_args(m, mp, k);
  return dyadic(m + 1) * dyadic(mp + 1) -
         dyadic(k + 1) * (1 - dyadic(m)) * (1 - dyadic(mp));
}

Rat eval_g_at_threshold(long m, long mp, long k) {
  require_fgh_args(m, mp, k);
  return dyadic(m) * dyadic(mp + 1) -
         dyadic(k + 1) * (1 - 3 * dyadic(m + 1)) * (1 - dyadic(mp));
}

Rat eval_h_at_threshold(long m, long mp, long k) {
  require_fgh_args(m, mp, k);
  return dyadic(m) * dyadic(mp) -
         dyadic(k + 1) * (1 - 3 * dyadic(m + 1)) * (1 - 3 * dyadic(mp + 1));
}

bool item1_gt(long m, long mp, long k) {
  require_fgh_args(m, mp, k);
  if (m >= 2 && mp >= 2) return k <= m + mp;
  return k <= m + mp - 1 && !(m == 1 && mp == 1 && k == 1);
}

bool item1_eq(long m, long mp, long k) {
  require_fgh_args(m, mp, k);
  return m == 1 && mp == 1 && k == 1;
}

// Exceptions: the whole boundary family (m, 1, m), m >= 2 — where the exact
// threshold value is 3/2^{2m+3} > 0 — plus the single triple (2, 2, 3).
bool item2_gt(long m, long mp, long k) {
  require_fgh_args(m, mp, k);
  if (m >= 2 && mp == 1) return k <= m - 1;
  if (m >= 2) return k <= m + mp - 1 && !(m == 2 && mp == 2 && k == 3);
  return k <= mp - 2;
}

namespace {

bool item3_gt_directed(long m, long mp, long k) {
  if (m >= 2 && mp >= 2) return k <= m + mp - 2 && !(m == 2 && mp == 2 && k == 2);
  if (m == 1) return k <= mp - 3;
  return false;
}

}  // namespace

bool item3_gt(long m, long mp, long k) {
  require_fgh_args(m, mp, k);
  return item3_gt_directed(m, mp, k) || item3_gt_directed(mp, m, k);
}

ConditionReport check_necessary(const OpenQuipuSpec& spec_in) {
  if (!spec_in.valid()) throw std::invalid_argument("invalid spec");
  OpenQuipuSpec spec = open_canonical(spec_in);
  ConditionReport rep;
  const int r = spec.r();
  if (r == 0) return rep;

  auto flag = [&rep](int idx, ConditionRule rule) {
    if (rep.passed) rep.rule = rule;
    rep.passed = false;
    rep.violated_indices.push_back(idx);
  };

  if (r == 1) {
    // Canonical end normalization (m_0 <= k_0, m_1 <= k_2) guarantees the
    // double-pendant comparison tree on (m_0, m_1) is a subgraph.
    if (item3_gt(spec.m[0], spec.m[1], spec.k[1])) flag(1, ConditionRule::Cor42_2);
    return rep;
  }

  // Spine length available on the far side of each end segment: internal
  // vertices of the remaining segments plus the junctions between them.
  long far_right = r - 1;
  for (int i = 2; i <= r + 1; ++i) far_right += spec.k[i];
  long far_left = r - 1;
  for (int i = 0; i <= r - 1; ++i) far_left += spec.k[i];

  if (far_right >= spec.m[1] && item3_gt(spec.m[0], spec.m[1], spec.k[1]))
    flag(1, ConditionRule::Cor42_2);
  for (int i = 2; i <= r - 1; ++i)
    if (item1_gt(spec.m[i - 1], spec.m[i], spec.k[i])) flag(i, ConditionRule::Cor42_1);
  if (far_left >= spec.m[r - 1] && item3_gt(spec.m[r], spec.m[r - 1], spec.k[r]))
    flag(r, ConditionRule::Cor42_3);
  return rep;
}

ConditionReport check_sufficient(const OpenQuipuSpec& spec_in) {
  if (!spec_in.valid()) throw std::invalid_argument("invalid spec");
  OpenQuipuSpec spec = open_canonical(spec_in);
  ConditionReport rep;
  rep.rule = ConditionRule::Thm43;
  const int r = spec.r();

  auto flag = [&rep](int idx) {
    rep.passed = false;
    rep.violated_indices.push_back(idx);
  };

  if (r == 0) {
    // The sufficient form needs at least one internal segment.
    flag(0);
    return rep;
  }
  if (spec.m[0] < 2 || spec.k[0] != spec.m[0]) flag(0);
  if (spec.k[1] < spec.m[0] + spec.m[1] + 1) flag(1);
  for (int i = 2; i <= r - 1; ++i)
    if (spec.k[i] < spec.m[i - 1] + spec.m[i] + 3) flag(i);
  if (r >= 2 && spec.k[r] < spec.m[r - 1] + spec.m[r] + 1) flag(r);
  if (spec.m[r] < 2 || spec.k[r + 1] != spec.m[r]) flag(r + 1);

  std::sort(rep.violated_indices.begin(), rep.violated_indices.end());
  return rep;
}

bool corollary33(long m, long k) {
  if (m < 1 || k < 1) throw std::invalid_argument("need m >= 1 and k >= 1");
  return m == 1 ? k >= 4 : k >= 2 * m + 3;
}

}  // namespace quipu
