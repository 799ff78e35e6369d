#include "quipu/exactnum.hpp"

#include <algorithm>
#include <sstream>

namespace quipu {

QSqrt2 QSqrt2::inverse() const {
  // 1/(a + b*sqrt2) = (a - b*sqrt2) / (a^2 - 2 b^2)
  if (is_zero()) throw std::invalid_argument("division by zero in QSqrt2");
  Rat d = a * a - 2 * b * b;
  // d = 0 would force a = b = 0 since sqrt2 is irrational.
  return QSqrt2(a / d, -b / d);
}

int QSqrt2::sign() const {
  int sa = sgn(a), sb = sgn(b);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: compare a^2 with 2 b^2; the larger magnitude wins.
  Rat lhs = a * a, rhs = 2 * b * b;
  int c = cmp(lhs, rhs);
  if (c == 0) return 0;  // unreachable for nonzero values (irrationality), kept for totality
  return c > 0 ? sa : sb;
}

double QSqrt2::to_double() const {
  return a.get_d() + b.get_d() * 1.41421356237309514547462185873882845;
}

std::string QSqrt2::str() const {
  std::ostringstream os;
  os << a.get_str();
  if (sgn(b) != 0) {
    Rat ab = abs(b);
    os << (sgn(b) > 0 ? " + " : " - ") << ab.get_str() << "*sqrt2";
  }
  return os.str();
}

QSqrt2 lambda_star() { return QSqrt2(Rat(0), Rat(3, 2)); }

IntPoly IntPoly::constant(Int v) {
  IntPoly p;
  if (sgn(v) != 0) p.c.push_back(std::move(v));
  return p;
}

IntPoly IntPoly::monomial(int deg, Int coeff) {
  IntPoly p;
  if (sgn(coeff) != 0) {
    p.c.assign(deg + 1, Int(0));
    p.c[deg] = std::move(coeff);
  }
  return p;
}

IntPoly IntPoly::from(std::initializer_list<long> coeffs) {
  IntPoly p;
  for (long v : coeffs) p.c.emplace_back(v);
  p.normalize();
  return p;
}

void IntPoly::normalize() {
  while (!c.empty() && sgn(c.back()) == 0) c.pop_back();
}

const Int& IntPoly::lc() const {
  if (is_zero()) throw std::invalid_argument("leading coefficient of zero polynomial");
  return c.back();
}

IntPoly IntPoly::operator-() const {
  IntPoly r(*this);
  for (auto& v : r.c) v = -v;
  return r;
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
  IntPoly r;
  r.c.resize(std::max(c.size(), o.c.size()), Int(0));
  for (size_t i = 0; i < c.size(); ++i) r.c[i] = c[i];
  for (size_t i = 0; i < o.c.size(); ++i) r.c[i] += o.c[i];
  r.normalize();
  return r;
}

IntPoly IntPoly::operator-(const IntPoly& o) const { return *this + (-o); }

IntPoly IntPoly::operator*(const IntPoly& o) const {
  if (is_zero() || o.is_zero()) return IntPoly();
  IntPoly r;
  r.c.assign(c.size() + o.c.size() - 1, Int(0));
  for (size_t i = 0; i < c.size(); ++i) {
    if (sgn(c[i]) == 0) continue;
    for (size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
  }
  r.normalize();
  return r;
}

IntPoly IntPoly::operator*(const Int& s) const {
  if (sgn(s) == 0) return IntPoly();
  IntPoly r(*this);
  for (auto& v : r.c) v *= s;
  return r;
}

IntPoly IntPoly::derivative() const {
  IntPoly r;
  for (size_t i = 1; i < c.size(); ++i) r.c.push_back(c[i] * Int(static_cast<long>(i)));
  r.normalize();
  return r;
}

Int IntPoly::content() const {
  Int g(0);
  for (const auto& v : c) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntPoly IntPoly::primitive_part() const {
  if (is_zero()) return IntPoly();
  Int g = content();
  IntPoly r(*this);
  for (auto& v : r.c) v /= g;
  return r;
}

Rat IntPoly::eval(const Rat& x) const {
  Rat acc(0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + Rat(*it);
  return acc;
}

QSqrt2 IntPoly::eval(const QSqrt2& x) const {
  QSqrt2 acc;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + QSqrt2(Rat(*it));
  return acc;
}

double IntPoly::eval(double x) const {
  double acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

std::string IntPoly::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    if (sgn(c[i]) == 0) continue;
    Int a = c[i];
    if (first) {
      if (sgn(a) < 0) os << "-";
      first = false;
    } else {
      os << (sgn(a) < 0 ? " - " : " + ");
    }
    Int m = abs(a);
    if (i == 0 || m != 1) os << m.get_str();
    if (i > 0) {
      os << "x";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

IntPoly divide_exact(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw std::invalid_argument("polynomial division by zero");
  IntPoly rem = a, quot;
  int db = b.degree();
  if (a.is_zero()) return IntPoly();
  if (a.degree() < db) throw std::invalid_argument("inexact polynomial division");
  quot.c.assign(a.degree() - db + 1, Int(0));
  while (!rem.is_zero() && rem.degree() >= db) {
    Int q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rem.lc().get_mpz_t(), b.lc().get_mpz_t());
    if (sgn(r) != 0) throw std::invalid_argument("inexact polynomial division");
    int shift = rem.degree() - db;
    quot.c[shift] = q;
    IntPoly t = b * q;
    // rem -= t * x^shift
    for (int i = 0; i <= t.degree(); ++i) rem.c[i + shift] -= t.c[i];
    rem.normalize();
  }
  if (!rem.is_zero()) throw std::invalid_argument("inexact polynomial division");
  quot.normalize();
  return quot;
}

namespace {

// Fraction-free remainder: returns lc(b)^s * a mod b for some s >= 0 (one factor
// of lc(b) per reduction step). The step count is reported so callers can track
// the sign of the accumulated multiplier.
IntPoly pseudo_rem(IntPoly a, const IntPoly& b, int* steps = nullptr) {
  int db = b.degree();
  const Int& lb = b.lc();
  int s = 0;
  while (!a.is_zero() && a.degree() >= db) {
    int shift = a.degree() - db;
    Int la = a.lc();
    for (auto& v : a.c) v *= lb;
    for (int i = 0; i <= db; ++i) a.c[i + shift] -= la * b.c[i];
    a.normalize();
    ++s;
  }
  if (steps) *steps = s;
  return a;
}

}  // namespace

IntPoly poly_gcd(IntPoly a, IntPoly b) {
  a = a.primitive_part();
  b = b.primitive_part();
  if (a.is_zero()) return b.is_zero() || sgn(b.lc()) > 0 ? b : -b;
  if (b.is_zero()) return sgn(a.lc()) > 0 ? a : -a;
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    IntPoly r = pseudo_rem(a, b).primitive_part();
    a = std::move(b);
    b = std::move(r);
  }
  return sgn(a.lc()) > 0 ? a : -a;
}

IntPoly squarefree_part(const IntPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("squarefree part of zero polynomial");
  if (p.degree() == 0) return IntPoly::constant(Int(1));
  IntPoly pp = p.primitive_part();
  IntPoly g = poly_gcd(pp, pp.derivative());
  if (g.degree() == 0) return pp;
  return divide_exact(pp, g).primitive_part();
}

SturmChain::SturmChain(const IntPoly& squarefree) {
  if (squarefree.is_zero()) throw std::invalid_argument("undefined root count");
  polys.push_back(squarefree.primitive_part());
  if (squarefree.degree() == 0) return;
  polys.push_back(squarefree.derivative().primitive_part());
  while (polys.back().degree() > 0) {
    const IntPoly& sprev = polys[polys.size() - 2];
    const IntPoly& scur = polys.back();
    int steps = 0;
    IntPoly r = pseudo_rem(sprev, scur, &steps);
    if (r.is_zero()) break;  // input not squarefree; chain still usable for its sf part
    // r = lc^steps * (sprev mod scur). The Sturm rule needs minus the true
    // remainder up to a positive factor, so flip unless the multiplier was negative.
    bool mult_neg = (sgn(scur.lc()) < 0) && (steps % 2 == 1);
    if (!mult_neg) r = -r;
    polys.push_back(r.primitive_part());
  }
}

namespace {

template <typename Point>
int variations_generic(const std::vector<IntPoly>& polys, const Point& x) {
  int var = 0, prev = 0;
  for (const auto& p : polys) {
    int s;
    if constexpr (std::is_same_v<Point, Rat>) {
      s = sgn(p.eval(x));
    } else {
      s = p.eval(x).sign();
    }
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++var;
    prev = s;
  }
  return var;
}

}  // namespace

int SturmChain::variations_at(const Rat& x) const { return variations_generic(polys, x); }
int SturmChain::variations_at(const QSqrt2& x) const { return variations_generic(polys, x); }

int SturmChain::variations_at_pos_inf() const {
  int var = 0, prev = 0;
  for (const auto& p : polys) {
    if (p.is_zero()) continue;
    int s = sgn(p.lc());
    if (prev != 0 && s != prev) ++var;
    prev = s;
  }
  return var;
}

int sturm_count_above(const IntPoly& p, const QSqrt2& x) {
  if (p.is_zero()) throw std::invalid_argument("undefined root count");
  SturmChain chain(squarefree_part(p));
  return chain.count_above(x);
}

int sturm_count_above(const IntPoly& p, const Rat& x) {
  if (p.is_zero()) throw std::invalid_argument("undefined root count");
  SturmChain chain(squarefree_part(p));
  return chain.count_above(x);
}

int count_above_root_of(const IntPoly& p, const IntPoly& w, Rat lo, Rat hi) {
  if (p.is_zero()) throw std::invalid_argument("undefined root count");
  IntPoly ws = squarefree_part(w);
  int slo = sgn(ws.eval(lo)), shi = sgn(ws.eval(hi));
  if (slo == 0 || shi == 0 || slo == shi)
    throw std::invalid_argument("bracket does not isolate a root of w");
  {
    SturmChain wchain(ws);
    if (wchain.count_in(lo, hi) != 1)
      throw std::invalid_argument("bracket does not isolate a root of w");
  }
  IntPoly ps = squarefree_part(p);
  IntPoly g = poly_gcd(ps, ws);
  if (g.degree() > 0) ps = divide_exact(ps, g).primitive_part();
  if (ps.degree() == 0) return 0;
  SturmChain chain(ps);
  // Shrink the bracket around the root of w until p has no root inside; then
  // counting above the rational endpoint hi is exact.
  while (chain.count_in(lo, hi) > 0) {
    Rat mid = (lo + hi) / 2;
    int sm = sgn(ws.eval(mid));
    if (sm == 0) throw std::logic_error("unexpected rational root of w");
    if (sm == shi) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return chain.count_above(hi);
}

IntPoly theta_star_minpoly() { return IntPoly::from({-1, 0, -4, 0, 1}); }

}  // namespace quipu
