#pragma once
// Exact arithmetic substrate: rationals, Q(sqrt2) field elements,
// arbitrary-precision integer polynomials, and Sturm-sequence root counting.

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace quipu {

using Int = mpz_class;
using Rat = mpq_class;

// Exact field element a + b*sqrt(2) with rational a, b.
struct QSqrt2 {
  Rat a;
  Rat b;

  QSqrt2() : a(0), b(0) {}
  QSqrt2(long v) : a(v), b(0) {}  // NOLINT: implicit by design
  QSqrt2(Rat av) : a(std::move(av)), b(0) {}
  QSqrt2(Rat av, Rat bv) : a(std::move(av)), b(std::move(bv)) {}

  static QSqrt2 sqrt2() { return QSqrt2(Rat(0), Rat(1)); }

  bool is_zero() const { return sgn(a) == 0 && sgn(b) == 0; }
  bool is_rational() const { return sgn(b) == 0; }

  QSqrt2 operator-() const { return QSqrt2(-a, -b); }
  QSqrt2 operator+(const QSqrt2& o) const { return QSqrt2(a + o.a, b + o.b); }
  QSqrt2 operator-(const QSqrt2& o) const { return QSqrt2(a - o.a, b - o.b); }
  QSqrt2 operator*(const QSqrt2& o) const {
    return QSqrt2(a * o.a + 2 * b * o.b, a * o.b + b * o.a);
  }
  QSqrt2 inverse() const;
  QSqrt2 operator/(const QSqrt2& o) const { return *this * o.inverse(); }
  bool operator==(const QSqrt2& o) const { return a == o.a && b == o.b; }

  // Exact sign of the real number a + b*sqrt(2).
  int sign() const;
  double to_double() const;
  std::string str() const;
};

inline int qsqrt2_sign(const QSqrt2& x) { return x.sign(); }

// The threshold lambda* = (3/2)*sqrt(2).
QSqrt2 lambda_star();

// Integer-coefficient univariate polynomial, coefficients ascending by degree.
// An empty coefficient vector represents the zero polynomial.
class IntPoly {
 public:
  std::vector<Int> c;

  IntPoly() = default;
  explicit IntPoly(std::vector<Int> coeffs) : c(std::move(coeffs)) { normalize(); }
  static IntPoly constant(Int v);
  static IntPoly monomial(int deg, Int coeff);
  // Convenience: from small ints, ascending degree.
  static IntPoly from(std::initializer_list<long> coeffs);

  void normalize();
  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  const Int& lc() const;  // leading coefficient; requires nonzero

  IntPoly operator-() const;
  IntPoly operator+(const IntPoly& o) const;
  IntPoly operator-(const IntPoly& o) const;
  IntPoly operator*(const IntPoly& o) const;
  IntPoly operator*(const Int& s) const;
  bool operator==(const IntPoly& o) const { return c == o.c; }

  IntPoly derivative() const;
  Int content() const;            // nonnegative gcd of coefficients
  IntPoly primitive_part() const; // content removed, sign of lc preserved

  Rat eval(const Rat& x) const;
  QSqrt2 eval(const QSqrt2& x) const;
  double eval(double x) const;

  std::string str() const;  // human-readable, variable "x"
};

// Quotient a / b; throws std::invalid_argument if division is not exact over Z[x].
IntPoly divide_exact(const IntPoly& a, const IntPoly& b);

// Primitive polynomial gcd (positive leading coefficient).
IntPoly poly_gcd(IntPoly a, IntPoly b);

// p / gcd(p, p'): same distinct roots, all simple.
IntPoly squarefree_part(const IntPoly& p);

// Sturm chain of a squarefree polynomial (signed remainder sequence,
// each entry made primitive with the sign preserved).
struct SturmChain {
  std::vector<IntPoly> polys;

  explicit SturmChain(const IntPoly& squarefree);

  int variations_at(const Rat& x) const;
  int variations_at(const QSqrt2& x) const;
  int variations_at_pos_inf() const;

  // Number of distinct real roots strictly greater than x.
  int count_above(const Rat& x) const { return variations_at(x) - variations_at_pos_inf(); }
  int count_above(const QSqrt2& x) const { return variations_at(x) - variations_at_pos_inf(); }
  // Number of distinct real roots in the half-open interval (lo, hi].
  int count_in(const Rat& lo, const Rat& hi) const {
    return variations_at(lo) - variations_at(hi);
  }
};

// Distinct real roots of p strictly greater than x (p made squarefree internally).
// Throws std::invalid_argument("undefined root count") on the zero polynomial.
int sturm_count_above(const IntPoly& p, const QSqrt2& x);
int sturm_count_above(const IntPoly& p, const Rat& x);

// Distinct real roots of p strictly greater than the unique root of w inside
// (lo, hi). Requires sign(w(lo)) * sign(w(hi)) < 0 and w squarefree with exactly
// one root there. Any shared factor of p and w is divided out first, so the
// root of w itself is never counted.
int count_above_root_of(const IntPoly& p, const IntPoly& w, Rat lo, Rat hi);

// x^4 - 4x^2 - 1, the minimal polynomial of sqrt(2 + sqrt(5)).
IntPoly theta_star_minpoly();

}  // namespace quipu
