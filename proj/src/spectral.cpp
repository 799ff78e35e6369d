#include "quipu/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace quipu {

namespace {

namespace mp = boost::multiprecision;

// ----------------------------------------------------------------- path cache

std::vector<IntPoly>& path_cache() {
  static std::vector<IntPoly> cache;
  return cache;
}
std::mutex& path_cache_mutex() {
  static std::mutex m;
  return m;
}

// ------------------------------------------------------------ tree recurrence

struct SubtreeEval {
  IntPoly whole;    // phi of the subtree
  IntPoly rootless; // phi of the subtree minus its root
  bool is_path = false;
  long path_len = 0;  // vertex count when is_path
};

// Characteristic polynomial of the tree component containing `root` within the
// alive mask, by the rooted two-polynomial recurrence.  Hanging path segments
// are answered from the shared path-polynomial cache.
SubtreeEval tree_eval(const Graph& g, const std::vector<char>& alive, int root) {
  // Iterative post-order: state per frame tracks the next child to process.
  struct Frame {
    int v;
    int parent;
    size_t next_child = 0;
    std::vector<SubtreeEval> children;
  };
  std::vector<Frame> stack;
  stack.push_back({root, -1, 0, {}});
  SubtreeEval result;
  while (!stack.empty()) {
    Frame& f = stack.back();
    bool descended = false;
    const auto& nbrs = g.adj[f.v];
    while (f.next_child < nbrs.size()) {
      int w = nbrs[f.next_child++];
      if (w == f.parent || !alive[w]) continue;
      stack.push_back({w, f.v, 0, {}});
      descended = true;
      break;
    }
    if (descended) continue;
    // All children evaluated: combine.
    SubtreeEval ev;
    if (f.children.empty()) {
      ev.whole = IntPoly::monomial(1, 1);
      ev.rootless = IntPoly::constant(1);
      ev.is_path = true;
      ev.path_len = 1;
    } else if (f.children.size() == 1 && f.children[0].is_path) {
      long len = f.children[0].path_len + 1;
      ev.whole = path_char_poly(len);
      ev.rootless = path_char_poly(len - 1);
      ev.is_path = true;
      ev.path_len = len;
    } else {
      size_t t = f.children.size();
      // rootless = product of child whole-polynomials, via prefix/suffix
      // products so each child's complement is available in O(t) multiplies.
      std::vector<IntPoly> prefix(t + 1), suffix(t + 1);
      prefix[0] = IntPoly::constant(1);
      for (size_t i = 0; i < t; ++i) prefix[i + 1] = prefix[i] * f.children[i].whole;
      suffix[t] = IntPoly::constant(1);
      for (size_t i = t; i > 0; --i) suffix[i - 1] = suffix[i] * f.children[i - 1].whole;
      ev.rootless = prefix[t];
      IntPoly acc = IntPoly::monomial(1, 1) * ev.rootless;
      for (size_t i = 0; i < t; ++i)
        acc = acc - f.children[i].rootless * (prefix[i] * suffix[i + 1]);
      ev.whole = acc;
      ev.is_path = false;
    }
    int parent = f.parent;
    stack.pop_back();
    if (stack.empty())
      result = ev;
    else
      stack.back().children.push_back(std::move(ev));
    (void)parent;
  }
  return result;
}

// Product of tree charpolys over every component inside the alive mask.
// Every alive component must be a tree (acyclic); that is the only way this
// helper is reached.
IntPoly forest_char_poly(const Graph& g, const std::vector<char>& alive) {
  IntPoly out = IntPoly::constant(1);
  std::vector<char> seen(g.n, 0);
  for (int v = 0; v < g.n; ++v) {
    if (!alive[v] || seen[v]) continue;
    // Mark the component.
    std::vector<int> comp{v};
    seen[v] = 1;
    for (size_t i = 0; i < comp.size(); ++i)
      for (int w : g.adj[comp[i]])
        if (alive[w] && !seen[w]) {
          seen[w] = 1;
          comp.push_back(w);
        }
    out = out * tree_eval(g, alive, v).whole;
  }
  return out;
}

// Unicyclic component: phi(G) = phi(G-e) - phi(G-u-v) - 2 phi(G-Z) where e is
// an edge of the unique cycle Z.
IntPoly unicyclic_char_poly_component(const Graph& g, const std::vector<char>& alive) {
  // Induce the component on a fresh graph to reuse find_unique_cycle.
  std::vector<int> idx(g.n, -1), verts;
  for (int v = 0; v < g.n; ++v)
    if (alive[v]) {
      idx[v] = static_cast<int>(verts.size());
      verts.push_back(v);
    }
  Graph sub(static_cast<int>(verts.size()));
  for (int v : verts)
    for (int w : g.adj[v])
      if (alive[w] && v < w) sub.add_edge(idx[v], idx[w]);
  std::vector<int> cyc = find_unique_cycle(sub);
  int u = cyc[0], v2 = cyc[1];

  Graph minus_e(sub.n);
  for (int a = 0; a < sub.n; ++a)
    for (int b : sub.adj[a])
      if (a < b && !((a == u && b == v2) || (a == v2 && b == u))) minus_e.add_edge(a, b);
  std::vector<char> all(sub.n, 1);
  IntPoly phi_minus_e = forest_char_poly(minus_e, all);

  std::vector<char> no_uv(sub.n, 1);
  no_uv[u] = no_uv[v2] = 0;
  IntPoly phi_minus_uv = forest_char_poly(sub, no_uv);

  std::vector<char> no_cycle(sub.n, 1);
  for (int c : cyc) no_cycle[c] = 0;
  IntPoly phi_minus_z = forest_char_poly(sub, no_cycle);

  return phi_minus_e - phi_minus_uv - phi_minus_z * Int(2);
}

Int bareiss_det(std::vector<std::vector<Int>> M) {
  int n = static_cast<int>(M.size());
  if (n == 0) return Int(1);
  Int prev = 1;
  int sign = 1;
  for (int c = 0; c < n - 1; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (M[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return Int(0);
    if (piv != c) {
      std::swap(M[piv], M[c]);
      sign = -sign;
    }
    for (int r = c + 1; r < n; ++r) {
      for (int cc = c + 1; cc < n; ++cc) {
        Int t = M[r][cc] * M[c][c] - M[r][c] * M[c][cc];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        M[r][cc] = t;
      }
      M[r][c] = 0;
    }
    prev = M[c][c];
  }
  return sign > 0 ? M[n - 1][n - 1] : Int(-M[n - 1][n - 1]);
}

// --------------------------------------------------------------- sturm helper

Rat rat_from_double(double x) { return Rat(x); }

RadiusBracket sturm_largest_root(const IntPoly& phi, double tol, long degree_bound,
                                 const PowerBounds* seed) {
  IntPoly sf = squarefree_part(phi);
  SturmChain chain(sf);
  Rat lo(1, 2);
  Rat hi(degree_bound);
  if (chain.count_above(lo) == 0) {
    // Largest root in [0, 1/2]; only the single vertex reaches this branch
    // among connected graphs, but keep the bracket valid regardless.
    lo = Rat(-degree_bound - 1);
  }
  if (seed) {
    Rat cand_hi = rat_from_double(seed->hi) + rat_from_double(1e-9);
    Rat cand_lo = rat_from_double(seed->lo) - rat_from_double(1e-9);
    if (cand_hi < hi && chain.count_above(cand_hi) == 0) hi = cand_hi;
    if (cand_lo > lo && chain.count_above(cand_lo) >= 1) lo = cand_lo;
  }
  Rat rtol = rat_from_double(tol) / 2;
  while (hi - lo > rtol) {
    Rat mid = (lo + hi) / 2;
    if (chain.count_above(mid) >= 1)
      lo = mid;
    else
      hi = mid;
  }
  double lod = std::nextafter(lo.get_d(), -1e300);
  double hid = std::nextafter(hi.get_d(), 1e300);
  return {lod, hid, RadiusEvidence::ExactSturm};
}

bool is_rho_two_open_family(const ShapeClass& sc) {
  if (sc.tag != ShapeTag::OpenQuipu || !sc.open) return false;
  const OpenQuipuSpec& s = *sc.open;
  return s.k.size() == 3 && s.k[0] == 1 && s.k[2] == 1 && s.m.size() == 2 &&
         s.m[0] == 1 && s.m[1] == 1;
}

// Sign-based bisection helper for the closed-form family functions.  The
// bracketed function is negative at lo and positive at hi.
RadiusBracket quad_sign_bisect(const std::function<Quad(const LambdaPoint&)>& f,
                               Quad lo, Quad hi, double tol, const char* what) {
  Quad flo = f(LambdaPoint(lo)), fhi = f(LambdaPoint(hi));
  if (!(flo < 0 && fhi > 0)) throw std::runtime_error(std::string("root not located: ") + what);
  Quad qtol = Quad(tol) / 2;
  while (hi - lo > qtol) {
    Quad mid = (lo + hi) / 2;
    Quad fm = f(LambdaPoint(mid));
    if (fm == 0) {
      lo = mid;
      hi = mid;
      break;
    }
    if (fm > 0)
      hi = mid;
    else
      lo = mid;
  }
  double lod = std::nextafter(static_cast<double>(lo), -1e300);
  double hid = std::nextafter(static_cast<double>(hi), 1e300);
  return {lod, hid, RadiusEvidence::SignChange};
}

}  // namespace

std::string evidence_name(RadiusEvidence e) {
  switch (e) {
    case RadiusEvidence::SignChange:
      return "sign-change";
    case RadiusEvidence::PowerIterBound:
      return "power-iteration";
    case RadiusEvidence::ExactSturm:
      return "exact-sturm";
  }
  return "unknown";
}

IntPoly path_char_poly(long m) {
  if (m < 0) throw std::invalid_argument("path length must be nonnegative");
  std::lock_guard<std::mutex> lock(path_cache_mutex());
  auto& cache = path_cache();
  if (cache.empty()) {
    cache.push_back(IntPoly::constant(1));
    cache.push_back(IntPoly::monomial(1, 1));
  }
  while (static_cast<long>(cache.size()) <= m) {
    IntPoly next = IntPoly::monomial(1, 1) * cache[cache.size() - 1] - cache[cache.size() - 2];
    cache.push_back(next);
  }
  return cache[static_cast<size_t>(m)];
}

IntPoly char_poly(const Graph& g) {
  if (g.n == 0) return IntPoly::constant(1);
  IntPoly out = IntPoly::constant(1);
  std::vector<char> seen(g.n, 0);
  for (int v = 0; v < g.n; ++v) {
    if (seen[v]) continue;
    std::vector<int> comp{v};
    seen[v] = 1;
    for (size_t i = 0; i < comp.size(); ++i)
      for (int w : g.adj[comp[i]])
        if (!seen[w]) {
          seen[w] = 1;
          comp.push_back(w);
        }
    long edges = 0;
    for (int u : comp) edges += static_cast<long>(g.adj[u].size());
    edges /= 2;
    long nc = static_cast<long>(comp.size());
    std::vector<char> alive(g.n, 0);
    for (int u : comp) alive[u] = 1;
    if (edges == nc - 1) {
      out = out * tree_eval(g, alive, v).whole;
    } else if (edges == nc) {
      out = out * unicyclic_char_poly_component(g, alive);
    } else {
      // Dense fallback on the induced component.
      std::vector<int> idx(g.n, -1);
      for (size_t i = 0; i < comp.size(); ++i) idx[comp[i]] = static_cast<int>(i);
      Graph sub(static_cast<int>(comp.size()));
      for (int u : comp)
        for (int w : g.adj[u])
          if (alive[w] && u < w) sub.add_edge(idx[u], idx[w]);
      out = out * char_poly_dense(sub);
    }
  }
  return out;
}

IntPoly char_poly_dense(const Graph& g) {
  int n = g.n;
  if (n == 0) return IntPoly::constant(1);
  // Evaluate det(tI - A) at t = 0..n, then interpolate exactly.
  std::vector<Int> values(n + 1);
  for (int t = 0; t <= n; ++t) {
    std::vector<std::vector<Int>> M(n, std::vector<Int>(n, 0));
    for (int i = 0; i < n; ++i) M[i][i] = t;
    for (int u = 0; u < n; ++u)
      for (int w : g.adj[u]) M[u][w] = -1;
    values[t] = bareiss_det(std::move(M));
  }
  // Full node polynomial N(x) = prod_{j=0..n} (x - j), ascending coefficients.
  std::vector<Int> node{1};
  for (long j = 0; j <= n; ++j) {
    std::vector<Int> next(node.size() + 1, 0);
    for (size_t i = 0; i < node.size(); ++i) {
      next[i + 1] += node[i];
      next[i] -= node[i] * j;
    }
    node = std::move(next);
  }
  std::vector<Rat> acc(n + 1, Rat(0));
  Int factorial_n = 1;
  for (int i = 2; i <= n; ++i) factorial_n *= i;
  for (long i = 0; i <= n; ++i) {
    if (values[i] == 0) continue;
    // Synthetic division: Q_i = N / (x - i), exact.
    std::vector<Int> q(n + 1);
    Int carry = node[node.size() - 1];
    for (long d = n; d >= 0; --d) {
      q[d] = carry;
      carry = node[d] + carry * i;
    }
    // carry is N(i) = 0.
    Int denom = 1;  // prod_{j != i} (i - j) = (-1)^(n-i) i! (n-i)!
    for (int t = 2; t <= i; ++t) denom *= t;
    for (int t = 2; t <= n - i; ++t) denom *= t;
    if ((n - i) % 2 == 1) denom = -denom;
    Rat scale = Rat(values[i]) / Rat(denom);
    for (int d = 0; d <= n; ++d)
      if (q[d] != 0) acc[d] += scale * Rat(q[d]);
  }
  IntPoly result;
  result.c.resize(n + 1);
  for (int d = 0; d <= n; ++d) {
    Rat cd = acc[d];
    cd.canonicalize();
    if (cd.get_den() != 1)
      throw std::logic_error("interpolation produced a non-integer coefficient");
    result.c[d] = cd.get_num();
  }
  result.normalize();
  return result;
}

PowerBounds power_bounds(const Graph& g, int iters) {
  PowerBounds pb;
  if (g.n == 0 || g.edge_count() == 0) return pb;
  int n = g.n;
  if (iters < n + 8) iters = n + 8;
  std::vector<double> v(n, 1.0), w(n, 0.0);
  for (int it = 0; it < iters; ++it) {
    double norm = 0.0;
    for (int i = 0; i < n; ++i) {
      double s = v[i];  // (A + I) v keeps the vector strictly positive
      for (int j : g.adj[i]) s += v[j];
      w[i] = s;
      norm = std::max(norm, s);
    }
    for (int i = 0; i < n; ++i) v[i] = w[i] / norm;
  }
  double lo = 1e300, hi = -1e300, num = 0.0, den = 0.0;
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j : g.adj[i]) s += v[j];
    double q = s / v[i];
    lo = std::min(lo, q);
    hi = std::max(hi, q);
    num += v[i] * s;
    den += v[i] * v[i];
  }
  pb.lo = lo;
  pb.hi = hi;
  pb.estimate = num / den;
  return pb;
}

bool certified_above_threshold(const Graph& g) {
  if (g.n == 0 || g.edge_count() == 0) return false;
  PowerBounds pb = power_bounds(g, 80);
  (void)pb;
  // Re-run a short power iteration to get the vector itself.
  int n = g.n;
  std::vector<double> v(n, 1.0), w(n, 0.0);
  for (int it = 0; it < 80; ++it) {
    double norm = 0.0;
    for (int i = 0; i < n; ++i) {
      double s = v[i];
      for (int j : g.adj[i]) s += v[j];
      w[i] = s;
      norm = std::max(norm, s);
    }
    for (int i = 0; i < n; ++i) v[i] = w[i] / norm;
  }
  std::vector<Int> iv(n);
  for (int i = 0; i < n; ++i) {
    long scaled = std::lround(v[i] * 1048576.0);
    iv[i] = scaled > 1 ? scaled : 1;
  }
  Int a = 0, b = 0;
  for (int i = 0; i < n; ++i) {
    for (int j : g.adj[i])
      if (i < j) a += 2 * iv[i] * iv[j];
    b += iv[i] * iv[i];
  }
  return a > 0 && 2 * a * a > 9 * b * b;
}

bool below_threshold_exact(const IntPoly& phi) {
  return sturm_count_above(phi, lambda_star()) == 0;
}

int count_eigen_above_theta(const IntPoly& phi) {
  return count_above_root_of(phi, theta_star_minpoly(), Rat(2), Rat(21, 10));
}

ThresholdVerdict is_below_threshold(const Graph& g, bool exact_mode) {
  if (!g.is_connected()) throw std::invalid_argument("graph must be connected");
  ThresholdVerdict verdict;
  if (exact_mode) {
    verdict.below = below_threshold_exact(char_poly(g));
    verdict.certificate = ThresholdCertKind::SturmExact;
    verdict.margin = 0.0;
    return verdict;
  }
  const double threshold = lambda_star().to_double();
  PowerBounds pb = power_bounds(g);
  verdict.certificate = ThresholdCertKind::NumericMargin;
  if (pb.hi < threshold) {
    verdict.below = true;
    verdict.margin = threshold - pb.hi;
  } else if (pb.lo > threshold) {
    verdict.below = false;
    verdict.margin = pb.lo - threshold;
  } else {
    verdict.below = pb.estimate < threshold;
    verdict.margin = 0.0;
  }
  return verdict;
}

RadiusBracket spectral_radius(const Graph& g, double tol) {
  if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
  if (!g.is_connected()) throw std::invalid_argument("graph must be connected");
  if (g.edge_count() == 0) return {0.0, 0.0, RadiusEvidence::ExactSturm};
  ShapeClass sc = classify_shape(g);
  if (sc.tag == ShapeTag::Cycle) return {2.0, 2.0, RadiusEvidence::ExactSturm};
  if (is_rho_two_open_family(sc)) return {2.0, 2.0, RadiusEvidence::ExactSturm};
  PowerBounds pb = power_bounds(g);
  IntPoly phi = char_poly(g);
  return sturm_largest_root(phi, tol, g.max_degree(), &pb);
}

RadiusBracket rho_mk(long m, long k, double tol) {
  if (m < 1 || k < 1) throw std::invalid_argument("require m >= 1 and k >= 1");
  if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
  auto f = [m, k](const LambdaPoint& pt) {
    Quad half = Quad(k - 1) / 2;
    return d2(m, pt) * mp::pow(pt.x2, half) - d1(m, pt) * mp::pow(pt.x1, half);
  };
  return quad_sign_bisect(f, Quad(2) + Quad(1e-9), Quad(3), tol, "rho_mk");
}

RadiusBracket rho_limit(long m, double tol) {
  if (m < 1) throw std::invalid_argument("require m >= 1");
  if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
  auto f = [m](const LambdaPoint& pt) {
    return pt.x2 * pt.x2 - 2 + mp::pow(pt.x1, static_cast<int>(2 * m + 2));
  };
  return quad_sign_bisect(f, Quad(2) + Quad(1e-9), Quad(3), tol, "rho_limit");
}

CoveringRecord rho_c_mkr_equal(long m, long k, long r, double tol) {
  if (m < 1 || k < 2 || r < 1) throw std::invalid_argument("require m >= 1, k >= 2, r >= 1");
  CoveringRecord rec;
  rec.m = m;
  rec.k = k;
  rec.r = r;
  rec.rho_base = spectral_radius(build_C_mkr(m, k, 1), tol);
  rec.rho_r = spectral_radius(build_C_mkr(m, k, r), tol);
  double gap = std::max(rec.rho_base.lo, rec.rho_r.lo) - std::min(rec.rho_base.hi, rec.rho_r.hi);
  rec.equal = gap <= 2 * tol;
  if (!rec.equal) {
    std::ostringstream os;
    os << "covering radius mismatch for (m,k,r)=(" << m << "," << k << "," << r
       << "): base [" << rec.rho_base.lo << "," << rec.rho_base.hi << "] vs ["
       << rec.rho_r.lo << "," << rec.rho_r.hi << "]";
    throw std::runtime_error(os.str());
  }
  return rec;
}

}  // namespace quipu
