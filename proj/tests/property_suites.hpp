#pragma once

// Shared randomized identity/monotonicity suites.  Used by the unit tests and
// re-run (with timing and margin reporting) by the acceptance harness.

#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "quipu/spectral.hpp"
#include "quipu/transfer.hpp"

namespace quipu::suites {

struct SuiteResult {
  bool pass = true;
  double min_margin = 1e300;  // smallest strict-inequality margin seen
  int checks = 0;
  std::string detail;  // description of the first failure

  void fail(const std::string& d) {
    if (pass) detail = d;
    pass = false;
  }
  // Record a strict-inequality margin; non-positive margins fail the suite.
  void require_margin(double m, const std::string& d) {
    ++checks;
    if (m < min_margin) min_margin = m;
    if (!(m > 0)) fail(d + " (margin " + std::to_string(m) + ")");
  }
  // Record an |error| <= bound check as margin bound - err.
  void require_close(double err, double bound, const std::string& d) {
    require_margin(bound - err, d);
  }
};

inline Quad suite_abs(const Quad& x) { return x < 0 ? Quad(-x) : x; }

// Largest root in (2 + 1e-9, hi0) of a sign function, by descending scan for
// the first sign change from the top followed by bisection.
inline Quad scan_largest_root(const std::function<Quad(const LambdaPoint&)>& f, Quad hi0,
                              Quad step) {
  Quad hi = hi0;
  Quad fs = f(LambdaPoint(hi));
  int shi = fs > 0 ? 1 : -1;
  const Quad floor_l = 2 + Quad(1e-9);
  Quad lo = hi - step;
  for (;;) {
    if (lo < floor_l) lo = floor_l;
    Quad fl = f(LambdaPoint(lo));
    int sl = fl > 0 ? 1 : (fl < 0 ? -1 : 0);
    if (sl != shi) break;
    if (lo <= floor_l) throw std::runtime_error("root not located in scan");
    hi = lo;
    lo -= step;
  }
  for (int it = 0; it < 160; ++it) {
    Quad mid = (lo + hi) / 2;
    Quad fm = f(LambdaPoint(mid));
    if ((fm > 0 ? 1 : -1) == shi)
      hi = mid;
    else
      lo = mid;
  }
  return (lo + hi) / 2;
}

// ---------------------------------------------------------------------------
// Identity suites (transfer calculus).

// The two product identities and the cross identity linking d^(1), d^(2) and
// path polynomials, sampled at random (m, lambda).
inline SuiteResult suite_d_identities(int samples = 1000, unsigned seed = 4401) {
  SuiteResult res;
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> lam(2.01, 2.99);
  std::uniform_int_distribution<long> md(1, 30);
  for (int t = 0; t < samples; ++t) {
    LambdaPoint pt(lam(rng));
    long m = md(rng);
    namespace mp = boost::multiprecision;
    Quad x1p = mp::pow(pt.x1, static_cast<int>(m + 2));
    Quad x2p = mp::pow(pt.x2, static_cast<int>(m + 2));
    Quad x1p1 = mp::pow(pt.x1, static_cast<int>(m + 1));
    Quad x2p1 = mp::pow(pt.x2, static_cast<int>(m + 1));
    auto rel = [](const Quad& a, const Quad& b) {
      Quad scale = std::max<Quad>(std::max(suite_abs(a), suite_abs(b)), Quad(1));
      return static_cast<double>(suite_abs(a - b) / scale);
    };
    double e1 = rel(x2p * phi_path(m, pt) - d1(m + 1, pt) * x1p1, (x2p - x1p) * d1(m, pt));
    double e2 = rel(x1p * phi_path(m, pt) + d2(m + 1, pt) * x2p1, (x2p - x1p) * d2(m, pt));
    double e3 = rel(d1(m, pt) * pt.x2 - d2(m, pt) * pt.x1, 2 * phi_path(m - 1, pt));
    res.require_close(e1, 1e-12, "first product identity, m=" + std::to_string(m));
    res.require_close(e2, 1e-12, "second product identity, m=" + std::to_string(m));
    res.require_close(e3, 1e-12, "cross identity, m=" + std::to_string(m));
  }
  return res;
}

// The sandwiched product A^s B_m A^(s+1) against its closed form.
inline SuiteResult suite_sandwich_identity(int samples = 200, unsigned seed = 4402) {
  SuiteResult res;
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> lam(2.01, 2.99);
  std::uniform_int_distribution<long> md(0, 8), sd(0, 6);
  namespace mp = boost::multiprecision;
  for (int t = 0; t < samples; ++t) {
    LambdaPoint pt(lam(rng));
    long m = md(rng), s = sd(rng), k = 2 * s + 1;
    Transfer2x2 lhs = transfer_A(s, pt) * transfer_B(m, pt) * transfer_A(s + 1, pt);
    Quad phim1 = phi_path(m - 1, pt);
    Quad x1k = mp::pow(pt.x1, static_cast<int>(k));
    Quad x2k = mp::pow(pt.x2, static_cast<int>(k));
    auto rel = [](const Quad& a, const Quad& b) {
      Quad scale = std::max<Quad>(std::max(suite_abs(a), suite_abs(b)), Quad(1));
      return static_cast<double>(suite_abs(a - b) / scale);
    };
    double worst = std::max(std::max(rel(lhs.a, d1(m, pt) * x1k / pt.gap),
                                     rel(lhs.d, d2(m, pt) * x2k / pt.gap)),
                            std::max(rel(lhs.b, phim1 / pt.gap), rel(lhs.c, -phim1 / pt.gap)));
    res.require_close(worst, 1e-12, "sandwiched product, m=" + std::to_string(m));
  }
  return res;
}

// The five equivalent forms of the boundary equation share their largest root.
inline SuiteResult suite_boundary_equivalences() {
  SuiteResult res;
  namespace mp = boost::multiprecision;
  for (long m = 1; m <= 4; ++m) {
    for (long k = 3; k <= 9; ++k) {
      std::vector<std::function<Quad(const LambdaPoint&)>> forms = {
          [=](const LambdaPoint& pt) {
            return d2(m, pt) * (1 - mp::pow(pt.x1, static_cast<int>(k + 1))) -
                   2 * phi_path(m - 1, pt) * mp::pow(pt.x1, static_cast<int>(k));
          },
          [=](const LambdaPoint& pt) {
            return d2(m, pt) * mp::pow(pt.x2, static_cast<int>(k)) -
                   d1(m, pt) * mp::pow(pt.x1, static_cast<int>(k)) - 2 * phi_path(m - 1, pt);
          },
          [=](const LambdaPoint& pt) {
            return d2(m, pt) - 2 * phi_path(m - 1, pt) * mp::pow(pt.x1, static_cast<int>(k)) -
                   d1(m, pt) * mp::pow(pt.x1, static_cast<int>(2 * k));
          },
          [=](const LambdaPoint& pt) {
            return d2(m, pt) - d1(m, pt) * mp::pow(pt.x1, static_cast<int>(k - 1));
          },
          [=](const LambdaPoint& pt) {
            Quad half = Quad(k - 1) / 2;
            return d2(m, pt) * mp::pow(pt.x2, half) - d1(m, pt) * mp::pow(pt.x1, half);
          }};
      Quad first = scan_largest_root(forms[0], Quad(3), Quad(1) / 512);
      for (size_t i = 1; i < forms.size(); ++i) {
        Quad ri = scan_largest_root(forms[i], Quad(3), Quad(1) / 512);
        double err = static_cast<double>(suite_abs(ri - first));
        res.require_close(err, 1e-10, "boundary forms (m,k)=(" + std::to_string(m) + "," +
                                          std::to_string(k) + ")");
      }
    }
  }
  return res;
}

inline OpenQuipuSpec random_open_spec_sized(std::mt19937& rng, int maxn, int rmin = 0,
                                            int rmax = 3) {
  for (;;) {
    std::uniform_int_distribution<int> rd(rmin, rmax), pend(1, 5), inner(0, 6);
    int r = rd(rng);
    OpenQuipuSpec s;
    s.k.push_back(pend(rng));
    for (int i = 0; i < r; ++i) s.k.push_back(inner(rng));
    s.k.push_back(pend(rng));
    for (int i = 0; i <= r; ++i) s.m.push_back(pend(rng));
    if (s.order() <= maxn) return s;
  }
}

inline ClosedQuipuSpec random_closed_spec_sized(std::mt19937& rng, int maxn, int rmin = 1,
                                                int rmax = 4) {
  for (;;) {
    std::uniform_int_distribution<int> rd(rmin, rmax), gap(0, 5), pend(0, 4);
    ClosedQuipuSpec s;
    int r = rd(rng);
    for (int i = 0; i < r; ++i) {
      s.k.push_back(gap(rng));
      s.m.push_back(pend(rng));
    }
    if (s.cycle_length() >= 3 && s.order() <= maxn) return s;
  }
}

// Transfer product vs exact characteristic polynomial on random specs.
inline SuiteResult suite_transfer_vs_exact(int specs = 200, int maxn = 40,
                                           unsigned seed = 4403) {
  SuiteResult res;
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> lam(2.05, 2.9);
  for (int t = 0; t < specs; ++t) {
    double lv = lam(rng);
    Quad mine, exact;
    std::string what;
    if (t % 2 == 0) {
      OpenQuipuSpec s = random_open_spec_sized(rng, maxn);
      mine = quipu_phi_transfer(s, LambdaPoint(lv));
      exact = Quad(char_poly(build_open_quipu(s)).eval(Rat(lv)).get_d());
      what = s.str();
    } else {
      ClosedQuipuSpec s = random_closed_spec_sized(rng, maxn);
      mine = quipu_phi_transfer(s, LambdaPoint(lv));
      exact = Quad(char_poly(build_closed_quipu(s)).eval(Rat(lv)).get_d());
      what = s.str();
    }
    Quad scale = std::max<Quad>(std::max(suite_abs(mine), suite_abs(exact)), Quad(1));
    double err = static_cast<double>(suite_abs(mine - exact) / scale);
    res.require_close(err, 1e-9, "transfer vs exact at " + what);
  }
  return res;
}

// ---------------------------------------------------------------------------
// Monotonicity suites.

// Removing a leaf from a tree strictly lowers the spectral radius.
inline SuiteResult suite_leaf_removal(int samples = 20, unsigned seed = 4404) {
  SuiteResult res;
  std::mt19937 rng(seed);
  for (int t = 0; t < samples; ++t) {
    std::uniform_int_distribution<int> nd(6, 14);
    int n = nd(rng);
    Graph g(n);
    for (int v = 1; v < n; ++v) {
      std::uniform_int_distribution<int> pd(0, v - 1);
      g.add_edge(v, pd(rng));
    }
    int leaf = -1;
    for (int v = n - 1; v >= 0; --v)
      if (g.degree(v) == 1) {
        leaf = v;
        break;
      }
    Graph h(n - 1);
    std::vector<int> idx(n, -1);
    int next = 0;
    for (int v = 0; v < n; ++v)
      if (v != leaf) idx[v] = next++;
    for (int u = 0; u < n; ++u)
      for (int w : g.adj[u])
        if (u < w && u != leaf && w != leaf) h.add_edge(idx[u], idx[w]);
    RadiusBracket big = spectral_radius(g), small = spectral_radius(h);
    res.require_margin(big.lo - small.hi, "leaf removal, sample " + std::to_string(t));
  }
  return res;
}

// Subdividing a pendent-path edge raises the radius; subdividing an edge on an
// internal path (spine or cycle segment) lowers it.
inline SuiteResult suite_subdivision(int samples = 50, unsigned seed = 4405) {
  SuiteResult res;
  std::mt19937 rng(seed);
  int done = 0;
  while (done < samples) {
    bool open = (done % 2 == 0);
    if (open) {
      OpenQuipuSpec s = random_open_spec_sized(rng, 18, 1, 3);
      bool h_family = s.k.size() == 3 && s.k[0] == 1 && s.k[2] == 1 && s.m[0] == 1 && s.m[1] == 1;
      if (h_family) continue;
      Graph g = build_open_quipu(s);
      if (power_bounds(g).estimate < 2.02) continue;
      RadiusBracket base = spectral_radius(g);
      OpenQuipuSpec longer = s;
      longer.m[0] += 1;  // longer pendent path: a proper supergraph
      RadiusBracket up = spectral_radius(build_open_quipu(longer));
      res.require_margin(up.lo - base.hi, "pendent subdivision " + s.str());
      OpenQuipuSpec wider = s;
      wider.k[1] += 1;  // subdividing a spine edge lengthens an internal path
      RadiusBracket down = spectral_radius(build_open_quipu(wider));
      res.require_margin(base.lo - down.hi, "internal subdivision " + s.str());
    } else {
      ClosedQuipuSpec s = random_closed_spec_sized(rng, 18, 1, 3);
      bool bare = true;
      for (long mv : s.m) bare = bare && mv == 0;
      if (bare) continue;
      if (s.m[0] == 0) continue;  // keep a pendent path at junction 0
      Graph g = build_closed_quipu(s);
      if (power_bounds(g).estimate < 2.02) continue;
      RadiusBracket base = spectral_radius(g);
      ClosedQuipuSpec longer = s;
      longer.m[0] += 1;
      RadiusBracket up = spectral_radius(build_closed_quipu(longer));
      res.require_margin(up.lo - base.hi, "pendent subdivision " + s.str());
      ClosedQuipuSpec wider = s;
      wider.k[0] += 1;  // subdividing a cycle edge lengthens an internal path
      RadiusBracket down = spectral_radius(build_closed_quipu(wider));
      res.require_margin(base.lo - down.hi, "cycle subdivision " + s.str());
    }
    ++done;
  }
  return res;
}

// Swapping the end blobs and the center blob of the five-vertex skeleton keeps
// the radius unchanged.
inline SuiteResult suite_rewiring(int samples = 30, unsigned seed = 4406) {
  SuiteResult res;
  std::mt19937 rng(seed);

  auto random_rooted = [&rng](int maxn) {
    std::uniform_int_distribution<int> nd(1, maxn);
    int n = nd(rng);
    Graph g(n);
    for (int v = 1; v < n; ++v) {
      std::uniform_int_distribution<int> pd(0, v - 1);
      g.add_edge(v, pd(rng));
    }
    // sprinkle extra edges (keeping it simple and connected)
    if (n >= 4) {
      std::uniform_int_distribution<int> extra(0, 1), vd(0, n - 1);
      for (int e = extra(rng); e > 0; --e) {
        int a = vd(rng), b = vd(rng);
        if (a != b && !g.has_edge(a, b)) g.add_edge(a, b);
      }
    }
    std::uniform_int_distribution<int> rd(0, n - 1);
    return std::pair<Graph, int>(g, rd(rng));
  };

  // Glue `piece` into `host` by identifying piece's root with host vertex at.
  auto glue = [](Graph host, const Graph& piece, int root, int at) {
    int base = host.n;
    std::vector<int> idx(piece.n, -1);
    int next = base;
    for (int v = 0; v < piece.n; ++v) idx[v] = (v == root) ? at : next++;
    Graph out(next);
    for (int u = 0; u < host.n; ++u)
      for (int w : host.adj[u])
        if (u < w) out.add_edge(u, w);
    for (int u = 0; u < piece.n; ++u)
      for (int w : piece.adj[u])
        if (u < w) out.add_edge(idx[u], idx[w]);
    return out;
  };

  auto build_h = [&glue](const Graph& ends, int ends_root, const Graph& center,
                         int center_root) {
    Graph skel(6);  // path 0-1-2-3-4 plus pendant 5 under the middle
    skel.add_edge(0, 1);
    skel.add_edge(1, 2);
    skel.add_edge(2, 3);
    skel.add_edge(3, 4);
    skel.add_edge(2, 5);
    Graph h = glue(skel, ends, ends_root, 0);
    h = glue(h, ends, ends_root, 4);
    h = glue(h, center, center_root, 5);
    return h;
  };

  for (int t = 0; t < samples; ++t) {
    auto [g1, a] = random_rooted(5);
    auto [g2, b] = random_rooted(5);
    RadiusBracket r1 = spectral_radius(build_h(g1, a, g2, b));
    RadiusBracket r2 = spectral_radius(build_h(g2, b, g1, a));
    double dev = std::abs(r1.mid() - r2.mid());
    res.require_close(dev, 1e-10, "rewiring sample " + std::to_string(t));
  }
  return res;
}

// The two-junction family: strictly increasing radius, always below sqrt(5).
// Uses the mirror factorization phi = (phi_T - phi_{T-u})(phi_T + phi_{T-u})
// with T the odd path centered at a junction, verified exactly for small m.
inline SuiteResult suite_two_junction_family(int mmax = 30) {
  SuiteResult res;
  namespace mp = boost::multiprecision;
  for (long m = 1; m <= 5; ++m) {
    IntPoly phi = char_poly(build_open_quipu(OpenQuipuSpec{{m, 0, m}, {m, m}}));
    IntPoly t = path_char_poly(2 * m + 1);
    IntPoly tu = path_char_poly(m) * path_char_poly(m);
    if (!(phi == t * t - tu * tu)) {
      res.fail("mirror factorization failed at m=" + std::to_string(m));
      return res;
    }
  }
  Quad sqrt5 = mp::sqrt(Quad(5));
  Quad prev = 2;  // m = 1 member has radius exactly 2
  for (long m = 2; m <= mmax; ++m) {
    auto f = [m](const LambdaPoint& pt) {
      return phi_path(2 * m + 1, pt) - phi_path(m, pt) * phi_path(m, pt);
    };
    Quad root = scan_largest_root(f, sqrt5 + Quad(1) / 1024, Quad(1) / 16384);
    res.require_margin(static_cast<double>(root - prev),
                       "increase step m=" + std::to_string(m));
    res.require_margin(static_cast<double>(sqrt5 - root),
                       "below sqrt(5) at m=" + std::to_string(m));
    prev = root;
  }
  return res;
}

// Shifting a cycle vertex from the long arc to the short arc lowers the radius.
inline SuiteResult suite_cycle_balance() {
  SuiteResult res;
  const std::vector<std::pair<long, long>> ms = {{1, 1}, {1, 2}, {2, 2}, {2, 3}};
  const std::vector<std::pair<long, long>> ks = {{0, 2}, {0, 3}, {1, 3}, {2, 4}, {1, 5}};
  for (auto [m1, m2] : ms) {
    for (auto [k1, k2] : ks) {
      ClosedQuipuSpec lop{{k1, k2}, {m1, m2}};
      ClosedQuipuSpec bal{{k1 + 1, k2 - 1}, {m1, m2}};
      RadiusBracket a = spectral_radius(build_closed_quipu(lop));
      RadiusBracket b = spectral_radius(build_closed_quipu(bal));
      std::ostringstream os;
      os << "cycle balance m=(" << m1 << "," << m2 << ") k=(" << k1 << "," << k2 << ")";
      res.require_margin(a.lo - b.hi, os.str());
    }
  }
  return res;
}

// Limit ordering: rho_{m+1} exceeds rho_{m,k} once k >= 2m+5, and each
// finite-k radius stays above its limit (rho_{m,k} decreases toward rho_m).
inline SuiteResult suite_limit_ordering() {
  SuiteResult res;
  for (long m = 1; m <= 5; ++m) {
    RadiusBracket next = rho_limit(m + 1, 1e-14);
    RadiusBracket at = rho_mk(m, 2 * m + 5, 1e-14);
    res.require_margin(next.lo - at.hi, "limit ordering m=" + std::to_string(m));
    RadiusBracket lim = rho_limit(m, 1e-14);
    RadiusBracket prev = rho_mk(m, 4L, 1e-14);
    for (long k : {5L, 10L, 20L, 40L}) {
      RadiusBracket fin = rho_mk(m, k, 1e-14);
      res.require_margin(fin.lo - lim.hi,
                         "finite above limit m=" + std::to_string(m) + " k=" + std::to_string(k));
      res.require_margin(prev.lo - fin.hi,
                         "decreasing in k m=" + std::to_string(m) + " k=" + std::to_string(k));
      prev = fin;
    }
  }
  return res;
}

}  // namespace quipu::suites
