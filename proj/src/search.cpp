#include "quipu/search.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <exception>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <utility>

#include "json.hpp"

namespace quipu {

namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Calls fn(tuple) for every tuple with the given per-position minimums
// summing to total.
template <typename Fn>
void compositions(long total, const std::vector<long>& mins, Fn&& fn) {
  std::vector<long> cur(mins.size());
  auto rec = [&](auto&& self, std::size_t idx, long rem) -> void {
    if (idx + 1 == cur.size()) {
      if (rem < mins[idx]) return;
      cur[idx] = rem;
      fn(cur);
      return;
    }
    long tail_min = 0;
    for (std::size_t j = idx + 1; j < cur.size(); ++j) tail_min += mins[j];
    for (long v = mins[idx]; rem - v >= tail_min; ++v) {
      cur[idx] = v;
      self(self, idx + 1, rem - v);
    }
  };
  if (!cur.empty()) rec(rec, 0, total);
}

std::vector<std::vector<long>> composition_list(long total, const std::vector<long>& mins) {
  std::vector<std::vector<long>> out;
  compositions(total, mins, [&](const std::vector<long>& t) { out.push_back(t); });
  return out;
}

// Per-worker accumulator for sharded scans.
struct ShardAccum {
  long scanned = 0;
  long hits = 0;
  std::vector<ScanRow> rows;
  std::vector<ScanRow> bad;
};

template <typename Fn>
ShardAccum run_sharded(std::size_t total, int workers, const Fn& body) {
  if (workers < 1) workers = 1;
  if (workers == 1 || total < 2) {
    ShardAccum acc;
    for (std::size_t i = 0; i < total; ++i) body(i, acc);
    return acc;
  }
  std::vector<ShardAccum> parts(workers);
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < total; i += static_cast<std::size_t>(workers))
          body(i, parts[w]);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  ShardAccum acc;
  for (auto& p : parts) {
    acc.scanned += p.scanned;
    acc.hits += p.hits;
    acc.rows.insert(acc.rows.end(), p.rows.begin(), p.rows.end());
    acc.bad.insert(acc.bad.end(), p.bad.begin(), p.bad.end());
  }
  return acc;
}

void finish_report(VerificationReport& rep, ShardAccum acc, Clock::time_point t0) {
  rep.scanned = acc.scanned;
  rep.hits = acc.hits;
  rep.rows = std::move(acc.rows);
  rep.counterexamples = std::move(acc.bad);
  std::sort(rep.rows.begin(), rep.rows.end());
  std::sort(rep.counterexamples.begin(), rep.counterexamples.end());
  rep.wall_seconds = seconds_since(t0);
}

ScanRow make_row(std::string family, std::string spec, long n, int d,
                 const RadiusBracket& br, std::string verdict) {
  ScanRow row;
  row.family = std::move(family);
  row.spec = std::move(spec);
  row.n = n;
  row.d = d;
  row.rho_lo = br.lo;
  row.rho_hi = br.hi;
  row.verdict = std::move(verdict);
  return row;
}

}  // namespace

bool ScanRow::operator<(const ScanRow& o) const {
  if (n != o.n) return n < o.n;
  if (family != o.family) return family < o.family;
  if (spec != o.spec) return spec < o.spec;
  return verdict < o.verdict;
}

// ---------------------------------------------------------------------------
// Canonical enumeration

std::vector<OpenQuipuSpec> enumerate_open_quipus(long n) {
  std::vector<OpenQuipuSpec> out;
  if (n < 4) return out;
  // One junction, three pendent arms a <= b <= c with a + b + c = n - 1.
  for (long a = 1; 3 * a <= n - 1; ++a)
    for (long b = a; a + 2 * b <= n - 1; ++b) {
      long c = n - 1 - a - b;
      out.push_back(OpenQuipuSpec{{b, c}, {a}});
    }
  // r >= 1 junctions: k has r + 2 entries (ends >= 1, interior >= 0), m has
  // r + 1 entries (each >= 1), junctions contribute r + 1 vertices.
  for (int r = 1;; ++r) {
    long budget = n - (r + 1);  // sum k + sum m
    if (budget < 2 + (r + 1)) break;
    std::vector<long> kmins(r + 2, 0);
    kmins.front() = kmins.back() = 1;
    std::vector<long> mmins(r + 1, 1);
    for (long sk = 2; budget - sk >= r + 1; ++sk) {
      auto kts = composition_list(sk, kmins);
      auto mts = composition_list(budget - sk, mmins);
      for (const auto& kt : kts)
        for (const auto& mt : mts) {
          OpenQuipuSpec s{kt, mt};
          if (open_canonical(s) == s) out.push_back(std::move(s));
        }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ClosedQuipuSpec> enumerate_closed_quipus(long n) {
  std::vector<ClosedQuipuSpec> out;
  if (n < 3) return out;
  out.push_back(ClosedQuipuSpec{{n - 1}, {0}});  // bare cycle
  // r >= 1 junctions each carrying a pendent path (m_i >= 1); gaps k_i >= 0
  // with cycle length r + sum k >= 3.
  for (int r = 1; 2 * r <= n; ++r) {
    long budget = n - r;  // sum k + sum m, sum m >= r
    std::vector<long> kmins(r, 0);
    std::vector<long> mmins(r, 1);
    for (long sk = std::max(0L, 3L - r); budget - sk >= r; ++sk) {
      auto kts = composition_list(sk, kmins);
      auto mts = composition_list(budget - sk, mmins);
      for (const auto& kt : kts)
        for (const auto& mt : mts) {
          ClosedQuipuSpec s{kt, mt};
          if (closed_canonical(s) == s) out.push_back(std::move(s));
        }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Diameter bound scans

VerificationReport verify_theorem_1_1(long n_max, int workers) {
  if (n_max < 6) throw std::invalid_argument("n_max must be at least 6");
  auto t0 = Clock::now();
  struct Task {
    bool dagger = false;
    OpenQuipuSpec open;
    long tail = 0;
    long n = 0;
  };
  std::vector<Task> tasks;
  for (long n = 6; n <= n_max; ++n) {
    for (auto& s : enumerate_open_quipus(n)) tasks.push_back({false, std::move(s), 0, n});
    tasks.push_back({true, {}, n - 5, n});
  }
  ShardAccum acc = run_sharded(tasks.size(), workers, [&](std::size_t i, ShardAccum& a) {
    const Task& t = tasks[i];
    ++a.scanned;
    Graph g = t.dagger ? build_dagger(t.tail) : build_open_quipu(t.open);
    if (certified_above_threshold(g)) return;
    if (!below_threshold_exact(char_poly(g))) return;
    ++a.hits;
    int d = diameter(g);
    long slack = 3L * d - (2 * t.n - 4);
    if (slack < 0 || (slack == 0 && t.dagger)) {
      std::string spec = t.dagger ? "dagger " + std::to_string(t.tail) : t.open.str();
      a.bad.push_back(make_row(t.dagger ? "dagger" : "open", spec, t.n, d,
                               spectral_radius(g), "3D < 2n - 4 regime"));
    } else if (slack == 0) {
      a.rows.push_back(make_row("open", t.open.str(), t.n, d, spectral_radius(g), "equality"));
    }
  });
  VerificationReport rep;
  rep.theorem = "t1.1";
  rep.range = "open quipus and daggers, 6 <= n <= " + std::to_string(n_max);
  finish_report(rep, std::move(acc), t0);
  return rep;
}

VerificationReport verify_theorem_1_2(long n_max, int workers) {
  if (n_max < 13) throw std::invalid_argument("n_max must be at least 13");
  auto t0 = Clock::now();
  struct Task {
    ClosedQuipuSpec spec;
    long n = 0;
  };
  std::vector<Task> tasks;
  for (long n = 13; n <= n_max; ++n)
    for (auto& s : enumerate_closed_quipus(n)) tasks.push_back({std::move(s), n});
  ShardAccum acc = run_sharded(tasks.size(), workers, [&](std::size_t i, ShardAccum& a) {
    const Task& t = tasks[i];
    ++a.scanned;
    Graph g = build_closed_quipu(t.spec);
    if (certified_above_threshold(g)) return;
    if (!below_threshold_exact(char_poly(g))) return;
    ++a.hits;
    int d = diameter(g);
    if (3L * d <= t.n)
      a.bad.push_back(make_row("closed", t.spec.str(), t.n, d, spectral_radius(g),
                               "3D <= n"));
    if (3L * d > 2 * t.n - 2)
      a.bad.push_back(make_row("closed", t.spec.str(), t.n, d, spectral_radius(g),
                               "3D > 2n - 2"));
    if (3L * d > 2 * t.n - 4)
      a.rows.push_back(make_row("closed", t.spec.str(), t.n, d, spectral_radius(g),
                                "3D > 2n - 4"));
  });
  VerificationReport rep;
  rep.theorem = "t1.2";
  rep.range = "closed quipus, 13 <= n <= " + std::to_string(n_max);
  finish_report(rep, std::move(acc), t0);
  return rep;
}

// ---------------------------------------------------------------------------
// Exact largest-root comparison

namespace {

Rat cauchy_bound(const IntPoly& p) {
  Rat best(0);
  Int lead = abs(p.lc());
  for (std::size_t i = 0; i + 1 < p.c.size(); ++i) {
    Rat cand = Rat(abs(p.c[i])) / lead;
    if (cand > best) best = cand;
  }
  return best + 1;
}

struct RootBracket {
  Rat lo, hi;  // largest root lies in (lo, hi]
};

RootBracket bracket_largest(const SturmChain& ch, const IntPoly& sf, int bits) {
  Rat hi = cauchy_bound(sf);
  Rat lo = -hi;
  if (ch.count_above(lo) == 0) throw std::invalid_argument("no real roots");
  Rat target = Rat(1) / Rat(Int(1) << bits);
  while (hi - lo > target) {
    Rat mid = (lo + hi) / 2;
    if (ch.count_above(mid) >= 1)
      lo = mid;
    else
      hi = mid;
  }
  return {lo, hi};
}

}  // namespace

int compare_largest_roots(const IntPoly& a, const IntPoly& b) {
  IntPoly sa = squarefree_part(a), sb = squarefree_part(b);
  SturmChain ca(sa), cb(sb);
  for (int bits : {90, 220}) {
    RootBracket ba = bracket_largest(ca, sa, bits);
    RootBracket bb = bracket_largest(cb, sb, bits);
    if (ba.hi <= bb.lo) return -1;
    if (bb.hi <= ba.lo) return 1;
    Rat lo = std::max(ba.lo, bb.lo);
    if (ca.count_above(lo) == 1 && cb.count_above(lo) == 1) {
      // Each polynomial has exactly one root above lo. A common factor with a
      // root above lo pins both largest roots to that shared root.
      IntPoly g = poly_gcd(sa, sb);
      if (g.degree() >= 1 && sturm_count_above(g, lo) >= 1) return 0;
    }
  }
  throw std::runtime_error("largest-root comparison did not converge");
}

// ---------------------------------------------------------------------------
// Minimizer search

namespace {

struct Candidate {
  std::string family;
  std::string spec;
  Graph g;
  PowerBounds pb;
  RadiusBracket br;
  bool bracketed = false;
};

}  // namespace

MinimizerResult find_minimizer(long n, int d, double tol) {
  if (n < 3) throw std::invalid_argument("order must be at least 3");
  if (d < 1 || d >= n) throw std::invalid_argument("diameter out of range");
  if (!(tol > 0))
    throw std::invalid_argument("tolerance must be positive");

  std::vector<Candidate> cands;
  auto consider = [&](std::string family, std::string spec, Graph g) {
    if (diameter(g) != d) return;
    Candidate c;
    c.family = std::move(family);
    c.spec = std::move(spec);
    c.g = std::move(g);
    cands.push_back(std::move(c));
  };
  consider("path", "path " + std::to_string(n), build_path(n));
  if (n >= 3) consider("cycle", "cycle " + std::to_string(n), build_cycle(n));
  if (n >= 5)
    consider("dagger", "dagger " + std::to_string(n - 5), build_dagger(n - 5));
  for (auto& s : enumerate_open_quipus(n)) {
    std::string str = s.str();
    consider("open", std::move(str), build_open_quipu(s));
  }
  for (auto& s : enumerate_closed_quipus(n)) {
    bool bare = true;
    for (long m : s.m) bare = bare && m == 0;
    if (bare) continue;  // identical to the cycle candidate
    std::string str = s.str();
    consider("closed", std::move(str), build_closed_quipu(s));
  }
  if (cands.empty())
    throw std::runtime_error("no candidate of order " + std::to_string(n) +
                             " has diameter " + std::to_string(d));

  for (auto& c : cands) c.pb = power_bounds(c.g, 160);
  std::vector<std::size_t> order(cands.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (cands[x].pb.estimate != cands[y].pb.estimate)
      return cands[x].pb.estimate < cands[y].pb.estimate;
    return x < y;
  });

  // Certified brackets in ascending estimate order; a candidate whose Collatz
  // lower bound clears the best certified upper bound (with safety for float
  // rounding) cannot attain the minimum and is skipped.
  double best_hi = std::numeric_limits<double>::infinity();
  for (std::size_t idx : order) {
    Candidate& c = cands[idx];
    if (c.pb.lo - 1e-9 > best_hi) continue;
    c.br = spectral_radius(c.g, tol);
    c.bracketed = true;
    best_hi = std::min(best_hi, c.br.hi);
  }

  std::vector<std::size_t> near;
  for (std::size_t i = 0; i < cands.size(); ++i)
    if (cands[i].bracketed && cands[i].br.lo <= best_hi + 4 * tol) near.push_back(i);

  std::vector<std::size_t> champs;
  if (near.size() == 1) {
    champs = near;
  } else {
    std::vector<IntPoly> phis(cands.size());
    for (std::size_t i : near) phis[i] = char_poly(cands[i].g);
    champs.push_back(near[0]);
    for (std::size_t j = 1; j < near.size(); ++j) {
      int cmp = compare_largest_roots(phis[champs[0]], phis[near[j]]);
      if (cmp > 0) {
        champs.clear();
        champs.push_back(near[j]);
      } else if (cmp == 0) {
        champs.push_back(near[j]);
      }
    }
  }

  MinimizerResult res;
  res.n = n;
  res.d = d;
  res.unique = champs.size() == 1;
  RadiusBracket tight = cands[champs[0]].br;
  for (std::size_t i : champs) {
    tight.lo = std::max(tight.lo, cands[i].br.lo);
    tight.hi = std::min(tight.hi, cands[i].br.hi);
  }
  res.rho = tight;
  for (std::size_t i : champs)
    res.argmin.push_back(make_row(cands[i].family, cands[i].spec, n, d, cands[i].br,
                                  res.unique ? "minimum" : "tie"));
  std::sort(res.argmin.begin(), res.argmin.end());
  return res;
}

ClosedQuipuSpec minimizer_prediction(long n, int d) {
  long mlo = d - (n + 1) / 2;  // arm at the antipodal junction
  long mhi = d - n / 2;
  long gap = n - d - 1;
  if (mlo < 0 || gap < 0)
    throw std::invalid_argument("diameter outside the predicted regime");
  return closed_canonical(ClosedQuipuSpec{{gap, gap}, {mhi, mlo}});
}

namespace {

// One (n, D) instance of the prediction check; shared by the single-pair
// entry point and the sweep.
void check_minimizer_prediction(long n, int d, double tol, ShardAccum& acc) {
  ++acc.scanned;
  MinimizerResult mr = find_minimizer(n, d, tol);
  ClosedQuipuSpec pred = minimizer_prediction(n, d);
  bool good = true;
  if (!mr.unique) {
    good = false;
    for (const ScanRow& r : mr.argmin) {
      ScanRow bad = r;
      bad.verdict = "minimum not unique";
      acc.bad.push_back(std::move(bad));
    }
  }
  const ScanRow& win = mr.argmin.front();
  std::string pred_spec =
      pred.m.size() == 1 && pred.m[0] == 0 ? "cycle " + std::to_string(n) : pred.str();
  if (win.spec != pred_spec) {
    good = false;
    ScanRow bad = win;
    bad.verdict = "differs from predicted " + pred_spec;
    acc.bad.push_back(std::move(bad));
  }
  // Structural consequence: the winner is unicyclic with pendent paths at
  // most D - floor(n/2), so it embeds in the urchin with that arm length;
  // carrying a cycle, it embeds in no tree (in particular no laundry).
  long arm_cap = d - n / 2;
  long max_arm = 0;
  for (long m : pred.m) max_arm = std::max(max_arm, m);
  bool unicyclic = win.family == "cycle" || win.family == "closed";
  if (!unicyclic || max_arm > arm_cap) {
    good = false;
    ScanRow bad = win;
    bad.verdict = "winner escapes the urchin embedding";
    acc.bad.push_back(std::move(bad));
  }
  if (good) {
    ++acc.hits;
    ScanRow row = win;
    row.verdict = "minimum";
    acc.rows.push_back(std::move(row));
  }
}

}  // namespace

VerificationReport verify_theorem_1_3_at(long n, int d, double tol) {
  auto t0 = Clock::now();
  VerificationReport rep;
  rep.theorem = "t1.3";
  rep.range = "n = " + std::to_string(n) + ", D = " + std::to_string(d);
  ShardAccum acc;
  check_minimizer_prediction(n, d, tol, acc);
  finish_report(rep, std::move(acc), t0);
  return rep;
}

VerificationReport verify_theorem_1_3(long n_max, double tol) {
  if (n_max < 13) throw std::invalid_argument("n_max must be at least 13");
  auto t0 = Clock::now();
  VerificationReport rep;
  rep.theorem = "t1.3";
  std::string vacuous;
  ShardAccum acc;
  for (long n = 13; n <= n_max; ++n) {
    int dlo = static_cast<int>((n + 1) / 2);
    int dhi = static_cast<int>((2 * n - 7) / 3);
    if (dlo > dhi) {
      vacuous += (vacuous.empty() ? "" : ", ") + std::to_string(n);
      continue;
    }
    for (int d = dlo; d <= dhi; ++d) check_minimizer_prediction(n, d, tol, acc);
  }
  rep.range = "minimizers for 13 <= n <= " + std::to_string(n_max) +
              ", ceil(n/2) <= D <= floor((2n-7)/3)";
  if (!vacuous.empty()) rep.range += "; vacuous n: " + vacuous;
  finish_report(rep, std::move(acc), t0);
  return rep;
}

// ---------------------------------------------------------------------------
// Window spot check

VerificationReport woo_neumaier_spotcheck(std::istream& graph6, int workers) {
  auto t0 = Clock::now();
  std::vector<Graph> graphs = ingest_graph6(graph6);
  for (const Graph& g : graphs)
    if (!g.is_connected())
      throw std::invalid_argument("disconnected graph in graph6 stream");
  ShardAccum acc = run_sharded(graphs.size(), workers, [&](std::size_t i, ShardAccum& a) {
    const Graph& g = graphs[i];
    ++a.scanned;
    long e = g.edge_count();
    // Average degree 2E/n is a lower bound on the radius; 8E^2 > 9n^2 puts it
    // above (3/2)sqrt(2) exactly in integers.
    if (8 * e * e > 9 * static_cast<long>(g.n) * g.n) return;
    PowerBounds pb = power_bounds(g, 60);
    const double theta = 2.0581710272714924;   // sqrt(2 + sqrt(5))
    const double lambda = 2.1213203435596424;  // (3/2) sqrt(2)
    if (pb.hi < theta - 1e-6 || pb.lo > lambda + 1e-6) return;
    IntPoly phi = char_poly(g);
    if (count_eigen_above_theta(phi) < 1) return;
    if (!below_threshold_exact(phi)) return;
    ++a.hits;
    ShapeClass shape = classify_shape(g);
    RadiusBracket br = spectral_radius(g);
    switch (shape.tag) {
      case ShapeTag::Dagger:
        a.rows.push_back(make_row("dagger", shape.str(), g.n, diameter(g), br, "window"));
        break;
      case ShapeTag::OpenQuipu:
      case ShapeTag::TShape:
        a.rows.push_back(make_row("open", shape.str(), g.n, diameter(g), br, "window"));
        break;
      case ShapeTag::ClosedQuipu:
        a.rows.push_back(make_row("closed", shape.str(), g.n, diameter(g), br, "window"));
        break;
      default:
        a.bad.push_back(make_row("other", to_graph6(g), g.n, diameter(g), br,
                                 "window graph outside the three families"));
        break;
    }
  });
  VerificationReport rep;
  rep.theorem = "woo-neumaier";
  rep.range = "ingested graph6 stream";
  finish_report(rep, std::move(acc), t0);
  return rep;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

json row_to_json(const ScanRow& r) {
  return json{{"family", r.family}, {"spec", r.spec},     {"n", r.n},
              {"d", r.d},           {"rho_lo", r.rho_lo}, {"rho_hi", r.rho_hi},
              {"verdict", r.verdict}};
}

std::string csv_double(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void csv_row(const ScanRow& r, std::ostream& out) {
  out << r.family << ",\"" << r.spec << "\"," << r.n << ',' << r.d << ','
      << csv_double(r.rho_lo) << ',' << csv_double(r.rho_hi) << ',' << r.verdict
      << '\n';
}

constexpr const char* kCsvHeader = "family,spec,n,d,rho_lo,rho_hi,verdict\n";

}  // namespace

void write_json(const VerificationReport& rep, std::ostream& out) {
  json rows = json::array();
  for (const ScanRow& r : rep.rows) rows.push_back(row_to_json(r));
  json bad = json::array();
  for (const ScanRow& r : rep.counterexamples) bad.push_back(row_to_json(r));
  json j{{"theorem", rep.theorem}, {"range", rep.range},
         {"scanned", rep.scanned}, {"hits", rep.hits},
         {"ok", rep.ok()},         {"rows", rows},
         {"counterexamples", bad}};
  out << j.dump(2) << '\n';
}

void write_csv(const VerificationReport& rep, std::ostream& out) {
  out << kCsvHeader;
  for (const ScanRow& r : rep.rows) csv_row(r, out);
  for (const ScanRow& r : rep.counterexamples) csv_row(r, out);
}

void write_json(const MinimizerResult& res, std::ostream& out) {
  json rows = json::array();
  for (const ScanRow& r : res.argmin) rows.push_back(row_to_json(r));
  json j{{"n", res.n},
         {"d", res.d},
         {"unique", res.unique},
         {"rho_lo", res.rho.lo},
         {"rho_hi", res.rho.hi},
         {"argmin", rows}};
  out << j.dump(2) << '\n';
}

void write_csv(const MinimizerResult& res, std::ostream& out) {
  out << kCsvHeader;
  for (const ScanRow& r : res.argmin) csv_row(r, out);
}

}  // namespace quipu
