// Command-line front end: certified spectral radii with threshold verdicts,
// theorem-scale verification scans with deterministic reports, and CSV tables
// of the radius/sign families.
//
// Exit codes: 0 success, 1 mathematical counterexample (a verification FAIL),
// 2 usage or parse error, 3 I/O error.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "quipu/families.hpp"
#include "quipu/graph.hpp"
#include "quipu/search.hpp"
#include "quipu/spectral.hpp"

namespace {

using namespace quipu;

constexpr int kExitOk = 0;
constexpr int kExitCounterexample = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

// (3/2)sqrt(2) to double precision; table verdicts compare certified bracket
// endpoints against it (every family in the tables clears it by >= 1e-6).
constexpr double kThreshold = 2.1213203435596424;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  double tol = 1e-12;
  bool exact_mode = true;
  int workers = 1;
  std::string format = "text";
  std::string output;  // empty = stdout
};

std::string fmt17(double x) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

long parse_long(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    long v = std::stol(text, &used);
    if (used != text.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw UsageError("bad integer '" + text + "' in " + what);
  }
}

struct Range {
  long lo = 1;
  long hi = 0;  // lo > hi encodes the empty range
};

Range parse_range(const std::string& text, const std::string& flag) {
  Range r;
  auto pos = text.find("..");
  if (pos == std::string::npos) {
    r.lo = r.hi = parse_long(text, flag);
  } else {
    r.lo = parse_long(text.substr(0, pos), flag);
    r.hi = parse_long(text.substr(pos + 2), flag);
  }
  return r;
}

std::vector<long> parse_long_list(const std::string& text, const std::string& what) {
  std::vector<long> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    // strip surrounding spaces left over from token joining
    auto b = item.find_first_not_of(' ');
    auto e = item.find_last_not_of(' ');
    if (b == std::string::npos) throw UsageError("empty entry in " + what);
    out.push_back(parse_long(item.substr(b, e - b + 1), what));
  }
  if (out.empty()) throw UsageError("empty list in " + what);
  return out;
}

std::string join_words(const std::vector<std::string>& words, std::size_t from) {
  std::string out;
  for (std::size_t i = from; i < words.size(); ++i) {
    if (!out.empty()) out += ' ';
    out += words[i];
  }
  return out;
}

std::string list_str(const std::vector<long>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

// --- graph spec grammar ------------------------------------------------------
// open k0,...,k_{r+1} / m0,...,mr
// closed k1,...,kr / m1,...,mr
// dagger TAIL | cycle N | path N | g6:<line>

struct ParsedSpec {
  std::string family;
  std::string display;
  Graph g;
};

ParsedSpec parse_graph_spec(const std::vector<std::string>& words) {
  if (words.empty()) throw UsageError("missing graph spec");
  const std::string& head = words[0];
  ParsedSpec ps;
  if (head.rfind("g6:", 0) == 0) {
    if (words.size() != 1)
      throw UsageError("unexpected token '" + words[1] + "' after graph6 spec");
    std::string line = head.substr(3);
    if (line.empty()) throw UsageError("empty graph6 payload in '" + head + "'");
    try {
      ps.g = parse_graph6_line(line);
    } catch (const std::exception& e) {
      throw UsageError("bad graph6 payload '" + line + "': " + std::string(e.what()));
    }
    ps.family = "g6";
    ps.display = head;
    return ps;
  }
  if (head == "cycle" || head == "path" || head == "dagger") {
    if (words.size() != 2)
      throw UsageError("'" + head + "' takes exactly one integer argument");
    long v = parse_long(words[1], "'" + head + "' argument");
    try {
      if (head == "cycle")
        ps.g = build_cycle(v);
      else if (head == "path")
        ps.g = build_path(v);
      else
        ps.g = build_dagger(v);
    } catch (const std::exception& e) {
      throw UsageError("bad '" + head + " " + words[1] + "': " + std::string(e.what()));
    }
    ps.family = head;
    ps.display = head + ' ' + std::to_string(v);
    return ps;
  }
  if (head == "open" || head == "closed") {
    std::string rest = join_words(words, 1);
    auto slash = rest.find('/');
    if (slash == std::string::npos)
      throw UsageError("'" + head + "' spec needs the form '<segments> / <paths>'");
    if (rest.find('/', slash + 1) != std::string::npos)
      throw UsageError("more than one '/' in '" + rest + "'");
    std::vector<long> k =
        parse_long_list(rest.substr(0, slash), "'" + head + "' segment list");
    std::vector<long> m =
        parse_long_list(rest.substr(slash + 1), "'" + head + "' path list");
    try {
      if (head == "open") {
        OpenQuipuSpec s;
        s.k = k;
        s.m = m;
        ps.g = build_open_quipu(s);
      } else {
        ClosedQuipuSpec s;
        s.k = k;
        s.m = m;
        ps.g = build_closed_quipu(s);
      }
    } catch (const std::exception& e) {
      throw UsageError("bad '" + head + " " + rest + "': " + std::string(e.what()));
    }
    ps.family = head;
    ps.display = head + ' ' + list_str(k) + " / " + list_str(m);
    return ps;
  }
  throw UsageError("unknown graph family '" + head +
                   "' (expected open, closed, dagger, cycle, path, or g6:)");
}

// --- output plumbing ---------------------------------------------------------

void write_payload(const RunConfig& cfg, const std::string& payload) {
  if (cfg.output.empty()) {
    std::cout << payload;
    if (!std::cout) throw IoError("write to stdout failed");
    return;
  }
  std::ofstream out(cfg.output);
  if (!out) throw IoError("cannot open output file '" + cfg.output + "'");
  out << payload;
  out.flush();
  if (!out) throw IoError("write to '" + cfg.output + "' failed");
}

std::string row_line(const ScanRow& r) {
  std::string s = r.verdict + ": " + r.spec + " (n=" + std::to_string(r.n) +
                  ", D=" + std::to_string(r.d) + ", rho=[" + fmt17(r.rho_lo) +
                  ", " + fmt17(r.rho_hi) + "])";
  return s;
}

std::string render_report(const VerificationReport& rep, const std::string& format) {
  std::ostringstream os;
  if (format == "json") {
    write_json(rep, os);
  } else if (format == "csv") {
    write_csv(rep, os);
  } else {
    os << "theorem: " << rep.theorem << "\n";
    os << "range: " << rep.range << "\n";
    os << "scanned: " << rep.scanned << "\n";
    os << "hits: " << rep.hits << "\n";
    os << "rows: " << rep.rows.size() << "\n";
    for (const ScanRow& r : rep.rows) os << "  " << row_line(r) << "\n";
    os << "counterexamples: " << rep.counterexamples.size() << "\n";
    for (const ScanRow& r : rep.counterexamples) os << "  " << row_line(r) << "\n";
  }
  return os.str();
}

// --- rho ---------------------------------------------------------------------

int cmd_rho(const RunConfig& cfg, const std::vector<std::string>& words) {
  ParsedSpec ps = parse_graph_spec(words);
  RadiusBracket rb = spectral_radius(ps.g, cfg.tol);
  ThresholdVerdict tv = is_below_threshold(ps.g, cfg.exact_mode);
  int d = diameter(ps.g);
  const char* cert =
      tv.certificate == ThresholdCertKind::SturmExact ? "sturm-exact" : "numeric-margin";
  std::string payload;
  if (cfg.format == "json") {
    nlohmann::json j;
    j["family"] = ps.family;
    j["spec"] = ps.display;
    j["n"] = ps.g.n;
    j["d"] = d;
    j["rho_lo"] = rb.lo;
    j["rho_hi"] = rb.hi;
    j["evidence"] = evidence_name(rb.evidence);
    j["below_threshold"] = tv.below;
    j["certificate"] = cert;
    if (tv.certificate == ThresholdCertKind::NumericMargin) j["margin"] = tv.margin;
    payload = j.dump(2) + "\n";
  } else if (cfg.format == "csv") {
    payload = "family,spec,n,d,rho_lo,rho_hi,verdict\n";
    payload += ps.family + ",\"" + ps.display + "\"," + std::to_string(ps.g.n) + "," +
               std::to_string(d) + "," + fmt17(rb.lo) + "," + fmt17(rb.hi) + "," +
               (tv.below ? "below" : "above") + "\n";
  } else {
    std::ostringstream os;
    os << "spec: " << ps.display << "\n";
    os << "family: " << ps.family << "\n";
    os << "n: " << ps.g.n << "\n";
    os << "diameter: " << d << "\n";
    os << "rho: [" << fmt17(rb.lo) << ", " << fmt17(rb.hi) << "]\n";
    os << "evidence: " << evidence_name(rb.evidence) << "\n";
    os << "below_threshold: " << (tv.below ? "true" : "false") << "\n";
    os << "certificate: " << cert << "\n";
    if (tv.certificate == ThresholdCertKind::NumericMargin)
      os << "margin: " << fmt17(tv.margin) << "\n";
    payload = os.str();
  }
  write_payload(cfg, payload);
  return kExitOk;
}

// --- verify ------------------------------------------------------------------

struct VerifyArgs {
  std::string theorem;
  long nmax = 20;
  long n = 0;
  int d = 0;
  bool n_set = false;
  bool d_set = false;
  std::string g6;
};

// Raw form of the predicted minimizer spec (before canonicalization), as the
// construction writes it: gaps n-D-1 on both sides, pendent paths D-floor(n/2)
// and D-ceil(n/2).
std::string raw_prediction_str(long n, int d) {
  ClosedQuipuSpec raw;
  raw.k = {n - d - 1, n - d - 1};
  raw.m = {d - n / 2, d - (n + 1) / 2};
  return raw.str();
}

int cmd_verify(const RunConfig& cfg, const VerifyArgs& a) {
  VerificationReport rep;
  std::string summary;
  if (a.theorem != "t1.3" && (a.n_set || a.d_set))
    throw UsageError("--n/--d apply only to 'verify t1.3'");
  if (a.theorem != "woo-neumaier" && !a.g6.empty())
    throw UsageError("--g6 applies only to 'verify woo-neumaier'");
  if (a.theorem == "t1.1") {
    rep = verify_theorem_1_1(a.nmax, cfg.workers);
    summary = "verify t1.1 nmax=" + std::to_string(a.nmax);
  } else if (a.theorem == "t1.2") {
    rep = verify_theorem_1_2(a.nmax, cfg.workers);
    summary = "verify t1.2 nmax=" + std::to_string(a.nmax);
  } else if (a.theorem == "t1.3") {
    if (a.d_set && !a.n_set) throw UsageError("--d requires --n");
    if (a.n_set) {
      long n = a.n;
      long dlo = (n + 1) / 2;
      long dhi = (2 * n - 7) / 3;
      if (a.d_set) {
        if (a.d < dlo || a.d > dhi)
          throw UsageError("D=" + std::to_string(a.d) + " is outside the predicted regime " +
                           std::to_string(dlo) + " <= D <= " + std::to_string(dhi) +
                           " for n=" + std::to_string(n));
        rep = verify_theorem_1_3_at(n, a.d, cfg.tol);
        summary = "verify t1.3 n=" + std::to_string(n) + " D=" + std::to_string(a.d) +
                  ": winner " + raw_prediction_str(n, a.d);
      } else {
        rep.theorem = "t1.3";
        rep.range = "n = " + std::to_string(n) + ", " + std::to_string(dlo) +
                    " <= D <= " + std::to_string(dhi);
        if (dlo > dhi) rep.range += " (vacuous)";
        for (long d = dlo; d <= dhi; ++d) {
          VerificationReport one = verify_theorem_1_3_at(n, static_cast<int>(d), cfg.tol);
          rep.scanned += one.scanned;
          rep.hits += one.hits;
          rep.rows.insert(rep.rows.end(), one.rows.begin(), one.rows.end());
          rep.counterexamples.insert(rep.counterexamples.end(), one.counterexamples.begin(),
                                     one.counterexamples.end());
          rep.wall_seconds += one.wall_seconds;
        }
        summary = "verify t1.3 n=" + std::to_string(n) +
                  (dlo > dhi ? " (vacuous diameter range)" : "");
      }
    } else {
      rep = verify_theorem_1_3(a.nmax, cfg.tol);
      summary = "verify t1.3 nmax=" + std::to_string(a.nmax);
    }
  } else {  // woo-neumaier
    if (a.g6.empty()) throw UsageError("'verify woo-neumaier' requires --g6 FILE");
    std::ifstream in(a.g6);
    if (!in) throw IoError("cannot open graph6 file '" + a.g6 + "'");
    rep = woo_neumaier_spotcheck(in, cfg.workers);
    if (in.bad()) throw IoError("read error on graph6 file '" + a.g6 + "'");
    summary = "verify woo-neumaier g6=" + a.g6;
  }
  write_payload(cfg, render_report(rep, cfg.format));
  summary += ": scanned=" + std::to_string(rep.scanned) +
             " hits=" + std::to_string(rep.hits) +
             " counterexamples=" + std::to_string(rep.counterexamples.size()) +
             (rep.ok() ? " PASS" : " FAIL");
  std::cout << summary << "\n";
  return rep.ok() ? kExitOk : kExitCounterexample;
}

// --- table -------------------------------------------------------------------

struct TableArgs {
  std::string family;
  std::string m = "";
  std::string mp = "";
  std::string k = "";
  bool at_threshold = false;
  double lambda = 2.2;
};

int cmd_table(const RunConfig& cfg, const TableArgs& a) {
  std::ostringstream os;
  if (a.family == "rho_mk") {
    Range rm = parse_range(a.m.empty() ? "1..5" : a.m, "--m");
    Range rk = parse_range(a.k.empty() ? "1..14" : a.k, "--k");
    os << "m,k,rho_lo,rho_hi,below_threshold\n";
    for (long m = rm.lo; m <= rm.hi; ++m)
      for (long k = rk.lo; k <= rk.hi; ++k) {
        RadiusBracket b = rho_mk(m, k, cfg.tol);
        os << m << ',' << k << ',' << fmt17(b.lo) << ',' << fmt17(b.hi) << ','
           << (b.hi < kThreshold ? "true" : "false") << "\n";
      }
  } else if (a.family == "rho_limit") {
    Range rm = parse_range(a.m.empty() ? "1..8" : a.m, "--m");
    os << "m,rho_lo,rho_hi,below_threshold\n";
    for (long m = rm.lo; m <= rm.hi; ++m) {
      RadiusBracket b = rho_limit(m, cfg.tol);
      os << m << ',' << fmt17(b.lo) << ',' << fmt17(b.hi) << ','
         << (b.hi < kThreshold ? "true" : "false") << "\n";
    }
  } else {  // f_sign
    Range rm = parse_range(a.m.empty() ? "1..3" : a.m, "--m");
    Range rmp = parse_range(a.mp.empty() ? "1..3" : a.mp, "--mp");
    Range rk = parse_range(a.k.empty() ? "1..6" : a.k, "--k");
    os << "m,mp,k,f,g,h\n";
    for (long m = rm.lo; m <= rm.hi; ++m)
      for (long mp = rmp.lo; mp <= rmp.hi; ++mp)
        for (long k = rk.lo; k <= rk.hi; ++k) {
          if (a.at_threshold) {
            os << m << ',' << mp << ',' << k << ','
               << eval_f_at_threshold(m, mp, k).get_str() << ','
               << eval_g_at_threshold(m, mp, k).get_str() << ','
               << eval_h_at_threshold(m, mp, k).get_str() << "\n";
          } else {
            LambdaPoint pt(a.lambda);
            os << m << ',' << mp << ',' << k << ','
               << fmt17(static_cast<double>(eval_f(m, mp, k, pt))) << ','
               << fmt17(static_cast<double>(eval_g(m, mp, k, pt))) << ','
               << fmt17(static_cast<double>(eval_h(m, mp, k, pt))) << "\n";
          }
        }
  }
  write_payload(cfg, os.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certified spectral radii and diameter-extremality scans for quipu graphs"};
  app.set_config("--config", "", "read options from a config file (flags win)");
  RunConfig cfg;
  app.add_option("--tol", cfg.tol, "radius bracket tolerance, in (0, 1e-4]")
      ->capture_default_str();
  app.add_flag("--exact,!--no-exact", cfg.exact_mode,
               "certify threshold verdicts with exact root counts");
  app.add_option("--workers", cfg.workers, "worker thread count (>= 1)")
      ->envname("QUIPU_WORKERS")
      ->capture_default_str();
  app.add_option("--format", cfg.format, "report format")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  app.add_option("--output", cfg.output, "write the report/table to this file");
  app.require_subcommand(1);

  auto* rho = app.add_subcommand("rho", "certified spectral radius and threshold verdict");
  rho->fallthrough();
  std::vector<std::string> spec_words;
  rho->add_option("spec", spec_words,
                  "graph spec: open K/M, closed K/M, dagger T, cycle N, path N, g6:LINE")
      ->required();

  auto* verify = app.add_subcommand("verify", "run a theorem-scale verification scan");
  verify->fallthrough();
  VerifyArgs va;
  verify->add_option("theorem", va.theorem, "one of t1.1, t1.2, t1.3, woo-neumaier")
      ->required()
      ->check(CLI::IsMember({"t1.1", "t1.2", "t1.3", "woo-neumaier"}));
  verify->add_option("--nmax", va.nmax, "scan orders up to this bound")
      ->capture_default_str();
  auto* opt_n = verify->add_option("--n", va.n, "single order (t1.3 only)");
  auto* opt_d = verify->add_option("--d", va.d, "single diameter (t1.3 only, with --n)");
  verify->add_option("--g6", va.g6, "graph6 input file (woo-neumaier only)");

  auto* table = app.add_subcommand("table", "emit a CSV table of a parameter family");
  table->fallthrough();
  TableArgs ta;
  table->add_option("family", ta.family, "one of rho_mk, rho_limit, f_sign")
      ->required()
      ->check(CLI::IsMember({"rho_mk", "rho_limit", "f_sign"}));
  table->add_option("--m", ta.m, "range a..b (or single a)");
  table->add_option("--mp", ta.mp, "range for the second path length (f_sign)");
  table->add_option("--k", ta.k, "range for the segment length");
  table->add_flag("--at-threshold", ta.at_threshold,
                  "evaluate f/g/h exactly at (3/2)sqrt(2)");
  table->add_option("--lambda", ta.lambda, "evaluation point when not at the threshold")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  va.n_set = opt_n->count() > 0;
  va.d_set = opt_d->count() > 0;

  auto t0 = std::chrono::steady_clock::now();
  int code = kExitOk;
  try {
    if (!(cfg.tol > 0.0 && cfg.tol <= 1e-4))
      throw UsageError("--tol must lie in (0, 1e-4], got " + fmt17(cfg.tol));
    if (cfg.workers < 1)
      throw UsageError("--workers must be >= 1, got " + std::to_string(cfg.workers));
    if (app.got_subcommand(rho))
      code = cmd_rho(cfg, spec_words);
    else if (app.got_subcommand(verify))
      code = cmd_verify(cfg, va);
    else
      code = cmd_table(cfg, ta);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("# wall %.2fs\n", wall);
  return code;
}
