#include "quipu/graph.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <numeric>
#include <sstream>

namespace quipu {

int Graph::add_vertex() {
  adj.emplace_back();
  return n++;
}

void Graph::add_edge(int u, int v) {
  if (u < 0 || v < 0 || u >= n || v >= n) throw std::invalid_argument("edge endpoint out of range");
  if (u == v) throw std::invalid_argument("loops not allowed");
  auto& au = adj[u];
  auto it = std::lower_bound(au.begin(), au.end(), v);
  if (it != au.end() && *it == v) throw std::invalid_argument("duplicate edge");
  au.insert(it, v);
  auto& av = adj[v];
  av.insert(std::lower_bound(av.begin(), av.end(), u), u);
}

bool Graph::has_edge(int u, int v) const {
  const auto& au = adj[u];
  return std::binary_search(au.begin(), au.end(), v);
}

int Graph::add_path(int anchor, int len) {
  int cur = anchor;
  for (int i = 0; i < len; ++i) {
    int w = add_vertex();
    add_edge(cur, w);
    cur = w;
  }
  return cur;
}

long Graph::edge_count() const {
  long tot = 0;
  for (const auto& a : adj) tot += static_cast<long>(a.size());
  return tot / 2;
}

int Graph::max_degree() const {
  int d = 0;
  for (const auto& a : adj) d = std::max(d, static_cast<int>(a.size()));
  return d;
}

std::vector<int> Graph::bfs_dist(int src) const {
  std::vector<int> dist(n, -1);
  std::deque<int> q{src};
  dist[src] = 0;
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (int v : adj[u])
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        q.push_back(v);
      }
  }
  return dist;
}

bool Graph::is_connected() const {
  if (n == 0) return false;
  auto d = bfs_dist(0);
  return std::all_of(d.begin(), d.end(), [](int x) { return x >= 0; });
}

int diameter(const Graph& g) {
  if (g.n == 0) throw std::invalid_argument("diameter of empty graph");
  int best = 0;
  for (int s = 0; s < g.n; ++s) {
    auto d = g.bfs_dist(s);
    for (int x : d) {
      if (x < 0) throw std::invalid_argument("diameter of disconnected graph");
      best = std::max(best, x);
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Specs

namespace {

std::string join_longs(const std::vector<long>& v) {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ",";
    os << v[i];
  }
  return os.str();
}

}  // namespace

long OpenQuipuSpec::order() const {
  long tot = r() + 1;
  for (long x : k) tot += x;
  for (long x : m) tot += x;
  return tot;
}

bool OpenQuipuSpec::valid() const {
  if (m.empty() || k.size() != m.size() + 1) return false;
  if (k.front() < 1 || k.back() < 1) return false;
  for (size_t i = 1; i + 1 < k.size(); ++i)
    if (k[i] < 0) return false;
  for (long x : m)
    if (x < 1) return false;
  return true;
}

std::string OpenQuipuSpec::str() const {
  return "open " + join_longs(k) + " / " + join_longs(m);
}

bool OpenQuipuSpec::operator<(const OpenQuipuSpec& o) const {
  if (k != o.k) return k < o.k;
  return m < o.m;
}

long ClosedQuipuSpec::cycle_length() const {
  return std::accumulate(k.begin(), k.end(), static_cast<long>(r()));
}

long ClosedQuipuSpec::order() const {
  return cycle_length() + std::accumulate(m.begin(), m.end(), 0L);
}

bool ClosedQuipuSpec::valid() const {
  if (m.empty() || k.size() != m.size()) return false;
  for (long x : k)
    if (x < 0) return false;
  for (long x : m)
    if (x < 0) return false;
  return cycle_length() >= 3;
}

std::string ClosedQuipuSpec::str() const {
  return "closed " + join_longs(k) + " / " + join_longs(m);
}

bool ClosedQuipuSpec::operator<(const ClosedQuipuSpec& o) const {
  if (k != o.k) return k < o.k;
  return m < o.m;
}

OpenQuipuSpec open_canonical(OpenQuipuSpec s) {
  if (!s.valid()) throw std::invalid_argument("invalid spec");
  int r = s.r();
  if (r == 0) {
    std::vector<long> arms{s.k[0], s.k[1], s.m[0]};
    std::sort(arms.begin(), arms.end());
    return OpenQuipuSpec{{arms[1], arms[2]}, {arms[0]}};
  }
  if (s.m.front() > s.k.front()) std::swap(s.m.front(), s.k.front());
  if (s.m.back() > s.k.back()) std::swap(s.m.back(), s.k.back());
  OpenQuipuSpec rev;
  rev.k.assign(s.k.rbegin(), s.k.rend());
  rev.m.assign(s.m.rbegin(), s.m.rend());
  return std::min(s, rev);
}

ClosedQuipuSpec closed_canonical(ClosedQuipuSpec s) {
  if (!s.valid()) throw std::invalid_argument("invalid spec");
  std::vector<long> ks = s.k, ms = s.m;
  // Merge pendent-free junctions into the preceding gap.
  bool changed = true;
  while (changed && ks.size() > 1) {
    changed = false;
    for (size_t i = 0; i < ms.size(); ++i) {
      if (ms[i] == 0) {
        size_t j = (i + ms.size() - 1) % ms.size();
        ks[j] += ks[i] + 1;
        ks.erase(ks.begin() + static_cast<long>(i));
        ms.erase(ms.begin() + static_cast<long>(i));
        changed = true;
        break;
      }
    }
  }
  size_t r = ks.size();
  if (r == 1 && ms[0] == 0) return ClosedQuipuSpec{{ks[0]}, {0}};

  using Pair = std::pair<long, long>;  // (m_i, k_i)
  std::vector<Pair> seq(r);
  for (size_t i = 0; i < r; ++i) seq[i] = {ms[i], ks[i]};
  // Reflection: reverse the m order; gaps reverse and shift by one junction.
  std::vector<Pair> refl(r);
  {
    std::vector<long> mr(ms.rbegin(), ms.rend()), kr(ks.rbegin(), ks.rend());
    std::rotate(kr.begin(), kr.begin() + 1, kr.end());
    for (size_t i = 0; i < r; ++i) refl[i] = {mr[i], kr[i]};
  }
  std::vector<Pair> best;
  for (const auto& base : {seq, refl}) {
    for (size_t rot = 0; rot < r; ++rot) {
      std::vector<Pair> cand(base.begin() + static_cast<long>(rot), base.end());
      cand.insert(cand.end(), base.begin(), base.begin() + static_cast<long>(rot));
      if (best.empty() || cand < best) best = cand;
    }
  }
  ClosedQuipuSpec out;
  for (const auto& [mi, ki] : best) {
    out.m.push_back(mi);
    out.k.push_back(ki);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Builders

Graph build_open_quipu(const OpenQuipuSpec& s) {
  if (!s.valid()) throw std::invalid_argument("invalid spec");
  int r = s.r();
  Graph g(r + 1);  // junctions 0..r
  for (int i = 0; i < r; ++i) {
    // spine segment between junctions i and i+1 with k[i+1] internal vertices
    int prev = i;
    for (long t = 0; t < s.k[i + 1]; ++t) prev = g.add_path(prev, 1);
    g.add_edge(prev, i + 1);
  }
  g.add_path(0, static_cast<int>(s.k.front()));
  g.add_path(0, static_cast<int>(s.m.front()));
  for (int i = 1; i < r; ++i) g.add_path(i, static_cast<int>(s.m[i]));
  if (r >= 1) g.add_path(r, static_cast<int>(s.m.back()));
  g.add_path(r, static_cast<int>(s.k.back()));
  return g;
}

Graph build_closed_quipu(const ClosedQuipuSpec& s) {
  if (!s.valid()) throw std::invalid_argument("invalid spec");
  long len = s.cycle_length();
  Graph g(static_cast<int>(len));
  for (long i = 0; i < len; ++i) g.add_edge(static_cast<int>(i), static_cast<int>((i + 1) % len));
  long pos = 0;
  for (int i = 0; i < s.r(); ++i) {
    g.add_path(static_cast<int>(pos), static_cast<int>(s.m[i]));
    pos += s.k[i] + 1;
  }
  return g;
}

Graph build_dagger(long tail) {
  if (tail < 0) throw std::invalid_argument("invalid spec");
  Graph g(5);
  for (int i = 1; i < 5; ++i) g.add_edge(0, i);
  g.add_path(1, static_cast<int>(tail));
  return g;
}

Graph build_path(long n) {
  if (n < 1) throw std::invalid_argument("invalid spec");
  Graph g(1);
  g.add_path(0, static_cast<int>(n - 1));
  return g;
}

Graph build_cycle(long n) {
  if (n < 3) throw std::invalid_argument("invalid spec");
  Graph g(static_cast<int>(n));
  for (long i = 0; i < n; ++i) g.add_edge(static_cast<int>(i), static_cast<int>((i + 1) % n));
  return g;
}

OpenQuipuSpec spec_P_mkr(long m, long k, long r) {
  if (m < 1 || r < 1 || k < 1 || (r == 1 && k < 2))
    throw std::invalid_argument("invalid spec");
  if (r == 1) return OpenQuipuSpec{{m + 1, k - 2, m + 1}, {m + 1, m + 1}};
  OpenQuipuSpec s;
  s.k.push_back(m + 1);
  s.k.push_back(k - 1);
  for (long i = 0; i < r - 2; ++i) s.k.push_back(k);
  s.k.push_back(k - 1);
  s.k.push_back(m + 1);
  s.m.push_back(m + 1);
  for (long i = 0; i < r - 1; ++i) s.m.push_back(m);
  s.m.push_back(m + 1);
  return s;
}

ClosedQuipuSpec spec_C_mkr(long m, long k, long r) {
  if (m < 0 || r < 1 || k < 0) throw std::invalid_argument("invalid spec");
  ClosedQuipuSpec s;
  s.k.assign(r, k);
  s.m.assign(r, m);
  return s;
}

Graph build_P_mkr(long m, long k, long r) { return build_open_quipu(spec_P_mkr(m, k, r)); }
Graph build_C_mkr(long m, long k, long r) { return build_closed_quipu(spec_C_mkr(m, k, r)); }

// ---------------------------------------------------------------------------
// Shape classification

std::string ShapeClass::str() const {
  switch (tag) {
    case ShapeTag::Path:
      return "path " + std::to_string(param);
    case ShapeTag::Cycle:
      return "cycle " + std::to_string(param);
    case ShapeTag::Dagger:
      return "dagger " + std::to_string(param);
    case ShapeTag::OpenQuipu:
      return open->str();
    case ShapeTag::TShape:
      return "t-shape " + open->str();
    case ShapeTag::ClosedQuipu:
      return closed->str();
    case ShapeTag::Other:
      return "other";
  }
  return "other";
}

std::vector<int> find_unique_cycle(const Graph& g) {
  if (!g.is_connected() || g.edge_count() != g.n)
    throw std::invalid_argument("not a connected unicyclic graph");
  // Peel leaves until only the cycle remains.
  std::vector<int> deg(g.n);
  for (int v = 0; v < g.n; ++v) deg[v] = g.degree(v);
  std::deque<int> q;
  for (int v = 0; v < g.n; ++v)
    if (deg[v] == 1) q.push_back(v);
  std::vector<bool> removed(g.n, false);
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    removed[u] = true;
    for (int w : g.adj[u])
      if (!removed[w] && --deg[w] == 1) q.push_back(w);
  }
  std::vector<int> cyc;
  int start = -1;
  for (int v = 0; v < g.n; ++v)
    if (!removed[v]) {
      start = v;
      break;
    }
  int prev = -1, cur = start;
  do {
    cyc.push_back(cur);
    int nxt = -1;
    for (int w : g.adj[cur])
      if (!removed[w] && w != prev) {
        nxt = w;
        break;
      }
    prev = cur;
    cur = nxt;
  } while (cur != start);
  return cyc;
}

namespace {

struct Walk {
  bool to_leaf;   // else ended at another junction
  int endpoint;   // leaf vertex or junction reached
  long length;    // edges to the leaf, or internal vertices between junctions
};

// Follow the path leaving `junction` through `first`, across degree-2 vertices,
// until a leaf or a degree>=3 vertex.
Walk follow(const Graph& g, int junction, int first) {
  int prev = junction, cur = first;
  long steps = 0;  // degree-2 vertices passed
  while (g.degree(cur) == 2) {
    int nxt = g.adj[cur][0] == prev ? g.adj[cur][1] : g.adj[cur][0];
    prev = cur;
    cur = nxt;
    ++steps;
  }
  if (g.degree(cur) == 1) return {true, cur, steps + 1};  // pendent length in edges
  return {false, cur, steps};                             // internal vertex count
}

ShapeClass classify_tree_deg3(const Graph& g) {
  std::vector<int> junctions;
  for (int v = 0; v < g.n; ++v)
    if (g.degree(v) == 3) junctions.push_back(v);

  std::vector<std::vector<Walk>> walks(junctions.size());
  std::vector<int> jindex(g.n, -1);
  for (size_t i = 0; i < junctions.size(); ++i) jindex[junctions[i]] = static_cast<int>(i);

  for (size_t i = 0; i < junctions.size(); ++i) {
    int internal = 0;
    for (int nb : g.adj[junctions[i]]) {
      Walk w = follow(g, junctions[i], nb);
      if (!w.to_leaf) ++internal;
      walks[i].push_back(w);
    }
    if (internal > 2) return {};  // junction tree not a path
  }

  if (junctions.size() == 1) {
    std::vector<long> arms;
    for (const Walk& w : walks[0]) arms.push_back(w.length);
    std::sort(arms.begin(), arms.end());
    ShapeClass out;
    out.tag = ShapeTag::TShape;
    out.open = OpenQuipuSpec{{arms[1], arms[2]}, {arms[0]}};
    return out;
  }

  // Order junctions along the spine starting from an end (exactly one internal walk).
  int start = -1;
  for (size_t i = 0; i < junctions.size(); ++i) {
    int internal = 0;
    for (const Walk& w : walks[i])
      if (!w.to_leaf) ++internal;
    if (internal == 1) {
      start = static_cast<int>(i);
      break;
    }
  }
  if (start < 0) return {};  // no end junction: impossible in a tree, defensive

  std::vector<int> order;          // junction indices along the spine
  std::vector<long> gaps;          // internal vertex counts between consecutive junctions
  int cur = start, prevj = -1;
  for (;;) {
    order.push_back(cur);
    int nxt = -1;
    long gap = 0;
    for (const Walk& w : walks[cur])
      if (!w.to_leaf && jindex[w.endpoint] != prevj) {
        nxt = jindex[w.endpoint];
        gap = w.length;
      }
    if (nxt < 0) break;
    gaps.push_back(gap);
    prevj = cur;
    cur = nxt;
  }
  if (order.size() != junctions.size()) return {};  // spine did not cover all junctions

  // Collect pendent lengths: ends carry two, interior exactly one.
  OpenQuipuSpec s;
  size_t rr = order.size() - 1;
  for (size_t pos = 0; pos <= rr; ++pos) {
    std::vector<long> pend;
    for (const Walk& w : walks[order[pos]])
      if (w.to_leaf) pend.push_back(w.length);
    bool end = pos == 0 || pos == rr;
    if (end && pend.size() != 2) return {};
    if (!end && pend.size() != 1) return {};
    if (pos == 0) {
      std::sort(pend.begin(), pend.end());
      s.m.push_back(pend[0]);
      s.k.push_back(pend[1]);
    } else if (pos == rr) {
      std::sort(pend.begin(), pend.end());
      s.m.push_back(pend[0]);
      for (long gp : gaps) s.k.push_back(gp);
      s.k.push_back(pend[1]);
    } else {
      s.m.push_back(pend[0]);
    }
  }
  ShapeClass out;
  out.tag = ShapeTag::OpenQuipu;
  out.open = open_canonical(s);
  return out;
}

ShapeClass classify_tree_deg4(const Graph& g) {
  int center = -1;
  for (int v = 0; v < g.n; ++v) {
    if (g.degree(v) == 4) {
      if (center >= 0) return {};
      center = v;
    } else if (g.degree(v) > 2) {
      return {};
    }
  }
  std::vector<long> arms;
  for (int nb : g.adj[center]) {
    Walk w = follow(g, center, nb);
    if (!w.to_leaf) return {};  // defensive; no other high-degree vertex exists
    arms.push_back(w.length);
  }
  std::sort(arms.begin(), arms.end());
  if (arms[0] == 1 && arms[1] == 1 && arms[2] == 1) {
    ShapeClass out;
    out.tag = ShapeTag::Dagger;
    out.param = arms[3] - 1;
    return out;
  }
  return {};
}

ShapeClass classify_unicyclic(const Graph& g) {
  std::vector<int> cyc = find_unique_cycle(g);
  std::vector<bool> on_cycle(g.n, false);
  for (int v : cyc) on_cycle[v] = true;
  for (int v = 0; v < g.n; ++v)
    if (!on_cycle[v] && g.degree(v) > 2) return {};  // branch vertex off the cycle

  std::vector<long> ms, ks;
  long gap = 0;
  long first_gap = -1;
  for (int v : cyc) {
    int off = -1;
    for (int w : g.adj[v])
      if (!on_cycle[w]) off = w;
    if (off < 0) {
      ++gap;
      continue;
    }
    Walk w = follow(g, v, off);
    if (!w.to_leaf) return {};  // defensive
    if (first_gap < 0) {
      first_gap = gap;  // vertices before the first junction wrap around
    } else {
      ks.push_back(gap);
    }
    ms.push_back(w.length);
    gap = 0;
  }
  if (ms.empty()) return {};  // bare cycle handled before dispatch
  ks.push_back(gap + first_gap);
  ShapeClass out;
  out.tag = ShapeTag::ClosedQuipu;
  ClosedQuipuSpec s;
  s.k = ks;
  s.m = ms;
  out.closed = closed_canonical(s);
  return out;
}

}  // namespace

ShapeClass classify_shape(const Graph& g) {
  if (g.n == 0 || !g.is_connected()) throw std::invalid_argument("classify requires a connected graph");
  long e = g.edge_count();
  int dmax = g.max_degree();
  if (dmax <= 2) {
    if (e == g.n - 1) {
      ShapeClass out;
      out.tag = ShapeTag::Path;
      out.param = g.n;
      return out;
    }
    // connected, max degree 2, not a tree: the cycle
    ShapeClass out;
    out.tag = ShapeTag::Cycle;
    out.param = g.n;
    return out;
  }
  if (e == g.n - 1) {
    if (dmax == 3) return classify_tree_deg3(g);
    if (dmax == 4) return classify_tree_deg4(g);
    return {};
  }
  if (e == g.n && dmax == 3) return classify_unicyclic(g);
  return {};
}

// ---------------------------------------------------------------------------
// graph6

namespace {

[[noreturn]] void g6_fail(int lineno, const std::string& what) {
  throw std::runtime_error("line " + std::to_string(lineno) + ": " + what);
}

}  // namespace

Graph parse_graph6_line(const std::string& raw, int lineno) {
  std::string line = raw;
  if (line.rfind(">>graph6<<", 0) == 0) line = line.substr(10);
  if (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.pop_back();
  if (line.empty()) g6_fail(lineno, "empty graph6 line");
  for (char ch : line)
    if (ch < 63 || ch > 126) g6_fail(lineno, "invalid graph6 character");

  size_t pos = 0;
  long n;
  if (line[0] != '~') {
    n = line[0] - 63;
    pos = 1;
  } else {
    if (line.size() >= 2 && line[1] == '~') g6_fail(lineno, "graph6 order too large");
    if (line.size() < 4) g6_fail(lineno, "truncated graph6 order");
    n = 0;
    for (size_t i = 1; i <= 3; ++i) n = (n << 6) | (line[i] - 63);
    pos = 4;
  }
  long bits = n * (n - 1) / 2;
  size_t need = static_cast<size_t>((bits + 5) / 6);
  if (line.size() - pos != need) g6_fail(lineno, "graph6 length mismatch");

  Graph g(static_cast<int>(n));
  long bit = 0;
  for (long j = 1; j < n; ++j)
    for (long i = 0; i < j; ++i, ++bit) {
      int byte = line[pos + static_cast<size_t>(bit / 6)] - 63;
      if ((byte >> (5 - bit % 6)) & 1) g.add_edge(static_cast<int>(i), static_cast<int>(j));
    }
  return g;
}

std::vector<Graph> ingest_graph6(std::istream& in) {
  std::vector<Graph> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    out.push_back(parse_graph6_line(line, lineno));
  }
  return out;
}

std::string to_graph6(const Graph& g) {
  if (g.n > 62) throw std::invalid_argument("graph6 writer supports n <= 62");
  std::string out;
  out.push_back(static_cast<char>(g.n + 63));
  int acc = 0, nb = 0;
  for (int j = 1; j < g.n; ++j)
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
      if (++nb == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = 0;
        nb = 0;
      }
    }
  if (nb > 0) out.push_back(static_cast<char>((acc << (6 - nb)) + 63));
  return out;
}

}  // namespace quipu
