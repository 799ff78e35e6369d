#pragma once
// Concrete graph model, quipu/dagger builders, diameter, structural shape
// classification, and graph6 text-format ingestion.

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace quipu {

// Simple undirected graph with sorted adjacency lists.
struct Graph {
  int n = 0;
  std::vector<std::vector<int>> adj;

  Graph() = default;
  explicit Graph(int n0) : n(n0), adj(n0) {}

  int add_vertex();
  void add_edge(int u, int v);  // throws on loops, duplicates, out-of-range
  bool has_edge(int u, int v) const;
  // Attach a pendent path of `len` edges at `anchor`; returns the far endpoint.
  int add_path(int anchor, int len);

  int degree(int v) const { return static_cast<int>(adj[v].size()); }
  long edge_count() const;
  int max_degree() const;
  bool is_connected() const;
  bool is_tree() const { return is_connected() && edge_count() == n - 1; }
  // BFS distances from src; -1 for unreachable vertices.
  std::vector<int> bfs_dist(int src) const;
};

// Exact diameter via BFS from every vertex; throws on empty or disconnected input.
int diameter(const Graph& g);

// Open quipu P_{(k0..k_{r+1})}^{(m0..mr)}: a spine of r+1 degree-3 junctions,
// with k0/k_{r+1} pendent paths at the end junctions, pendent path m_i at
// junction i, and k_i internal vertices on the i-th spine segment. r = 0 is the
// T-shape: one junction with three pendent paths m0, k0, k1.
struct OpenQuipuSpec {
  std::vector<long> k;  // size r+2; k.front(), k.back() >= 1; interior >= 0
  std::vector<long> m;  // size r+1; each >= 1

  int r() const { return static_cast<int>(m.size()) - 1; }
  long order() const;
  bool valid() const;
  std::string str() const;  // "open k0,...,k_{r+1} / m0,...,mr"

  bool operator==(const OpenQuipuSpec& o) const = default;
  bool operator<(const OpenQuipuSpec& o) const;
};

// Closed quipu C_{(k1..kr)}^{(m1..mr)}: cycle of length r + sum(k) carrying r
// junctions; junction i has a pendent path of length m_i (absent when 0) and is
// followed by k_i internal cycle vertices.
struct ClosedQuipuSpec {
  std::vector<long> k;  // size r; each >= 0
  std::vector<long> m;  // size r; each >= 0

  int r() const { return static_cast<int>(m.size()); }
  long cycle_length() const;
  long order() const;
  bool valid() const;
  std::string str() const;  // "closed k1,...,kr / m1,...,mr"

  bool operator==(const ClosedQuipuSpec& o) const = default;
  bool operator<(const ClosedQuipuSpec& o) const;
};

// Label-canonical forms (the graph is unchanged): open specs normalize the end
// pendent pairs (m0 <= k0, mr <= k_{r+1}) and pick the lexicographically
// smaller of the tuple and its reversal; r = 0 sorts the three arms. Closed
// specs collapse pendent-free junctions into longer gaps and minimize the
// interleaved (m_i, k_i) sequence over rotations and reflection.
OpenQuipuSpec open_canonical(OpenQuipuSpec s);
ClosedQuipuSpec closed_canonical(ClosedQuipuSpec s);

Graph build_open_quipu(const OpenQuipuSpec& s);    // throws "invalid spec"
Graph build_closed_quipu(const ClosedQuipuSpec& s);
Graph build_dagger(long tail);  // star with four leaves plus a path of `tail` edges
Graph build_path(long n);       // n >= 1 vertices
Graph build_cycle(long n);      // n >= 3 vertices

// The special families: P_{m,k,r} (open) and C_{m,k,r} (closed) built from
// r copies of the (m, k) block. P with r = 1 uses the single-segment form
// P_{(m+1, k-2, m+1)}^{(m+1, m+1)} and therefore needs k >= 2.
OpenQuipuSpec spec_P_mkr(long m, long k, long r);
ClosedQuipuSpec spec_C_mkr(long m, long k, long r);
Graph build_P_mkr(long m, long k, long r);
Graph build_C_mkr(long m, long k, long r);

enum class ShapeTag { Path, Cycle, Dagger, OpenQuipu, ClosedQuipu, TShape, Other };

struct ShapeClass {
  ShapeTag tag = ShapeTag::Other;
  long param = -1;                    // order for Path/Cycle, tail for Dagger
  std::optional<OpenQuipuSpec> open;  // set for OpenQuipu and TShape
  std::optional<ClosedQuipuSpec> closed;  // set for ClosedQuipu
  std::string str() const;
};

// Structural recognition; inverts the builders up to canonical relabeling.
// Requires a connected graph.
ShapeClass classify_shape(const Graph& g);

// Vertices of the unique cycle of a connected unicyclic graph, in cyclic order.
std::vector<int> find_unique_cycle(const Graph& g);

// graph6 text format (one graph per line). Malformed lines raise
// std::runtime_error mentioning the 1-based line number.
Graph parse_graph6_line(const std::string& line, int lineno = 1);
std::vector<Graph> ingest_graph6(std::istream& in);
std::string to_graph6(const Graph& g);  // n <= 62

}  // namespace quipu
