// Generates every connected graph on 1..N vertices (N <= 9) up to isomorphism
// and writes one graph6 line per graph into <outdir>/connected_n<k>.g6.
//
// Method: level-by-level vertex augmentation. Every connected graph on n+1
// vertices arises from a connected graph on n vertices by attaching a new
// vertex to a nonempty neighbor set, so expanding every representative by
// every nonempty subset and deduplicating by a canonical code is exhaustive.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "quipu/graph.hpp"
#include "small_canon.hpp"

namespace {

using smallgraph::Canonizer;
using smallgraph::Code;
using smallgraph::CodeHash;
using smallgraph::Mask;
using smallgraph::SmallGraph;

std::string graph6_line(const SmallGraph& g) {
  quipu::Graph out(g.n);
  for (int u = 0; u < g.n; ++u)
    for (int v = u + 1; v < g.n; ++v)
      if (g.has_edge(u, v)) out.add_edge(u, v);
  return quipu::to_graph6(out);
}

}  // namespace

int main(int argc, char** argv) {
  const std::string outdir = argc > 1 ? argv[1] : "data";
  const int nmax = argc > 2 ? std::atoi(argv[2]) : 9;
  if (nmax < 1 || nmax > 9) {
    std::fprintf(stderr, "order limit must be in 1..9\n");
    return 2;
  }
  std::filesystem::create_directories(outdir);

  Canonizer canon;
  std::vector<SmallGraph> level;
  level.push_back(SmallGraph{1, {}});
  {
    std::ofstream out(outdir + "/connected_n1.g6");
    out << graph6_line(level[0]) << '\n';
  }
  std::printf("n=1: 1\n");

  for (int n = 2; n <= nmax; ++n) {
    std::vector<SmallGraph> next;
    std::unordered_set<Code, CodeHash> seen;
    for (const SmallGraph& g : level) {
      for (Mask s = 1; s < (Mask(1) << g.n); ++s) {
        SmallGraph h = g;
        h.n = g.n + 1;
        for (int v = 0; v < g.n; ++v)
          if ((s >> v) & 1) h.add_edge(g.n, v);
        if (seen.insert(canon.code(h)).second) next.push_back(h);
      }
    }
    level.swap(next);
    std::ofstream out(outdir + "/connected_n" + std::to_string(n) + ".g6");
    for (const SmallGraph& g : level) out << graph6_line(g) << '\n';
    std::printf("n=%d: %zu\n", n, level.size());
    std::fflush(stdout);
  }
  return 0;
}
