#pragma once
// Canonical codes for small graphs (n <= 12): the maximum adjacency bitstring
// over all discrete colorings reached by individualization-refinement. Shared
// by the corpus generator tool and the enumeration cross-check tests.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace smallgraph {

constexpr int kMaxN = 12;
using Mask = std::uint16_t;
using Code = unsigned __int128;  // up to C(12,2) = 66 adjacency bits

struct SmallGraph {
  int n = 0;
  std::array<Mask, kMaxN> adj{};

  bool has_edge(int u, int v) const { return (adj[u] >> v) & 1; }
  void add_edge(int u, int v) {
    adj[u] |= Mask(1) << v;
    adj[v] |= Mask(1) << u;
  }
  int degree(int v) const { return __builtin_popcount(adj[v]); }
};

struct CodeHash {
  std::size_t operator()(Code c) const {
    std::uint64_t lo = static_cast<std::uint64_t>(c);
    std::uint64_t hi = static_cast<std::uint64_t>(c >> 64);
    return std::hash<std::uint64_t>()(lo ^ (hi * 0x9e3779b97f4a7c15ULL));
  }
};

class Canonizer {
 public:
  Code code(const SmallGraph& g) {
    g_ = &g;
    best_ = 0;
    have_best_ = false;
    std::vector<int> col(g.n, 0);
    dfs(std::move(col));
    return best_;
  }

 private:
  const SmallGraph* g_ = nullptr;
  Code best_ = 0;
  bool have_best_ = false;

  // Equitable refinement: repeatedly recolor by (color, sorted neighbor
  // colors) until the number of classes stops growing.
  void refine(std::vector<int>& col) const {
    const int n = g_->n;
    int classes = 0;
    for (int v = 0; v < n; ++v) classes = std::max(classes, col[v] + 1);
    while (true) {
      std::vector<std::pair<std::vector<int>, int>> sig(n);
      for (int v = 0; v < n; ++v) {
        std::vector<int> s;
        s.push_back(col[v]);
        for (int u = 0; u < n; ++u)
          if (g_->has_edge(v, u)) s.push_back(col[u]);
        std::sort(s.begin() + 1, s.end());
        sig[v] = {std::move(s), v};
      }
      std::vector<int> order(n);
      for (int v = 0; v < n; ++v) order[v] = v;
      std::sort(order.begin(), order.end(),
                [&](int a, int b) { return sig[a].first < sig[b].first; });
      int next = 0;
      std::vector<int> ncol(n);
      for (int i = 0; i < n; ++i) {
        if (i > 0 && sig[order[i]].first != sig[order[i - 1]].first) ++next;
        ncol[order[i]] = next;
      }
      ++next;
      col.swap(ncol);
      if (next == classes || next == n) return;
      classes = next;
    }
  }

  void dfs(std::vector<int> col) {
    refine(col);
    const int n = g_->n;
    int target = -1;
    std::vector<int> count(n + 1, 0);
    for (int v = 0; v < n; ++v) ++count[col[v]];
    for (int c = 0; c <= n; ++c)
      if (count[c] > 1) {
        target = c;
        break;
      }
    if (target < 0) {
      emit(col);
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (col[v] != target) continue;
      std::vector<int> col2(col);
      for (int u = 0; u < n; ++u)
        if (col2[u] >= target) ++col2[u];
      col2[v] = target;
      dfs(std::move(col2));
    }
  }

  void emit(const std::vector<int>& col) {
    const int n = g_->n;
    std::vector<int> at(n);  // position -> vertex
    for (int v = 0; v < n; ++v) at[col[v]] = v;
    Code c = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        c = (c << 1) | Code(g_->has_edge(at[i], at[j]) ? 1 : 0);
    if (!have_best_ || c > best_) {
      best_ = c;
      have_best_ = true;
    }
  }
};

}  // namespace smallgraph
