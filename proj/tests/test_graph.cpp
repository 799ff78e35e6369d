#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "quipu/graph.hpp"

using namespace quipu;

namespace {

std::vector<int> degree_sequence(const Graph& g) {
  std::vector<int> d;
  for (int v = 0; v < g.n; ++v) d.push_back(g.degree(v));
  std::sort(d.begin(), d.end());
  return d;
}

int floyd_warshall_diameter(const Graph& g) {
  const int INF = 1 << 20;
  std::vector<std::vector<int>> d(g.n, std::vector<int>(g.n, INF));
  for (int v = 0; v < g.n; ++v) d[v][v] = 0;
  for (int v = 0; v < g.n; ++v)
    for (int w : g.adj[v]) d[v][w] = 1;
  for (int k = 0; k < g.n; ++k)
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j)
        d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  int best = 0;
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) best = std::max(best, d[i][j]);
  return best;
}

Graph petersen() {
  Graph g(10);
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(i, i + 5);
    g.add_edge(5 + i, 5 + (i + 2) % 5);
  }
  return g;
}

OpenQuipuSpec random_open_spec(std::mt19937& rng) {
  std::uniform_int_distribution<int> rd(0, 3), pend(1, 5), inner(0, 5);
  int r = rd(rng);
  OpenQuipuSpec s;
  s.k.push_back(pend(rng));
  for (int i = 0; i < r; ++i) s.k.push_back(inner(rng));
  s.k.push_back(pend(rng));
  for (int i = 0; i <= r; ++i) s.m.push_back(pend(rng));
  return s;
}

ClosedQuipuSpec random_closed_spec(std::mt19937& rng) {
  std::uniform_int_distribution<int> rd(1, 4), gap(0, 4), pend(0, 4);
  ClosedQuipuSpec s;
  int r = rd(rng);
  for (int i = 0; i < r; ++i) {
    s.k.push_back(gap(rng));
    s.m.push_back(pend(rng));
  }
  if (s.cycle_length() < 3) s.k[0] += 3 - s.cycle_length();
  return s;
}

}  // namespace

TEST_CASE("open quipu builder on small reference shapes") {
  // H-shape: two junctions, all four pendent paths of length 1.
  Graph h = build_open_quipu({{1, 0, 1}, {1, 1}});
  CHECK(h.n == 6);
  CHECK(h.edge_count() == 5);
  CHECK(h.is_tree());
  CHECK(degree_sequence(h) == std::vector<int>{1, 1, 1, 1, 3, 3});

  // Equality-family member with m = 4: n = 14 and 3D = 2n - 4.
  Graph eq = build_open_quipu({{1, 2, 4}, {1, 4}});
  CHECK(eq.n == 14);
  CHECK(eq.is_tree());
  CHECK(diameter(eq) == 8);
  CHECK(3 * diameter(eq) == 2 * eq.n - 4);

  // r = 0 T-shape with arms 1, 2, 3.
  Graph t = build_open_quipu({{2, 3}, {1}});
  CHECK(t.n == 7);
  CHECK(t.max_degree() == 3);
  CHECK(classify_shape(t).tag == ShapeTag::TShape);

  CHECK_THROWS_AS(build_open_quipu({{0, 1}, {1}}), std::invalid_argument);
  CHECK_THROWS_AS(build_open_quipu({{1, 1}, {0}}), std::invalid_argument);
  CHECK_THROWS_AS(build_open_quipu({{1, 1, 1}, {1}}), std::invalid_argument);
}

TEST_CASE("closed quipu builder on small reference shapes") {
  Graph c14 = build_closed_quipu({{6, 6}, {0, 0}});
  CHECK(c14.n == 14);
  CHECK(c14.edge_count() == 14);
  CHECK(classify_shape(c14).tag == ShapeTag::Cycle);
  CHECK(diameter(c14) == 7);

  Graph g17 = build_closed_quipu({{7, 7}, {1, 0}});
  CHECK(g17.n == 17);
  CHECK(g17.edge_count() == 17);
  CHECK(diameter(g17) == 9);

  Graph g10 = build_closed_quipu({{7}, {2}});
  CHECK(g10.n == 10);
  CHECK(diameter(g10) == 6);

  CHECK_THROWS_AS(build_closed_quipu({{0}, {5}}), std::invalid_argument);  // 1-cycle
  CHECK_THROWS_AS(build_closed_quipu({{1, 1}, {1}}), std::invalid_argument);
}

TEST_CASE("dagger builder") {
  Graph s5 = build_dagger(0);
  CHECK(s5.n == 5);
  CHECK(degree_sequence(s5) == std::vector<int>{1, 1, 1, 1, 4});

  Graph d1 = build_dagger(1);
  CHECK(d1.n == 6);
  CHECK(d1.max_degree() == 4);

  for (long tail : {0L, 1L, 3L, 7L}) {
    ShapeClass c = classify_shape(build_dagger(tail));
    CHECK(c.tag == ShapeTag::Dagger);
    CHECK(c.param == tail);
  }
}

TEST_CASE("diameter on reference families") {
  CHECK(diameter(build_path(5)) == 4);
  CHECK(diameter(build_cycle(14)) == 7);
  // Urchin: r junctions on an r-cycle, each with a pendent path of length m.
  for (int r = 3; r <= 6; ++r)
    for (long m = 1; m <= 3; ++m) {
      ClosedQuipuSpec s;
      s.k.assign(r, 0);
      s.m.assign(r, m);
      CHECK(diameter(build_closed_quipu(s)) == 2 * m + r / 2);
    }
  Graph two = build_path(2);
  Graph disconnected(4);
  disconnected.add_edge(0, 1);
  disconnected.add_edge(2, 3);
  CHECK(diameter(two) == 1);
  CHECK_THROWS_AS(diameter(disconnected), std::invalid_argument);
}

TEST_CASE("shape classification reference cases") {
  CHECK(classify_shape(build_cycle(9)).tag == ShapeTag::Cycle);
  CHECK(classify_shape(build_cycle(9)).param == 9);
  CHECK(classify_shape(build_path(1)).tag == ShapeTag::Path);
  CHECK(classify_shape(build_path(7)).tag == ShapeTag::Path);

  OpenQuipuSpec s{{2, 1, 2}, {2, 2}};
  ShapeClass c = classify_shape(build_open_quipu(s));
  CHECK(c.tag == ShapeTag::OpenQuipu);
  CHECK(*c.open == open_canonical(s));
  CHECK(c.str() == "open 2,1,2 / 2,2");

  CHECK(classify_shape(petersen()).tag == ShapeTag::Other);

  // Star on five+ leaves and a plus-shape are not daggers.
  Graph star6(7);
  for (int i = 1; i < 7; ++i) star6.add_edge(0, i);
  CHECK(classify_shape(star6).tag == ShapeTag::Other);
  Graph plus(1);
  plus.add_path(0, 2);
  plus.add_path(0, 2);
  plus.add_path(0, 1);
  plus.add_path(0, 1);
  CHECK(classify_shape(plus).tag == ShapeTag::Other);

  // Three junctions meeting at a central degree-3 vertex: not an open quipu.
  Graph spider(1);
  for (int arm = 0; arm < 3; ++arm) {
    int mid = spider.add_path(0, 2);
    spider.add_path(mid, 1);
    spider.add_path(mid, 1);
  }
  CHECK(classify_shape(spider).tag == ShapeTag::Other);
}

TEST_CASE("canonical forms") {
  // Open: reversal and end swaps identify the same graph.
  OpenQuipuSpec a{{4, 2, 1}, {4, 1}};
  OpenQuipuSpec b{{1, 2, 4}, {1, 4}};
  CHECK(open_canonical(a) == open_canonical(b));
  CHECK(open_canonical(b) == b);
  OpenQuipuSpec swapped{{1, 2, 4}, {1, 4}};
  std::swap(swapped.k.back(), swapped.m.back());
  CHECK(open_canonical(swapped) == b);
  // r = 0: arms sorted with the smallest as the pendent m0.
  CHECK(open_canonical({{1, 3}, {2}}) == OpenQuipuSpec{{2, 3}, {1}});

  // Closed: rotations and reflection; zero-pendent junctions collapse.
  ClosedQuipuSpec c1{{3, 1, 2}, {1, 2, 1}};
  ClosedQuipuSpec rot{{1, 2, 3}, {2, 1, 1}};
  CHECK(closed_canonical(c1) == closed_canonical(rot));
  ClosedQuipuSpec with_zero{{2, 3, 1}, {1, 0, 2}};
  ClosedQuipuSpec merged{{6, 1}, {1, 2}};
  CHECK(closed_canonical(with_zero) == closed_canonical(merged));
  CHECK(closed_canonical({{5, 3}, {0, 0}}) == ClosedQuipuSpec{{9}, {0}});
  CHECK(closed_canonical({{9}, {0}}) == ClosedQuipuSpec{{9}, {0}});
}

TEST_CASE("order formulas and round-trips on random specs") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    OpenQuipuSpec s = random_open_spec(rng);
    Graph g = build_open_quipu(s);
    long expect = s.r() + 1;
    for (long x : s.k) expect += x;
    for (long x : s.m) expect += x;
    CHECK(g.n == expect);
    CHECK(g.n == s.order());
    CHECK(g.is_tree());
    CHECK(g.max_degree() == 3);
    ShapeClass c = classify_shape(g);
    if (s.r() == 0) {
      REQUIRE(c.tag == ShapeTag::TShape);
    } else {
      REQUIRE(c.tag == ShapeTag::OpenQuipu);
    }
    CHECK(*c.open == open_canonical(s));
  }
  for (int trial = 0; trial < 200; ++trial) {
    ClosedQuipuSpec s = random_closed_spec(rng);
    Graph g = build_closed_quipu(s);
    CHECK(g.n == s.order());
    CHECK(g.edge_count() == g.n);
    CHECK(g.is_connected());
    ClosedQuipuSpec canon = closed_canonical(s);
    ShapeClass c = classify_shape(g);
    if (canon.r() == 1 && canon.m[0] == 0) {
      REQUIRE(c.tag == ShapeTag::Cycle);
      CHECK(c.param == s.order());
    } else {
      REQUIRE(c.tag == ShapeTag::ClosedQuipu);
      CHECK(*c.closed == canon);
    }
  }
  // Canonicalization is idempotent.
  for (int trial = 0; trial < 50; ++trial) {
    OpenQuipuSpec s = random_open_spec(rng);
    CHECK(open_canonical(open_canonical(s)) == open_canonical(s));
    ClosedQuipuSpec t = random_closed_spec(rng);
    CHECK(closed_canonical(closed_canonical(t)) == closed_canonical(t));
  }
}

TEST_CASE("special families P_mkr and C_mkr") {
  // P_{m,k,1} = P_{(m+1,k-2,m+1)}^{(m+1,m+1)}.
  Graph p141 = build_P_mkr(1, 4, 1);
  CHECK(p141.n == 12);
  CHECK(p141.n == OpenQuipuSpec{{2, 2, 2}, {2, 2}}.order());
  CHECK(classify_shape(p141).tag == ShapeTag::OpenQuipu);

  // General r: spine of r+1 junctions.
  Graph p243 = build_P_mkr(2, 4, 3);
  OpenQuipuSpec s243{{3, 3, 4, 3, 3}, {3, 2, 2, 3}};
  CHECK(p243.n == s243.order());
  CHECK(*classify_shape(p243).open == open_canonical(s243));

  Graph c147 = build_C_mkr(1, 4, 2);
  CHECK(c147.n == ClosedQuipuSpec{{4, 4}, {1, 1}}.order());
  CHECK(classify_shape(c147).tag == ShapeTag::ClosedQuipu);

  CHECK_THROWS_AS(build_P_mkr(1, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_P_mkr(0, 4, 1), std::invalid_argument);
}

TEST_CASE("graph6 parsing and encoding") {
  // 'E' encodes n=6; the body decodes to the complete bipartite K_{2,4}.
  Graph g = parse_graph6_line("E?~o");
  CHECK(g.n == 6);
  CHECK(g.edge_count() == 8);
  CHECK(degree_sequence(g) == std::vector<int>{2, 2, 2, 2, 4, 4});
  CHECK(to_graph6(g) == "E?~o");

  CHECK(parse_graph6_line(">>graph6<<E?~o").n == 6);

  std::istringstream empty("");
  CHECK(ingest_graph6(empty).empty());

  std::istringstream two("E?~o\nD?{\n");
  auto gs = ingest_graph6(two);
  REQUIRE(gs.size() == 2);
  CHECK(gs[0].n == 6);
  CHECK(gs[1].n == 5);

  std::istringstream bad("E?~o\nE?~o\nE \x05o\n");
  CHECK_THROWS_WITH_AS(ingest_graph6(bad), doctest::Contains("line 3"), std::runtime_error);
  CHECK_THROWS_AS(parse_graph6_line("E?~"), std::runtime_error);   // truncated
  CHECK_THROWS_AS(parse_graph6_line("E?~oo"), std::runtime_error); // trailing junk

  // Round-trip on structured graphs.
  std::mt19937 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    Graph h = build_open_quipu(random_open_spec(rng));
    if (h.n > 62) continue;
    Graph back = parse_graph6_line(to_graph6(h));
    CHECK(back.n == h.n);
    CHECK(back.adj == h.adj);
  }
}

TEST_CASE("diameter agrees with an independent all-pairs oracle") {
  std::mt19937 rng(4242);
  for (int trial = 0; trial < 25; ++trial) {
    Graph g = trial % 2 == 0 ? build_open_quipu(random_open_spec(rng))
                             : build_closed_quipu(random_closed_spec(rng));
    if (g.n > 40) continue;
    CHECK(diameter(g) == floyd_warshall_diameter(g));
  }
  CHECK(diameter(petersen()) == floyd_warshall_diameter(petersen()));
}
