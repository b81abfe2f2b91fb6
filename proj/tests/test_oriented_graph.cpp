#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "oripack/generators.hpp"
#include "oripack/oriented_graph.hpp"
#include "oripack/rng.hpp"

using namespace oripack;

namespace {

OrientedGraph three_cycle() { return OrientedGraph::from_edges(3, {{0, 1}, {1, 2}, {2, 0}}); }

// independent pair scan, used instead of is_tournament's edge-count shortcut
bool tournament_by_pairs(const OrientedGraph& g) {
  for (Vertex u = 0; u < g.n(); ++u)
    for (Vertex v = u + 1; v < g.n(); ++v) {
      const int edges = int(g.contains(u, v)) + int(g.contains(v, u));
      if (edges != 1) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("construction and the smallest cyclic triangle") {
  auto g = three_cycle();
  REQUIRE(g.n() == 3);
  REQUIRE(g.m() == 3);
  REQUIRE(g.contains(0, 1));
  REQUIRE_FALSE(g.contains(1, 0));
  REQUIRE(g.cyclic_triangle(0, 1, 2));
  REQUIRE(g.cyclic_triangle(2, 1, 0));  // set-wise, any vertex order
}

TEST_CASE("construction rejects each invariant violation distinctly") {
  REQUIRE_THROWS_AS(OrientedGraph::from_edges(3, {{0, 1}, {1, 0}}), AntiparallelError);
  REQUIRE_THROWS_AS(OrientedGraph::from_edges(3, {{0, 0}}), SelfLoopError);
  REQUIRE_THROWS_AS(OrientedGraph::from_edges(3, {{0, 1}, {0, 1}}), DuplicateEdgeError);
  REQUIRE_THROWS_AS(OrientedGraph::from_edges(2, {{0, 5}}), GraphError);
}

TEST_CASE("tournament on 4 vertices") {
  auto g = OrientedGraph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}, {1, 3}});
  REQUIRE(tournament_by_pairs(g));
  REQUIRE(is_tournament(g));
}

TEST_CASE("is_tournament is false with an isolated vertex") {
  auto g = OrientedGraph::from_edges(4, {{0, 1}, {1, 2}, {2, 0}});
  REQUIRE_FALSE(is_tournament(g));
  REQUIRE(is_tournament(three_cycle()));
}

TEST_CASE("semidegree profile") {
  auto p = semidegree_profile(three_cycle());
  REQUIRE(p.min_out == 1);
  REQUIRE(p.min_in == 1);
  REQUIRE(p.min_semi == 1);
  REQUIRE(p.slack_c == Fraction(1, 6));

  auto t5 = semidegree_profile(transitive_tournament(5));
  REQUIRE(t5.min_semi == 0);  // sink and source
  REQUIRE(t5.slack_c == Fraction(1, 2));

  auto r7 = semidegree_profile(rotational_tournament(7));
  REQUIRE(r7.min_out == 3);
  REQUIRE(r7.min_in == 3);
}

TEST_CASE("induced subgraphs") {
  auto pair = induced_subgraph(three_cycle(), {0, 1});
  REQUIRE(pair.graph.n() == 2);
  REQUIRE(pair.graph.m() == 1);
  REQUIRE(pair.graph.contains(0, 1));

  auto r7 = rotational_tournament(7);
  auto sub = induced_subgraph(r7, {1, 3, 4, 6});
  REQUIRE(sub.graph.n() == 4);
  REQUIRE(tournament_by_pairs(sub.graph));

  auto empty = induced_subgraph(r7, {});
  REQUIRE(empty.graph.n() == 0);
  REQUIRE(empty.graph.m() == 0);

  REQUIRE_THROWS_AS(induced_subgraph(r7, {0, 9}), GraphError);

  // identity vertex set reproduces the graph byte for byte
  std::vector<Vertex> all{0, 1, 2, 3, 4, 5, 6};
  REQUIRE(to_og_string(induced_subgraph(r7, all).graph) == to_og_string(r7));
}

TEST_CASE("transpose consistency and handshake on random tournaments") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Vertex n = 4 + static_cast<Vertex>(seed % 9);
    auto g = random_tournament(n, seed);
    long long out_sum = 0, in_sum = 0;
    for (Vertex u = 0; u < n; ++u) {
      out_sum += g.out_degree(u);
      in_sum += g.in_degree(u);
      for (Vertex v : g.out(u)) {
        auto ins = g.in(v);
        REQUIRE(std::binary_search(ins.begin(), ins.end(), u));
      }
    }
    REQUIRE(out_sum == in_sum);
    REQUIRE(out_sum == g.m());
    REQUIRE(out_sum == static_cast<long long>(n) * (n - 1) / 2);
  }
}

TEST_CASE("og text round trip") {
  auto r7 = rotational_tournament(7);
  std::stringstream ss;
  write_og(r7, ss);
  auto back = read_og(ss);
  REQUIRE(to_og_string(back) == to_og_string(r7));
}

TEST_CASE("og parser names the offending line") {
  auto parse = [](const std::string& text) {
    std::istringstream is(text);
    return read_og(is);
  };
  REQUIRE_THROWS_AS(parse("nonsense\n"), OgParseError);
  try {
    parse("og 3 2\n0 1\n1 0\n");
    FAIL("expected antiparallel rejection");
  } catch (const OgParseError& e) {
    REQUIRE(e.line_no == 3);
    REQUIRE(std::string(e.what()).find("antiparallel") != std::string::npos);
  }
  try {
    parse("og 3 1\n0 7\n");
    FAIL("expected range rejection");
  } catch (const OgParseError& e) {
    REQUIRE(e.line_no == 2);
  }
  try {
    parse("og 3 2\n0 1\n1 1\n");
    FAIL("expected self-loop rejection");
  } catch (const OgParseError& e) {
    REQUIRE(e.line_no == 3);
  }
  try {
    parse("og 3 2\n0 1\n");
    FAIL("expected eof rejection");
  } catch (const OgParseError& e) {
    REQUIRE(e.line_no == 3);
  }
}

TEST_CASE("cycle packing validation") {
  auto r7 = rotational_tournament(7);
  CyclePacking p;
  p.host_n = 7;
  p.cycles.push_back({0, 1, 4});  // steps +1, +3, +3
  REQUIRE(valid_packing(r7, p));
  REQUIRE(p.covered_count() == 3);
  REQUIRE(p.uncovered() == std::vector<Vertex>{2, 3, 5, 6});

  SECTION("a second disjoint triangle keeps the packing valid") {
    p.cycles.push_back({2, 3, 6});  // steps +1, +3, +3
    REQUIRE(valid_packing(r7, p));
    REQUIRE(p.uncovered() == std::vector<Vertex>{5});
  }
  SECTION("wrong edge direction is reported with the cycle index") {
    p.cycles.push_back({6, 3, 2});  // reversal of a valid triangle
    auto problems = packing_violations(r7, p);
    REQUIRE_FALSE(problems.empty());
    REQUIRE(problems.front().find("cycle 1") != std::string::npos);
  }
  SECTION("vertex reuse across cycles is rejected") {
    p.cycles.push_back({1, 2, 4});
    auto problems = packing_violations(r7, p);
    REQUIRE_FALSE(problems.empty());
  }
  SECTION("short cycles are rejected") {
    p.cycles.push_back({2, 3});
    REQUIRE_FALSE(valid_packing(r7, p));
  }
  SECTION("out of range vertices are rejected") {
    p.cycles.push_back({2, 3, 9});
    REQUIRE_FALSE(valid_packing(r7, p));
  }
}

TEST_CASE("rng determinism and substream independence") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) REQUIRE(a.next() == b.next());
  Rng c = Rng(42).substream("phase-one");
  Rng d = Rng(42).substream("phase-two");
  bool differ = false;
  for (int i = 0; i < 8; ++i) differ |= c.next() != d.next();
  REQUIRE(differ);
  // below() stays in range and hits both halves
  Rng e(7);
  bool lo = false, hi = false;
  for (int i = 0; i < 200; ++i) {
    auto x = e.below(10);
    REQUIRE(x < 10);
    lo |= x < 5;
    hi |= x >= 5;
  }
  REQUIRE((lo && hi));
}
