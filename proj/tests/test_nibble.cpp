#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "oripack/generators.hpp"
#include "oripack/nibble.hpp"
#include "oripack/oracle.hpp"

using namespace oripack;

namespace {

OrientedGraph three_cycle() { return OrientedGraph::from_edges(3, {{0, 1}, {1, 2}, {2, 0}}); }

bool is_matching(const Hypergraph& h, const std::vector<std::size_t>& edges) {
  std::vector<char> seen(h.n(), 0);
  for (std::size_t e : edges)
    for (Vertex v : h.edge(e)) {
      if (seen[v]) return false;
      seen[v] = 1;
    }
  return true;
}

long long uncovered_after(const Hypergraph& h, const std::vector<std::size_t>& matching) {
  std::vector<char> covered(h.n(), 0);
  for (std::size_t e : matching)
    for (Vertex v : h.edge(e)) covered[v] = 1;
  long long u = 0;
  for (char c : covered) u += !c;
  return u;
}

}  // namespace

TEST_CASE("triangle hypergraph extraction") {
  auto h3 = triangle_hypergraph(three_cycle());
  REQUIRE(h3.edge_count() == 1);
  auto e = h3.edge(0);
  REQUIRE(std::vector<Vertex>(e.begin(), e.end()) == std::vector<Vertex>{0, 1, 2});

  REQUIRE(triangle_hypergraph(transitive_tournament(6)).edge_count() == 0);

  auto h7 = triangle_hypergraph(rotational_tournament(7));
  REQUIRE(h7.edge_count() == 14);
  for (long long d : h7.vertex_degrees()) REQUIRE(d == 6);
}

TEST_CASE("bite basics") {
  auto h = triangle_hypergraph(rotational_tournament(9));
  std::vector<std::size_t> all(h.edge_count());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;

  SECTION("p = 0 keeps nothing") {
    auto r = bite(h, all, 0.0, 1);
    REQUIRE(r.kept.empty());
    REQUIRE(r.proposed == 0);
  }
  SECTION("single edge with p = 1 is kept") {
    Hypergraph single(3, 3);
    single.add_edge(std::array<Vertex, 3>{0, 1, 2});
    auto r = bite(single, {0}, 1.0, 1);
    REQUIRE(r.kept == std::vector<std::size_t>{0});
    REQUIRE(r.removed_vertices.size() == 3);
  }
  SECTION("two intersecting edges with p = 1 delete each other") {
    Hypergraph pair(3, 5);
    pair.add_edge(std::array<Vertex, 3>{0, 1, 2});
    pair.add_edge(std::array<Vertex, 3>{2, 3, 4});
    auto r = bite(pair, {0, 1}, 1.0, 1);
    REQUIRE(r.kept.empty());
    REQUIRE(r.proposed == 2);
    REQUIRE(r.conflicted == 2);
  }
}

TEST_CASE("bite output is always a matching") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    auto g = random_tournament(40, seed);
    auto h = triangle_hypergraph(g);
    std::vector<std::size_t> all(h.edge_count());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    for (double p : {0.1, 0.5, 1.0}) {
      auto r = bite(h, all, p, seed * 31 + 7);
      REQUIRE(is_matching(h, r.kept));
      REQUIRE(r.proposed == static_cast<long long>(r.kept.size()) + r.conflicted);
    }
  }
}

TEST_CASE("nibble on the layered toy reaches a near-perfect matching") {
  auto g = layered_circulant(9, {3, 3, 3});
  // a perfect triangle packing exists
  REQUIRE(oracle_max_triangle_packing(g).first == 3);
  auto h = triangle_hypergraph(g);
  NibbleSchedule sched;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto trace = run_nibble(h, 0.34, sched, seed);
    auto matching = greedy_complete(h, trace.final_matching, seed);
    REQUIRE(is_matching(h, matching));
    REQUIRE(uncovered_after(h, matching) <= 3);
  }
}

TEST_CASE("empty hypergraph leaves everything uncovered") {
  Hypergraph h(3, 8);
  auto trace = run_nibble(h, 0.05, NibbleSchedule{}, 3);
  REQUIRE(trace.uncovered.size() == 8);
  REQUIRE(trace.final_matching.empty());
  REQUIRE(trace.regularity_warning);
}

TEST_CASE("nibble plus greedy completion on rotational n=99") {
  auto h = triangle_hypergraph(rotational_tournament(99));
  std::vector<long long> uncovered;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto trace = run_nibble(h, 0.05, NibbleSchedule{}, seed);
    REQUIRE(is_matching(h, trace.final_matching));
    // coverage never decreases across bites
    long long kept_total = 0;
    for (const auto& b : trace.bites) {
      REQUIRE(b.kept >= 0);
      kept_total += b.kept;
    }
    REQUIRE(kept_total == static_cast<long long>(trace.final_matching.size()));
    auto matching = greedy_complete(h, trace.final_matching, seed);
    uncovered.push_back(uncovered_after(h, matching));
  }
  std::sort(uncovered.begin(), uncovered.end());
  REQUIRE(uncovered[uncovered.size() / 2] <= 5);
}

TEST_CASE("greedy completion is a fixpoint on maximal matchings") {
  auto h = triangle_hypergraph(rotational_tournament(21));
  REQUIRE(oracle_max_triangle_packing(rotational_tournament(21)).first == 7);
  int at_least_5 = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto m = greedy_complete(h, {}, seed);
    REQUIRE(is_matching(h, m));
    if (m.size() >= 5) ++at_least_5;
    auto again = greedy_complete(h, m, seed + 1);
    REQUIRE(again.size() == m.size());  // maximal: nothing to add
  }
  REQUIRE(at_least_5 == 100);
}

TEST_CASE("nibble trace is deterministic in (h, schedule, seed)") {
  auto h = triangle_hypergraph(rotational_tournament(33));
  NibbleSchedule sched{0.5, 0.9, 60};
  auto a = run_nibble(h, 0.05, sched, 77);
  auto b = run_nibble(h, 0.05, sched, 77);
  REQUIRE(a.final_matching == b.final_matching);
  REQUIRE(a.uncovered == b.uncovered);
  REQUIRE(a.bites.size() == b.bites.size());
  for (std::size_t i = 0; i < a.bites.size(); ++i) {
    REQUIRE(a.bites[i].proposed == b.bites[i].proposed);
    REQUIRE(a.bites[i].kept == b.bites[i].kept);
  }
  auto c = run_nibble(h, 0.05, sched, 78);
  REQUIRE(a.final_matching != c.final_matching);
}

TEST_CASE("first bite size concentrates near c2 n / 24") {
  const Vertex n = 301;
  auto h = triangle_hypergraph(rotational_tournament(n));
  const double c2 = 0.5;
  const double expected = c2 * n / 24.0;
  std::vector<long long> first;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    NibbleSchedule sched{c2, 0.9, 1};
    auto trace = run_nibble(h, 0.0, sched, seed);
    REQUIRE(trace.bites.size() == 1);
    first.push_back(trace.bites[0].kept);
  }
  std::sort(first.begin(), first.end());
  const double median = static_cast<double>(first[first.size() / 2]);
  REQUIRE(median >= expected / 2);
  REQUIRE(median <= expected * 2);
}
