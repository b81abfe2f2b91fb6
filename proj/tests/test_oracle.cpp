#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "oripack/generators.hpp"
#include "oripack/oracle.hpp"

using namespace oripack;

namespace {

OrientedGraph three_cycle() { return OrientedGraph::from_edges(3, {{0, 1}, {1, 2}, {2, 0}}); }

// no-pruning reference: try every subset of triangles, keep the largest
// disjoint one (exponential, only for tiny instances)
int dumb_max_packing(const OrientedGraph& g) {
  auto tris = enumerate_triangles(g);
  int best = 0;
  auto rec = [&](auto&& self, std::size_t idx, std::uint32_t covered, int size) -> void {
    best = std::max(best, size);
    for (std::size_t i = idx; i < tris.size(); ++i) {
      const std::uint32_t mask =
          (1u << tris[i][0]) | (1u << tris[i][1]) | (1u << tris[i][2]);
      if (mask & covered) continue;
      self(self, i + 1, covered | mask, size + 1);
    }
  };
  rec(rec, 0, 0, 0);
  return best;
}

// counts distinct maximum packings by brute force over triangle subsets
long long dumb_count_max(const OrientedGraph& g, int max_size) {
  auto tris = enumerate_triangles(g);
  long long count = 0;
  auto rec = [&](auto&& self, std::size_t idx, std::uint32_t covered, int size) -> void {
    if (size == max_size) {
      ++count;
      return;
    }
    for (std::size_t i = idx; i < tris.size(); ++i) {
      const std::uint32_t mask =
          (1u << tris[i][0]) | (1u << tris[i][1]) | (1u << tris[i][2]);
      if (mask & covered) continue;
      self(self, i + 1, covered | mask, size + 1);
    }
  };
  rec(rec, 0, 0, 0);
  return count;
}

}  // namespace

TEST_CASE("max triangle packing basics") {
  auto [one, w1] = oracle_max_triangle_packing(three_cycle());
  REQUIRE(one == 1);
  REQUIRE(w1.size() == 1);

  auto [ex, wex] = oracle_max_triangle_packing(extremal_thm1(1));
  REQUIRE(ex == 6);  // 18 of 21 vertices, never a perfect packing

  auto [lay, wlay] = oracle_max_triangle_packing(layered_circulant(18, {5, 6, 7}));
  REQUIRE(lay == 5);  // bounded by the smallest class

  auto [l9, wl9] = oracle_max_triangle_packing(layered_circulant(9, {3, 3, 3}));
  REQUIRE(l9 == 3);

  auto [l6, wl6] = oracle_max_triangle_packing(layered_circulant(6, {1, 2, 3}));
  REQUIRE(l6 == 1);

  auto [r21, wr21] = oracle_max_triangle_packing(rotational_tournament(21));
  REQUIRE(r21 == 7);
}

TEST_CASE("witnesses are valid disjoint cyclic triangles") {
  auto g = rotational_tournament(21);
  auto [size, witness] = oracle_max_triangle_packing(g);
  REQUIRE(static_cast<int>(witness.size()) == size);
  std::set<Vertex> used;
  for (const auto& t : witness) {
    REQUIRE(g.cyclic_triangle(t[0], t[1], t[2]));
    for (Vertex v : t) {
      REQUIRE(used.count(v) == 0);
      used.insert(v);
    }
  }
}

TEST_CASE("branch and bound agrees with the no-pruning reference") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Vertex n = 6 + static_cast<Vertex>(seed % 5);  // 6..10
    auto g = random_tournament(n, 5000 + seed);
    REQUIRE(oracle_max_triangle_packing(g).first == dumb_max_packing(g));
  }
}

TEST_CASE("size limits are enforced") {
  REQUIRE_THROWS_AS(oracle_max_triangle_packing(rotational_tournament(25)),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(oracle_prescribed_feasible(random_tournament(17, 1), {3}),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(count_perfect_packings(random_tournament(16, 1)), std::invalid_argument);
}

TEST_CASE("prescribed feasibility") {
  REQUIRE(oracle_prescribed_feasible(three_cycle(), {3}).has_value());
  REQUIRE_FALSE(oracle_prescribed_feasible(transitive_tournament(6), {3}).has_value());
  REQUIRE_FALSE(oracle_prescribed_feasible(three_cycle(), {4}).has_value());
  REQUIRE_FALSE(oracle_prescribed_feasible(three_cycle(), {3, 3}).has_value());

  SECTION("witnesses have the prescribed lengths and are disjoint") {
    auto g = near_regular_tournament(12);
    auto witness = oracle_prescribed_feasible(g, {4, 4, 4});
    REQUIRE(witness.has_value());
    std::multiset<std::size_t> lens;
    std::set<Vertex> used;
    for (const auto& cyc : *witness) {
      lens.insert(cyc.size());
      REQUIRE(g.is_cycle(cyc));
      for (Vertex v : cyc) {
        REQUIRE(used.count(v) == 0);
        used.insert(v);
      }
    }
    REQUIRE(lens == std::multiset<std::size_t>{4, 4, 4});
  }
  SECTION("mixed lengths leave room for uncovered vertices") {
    auto g = rotational_tournament(13);
    auto witness = oracle_prescribed_feasible(g, {3, 5});
    REQUIRE(witness.has_value());
  }
  SECTION("lengths below 3 are rejected") {
    REQUIRE_THROWS_AS(oracle_prescribed_feasible(three_cycle(), {2}), std::invalid_argument);
  }
}

TEST_CASE("feasibility agrees with a direct scan on small tournaments") {
  // cross-check: {3,3} feasible iff two disjoint triangles exist
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto g = random_tournament(8, 600 + seed);
    auto tris = enumerate_triangles(g);
    bool two_disjoint = false;
    for (std::size_t i = 0; i < tris.size() && !two_disjoint; ++i)
      for (std::size_t j = i + 1; j < tris.size() && !two_disjoint; ++j) {
        std::set<Vertex> all(tris[i].begin(), tris[i].end());
        for (Vertex v : tris[j]) all.insert(v);
        two_disjoint = all.size() == 6;
      }
    REQUIRE(oracle_prescribed_feasible(g, {3, 3}).has_value() == two_disjoint);
  }
}

TEST_CASE("counting maximum packings") {
  REQUIRE(count_perfect_packings(three_cycle()) == 1);
  // no triangles at all: the unique maximum packing is the empty one
  REQUIRE(count_perfect_packings(transitive_tournament(9)) == 1);

  SECTION("agrees with brute force on rotational n=9") {
    auto g = rotational_tournament(9);
    const int max_size = oracle_max_triangle_packing(g).first;
    REQUIRE(max_size == 3);
    REQUIRE(count_perfect_packings(g) == dumb_count_max(g, max_size));
  }
  SECTION("agrees with brute force on random tournaments") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
      const Vertex n = 7 + static_cast<Vertex>(seed % 4);
      auto g = random_tournament(n, 800 + seed);
      const int max_size = oracle_max_triangle_packing(g).first;
      REQUIRE(count_perfect_packings(g) == dumb_count_max(g, max_size));
    }
  }
}
