#pragma once

// Exact small-instance oracles: maximum triangle packing, feasibility of a
// prescribed cycle-length family, and the count of maximum triangle
// packings. All by backtracking over bitmask states with
// most-constrained-vertex branching; ground truth for everything the
// heuristic pipelines claim at small n. The same machinery drives the
// pipelines' local repair on small vertex pools.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "oripack/oriented_graph.hpp"
#include "oripack/triangle_analysis.hpp"

namespace oripack {

struct OracleLimits {
  Vertex max_triangles_n = 24;
  Vertex feasible_n = 16;
  Vertex count_n = 15;
};

namespace detail {

struct TriangleSystem {
  std::vector<std::uint32_t> masks;
  std::vector<std::array<Vertex, 3>> triples;
  std::vector<std::vector<int>> by_vertex;
};

inline TriangleSystem build_triangle_system(const OrientedGraph& g) {
  TriangleSystem s;
  s.by_vertex.assign(g.n(), {});
  for (const auto& t : enumerate_triangles(g)) {
    const int id = static_cast<int>(s.masks.size());
    s.masks.push_back((1u << t[0]) | (1u << t[1]) | (1u << t[2]));
    s.triples.push_back(t);
    for (Vertex v : t) s.by_vertex[v].push_back(id);
  }
  return s;
}

// Branch-and-bound for the maximum number of disjoint triangles. `blocked`
// marks vertices already declared uncovered; the bound prunes on both the
// remaining-vertex count and the skip budget implied by the incumbent.
class MaxTrianglePacking {
 public:
  MaxTrianglePacking(const OrientedGraph& g) : n_(g.n()), sys_(build_triangle_system(g)) {}

  std::pair<int, std::vector<std::array<Vertex, 3>>> solve() {
    best_ = 0;
    best_sol_.clear();
    cur_.clear();
    recurse(0u, 0u);
    std::vector<std::array<Vertex, 3>> out;
    for (int id : best_sol_) out.push_back(sys_.triples[id]);
    return {best_, out};
  }

  // Counts packings of exactly `size` triangles (unordered).
  long long count_of_size(int size) {
    target_ = size;
    long long total = 0;
    count_recurse(0u, 0u, 0, total);
    return total;
  }

 private:
  int active_count(std::uint32_t covered, std::uint32_t skipped) const {
    return n_ - __builtin_popcount(covered | skipped);
  }

  // Most constrained active vertex; -2 when none active, -1 when some
  // active vertex has no available triangle (returned via forced).
  int pick_vertex(std::uint32_t covered, std::uint32_t skipped, Vertex& forced) const {
    const std::uint32_t blockmask = covered | skipped;
    int best_v = -2;
    std::size_t best_avail = static_cast<std::size_t>(-1);
    for (Vertex v = 0; v < n_; ++v) {
      if (blockmask & (1u << v)) continue;
      std::size_t avail = 0;
      for (int id : sys_.by_vertex[v])
        if (!(sys_.masks[id] & blockmask)) ++avail;
      if (avail == 0) {
        forced = v;
        return -1;
      }
      if (avail < best_avail) {
        best_avail = avail;
        best_v = v;
      }
    }
    return best_v;
  }

  void recurse(std::uint32_t covered, std::uint32_t skipped) {
    const int cur = static_cast<int>(cur_.size());
    if (cur + active_count(covered, skipped) / 3 <= best_) return;
    Vertex forced = -1;
    const int v = pick_vertex(covered, skipped, forced);
    if (v == -2) {
      if (cur > best_) {
        best_ = cur;
        best_sol_ = cur_;
      }
      return;
    }
    if (v == -1) {
      recurse(covered, skipped | (1u << forced));
      return;
    }
    const std::uint32_t blockmask = covered | skipped;
    for (int id : sys_.by_vertex[v]) {
      if (sys_.masks[id] & blockmask) continue;
      cur_.push_back(id);
      recurse(covered | sys_.masks[id], skipped);
      cur_.pop_back();
    }
    recurse(covered, skipped | (1u << v));
  }

  void count_recurse(std::uint32_t covered, std::uint32_t skipped, int cur, long long& total) {
    if (cur + active_count(covered, skipped) / 3 < target_) return;
    if (3 * target_ + __builtin_popcount(skipped) > n_) return;  // too many skips
    Vertex forced = -1;
    const int v = pick_vertex(covered, skipped, forced);
    if (v == -2) {
      if (cur == target_) ++total;
      return;
    }
    if (v == -1) {
      count_recurse(covered, skipped | (1u << forced), cur, total);
      return;
    }
    const std::uint32_t blockmask = covered | skipped;
    for (int id : sys_.by_vertex[v]) {
      if (sys_.masks[id] & blockmask) continue;
      count_recurse(covered | sys_.masks[id], skipped, cur + 1, total);
    }
    count_recurse(covered, skipped | (1u << v), cur, total);
  }

  Vertex n_;
  TriangleSystem sys_;
  int best_{0};
  int target_{0};
  std::vector<int> cur_;
  std::vector<int> best_sol_;
};

}  // namespace detail

// Exact maximum number of vertex-disjoint cyclic triangles, with a witness.
inline std::pair<int, std::vector<std::array<Vertex, 3>>> oracle_max_triangle_packing(
    const OrientedGraph& g, Vertex limit = OracleLimits{}.max_triangles_n) {
  if (g.n() > limit || g.n() > 31)
    throw std::invalid_argument("oracle_max_triangle_packing: n=" + std::to_string(g.n()) +
                                " exceeds limit " + std::to_string(std::min<Vertex>(limit, 31)));
  return detail::MaxTrianglePacking(g).solve();
}

// Exact number of maximum (unordered) triangle packings.
inline long long count_perfect_packings(const OrientedGraph& g,
                                        Vertex limit = OracleLimits{}.count_n) {
  if (g.n() > limit || g.n() > 31)
    throw std::invalid_argument("count_perfect_packings: n=" + std::to_string(g.n()) +
                                " exceeds limit " + std::to_string(std::min<Vertex>(limit, 31)));
  detail::MaxTrianglePacking solver(g);
  const int max_size = solver.solve().first;
  return solver.count_of_size(max_size);
}

namespace detail {

// Enumerates every directed cycle of length `len` among allowed vertices,
// each exactly once (canonical form: the cycle's smallest vertex first).
template <class Fn>
inline bool for_each_cycle(const OrientedGraph& g, int len, std::uint32_t allowed, Fn&& fn) {
  std::vector<Vertex> seq;
  auto dfs = [&](auto&& self, Vertex at, Vertex home, std::uint32_t used) -> bool {
    if (static_cast<int>(seq.size()) == len) return g.contains(at, home) ? fn(seq) : false;
    for (Vertex w : g.out(at)) {
      if (w <= home) continue;  // canonical: home is the smallest
      if (!(allowed & (1u << w)) || (used & (1u << w))) continue;
      seq.push_back(w);
      if (self(self, w, home, used | (1u << w))) return true;
      seq.pop_back();
    }
    return false;
  };
  for (Vertex s = 0; s < g.n(); ++s) {
    if (!(allowed & (1u << s))) continue;
    seq.assign(1, s);
    if (dfs(dfs, s, s, 1u << s)) return true;
  }
  return false;
}

}  // namespace detail

// Exact feasibility of a vertex-disjoint cycle family with the given
// lengths; returns a witness when feasible.
inline std::optional<std::vector<std::vector<Vertex>>> oracle_prescribed_feasible(
    const OrientedGraph& g, std::vector<int> lengths, Vertex limit = OracleLimits{}.feasible_n) {
  if (g.n() > limit || g.n() > 31)
    throw std::invalid_argument("oracle_prescribed_feasible: n=" + std::to_string(g.n()) +
                                " exceeds limit " + std::to_string(std::min<Vertex>(limit, 31)));
  long long total = 0;
  for (int l : lengths) {
    if (l < 3) throw std::invalid_argument("oracle_prescribed_feasible: cycle length < 3");
    total += l;
  }
  if (total > g.n()) return std::nullopt;
  std::sort(lengths.begin(), lengths.end(), std::greater<>());

  std::vector<std::vector<Vertex>> witness;
  const std::uint32_t full =
      g.n() >= 32 ? 0xffffffffu : ((1u << g.n()) - 1u);

  // For equal lengths, force increasing smallest-vertex order to kill the
  // permutation symmetry.
  auto solve = [&](auto&& self, std::size_t idx, std::uint32_t allowed, Vertex floor_v) -> bool {
    if (idx == lengths.size()) return true;
    const int len = lengths[idx];
    const Vertex lo = (idx > 0 && lengths[idx - 1] == len) ? floor_v : -1;
    std::uint32_t mask = allowed;
    for (Vertex v = 0; v <= lo && v < g.n(); ++v) mask &= ~(1u << v);
    return detail::for_each_cycle(g, len, mask, [&](const std::vector<Vertex>& cyc) {
      witness.push_back(cyc);
      std::uint32_t used = 0;
      for (Vertex v : cyc) used |= 1u << v;
      if (self(self, idx + 1, allowed & ~used, cyc.front())) return true;
      witness.pop_back();
      return false;
    });
  };
  if (solve(solve, 0, full, -1)) return witness;
  return std::nullopt;
}

}  // namespace oripack
