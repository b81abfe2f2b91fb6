#pragma once

// Counting and classification primitives: per-vertex and per-edge cyclic
// triangle counts, a-good / a-bad edges, cross-set edge and triangle counts,
// and bounded k-cycle counting through an anchor path.
//
// All counts are exact. Enumeration works per edge x->y via sorted
// intersection of N+(y) with N-(x); fine for desk-scale n. Operations refuse
// instances above kMaxExactN rather than silently approximate.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "oripack/oriented_graph.hpp"

namespace oripack {

inline constexpr Vertex kMaxExactN = 5000;

namespace detail {
inline void check_exact_size(const OrientedGraph& g, const char* op) {
  if (g.n() > kMaxExactN)
    throw std::invalid_argument(std::string(op) + ": n=" + std::to_string(g.n()) +
                                " exceeds exact-counting limit " + std::to_string(kMaxExactN));
}

// Size of N+(b) intersect N-(a): the number of z completing edge a->b to a
// cyclic triangle a->b->z->a.
inline long long edge_triangles(const OrientedGraph& g, Vertex a, Vertex b) {
  const auto& outs = g.out(b);
  const auto& ins = g.in(a);
  long long k = 0;
  std::size_t i = 0, j = 0;
  while (i < outs.size() && j < ins.size()) {
    if (outs[i] < ins[j])
      ++i;
    else if (outs[i] > ins[j])
      ++j;
    else {
      ++k;
      ++i;
      ++j;
    }
  }
  return k;
}

inline std::uint64_t edge_key(const OrientedGraph& g, Vertex u, Vertex v) {
  return static_cast<std::uint64_t>(u) * static_cast<std::uint64_t>(g.n()) +
         static_cast<std::uint64_t>(v);
}
}  // namespace detail

inline std::vector<long long> triangles_per_vertex(const OrientedGraph& g) {
  detail::check_exact_size(g, "triangles_per_vertex");
  std::vector<long long> count(g.n(), 0);
  for (Vertex x = 0; x < g.n(); ++x)
    for (Vertex y : g.out(x)) count[x] += detail::edge_triangles(g, x, y);
  return count;
}

inline long long total_cyclic_triangles(const OrientedGraph& g) {
  detail::check_exact_size(g, "total_cyclic_triangles");
  long long total3 = 0;
  for (Vertex x = 0; x < g.n(); ++x)
    for (Vertex y : g.out(x)) total3 += detail::edge_triangles(g, x, y);
  if (total3 % 3 != 0) throw std::logic_error("triangle count not divisible by 3");
  const long long total = total3 / 3;
  if (is_tournament(g)) {
    // Tournament identity: total = C(n,3) - sum_v C(d+(v), 2).
    const long long n = g.n();
    long long expect = n * (n - 1) * (n - 2) / 6;
    for (Vertex v = 0; v < g.n(); ++v) {
      const long long d = g.out_degree(v);
      expect -= d * (d - 1) / 2;
    }
    if (expect != total) throw std::logic_error("tournament triangle identity violated");
  }
  return total;
}

// Every cyclic triangle once, as a vertex-sorted triple.
inline std::vector<std::array<Vertex, 3>> enumerate_triangles(const OrientedGraph& g) {
  detail::check_exact_size(g, "enumerate_triangles");
  std::vector<std::array<Vertex, 3>> tris;
  for (Vertex x = 0; x < g.n(); ++x)
    for (Vertex y : g.out(x)) {
      // canonical representative: x is the smallest vertex of the triangle
      if (y < x) continue;
      const auto& outs = g.out(y);
      const auto& ins = g.in(x);
      std::size_t i = 0, j = 0;
      while (i < outs.size() && j < ins.size()) {
        if (outs[i] < ins[j])
          ++i;
        else if (outs[i] > ins[j])
          ++j;
        else {
          Vertex z = outs[i];
          if (z > x) {
            std::array<Vertex, 3> t = {x, y, z};
            if (t[1] > t[2]) std::swap(t[1], t[2]);
            tris.push_back(t);
          }
          ++i;
          ++j;
        }
      }
    }
  return tris;
}

// An edge is a-good when at least a*n cyclic triangles contain it; a vertex
// y is a-bad for x when the edge between them is a-bad.
struct GoodnessReport {
  Fraction threshold_a{1, 8};
  Vertex n{0};
  std::unordered_map<std::uint64_t, long long> per_edge_count;  // key u*n+v for edge u->v
  std::vector<std::vector<Vertex>> bad_for;                     // per vertex, sorted

  bool good(const OrientedGraph& g, Vertex u, Vertex v) const {
    auto it = per_edge_count.find(detail::edge_key(g, u, v));
    if (it == per_edge_count.end()) return false;
    // count >= a*n without rounding: count*den >= num*n
    return it->second * threshold_a.den >= threshold_a.num * static_cast<long long>(n);
  }
};

inline GoodnessReport classify_edges(const OrientedGraph& g, Fraction a) {
  detail::check_exact_size(g, "classify_edges");
  if (a.num <= 0 || a.num >= a.den)
    throw std::invalid_argument("classify_edges: need 0 < a < 1");
  GoodnessReport r;
  r.threshold_a = a;
  r.n = g.n();
  r.bad_for.assign(g.n(), {});
  for (Vertex u = 0; u < g.n(); ++u)
    for (Vertex v : g.out(u)) {
      const long long k = detail::edge_triangles(g, u, v);
      r.per_edge_count.emplace(detail::edge_key(g, u, v), k);
      if (k * a.den < a.num * static_cast<long long>(g.n())) {
        r.bad_for[u].push_back(v);
        r.bad_for[v].push_back(u);
      }
    }
  for (auto& vec : r.bad_for) std::sort(vec.begin(), vec.end());
  return r;
}

inline long long edges_between(const OrientedGraph& g, const std::vector<Vertex>& S,
                               const std::vector<Vertex>& T) {
  std::vector<char> inT(g.n(), 0);
  for (Vertex v : T) inT[v] = 1;
  long long k = 0;
  for (Vertex u : S)
    for (Vertex v : g.out(u)) k += inT[v];
  return k;
}

// Cyclic triangles containing at least one edge u->v with u in S, v in T.
inline long long triangles_with_crossing_edge(const OrientedGraph& g,
                                              const std::vector<Vertex>& S,
                                              const std::vector<Vertex>& T) {
  detail::check_exact_size(g, "triangles_with_crossing_edge");
  std::vector<char> inS(g.n(), 0), inT(g.n(), 0);
  for (Vertex v : S) inS[v] = 1;
  for (Vertex v : T) inT[v] = 1;
  long long k = 0;
  for (const auto& t : enumerate_triangles(g)) {
    // recover the cyclic orientation of {t0 < t1 < t2}
    Vertex a = t[0], b, c;
    if (g.contains(t[0], t[1]) && g.contains(t[1], t[2])) {
      b = t[1];
      c = t[2];
    } else {
      b = t[2];
      c = t[1];
    }
    if ((inS[a] && inT[b]) || (inS[b] && inT[c]) || (inS[c] && inT[a])) ++k;
  }
  return k;
}

// Number of k-cycles containing the given directed path as a sub-path,
// by bounded DFS; returns cap as soon as the count would exceed it.
inline long long count_k_cycles_through(const OrientedGraph& g, const std::vector<Vertex>& anchor,
                                        int k, long long cap) {
  if (anchor.empty()) throw std::invalid_argument("count_k_cycles_through: empty anchor");
  for (std::size_t i = 0; i + 1 < anchor.size(); ++i)
    if (!g.contains(anchor[i], anchor[i + 1]))
      throw std::invalid_argument("count_k_cycles_through: anchor is not a path in g");
  const int t = static_cast<int>(anchor.size());
  if (k < t + 2) throw std::invalid_argument("count_k_cycles_through: need k >= t+2");
  std::vector<char> used(g.n(), 0);
  for (Vertex v : anchor) {
    if (used[v]) throw std::invalid_argument("count_k_cycles_through: anchor repeats a vertex");
    used[v] = 1;
  }
  long long count = 0;
  const Vertex home = anchor.front();
  // extend from the path's last vertex with k - t more vertices, then close
  auto dfs = [&](auto&& self, Vertex at, int remaining) -> void {
    if (count >= cap) return;
    if (remaining == 0) {
      if (g.contains(at, home)) ++count;
      return;
    }
    for (Vertex w : g.out(at)) {
      if (used[w]) continue;
      used[w] = 1;
      self(self, w, remaining - 1);
      used[w] = 0;
      if (count >= cap) return;
    }
  };
  dfs(dfs, anchor.back(), k - t);
  return std::min(count, cap);
}

// Per-vertex triangle-count band implied by the semidegree slack: with
// c = 1/2 - delta0/n, every vertex lies in (1/8 +- 2c) n^2 cyclic triangles.
struct CountTriBand {
  double lo{0}, hi{0};
  long long min_count{0}, max_count{0};
  bool all_within{false};
};

inline CountTriBand count_tri_band_check(const OrientedGraph& g) {
  CountTriBand b;
  const auto prof = semidegree_profile(g);
  const double c = prof.slack_c.value();
  const double n2 = static_cast<double>(g.n()) * g.n();
  b.lo = (0.125 - 2 * c) * n2;
  b.hi = (0.125 + 2 * c) * n2;
  const auto counts = triangles_per_vertex(g);
  b.min_count = counts[0];
  b.max_count = counts[0];
  for (long long k : counts) {
    b.min_count = std::min(b.min_count, k);
    b.max_count = std::max(b.max_count, k);
  }
  b.all_within = static_cast<double>(b.min_count) >= b.lo &&
                 static_cast<double>(b.max_count) <= b.hi;
  return b;
}

}  // namespace oripack
