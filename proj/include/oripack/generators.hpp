#pragma once

// Instance generators: circulant/rotational tournaments, near-regular
// tournaments, the two extremal constructions, and seeded random
// tournaments. Everything here is a pure function of its arguments; the
// random family is a pure function of (n, seed).

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "oripack/oriented_graph.hpp"
#include "oripack/rng.hpp"

namespace oripack {

// Vertex v beats v+1, ..., v+(n-1)/2 (mod n). Regular: all semidegrees (n-1)/2.
inline OrientedGraph rotational_tournament(Vertex n) {
  if (n < 1 || n % 2 == 0)
    throw std::invalid_argument("rotational_tournament: n must be odd, got " + std::to_string(n));
  std::vector<std::pair<Vertex, Vertex>> edges;
  edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  const Vertex half = (n - 1) / 2;
  for (Vertex v = 0; v < n; ++v)
    for (Vertex d = 1; d <= half; ++d) edges.emplace_back(v, (v + d) % n);
  return OrientedGraph::from_edges(n, edges);
}

inline OrientedGraph transitive_tournament(Vertex n) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return OrientedGraph::from_edges(n, edges);
}

// Odd n: rotational (regular). Even n: rotational on n+1 with the last
// vertex deleted, which gives every vertex degrees {n/2, n/2-1}. The
// construction is deliberately deterministic so the extremal instance
// below is reproducible bit for bit; the seed parameter is accepted for
// interface uniformity and unused.
inline OrientedGraph near_regular_tournament(Vertex n, std::uint64_t /*seed*/ = 0) {
  if (n < 1) throw std::invalid_argument("near_regular_tournament: n >= 1 required");
  if (n % 2 == 1) return rotational_tournament(n);
  OrientedGraph big = rotational_tournament(n + 1);
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v : big.out(u))
      if (v < n) edges.emplace_back(u, v);
  return OrientedGraph::from_edges(n, edges);
}

// Tournament on n = 18k+3 vertices with no perfect triangle packing:
// classes of sizes 6k, 6k+1, 6k+2 with all cross pairs oriented
// V_i -> V_{i+1} and a near-regular tournament inside each class. Every
// cyclic triangle has one vertex per class or all three in one class, so
// the class sizes stay pairwise distinct mod 3 under triangle removal and
// at least 3 vertices always remain uncovered.
inline OrientedGraph extremal_thm1(int k) {
  if (k < 1) throw std::invalid_argument("extremal_thm1: k >= 1 required");
  const Vertex n = 18 * k + 3;
  const std::array<Vertex, 3> sizes = {static_cast<Vertex>(6 * k), static_cast<Vertex>(6 * k + 1),
                                       static_cast<Vertex>(6 * k + 2)};
  std::array<Vertex, 3> start{};
  start[0] = 0;
  start[1] = sizes[0];
  start[2] = sizes[0] + sizes[1];
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    for (Vertex a = 0; a < sizes[i]; ++a)
      for (Vertex b = 0; b < sizes[j]; ++b) edges.emplace_back(start[i] + a, start[j] + b);
    OrientedGraph inner = near_regular_tournament(sizes[i]);
    for (Vertex u = 0; u < inner.n(); ++u)
      for (Vertex v : inner.out(u)) edges.emplace_back(start[i] + u, start[i] + v);
  }
  return OrientedGraph::from_edges(n, edges);
}

// Circulant with out-set {1, ..., ceil(m/3)-1}: no cyclic triangle, every
// semidegree ceil(m/3)-1.
inline OrientedGraph triangle_free_circulant(Vertex m) {
  if (m < 3) throw std::invalid_argument("triangle_free_circulant: m >= 3 required");
  const Vertex t = (m + 2) / 3 - 1;
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex v = 0; v < m; ++v)
    for (Vertex d = 1; d <= t; ++d) edges.emplace_back(v, (v + d) % m);
  return OrientedGraph::from_edges(m, edges);
}

// Three classes with all cross pairs V_i -> V_{i+1} and a triangle-free
// circulant inside each class; every cyclic triangle uses one vertex per
// class, so no packing covers more than 3*min(sizes) vertices.
inline OrientedGraph layered_circulant(Vertex n, std::array<Vertex, 3> sizes) {
  if (sizes[0] + sizes[1] + sizes[2] != n)
    throw std::invalid_argument("layered_circulant: sizes must sum to n");
  if (!(sizes[0] <= sizes[1] && sizes[1] <= sizes[2]))
    throw std::invalid_argument("layered_circulant: sizes must be nondecreasing");
  std::array<Vertex, 3> start{};
  start[0] = 0;
  start[1] = sizes[0];
  start[2] = sizes[0] + sizes[1];
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    for (Vertex a = 0; a < sizes[i]; ++a)
      for (Vertex b = 0; b < sizes[j]; ++b) edges.emplace_back(start[i] + a, start[j] + b);
    if (sizes[i] >= 3) {
      OrientedGraph inner = triangle_free_circulant(sizes[i]);
      for (Vertex u = 0; u < inner.n(); ++u)
        for (Vertex v : inner.out(u)) edges.emplace_back(start[i] + u, start[i] + v);
    }
  }
  return OrientedGraph::from_edges(n, edges);
}

// Each unordered pair oriented by one coin flip; identical (n, seed) gives
// identical graphs.
inline OrientedGraph random_tournament(Vertex n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random_tournament: n >= 1 required");
  Rng rng(seed);
  std::vector<std::pair<Vertex, Vertex>> edges;
  edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) {
      if (rng.next() & 1)
        edges.emplace_back(u, v);
      else
        edges.emplace_back(v, u);
    }
  return OrientedGraph::from_edges(n, edges);
}

enum class Family {
  rotational,
  near_regular,
  random_tournament,
  transitive,
  extremal_thm1,
  layered_circulant,
  triangle_free_circulant,
};

inline std::optional<Family> parse_family(const std::string& s) {
  if (s == "rotational") return Family::rotational;
  if (s == "near_regular") return Family::near_regular;
  if (s == "random_tournament" || s == "random") return Family::random_tournament;
  if (s == "transitive") return Family::transitive;
  if (s == "extremal_thm1" || s == "extremal") return Family::extremal_thm1;
  if (s == "layered_circulant" || s == "layered") return Family::layered_circulant;
  if (s == "triangle_free_circulant" || s == "triangle_free")
    return Family::triangle_free_circulant;
  return std::nullopt;
}

struct InstanceSpec {
  Family family{Family::rotational};
  Vertex n{0};
  int k{0};                        // extremal_thm1
  std::array<Vertex, 3> sizes{};   // layered_circulant
  std::uint64_t seed{0};
};

inline OrientedGraph generate(const InstanceSpec& spec) {
  switch (spec.family) {
    case Family::rotational:
      return rotational_tournament(spec.n);
    case Family::near_regular:
      return near_regular_tournament(spec.n, spec.seed);
    case Family::random_tournament:
      return random_tournament(spec.n, spec.seed);
    case Family::transitive:
      return transitive_tournament(spec.n);
    case Family::extremal_thm1: {
      int k = spec.k;
      if (k == 0 && spec.n > 0) {
        if (spec.n % 18 != 3)
          throw std::invalid_argument("extremal_thm1: n must be 3 mod 18");
        k = (spec.n - 3) / 18;
      }
      return extremal_thm1(k);
    }
    case Family::layered_circulant:
      return layered_circulant(spec.n, spec.sizes);
    case Family::triangle_free_circulant:
      return triangle_free_circulant(spec.n);
  }
  throw std::logic_error("generate: unknown family");
}

}  // namespace oripack
