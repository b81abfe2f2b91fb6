#pragma once

// Generic r-uniform hypergraph over dense vertex indices. Edges live in one
// flat array (stride r) so the million-edge triangle hypergraphs of n ~ 300
// tournaments stay cheap. The cyclic-triangle hypergraph is the instance of
// record; nothing here assumes r == 3.

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "oripack/oriented_graph.hpp"
#include "oripack/triangle_analysis.hpp"

namespace oripack {

class Hypergraph {
 public:
  Hypergraph() = default;
  Hypergraph(int r, Vertex n) : r_(r), n_(n) {
    if (r < 2) throw std::invalid_argument("Hypergraph: r >= 2 required");
    if (n < 0) throw std::invalid_argument("Hypergraph: n >= 0 required");
  }

  int r() const { return r_; }
  Vertex n() const { return n_; }
  std::size_t edge_count() const { return flat_.size() / static_cast<std::size_t>(r_); }

  std::span<const Vertex> edge(std::size_t i) const {
    return {flat_.data() + i * static_cast<std::size_t>(r_), static_cast<std::size_t>(r_)};
  }

  void add_edge(std::span<const Vertex> vs) {
    if (static_cast<int>(vs.size()) != r_)
      throw std::invalid_argument("Hypergraph: edge arity mismatch");
    std::vector<Vertex> sorted(vs.begin(), vs.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("Hypergraph: repeated vertex in edge");
    if (sorted.front() < 0 || sorted.back() >= n_)
      throw std::invalid_argument("Hypergraph: vertex out of range");
    flat_.insert(flat_.end(), sorted.begin(), sorted.end());
  }

  std::vector<long long> vertex_degrees() const {
    std::vector<long long> deg(n_, 0);
    for (Vertex v : flat_) ++deg[v];
    return deg;
  }

 private:
  int r_{3};
  Vertex n_{0};
  std::vector<Vertex> flat_;
};

// 3-uniform hypergraph whose edges are exactly the cyclic triangles of g.
inline Hypergraph triangle_hypergraph(const OrientedGraph& g) {
  Hypergraph h(3, g.n());
  for (const auto& t : enumerate_triangles(g)) h.add_edge(std::span<const Vertex>(t));
  return h;
}

}  // namespace oripack
