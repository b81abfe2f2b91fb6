#pragma once

// Semi-random nibble for near-perfect matchings in r-uniform hypergraphs.
// The matching grows in bites: every still-available edge is proposed
// independently with probability p, any two intersecting proposals are both
// discarded, and the survivors join the matching. A greedy completion pass
// turns the result into a maximal matching; at desk scale the completion
// does much of the covering at desk-scale n.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "oripack/hypergraph.hpp"
#include "oripack/rng.hpp"

namespace oripack {

struct BiteStats {
  double p{0};
  long long proposed{0};
  long long conflicted{0};  // proposals deleted because they intersect another
  long long kept{0};
};

struct NibbleTrace {
  std::vector<BiteStats> bites;
  std::vector<std::size_t> final_matching;  // edge indices, pairwise disjoint
  std::vector<Vertex> uncovered;
  bool regularity_warning{false};
  std::string warning;
};

struct BiteResult {
  std::vector<std::size_t> kept;
  std::vector<Vertex> removed_vertices;
  long long proposed{0};
  long long conflicted{0};
};

// One bite over an explicit set of available (pairwise vertex-valid) edges.
inline BiteResult bite(const Hypergraph& h, const std::vector<std::size_t>& available, double p,
                       Rng& rng) {
  BiteResult out;
  std::vector<std::size_t> proposed;
  for (std::size_t e : available)
    if (rng.bernoulli(p)) proposed.push_back(e);
  out.proposed = static_cast<long long>(proposed.size());
  std::vector<std::uint8_t> hits(h.n(), 0);
  for (std::size_t e : proposed)
    for (Vertex v : h.edge(e))
      if (hits[v] < 2) ++hits[v];
  for (std::size_t e : proposed) {
    bool clean = true;
    for (Vertex v : h.edge(e))
      if (hits[v] > 1) {
        clean = false;
        break;
      }
    if (clean) {
      out.kept.push_back(e);
      for (Vertex v : h.edge(e)) out.removed_vertices.push_back(v);
    } else {
      ++out.conflicted;
    }
  }
  return out;
}

inline BiteResult bite(const Hypergraph& h, const std::vector<std::size_t>& available, double p,
                       std::uint64_t seed) {
  Rng rng(seed);
  return bite(h, available, p, rng);
}

// Geometric bite schedule: p_i = c2 / n^(r-1) * gamma^i.
struct NibbleSchedule {
  double c2{0.5};
  double gamma{0.9};
  int max_bites{200};

  double p(const Hypergraph& h, int i) const {
    double p0 = c2;
    for (int j = 1; j < h.r(); ++j) p0 /= static_cast<double>(std::max<Vertex>(h.n(), 1));
    return std::min(1.0, p0 * std::pow(gamma, i));
  }
};

namespace detail {

// Degree spread and codegree check; failures become trace warnings, never
// hard errors. Codegrees are counted exactly by one sweep when n <= 2000
// and estimated from sampled pairs above that.
inline std::string regularity_warning(const Hypergraph& h, Rng& rng) {
  const std::size_t m = h.edge_count();
  if (m == 0) return "hypergraph has no edges";
  auto deg = h.vertex_degrees();
  long long lo = deg[0], hi = deg[0], sum = 0;
  for (long long d : deg) {
    lo = std::min(lo, d);
    hi = std::max(hi, d);
    sum += d;
  }
  const double mean = static_cast<double>(sum) / std::max<Vertex>(h.n(), 1);
  const double delta = 0.5;
  if (static_cast<double>(lo) < (1 - delta) * mean || static_cast<double>(hi) > (1 + delta) * mean)
    return "degrees not (1 +- 0.5) D: min " + std::to_string(lo) + " max " + std::to_string(hi) +
           " mean " + std::to_string(mean);

  const Vertex n = h.n();
  long long max_co = 0;
  if (n <= 2000) {
    std::vector<std::vector<long long>> co(n);
    for (Vertex v = 0; v < n; ++v) co[v].assign(n, 0);
    for (std::size_t e = 0; e < m; ++e) {
      auto ed = h.edge(e);
      for (std::size_t i = 0; i < ed.size(); ++i)
        for (std::size_t j = i + 1; j < ed.size(); ++j) ++co[ed[i]][ed[j]];
    }
    for (Vertex x = 0; x < n; ++x)
      for (Vertex y = x + 1; y < n; ++y) max_co = std::max(max_co, co[x][y]);
  } else {
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (int s = 0; s < 500; ++s) {
      Vertex x = static_cast<Vertex>(rng.index(n));
      Vertex y = static_cast<Vertex>(rng.index(n));
      if (x != y) pairs.emplace_back(std::min(x, y), std::max(x, y));
    }
    std::vector<long long> counts(pairs.size(), 0);
    for (std::size_t e = 0; e < m; ++e) {
      auto ed = h.edge(e);
      for (std::size_t t = 0; t < pairs.size(); ++t) {
        bool hx = false, hy = false;
        for (Vertex v : ed) {
          hx |= v == pairs[t].first;
          hy |= v == pairs[t].second;
        }
        counts[t] += hx && hy;
      }
    }
    for (long long c : counts) max_co = std::max(max_co, c);
  }
  if (static_cast<double>(max_co) > 0.5 * mean)
    return "codegree " + std::to_string(max_co) + " not small against mean degree " +
           std::to_string(mean);
  return {};
}

inline std::vector<std::size_t> all_edges(const Hypergraph& h) {
  std::vector<std::size_t> ids(h.edge_count());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
  return ids;
}

}  // namespace detail

// Runs bites until the uncovered fraction drops to eps or the schedule is
// exhausted, optionally starting from an existing partial matching.
inline NibbleTrace run_nibble_from(const Hypergraph& h, std::vector<std::size_t> initial_matching,
                                   double eps, const NibbleSchedule& schedule, Rng rng) {
  NibbleTrace trace;
  trace.warning = detail::regularity_warning(h, rng);
  trace.regularity_warning = !trace.warning.empty();

  std::vector<char> covered(h.n(), 0);
  trace.final_matching = std::move(initial_matching);
  for (std::size_t e : trace.final_matching)
    for (Vertex v : h.edge(e)) covered[v] = 1;

  long long uncovered = 0;
  for (char c : covered) uncovered += !c;

  std::vector<std::size_t> available;
  for (std::size_t e = 0; e < h.edge_count(); ++e) {
    bool free = true;
    for (Vertex v : h.edge(e)) free &= !covered[v];
    if (free) available.push_back(e);
  }

  const double target = eps * static_cast<double>(h.n());
  for (int i = 0; i < schedule.max_bites; ++i) {
    if (static_cast<double>(uncovered) <= target) break;
    if (available.empty()) break;
    const double p = schedule.p(h, i);
    BiteResult r = bite(h, available, p, rng);
    BiteStats stats;
    stats.p = p;
    stats.proposed = r.proposed;
    stats.conflicted = r.conflicted;
    stats.kept = static_cast<long long>(r.kept.size());
    trace.final_matching.insert(trace.final_matching.end(), r.kept.begin(), r.kept.end());
    for (Vertex v : r.removed_vertices) covered[v] = 1;
    uncovered -= static_cast<long long>(r.removed_vertices.size());
    std::vector<std::size_t> next;
    next.reserve(available.size());
    for (std::size_t e : available) {
      bool free = true;
      for (Vertex v : h.edge(e)) free &= !covered[v];
      if (free) next.push_back(e);
    }
    available.swap(next);
    trace.bites.push_back(stats);
  }

  for (Vertex v = 0; v < h.n(); ++v)
    if (!covered[v]) trace.uncovered.push_back(v);
  return trace;
}

inline NibbleTrace run_nibble(const Hypergraph& h, double eps, const NibbleSchedule& schedule,
                              std::uint64_t seed) {
  return run_nibble_from(h, {}, eps, schedule, Rng(seed).substream("nibble"));
}

// Extends a matching to a maximal one, scanning edges in seeded random order.
inline std::vector<std::size_t> greedy_complete(const Hypergraph& h,
                                                std::vector<std::size_t> matching, Rng& rng) {
  std::vector<char> covered(h.n(), 0);
  for (std::size_t e : matching)
    for (Vertex v : h.edge(e)) covered[v] = 1;
  std::vector<std::size_t> order = detail::all_edges(h);
  rng.shuffle(order);
  for (std::size_t e : order) {
    bool free = true;
    for (Vertex v : h.edge(e)) free &= !covered[v];
    if (!free) continue;
    matching.push_back(e);
    for (Vertex v : h.edge(e)) covered[v] = 1;
  }
  return matching;
}

inline std::vector<std::size_t> greedy_complete(const Hypergraph& h,
                                                std::vector<std::size_t> matching,
                                                std::uint64_t seed) {
  Rng rng = Rng(seed).substream("greedy-complete");
  return greedy_complete(h, std::move(matching), rng);
}

}  // namespace oripack
