#pragma once

// End-to-end packing pipelines.
//
//   pack_triangles    reserve bite -> nibble -> greedy completion ->
//                     absorption from the reserve -> local-search fallback
//   pack_k_cycles     greedy DFS extraction + exact local repair
//   pack_long_cycles  recursive bipartition until one length dominates,
//                     then one-by-one extraction and a Hamilton finish
//   pack_prescribed   rare lengths greedily, the rest via per-length blocks
//   pack_one_factor   reserved absorbing k-cycles + prescribed packing +
//                     Hamilton path on the leftover, spliced cycle by cycle
//
// Pipelines never throw on a stalled search: they return a report with
// target_met = false. Precondition violations (bad lengths, size mismatch)
// throw std::invalid_argument.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "oripack/absorbing.hpp"
#include "oripack/cycle_find.hpp"
#include "oripack/generators.hpp"
#include "oripack/hypergraph.hpp"
#include "oripack/nibble.hpp"
#include "oripack/oracle.hpp"
#include "oripack/oriented_graph.hpp"
#include "oripack/rng.hpp"
#include "oripack/triangle_analysis.hpp"

namespace oripack {

struct PackingConfig {
  double c = 0.05;             // assumed semidegree slack for prechecks
  double c2 = 0.5;             // reserve-bite density: p = c2 / n^2
  double nibble_gamma = 0.9;
  int nibble_max_bites = 200;
  double nibble_eps = 0.05;    // handoff target for the nibble phase
  int slack_C = 10;            // allowed uncovered count for pack_prescribed
  int long_M = 12;             // lengths above long_M are "long"
  double delta_long = 0.1;     // margin for the long-cycle recursion
  int one_factor_T = 3;
  Fraction goodness_a{1, 32};
  long long collection_budget = 60000;   // absorbing-triple sampling in a collection
  long long cycle_budget = 400000;       // find_cycle_of_length node budget
  int partition_resamples = 200;
  int repair_rounds = 300;
  int restart_limit = 6;                 // greedy restarts, small instances only
  int repair_pool_limit = 18;            // exact repair pool size cap
  int rare_min = 4;                      // desk-scale floor for the rare-length rule

  int default_k_target(int k) const { return k <= 3 ? 3 : 3 * (k - 1); }
};

struct PhaseStat {
  std::string name;
  std::vector<std::pair<std::string, double>> metrics;
};

struct PackingReport {
  std::string mode;
  std::uint64_t seed{0};
  bool target_met{false};
  std::string instance_sha256;  // filled at the CLI boundary
  std::vector<PhaseStat> phases;
  std::vector<std::string> warnings;
  CyclePacking packing;
  std::vector<Vertex> uncovered;
  long long wall_ms{0};
};

namespace detail {

struct PipelineStall : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  long long ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline std::array<Vertex, 3> sorted_triple(std::array<Vertex, 3> t) {
  std::sort(t.begin(), t.end());
  return t;
}

inline void semidegree_warning(const OrientedGraph& g, double fraction, const char* what,
                               std::vector<std::string>& warnings) {
  if (g.n() < 1) return;
  const auto prof = semidegree_profile(g);
  const double need = fraction * static_cast<double>(g.n());
  if (static_cast<double>(prof.min_semi) < need)
    warnings.push_back(std::string(what) + ": min semidegree " + std::to_string(prof.min_semi) +
                       " below " + std::to_string(need));
}

// Exact maximum triangle packing of the induced subgraph on `pool`,
// mapped back to host vertex ids.
inline std::vector<std::array<Vertex, 3>> exact_pool_triangles(const OrientedGraph& g,
                                                               const std::vector<Vertex>& pool) {
  auto sub = induced_subgraph(g, pool);
  auto [size, packing] = oracle_max_triangle_packing(sub.graph, 31);
  (void)size;
  std::vector<std::array<Vertex, 3>> out;
  for (auto t : packing)
    out.push_back({sub.vertices[t[0]], sub.vertices[t[1]], sub.vertices[t[2]]});
  return out;
}

}  // namespace detail

// Seeded random split of V(G) into |A| = m and the rest, resampled until
// both induced parts keep the host's proportional minimum semidegree up to
// tol. attempts counts the samples drawn.
struct PartitionResult {
  bool success{false};
  std::vector<Vertex> a, b;
  int attempts{0};
};

inline PartitionResult partition_subset(const OrientedGraph& g, const std::vector<Vertex>& subset,
                                        std::size_t m, double tol, Rng& rng, int resamples) {
  PartitionResult res;
  if (m > subset.size()) throw std::invalid_argument("partition_subset: m exceeds subset");

  // proportional semidegree of the graph being split
  std::vector<char> in_subset(g.n(), 0);
  for (Vertex v : subset) in_subset[v] = 1;
  auto min_semi_within = [&](const std::vector<Vertex>& part) {
    std::vector<char> mask(g.n(), 0);
    for (Vertex v : part) mask[v] = 1;
    long long best = static_cast<long long>(part.size());
    for (Vertex v : part) {
      long long dout = 0, din = 0;
      for (Vertex w : g.out(v)) dout += mask[w];
      for (Vertex w : g.in(v)) din += mask[w];
      best = std::min(best, std::min(dout, din));
    }
    return part.empty() ? 0LL : best;
  };
  const long long subset_semi = min_semi_within(subset);
  const double alpha =
      subset.empty() ? 0.0 : static_cast<double>(subset_semi) / static_cast<double>(subset.size());

  std::vector<Vertex> order(subset);
  for (int attempt = 0; attempt < resamples; ++attempt) {
    ++res.attempts;
    rng.shuffle(order);
    std::vector<Vertex> a(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(m));
    std::vector<Vertex> b(order.begin() + static_cast<std::ptrdiff_t>(m), order.end());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double need_a = (alpha - tol) * static_cast<double>(a.size());
    const double need_b = (alpha - tol) * static_cast<double>(b.size());
    if (static_cast<double>(min_semi_within(a)) >= need_a &&
        static_cast<double>(min_semi_within(b)) >= need_b) {
      res.success = true;
      res.a = std::move(a);
      res.b = std::move(b);
      return res;
    }
  }
  return res;
}

inline PartitionResult balanced_partition(const OrientedGraph& g, std::size_t m, double tol,
                                          std::uint64_t seed, int resamples = 200) {
  std::vector<Vertex> all(g.n());
  for (Vertex v = 0; v < g.n(); ++v) all[v] = v;
  Rng rng = Rng(seed).substream("partition");
  return partition_subset(g, all, m, tol, rng, resamples);
}

// ---------------------------------------------------------------------------
// pack_triangles

inline PackingReport pack_triangles(const OrientedGraph& g, std::uint64_t seed,
                                    const PackingConfig& config = {}) {
  detail::Stopwatch clock;
  PackingReport report;
  report.mode = "triangles";
  report.seed = seed;
  report.packing.host_n = g.n();
  detail::semidegree_warning(g, 0.5 - config.c, "pack_triangles", report.warnings);

  Rng rng(seed);
  const Hypergraph h = triangle_hypergraph(g);

  auto matching_to_packing = [&](const std::vector<std::size_t>& matching) {
    CyclePacking p;
    p.host_n = g.n();
    for (std::size_t e : matching) {
      auto ed = h.edge(e);
      auto cyc = oriented_triangle(g, ed[0], ed[1], ed[2]);
      p.cycles.emplace_back(cyc.begin(), cyc.end());
    }
    return p;
  };

  // reserve: the nibble's first bite, kept aside as the absorbing collection
  std::vector<std::size_t> all_edges(h.edge_count());
  for (std::size_t i = 0; i < all_edges.size(); ++i) all_edges[i] = i;
  const double n2 = static_cast<double>(g.n()) * static_cast<double>(std::max<Vertex>(g.n(), 1));
  const double p0 = g.n() > 0 ? config.c2 / n2 : 0.0;
  Rng reserve_rng = rng.substream("reserve");
  BiteResult reserve = bite(h, all_edges, std::min(1.0, p0), reserve_rng);
  std::set<std::array<Vertex, 3>> reserved;
  for (std::size_t e : reserve.kept) {
    auto ed = h.edge(e);
    reserved.insert(detail::sorted_triple({ed[0], ed[1], ed[2]}));
  }
  report.phases.push_back({"reserve",
                           {{"p", p0},
                            {"proposed", static_cast<double>(reserve.proposed)},
                            {"kept", static_cast<double>(reserve.kept.size())}}});

  // nibble continues from the reserve with the geometrically decaying tail
  NibbleSchedule tail{config.c2 * config.nibble_gamma, config.nibble_gamma,
                      config.nibble_max_bites - 1};
  NibbleTrace trace = run_nibble_from(h, reserve.kept, config.nibble_eps, tail,
                                      rng.substream("nibble"));
  if (trace.regularity_warning) report.warnings.push_back("nibble: " + trace.warning);
  report.phases.push_back(
      {"nibble",
       {{"bites", static_cast<double>(trace.bites.size())},
        {"matched", static_cast<double>(trace.final_matching.size())},
        {"uncovered", static_cast<double>(trace.uncovered.size())}}});

  Rng greedy_rng = rng.substream("greedy");
  std::vector<std::size_t> matching = greedy_complete(h, trace.final_matching, greedy_rng);
  CyclePacking packing = matching_to_packing(matching);
  report.phases.push_back(
      {"greedy", {{"triangles", static_cast<double>(packing.cycles.size())}}});

  // prune reserve to triangles that survived into the packing
  {
    std::set<std::array<Vertex, 3>> present;
    for (const auto& cyc : packing.cycles)
      present.insert(detail::sorted_triple({cyc[0], cyc[1], cyc[2]}));
    std::set<std::array<Vertex, 3>> kept;
    for (const auto& t : reserved)
      if (present.count(t)) kept.insert(t);
    reserved = std::move(kept);
  }

  long long absorptions = 0, fallback_absorptions = 0, swaps = 0, reshuffles = 0, restarts = 0;

  auto try_absorb = [&](const std::vector<std::array<Vertex, 3>>& collection, Rng& r) -> bool {
    auto uncov = packing.uncovered();
    if (uncov.size() < 4 || collection.size() < 3) return false;
    for (int grouping = 0; grouping < 5; ++grouping) {
      r.shuffle(uncov);
      std::array<Vertex, 4> q = {uncov[0], uncov[1], uncov[2], uncov[3]};
      auto t = find_absorbing_triple_in(g, q, collection, r, config.collection_budget);
      if (!t) continue;
      packing = absorb_quadruple(g, packing, q, *t);
      for (const auto& tri : t->packed_triangles()) reserved.erase(detail::sorted_triple(tri));
      return true;
    }
    return false;
  };

  // absorption against the reserved collection
  Rng absorb_rng = rng.substream("absorb");
  while (packing.uncovered().size() >= 4) {
    std::vector<std::array<Vertex, 3>> collection(reserved.begin(), reserved.end());
    if (!try_absorb(collection, absorb_rng)) break;
    ++absorptions;
  }
  report.phases.push_back({"absorb", {{"absorptions", static_cast<double>(absorptions)}}});

  // fallback: absorption against every packed triangle, then exact local
  // repair on small pools, then (tiny instances) full greedy restarts
  Rng fb_rng = rng.substream("fallback");
  auto all_triangles = [&]() {
    std::vector<std::array<Vertex, 3>> ts;
    for (const auto& cyc : packing.cycles)
      if (cyc.size() == 3) ts.push_back({cyc[0], cyc[1], cyc[2]});
    return ts;
  };
  auto remove_triangles = [&](const std::vector<std::array<Vertex, 3>>& doomed) {
    std::set<std::array<Vertex, 3>> gone;
    for (const auto& t : doomed) gone.insert(detail::sorted_triple(t));
    CyclePacking next;
    next.host_n = packing.host_n;
    for (auto& cyc : packing.cycles) {
      if (cyc.size() == 3 &&
          gone.count(detail::sorted_triple({cyc[0], cyc[1], cyc[2]})))
        continue;
      next.cycles.push_back(cyc);
    }
    packing = std::move(next);
    for (const auto& t : gone) reserved.erase(t);
  };
  auto add_triangles = [&](const std::vector<std::array<Vertex, 3>>& found) {
    for (const auto& t : found) {
      auto cyc = oriented_triangle(g, t[0], t[1], t[2]);
      packing.cycles.emplace_back(cyc.begin(), cyc.end());
    }
  };

  // Below 3 uncovered the coverage is provably maximum (it moves in steps
  // of 3), so stop there. At exactly 3 the pipeline target is met, but on
  // small instances a perfect packing may still exist; keep polishing.
  const bool polish_small = g.n() <= 36;
  for (int round = 0; round < config.repair_rounds; ++round) {
    auto uncov = packing.uncovered();
    if (uncov.size() < 3) break;
    if (uncov.size() == 3 && !polish_small) break;

    if (try_absorb(all_triangles(), fb_rng)) {
      ++fallback_absorptions;
      continue;
    }

    bool moved = false;
    const int cap = config.repair_pool_limit;

    // pool = uncovered alone
    if (static_cast<int>(uncov.size()) <= cap) {
      auto found = detail::exact_pool_triangles(g, uncov);
      if (!found.empty()) {
        add_triangles(found);
        ++swaps;
        moved = true;
      }
    }
    // pool = uncovered plus one packed triangle: apply when two come back
    if (!moved) {
      auto tris = all_triangles();
      fb_rng.shuffle(tris);
      const std::size_t tries = std::min<std::size_t>(tris.size(), 48);
      for (std::size_t i = 0; i < tries && !moved; ++i) {
        std::vector<Vertex> pool(uncov);
        pool.insert(pool.end(), tris[i].begin(), tris[i].end());
        if (static_cast<int>(pool.size()) > cap) continue;
        auto found = detail::exact_pool_triangles(g, pool);
        if (found.size() >= 2) {
          remove_triangles({tris[i]});
          add_triangles(found);
          ++swaps;
          moved = true;
        }
      }
    }
    // pool = uncovered plus two packed triangles: apply when three come back
    if (!moved) {
      auto tris = all_triangles();
      if (tris.size() >= 2) {
        for (int t = 0; t < 64 && !moved; ++t) {
          std::size_t i = fb_rng.index(tris.size());
          std::size_t j = fb_rng.index(tris.size());
          if (i == j) continue;
          std::vector<Vertex> pool(uncov);
          pool.insert(pool.end(), tris[i].begin(), tris[i].end());
          pool.insert(pool.end(), tris[j].begin(), tris[j].end());
          if (static_cast<int>(pool.size()) > cap) continue;
          auto found = detail::exact_pool_triangles(g, pool);
          if (found.size() >= 3) {
            remove_triangles({tris[i], tris[j]});
            add_triangles(found);
            ++swaps;
            moved = true;
          }
        }
      }
    }
    if (moved) continue;

    // coverage-preserving reshuffle: re-cover one triangle's pool a
    // different way so the next round sees a different uncovered set
    {
      auto tris = all_triangles();
      fb_rng.shuffle(tris);
      for (std::size_t i = 0; i < std::min<std::size_t>(tris.size(), 24) && !moved; ++i) {
        std::vector<Vertex> pool(uncov);
        pool.insert(pool.end(), tris[i].begin(), tris[i].end());
        if (static_cast<int>(pool.size()) > cap) continue;
        auto found = detail::exact_pool_triangles(g, pool);
        if (found.size() == 1 && detail::sorted_triple(found[0]) !=
                                     detail::sorted_triple(tris[i])) {
          remove_triangles({tris[i]});
          add_triangles(found);
          ++reshuffles;
          moved = true;
        }
      }
    }
    if (moved) continue;

    // tiny instances: restart the greedy phase outright
    if (g.n() <= 36 && restarts < config.restart_limit) {
      Rng restart_rng = rng.substream("restart", static_cast<std::uint64_t>(restarts));
      auto fresh = greedy_complete(h, {}, restart_rng);
      CyclePacking candidate = matching_to_packing(fresh);
      ++restarts;
      if (candidate.covered_count() >= packing.covered_count()) {
        packing = std::move(candidate);
        reserved.clear();
      }
      continue;
    }
    break;
  }
  report.phases.push_back({"fallback",
                           {{"absorptions", static_cast<double>(fallback_absorptions)},
                            {"swaps", static_cast<double>(swaps)},
                            {"reshuffles", static_cast<double>(reshuffles)},
                            {"restarts", static_cast<double>(restarts)}}});

  report.packing = std::move(packing);
  report.uncovered = report.packing.uncovered();
  report.target_met = report.uncovered.size() <= 3;
  report.wall_ms = clock.ms();
  return report;
}

// ---------------------------------------------------------------------------
// pack_k_cycles

inline PackingReport pack_k_cycles(const OrientedGraph& g, int k, std::uint64_t seed,
                                   const PackingConfig& config = {}, int target_uncovered = -1) {
  if (k < 3) throw std::invalid_argument("pack_k_cycles: k >= 3 required");
  if (k == 3) {
    PackingReport r = pack_triangles(g, seed, config);
    r.mode = "k-cycles";
    return r;
  }
  detail::Stopwatch clock;
  PackingReport report;
  report.mode = "k-cycles";
  report.seed = seed;
  report.packing.host_n = g.n();
  detail::semidegree_warning(g, 0.5 - config.c, "pack_k_cycles", report.warnings);
  const int target = target_uncovered >= 0 ? target_uncovered : config.default_k_target(k);

  Rng rng(seed);
  CyclePacking packing;
  packing.host_n = g.n();

  // greedy extraction
  {
    long long found = 0;
    for (std::uint64_t i = 0;; ++i) {
      auto covered = packing.covered_mask();
      std::vector<Vertex> forbidden;
      for (Vertex v = 0; v < g.n(); ++v)
        if (covered[v]) forbidden.push_back(v);
      auto c = find_cycle_of_length(g, k, forbidden,
                                    rng.substream("kgreedy", i).root_seed(), config.cycle_budget);
      if (!c) break;
      packing.cycles.push_back(*c);
      ++found;
    }
    report.phases.push_back({"greedy", {{"cycles", static_cast<double>(found)}}});
  }

  // exact local repair on small pools
  Rng repair_rng = rng.substream("krepair");
  long long additions = 0, swaps = 0, exchanges = 0;
  const Vertex pool_cap = 16;

  auto pool_cycles = [&](const std::vector<Vertex>& pool, int want) {
    // best-effort: most k-cycles the pool can host, found exactly
    std::optional<std::vector<std::vector<Vertex>>> best;
    for (int cnt = want; cnt >= 1 && !best; --cnt) {
      if (cnt * k > static_cast<int>(pool.size())) continue;
      auto sub = induced_subgraph(g, pool);
      auto w = oracle_prescribed_feasible(sub.graph, std::vector<int>(cnt, k), 31);
      if (w) {
        best.emplace();
        for (auto& cyc : *w) {
          std::vector<Vertex> mapped;
          for (Vertex v : cyc) mapped.push_back(sub.vertices[v]);
          best->push_back(std::move(mapped));
        }
      }
    }
    return best;
  };

  // On small instances polish past the target: below k uncovered the cycle
  // count is maximal, so that is the natural floor.
  const bool polish_small_k = g.n() <= 36;
  for (int round = 0; round < config.repair_rounds; ++round) {
    auto uncov = packing.uncovered();
    if (static_cast<int>(uncov.size()) < k) break;
    if (static_cast<int>(uncov.size()) <= target && !polish_small_k) break;
    bool moved = false;

    if (static_cast<int>(uncov.size()) >= k && static_cast<int>(uncov.size()) <= pool_cap) {
      auto found = pool_cycles(uncov, static_cast<int>(uncov.size()) / k);
      if (found) {
        for (auto& c : *found) packing.cycles.push_back(std::move(c));
        ++additions;
        moved = true;
      }
    }
    if (!moved && !packing.cycles.empty()) {
      for (int t = 0; t < 40 && !moved; ++t) {
        std::size_t idx = repair_rng.index(packing.cycles.size());
        std::vector<Vertex> pool(uncov);
        pool.insert(pool.end(), packing.cycles[idx].begin(), packing.cycles[idx].end());
        if (static_cast<int>(pool.size()) > pool_cap) break;
        auto found = pool_cycles(pool, static_cast<int>(pool.size()) / k);
        if (found && found->size() >= 2) {
          packing.cycles.erase(packing.cycles.begin() + static_cast<std::ptrdiff_t>(idx));
          for (auto& c : *found) packing.cycles.push_back(std::move(c));
          ++swaps;
          moved = true;
        }
      }
    }
    if (!moved && packing.cycles.size() >= 2) {
      // two cycles out, three in
      for (int t = 0; t < 48 && !moved; ++t) {
        std::size_t i = repair_rng.index(packing.cycles.size());
        std::size_t j = repair_rng.index(packing.cycles.size());
        if (i == j) continue;
        std::vector<Vertex> pool(uncov);
        pool.insert(pool.end(), packing.cycles[i].begin(), packing.cycles[i].end());
        pool.insert(pool.end(), packing.cycles[j].begin(), packing.cycles[j].end());
        if (static_cast<int>(pool.size()) > pool_cap) break;
        auto found = pool_cycles(pool, static_cast<int>(pool.size()) / k);
        if (found && found->size() >= 3) {
          if (i < j) std::swap(i, j);
          packing.cycles.erase(packing.cycles.begin() + static_cast<std::ptrdiff_t>(i));
          packing.cycles.erase(packing.cycles.begin() + static_cast<std::ptrdiff_t>(j));
          for (auto& c : *found) packing.cycles.push_back(std::move(c));
          ++swaps;
          moved = true;
        }
      }
    }
    if (!moved && !uncov.empty() && !packing.cycles.empty()) {
      // exchange an uncovered vertex into a cycle, shortcutting another out
      for (int t = 0; t < 20 && !moved; ++t) {
        Vertex x = uncov[repair_rng.index(uncov.size())];
        auto match = find_absorbing_cycle_for_path(
            g, {x}, packing.cycles, repair_rng.substream("exch", round).root_seed());
        if (!match) break;
        auto widened = splice(*match);  // k+1 vertices
        for (std::size_t drop = 0; drop < widened.size() && !moved; ++drop) {
          if (widened[drop] == x) continue;
          const Vertex prev = widened[(drop + widened.size() - 1) % widened.size()];
          const Vertex next = widened[(drop + 1) % widened.size()];
          if (!g.contains(prev, next)) continue;
          std::vector<Vertex> shrunk;
          for (std::size_t i = 0; i < widened.size(); ++i)
            if (i != drop) shrunk.push_back(widened[i]);
          for (auto& cyc : packing.cycles)
            if (cyc == match->cycle) {
              cyc = shrunk;
              moved = true;
              ++exchanges;
              break;
            }
        }
      }
    }
    if (!moved) break;
  }
  report.phases.push_back({"repair",
                           {{"additions", static_cast<double>(additions)},
                            {"swaps", static_cast<double>(swaps)},
                            {"exchanges", static_cast<double>(exchanges)}}});

  report.packing = std::move(packing);
  report.uncovered = report.packing.uncovered();
  report.target_met = static_cast<int>(report.uncovered.size()) <= target;
  report.wall_ms = clock.ms();
  return report;
}

// ---------------------------------------------------------------------------
// pack_long_cycles

namespace detail {

struct LongCycleContext {
  const OrientedGraph& g;
  const PackingConfig& config;
  Rng rng;
  CyclePacking& packing;
  int max_depth{0};
  std::uint64_t counter{0};

  std::vector<Vertex> complement_of(const std::vector<Vertex>& subset) {
    std::vector<char> in(g.n(), 0);
    for (Vertex v : subset) in[v] = 1;
    std::vector<Vertex> out;
    for (Vertex v = 0; v < g.n(); ++v)
      if (!in[v]) out.push_back(v);
    return out;
  }

  std::vector<Vertex> extract(const std::vector<Vertex>& subset, int len) {
    auto forbidden = complement_of(subset);
    auto c = find_cycle_of_length(g, len, forbidden,
                                  rng.substream("long-extract", counter++).root_seed(),
                                  config.cycle_budget);
    if (!c)
      throw PipelineStall("no cycle of length " + std::to_string(len) + " found in a part of " +
                          std::to_string(subset.size()) + " vertices");
    return *c;
  }

  void solve(std::vector<Vertex> subset, std::vector<int> lengths, int depth) {
    max_depth = std::max(max_depth, depth);
    if (lengths.empty()) return;
    std::sort(lengths.begin(), lengths.end(), std::greater<>());
    const double case1_bar = (1.0 - config.delta_long / 2) * static_cast<double>(subset.size());

    if (lengths.size() == 1 || static_cast<double>(lengths.front()) > case1_bar) {
      // extract every other length one by one, then finish with a
      // spanning cycle of the residue
      std::vector<char> in(g.n(), 0);
      for (Vertex v : subset) in[v] = 1;
      for (std::size_t i = 1; i < lengths.size(); ++i) {
        std::vector<Vertex> current;
        for (Vertex v = 0; v < g.n(); ++v)
          if (in[v]) current.push_back(v);
        auto cyc = extract(current, lengths[i]);
        packing.cycles.push_back(cyc);
        for (Vertex v : cyc) in[v] = 0;
      }
      std::vector<Vertex> residue;
      for (Vertex v = 0; v < g.n(); ++v)
        if (in[v]) residue.push_back(v);
      if (static_cast<int>(residue.size()) != lengths.front())
        throw PipelineStall("long-cycle residue size mismatch");
      packing.cycles.push_back(extract(residue, lengths.front()));
      return;
    }

    // split the lengths so both sides stay below the case-1 bar, then
    // partition the vertices to match
    std::vector<int> left, right;
    long long sum_l = 0, sum_r = 0;
    for (int len : lengths) {
      if (sum_l <= sum_r) {
        left.push_back(len);
        sum_l += len;
      } else {
        right.push_back(len);
        sum_r += len;
      }
    }
    if (static_cast<double>(sum_l) > case1_bar || static_cast<double>(sum_r) > case1_bar)
      throw PipelineStall("length split exceeds the case-1 bar");
    const double tol = std::pow(static_cast<double>(subset.size()), -1.0 / 3.0);
    Rng part_rng = rng.substream("long-partition", counter++);
    auto part = partition_subset(g, subset, static_cast<std::size_t>(sum_l), tol, part_rng,
                                 config.partition_resamples);
    if (!part.success) throw PipelineStall("balanced partition resample budget exhausted");
    solve(std::move(part.a), std::move(left), depth + 1);
    solve(std::move(part.b), std::move(right), depth + 1);
  }
};

inline void pack_long_in_subset(const OrientedGraph& g, const PackingConfig& config, Rng rng,
                                const std::vector<Vertex>& subset, std::vector<int> lengths,
                                CyclePacking& packing, PackingReport& report) {
  long long sum = 0;
  for (int len : lengths) {
    if (len < config.long_M)
      throw std::invalid_argument("pack_long_cycles: length " + std::to_string(len) +
                                  " below long threshold M=" + std::to_string(config.long_M));
    sum += len;
  }
  if (sum != static_cast<long long>(subset.size()))
    throw std::invalid_argument("pack_long_cycles: lengths must sum to the vertex count");
  LongCycleContext ctx{g, config, rng, packing};
  ctx.solve(subset, std::move(lengths), 0);
  report.phases.push_back({"long", {{"max_depth", static_cast<double>(ctx.max_depth)}}});
}

}  // namespace detail

inline PackingReport pack_long_cycles(const OrientedGraph& g, const std::vector<int>& lengths,
                                      std::uint64_t seed, const PackingConfig& config = {}) {
  detail::Stopwatch clock;
  PackingReport report;
  report.mode = "long";
  report.seed = seed;
  report.packing.host_n = g.n();
  detail::semidegree_warning(g, 3.0 / 8 + config.delta_long, "pack_long_cycles", report.warnings);

  std::vector<Vertex> all(g.n());
  for (Vertex v = 0; v < g.n(); ++v) all[v] = v;
  try {
    detail::pack_long_in_subset(g, config, Rng(seed), all, lengths, report.packing, report);
    report.target_met = true;
  } catch (const detail::PipelineStall& stall) {
    report.warnings.push_back(stall.what());
    report.target_met = false;
  }
  report.uncovered = report.packing.uncovered();
  report.wall_ms = clock.ms();
  return report;
}

// ---------------------------------------------------------------------------
// pack_prescribed

inline PackingReport pack_prescribed(const OrientedGraph& g, const std::vector<int>& lengths,
                                     std::uint64_t seed, const PackingConfig& config = {}) {
  detail::Stopwatch clock;
  long long total = 0;
  for (int len : lengths) {
    if (len < 3) throw std::invalid_argument("pack_prescribed: cycle length < 3");
    total += len;
  }
  if (total > static_cast<long long>(g.n()) - config.slack_C)
    throw std::invalid_argument("pack_prescribed: lengths sum " + std::to_string(total) +
                                " exceeds n - slack_C = " +
                                std::to_string(g.n() - config.slack_C));

  PackingReport report;
  report.mode = "prescribed";
  report.seed = seed;
  report.packing.host_n = g.n();
  detail::semidegree_warning(g, 0.5 - config.c, "pack_prescribed", report.warnings);

  // one rare-length rule for the greedy phase: few copies of a length are
  // packed one by one before any partitioning
  std::map<int, int> small_counts;
  std::vector<int> long_lengths;
  for (int len : lengths) {
    if (len <= config.long_M)
      ++small_counts[len];
    else
      long_lengths.push_back(len);
  }
  const double rare_bar =
      std::max(static_cast<double>(config.rare_min),
               config.c * static_cast<double>(g.n()) /
                   (4.0 * static_cast<double>(config.long_M) * config.long_M));

  const int slack = static_cast<int>(static_cast<long long>(g.n()) - total);

  Rng root(seed);
  for (int attempt = 0; attempt < 3; ++attempt) {
    CyclePacking packing;
    packing.host_n = g.n();
    Rng rng = root.substream("prescribed", static_cast<std::uint64_t>(attempt));
    long long greedy_count = 0, block_count = 0;
    try {
      std::vector<char> in_pool(g.n(), 1);
      auto pool_vertices = [&]() {
        std::vector<Vertex> pool;
        for (Vertex v = 0; v < g.n(); ++v)
          if (in_pool[v]) pool.push_back(v);
        return pool;
      };
      auto forbidden_vertices = [&]() {
        std::vector<Vertex> f;
        for (Vertex v = 0; v < g.n(); ++v)
          if (!in_pool[v]) f.push_back(v);
        return f;
      };

      // rare lengths, longest first
      std::vector<int> rare, blocks;
      for (auto [k, cnt] : small_counts)
        (static_cast<double>(cnt) < rare_bar ? rare : blocks).push_back(k);
      std::sort(rare.begin(), rare.end(), std::greater<>());
      std::sort(blocks.begin(), blocks.end(), std::greater<>());
      std::uint64_t cyc_counter = 0;
      for (int k : rare)
        for (int copy = 0; copy < small_counts[k]; ++copy) {
          auto c = find_cycle_of_length(g, k, forbidden_vertices(),
                                        rng.substream("rare", cyc_counter++).root_seed(),
                                        config.cycle_budget);
          if (!c)
            throw detail::PipelineStall("rare greedy: no " + std::to_string(k) + "-cycle found");
          for (Vertex v : *c) in_pool[v] = 0;
          packing.cycles.push_back(std::move(*c));
          ++greedy_count;
        }

      // per-length blocks carved by balanced partition
      int slack_left = slack;
      std::uint64_t block_counter = 0;
      for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
        const int k = blocks[bi];
        const int want = small_counts[k];
        const int preferred = k == 3 ? 5 : std::min(k - 1, 3);
        const int extra = std::min(preferred, slack_left);
        slack_left -= extra;
        const std::size_t block_size = static_cast<std::size_t>(k) * want + extra;

        bool block_done = false;
        for (int retry = 0; retry < 3 && !block_done; ++retry) {
          auto pool = pool_vertices();
          if (pool.size() < block_size) throw detail::PipelineStall("pool too small for block");
          const double tol = std::pow(static_cast<double>(pool.size()), -1.0 / 3.0);
          Rng part_rng = rng.substream("block-part", block_counter++);
          auto part =
              partition_subset(g, pool, block_size, tol, part_rng, config.partition_resamples);
          if (!part.success) continue;
          auto sub = induced_subgraph(g, part.a);
          PackingConfig block_config = config;
          block_config.repair_rounds = std::max(50, config.repair_rounds / 4);
          auto rep = pack_k_cycles(sub.graph, k,
                                   rng.substream("block-pack", block_counter++).root_seed(),
                                   block_config, extra);
          if (static_cast<int>(rep.packing.cycles.size()) < want) continue;
          for (int i = 0; i < want; ++i) {
            std::vector<Vertex> mapped;
            for (Vertex v : rep.packing.cycles[i]) mapped.push_back(sub.vertices[v]);
            packing.cycles.push_back(std::move(mapped));
          }
          for (Vertex v : part.a) in_pool[v] = 0;
          block_done = true;
          ++block_count;
        }
        if (!block_done)
          throw detail::PipelineStall("block for k=" + std::to_string(k) + " failed");
      }

      // the long block gets exactly the right number of vertices
      if (!long_lengths.empty()) {
        long long long_sum = 0;
        for (int len : long_lengths) long_sum += len;
        auto pool = pool_vertices();
        if (static_cast<long long>(pool.size()) < long_sum)
          throw detail::PipelineStall("pool too small for the long block");
        const double tol = std::pow(static_cast<double>(pool.size()), -1.0 / 3.0);
        Rng part_rng = rng.substream("long-part");
        auto part = partition_subset(g, pool, static_cast<std::size_t>(long_sum), tol, part_rng,
                                     config.partition_resamples);
        if (!part.success) throw detail::PipelineStall("long block partition failed");
        detail::pack_long_in_subset(g, config, rng.substream("long-pack"), part.a, long_lengths,
                                    packing, report);
        for (Vertex v : part.a) in_pool[v] = 0;
      }

      report.packing = std::move(packing);
      report.target_met = true;
      report.phases.push_back({"prescribed",
                               {{"attempt", static_cast<double>(attempt)},
                                {"greedy_cycles", static_cast<double>(greedy_count)},
                                {"blocks", static_cast<double>(block_count)}}});
      break;
    } catch (const detail::PipelineStall& stall) {
      report.warnings.push_back("attempt " + std::to_string(attempt) + ": " + stall.what());
      report.packing = std::move(packing);  // keep the partial result
      report.target_met = false;
    }
  }

  report.uncovered = report.packing.uncovered();
  report.wall_ms = clock.ms();
  return report;
}

// ---------------------------------------------------------------------------
// pack_one_factor

inline PackingReport pack_one_factor(const OrientedGraph& g, const std::vector<int>& lengths,
                                     std::uint64_t seed, const PackingConfig& config = {}) {
  detail::Stopwatch clock;
  long long total = 0;
  int min_len = g.n();
  for (int len : lengths) {
    if (len < 3) throw std::invalid_argument("pack_one_factor: cycle length < 3");
    total += len;
    min_len = std::min(min_len, len);
  }
  if (total != static_cast<long long>(g.n()))
    throw std::invalid_argument("pack_one_factor: lengths must sum to n");

  PackingReport report;
  report.mode = "one-factor";
  report.seed = seed;
  report.packing.host_n = g.n();
  if (!is_tournament(g)) report.warnings.push_back("pack_one_factor: host is not a tournament");
  detail::semidegree_warning(g, 0.5 - config.c, "pack_one_factor", report.warnings);

  // shape condition: some k <= M has at least T log n copies, and at least
  // T lengths lie in (k, M]
  const double t_log_n =
      static_cast<double>(config.one_factor_T) * std::log(std::max<double>(g.n(), 2));
  const int reserve_k_copies = static_cast<int>(std::ceil(t_log_n));
  std::map<int, int> count_of;
  for (int len : lengths) ++count_of[len];
  int shape_k = -1;
  for (auto [k, cnt] : count_of) {
    if (k > config.long_M || cnt < reserve_k_copies) continue;
    int mids = 0;
    for (auto [l, c] : count_of)
      if (l > k && l <= config.long_M) mids += c;
    if (mids >= config.one_factor_T) {
      shape_k = k;
      break;
    }
  }

  Rng rng(seed);
  if (shape_k < 0) {
    report.warnings.push_back("shape condition fails: no k with enough copies and mid lengths");
    if (min_len >= config.long_M) {
      // all lengths long: the splitting route applies directly
      std::vector<Vertex> all(g.n());
      for (Vertex v = 0; v < g.n(); ++v) all[v] = v;
      try {
        detail::pack_long_in_subset(g, config, rng.substream("of-long"), all, lengths,
                                    report.packing, report);
        report.target_met = true;
      } catch (const detail::PipelineStall& stall) {
        report.warnings.push_back(stall.what());
      }
    } else {
      // best effort: prescribed packing with zero slack
      PackingConfig zero = config;
      zero.slack_C = 0;
      PackingReport inner = pack_prescribed(g, lengths, rng.substream("of-full").root_seed(), zero);
      report.packing = std::move(inner.packing);
      report.phases = std::move(inner.phases);
      for (auto& w : inner.warnings) report.warnings.push_back(w);
      report.target_met = inner.target_met && report.packing.uncovered().empty();
    }
    report.uncovered = report.packing.uncovered();
    report.wall_ms = clock.ms();
    return report;
  }

  const int k = shape_k;
  const int reserve_size = reserve_k_copies + config.one_factor_T;

  for (int attempt = 0; attempt < 3 && !report.target_met; ++attempt) {
    CyclePacking packing;
    packing.host_n = g.n();
    Rng arng = rng.substream("of-attempt", static_cast<std::uint64_t>(attempt));
    try {
      // reserve vertex-disjoint absorbing k-cycles
      std::vector<std::vector<Vertex>> reserved;
      std::vector<Vertex> used;
      for (int i = 0; i < reserve_size; ++i) {
        auto c = find_cycle_of_length(g, k, used, arng.substream("reserve", i).root_seed(),
                                      config.cycle_budget);
        if (!c) throw detail::PipelineStall("could not reserve enough " + std::to_string(k) +
                                            "-cycles");
        for (Vertex v : *c) used.push_back(v);
        reserved.push_back(std::move(*c));
      }

      // the T mid lengths to be spliced, smallest first
      std::vector<int> mids;
      for (int len : lengths)
        if (len > k && len <= config.long_M) mids.push_back(len);
      std::sort(mids.begin(), mids.end());
      mids.resize(static_cast<std::size_t>(config.one_factor_T));

      // remaining sequence: drop the mids and the reserved copies of k
      std::vector<int> rest(lengths);
      auto drop_one = [&](int value) {
        auto it = std::find(rest.begin(), rest.end(), value);
        if (it == rest.end()) throw detail::PipelineStall("length bookkeeping failed");
        rest.erase(it);
      };
      for (int len : mids) drop_one(len);
      for (int i = 0; i < reserve_k_copies; ++i) drop_one(k);

      // prescribed packing on the rest of the graph
      std::vector<char> reserved_mask(g.n(), 0);
      for (Vertex v : used) reserved_mask[v] = 1;
      std::vector<Vertex> rest_vertices;
      for (Vertex v = 0; v < g.n(); ++v)
        if (!reserved_mask[v]) rest_vertices.push_back(v);
      auto sub = induced_subgraph(g, rest_vertices);
      long long leftover = 0;
      for (int len : mids) leftover += len - k;
      PackingConfig inner_config = config;
      inner_config.slack_C = static_cast<int>(leftover);
      PackingReport inner = pack_prescribed(
          sub.graph, rest, arng.substream("prescribed").root_seed(), inner_config);
      if (!inner.target_met) throw detail::PipelineStall("prescribed phase unmet");
      for (auto& cyc : inner.packing.cycles) {
        std::vector<Vertex> mapped;
        for (Vertex v : cyc) mapped.push_back(sub.vertices[v]);
        packing.cycles.push_back(std::move(mapped));
      }

      // leftover vertices carry a Hamilton path (tournament insertion)
      std::vector<Vertex> leftover_vs;
      for (Vertex v : inner.packing.uncovered()) leftover_vs.push_back(sub.vertices[v]);
      if (static_cast<long long>(leftover_vs.size()) != leftover)
        throw detail::PipelineStall("leftover size mismatch");

      // split the path into segments of sizes mids[i] - k and splice each
      // with a reserved cycle; retry over seeded arrangements
      bool spliced_all = false;
      for (int perm = 0; perm < 40 && !spliced_all; ++perm) {
        Rng prng = arng.substream("splice", static_cast<std::uint64_t>(perm));
        std::vector<Vertex> order(leftover_vs);
        prng.shuffle(order);
        std::vector<Vertex> path;
        try {
          path = hamilton_path_tournament(g, order);
        } catch (const std::invalid_argument&) {
          break;  // not a tournament here; no insertion path
        }
        std::vector<int> sizes;
        for (int len : mids) sizes.push_back(len - k);
        prng.shuffle(sizes);

        std::vector<std::vector<Vertex>> spliced;
        std::vector<char> cycle_used(reserved.size(), 0);
        bool ok = true;
        std::size_t at = 0;
        for (std::size_t si = 0; si < sizes.size() && ok; ++si) {
          std::vector<Vertex> segment(path.begin() + static_cast<std::ptrdiff_t>(at),
                                      path.begin() + static_cast<std::ptrdiff_t>(at + sizes[si]));
          at += static_cast<std::size_t>(sizes[si]);
          std::vector<std::vector<Vertex>> candidates;
          std::vector<std::size_t> candidate_ids;
          for (std::size_t ci = 0; ci < reserved.size(); ++ci)
            if (!cycle_used[ci]) {
              candidates.push_back(reserved[ci]);
              candidate_ids.push_back(ci);
            }
          auto match = find_absorbing_cycle_for_path(
              g, segment, candidates, prng.substream("match", si).root_seed());
          if (!match) {
            ok = false;
            break;
          }
          for (std::size_t ci = 0; ci < candidates.size(); ++ci)
            if (candidates[ci] == match->cycle) {
              cycle_used[candidate_ids[ci]] = 1;
              break;
            }
          spliced.push_back(splice(*match));
        }
        if (!ok) continue;

        for (auto& cyc : spliced) packing.cycles.push_back(std::move(cyc));
        for (std::size_t ci = 0; ci < reserved.size(); ++ci)
          if (!cycle_used[ci]) packing.cycles.push_back(reserved[ci]);
        spliced_all = true;
      }
      if (!spliced_all) throw detail::PipelineStall("splice phase failed");

      report.packing = std::move(packing);
      report.target_met = report.packing.uncovered().empty();
      report.phases.push_back({"one-factor",
                               {{"attempt", static_cast<double>(attempt)},
                                {"k", static_cast<double>(k)},
                                {"reserved", static_cast<double>(reserve_size)}}});
    } catch (const detail::PipelineStall& stall) {
      report.warnings.push_back("attempt " + std::to_string(attempt) + ": " + stall.what());
      if (report.packing.cycles.empty()) report.packing = std::move(packing);
    }
  }

  report.uncovered = report.packing.uncovered();
  report.wall_ms = clock.ms();
  return report;
}

}  // namespace oripack
