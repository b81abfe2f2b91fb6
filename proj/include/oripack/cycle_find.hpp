#pragma once

// Constructive cycle search. Short cycles come from randomized bounded DFS;
// long cycles from randomized path growth with directed rotations and a
// closing-edge search. Tournaments additionally get a Hamilton path by
// binary insertion, which always succeeds.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "oripack/oriented_graph.hpp"
#include "oripack/rng.hpp"

namespace oripack {

// Hamilton path of the induced tournament on `vs` (every pair must carry an
// edge). Standard insertion: each vertex is placed by binary search at a
// position i with seq[i] -> v -> seq[i+1].
inline std::vector<Vertex> hamilton_path_tournament(const OrientedGraph& g,
                                                    const std::vector<Vertex>& vs) {
  std::vector<Vertex> seq;
  seq.reserve(vs.size());
  for (Vertex v : vs) {
    if (seq.empty()) {
      seq.push_back(v);
      continue;
    }
    if (g.contains(v, seq.front())) {
      seq.insert(seq.begin(), v);
      continue;
    }
    if (g.contains(seq.back(), v)) {
      seq.push_back(v);
      continue;
    }
    // invariant: seq[lo] -> v and v -> seq[hi]
    std::size_t lo = 0, hi = seq.size() - 1;
    while (hi - lo > 1) {
      std::size_t mid = (lo + hi) / 2;
      if (g.contains(seq[mid], v))
        lo = mid;
      else if (g.contains(v, seq[mid]))
        hi = mid;
      else
        throw std::invalid_argument("hamilton_path_tournament: pair without an edge");
    }
    seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(hi), v);
  }
  for (std::size_t i = 0; i + 1 < seq.size(); ++i)
    if (!g.contains(seq[i], seq[i + 1]))
      throw std::invalid_argument("hamilton_path_tournament: input is not a tournament");
  return seq;
}

namespace detail {

// Exact-length cycle by randomized DFS; budget counts node expansions.
inline std::optional<std::vector<Vertex>> dfs_cycle(const OrientedGraph& g, int len,
                                                    const std::vector<char>& blocked, Rng& rng,
                                                    long long budget) {
  std::vector<Vertex> starts;
  for (Vertex v = 0; v < g.n(); ++v)
    if (!blocked[v]) starts.push_back(v);
  if (static_cast<int>(starts.size()) < len) return std::nullopt;
  rng.shuffle(starts);

  long long expansions = 0;
  std::vector<Vertex> seq;
  std::vector<char> used;

  auto dfs = [&](auto&& self, Vertex at, Vertex home) -> bool {
    if (++expansions > budget) return false;
    if (static_cast<int>(seq.size()) == len - 1) {
      for (Vertex w : g.out(at))
        if (!used[w] && g.contains(w, home) && !blocked[w]) {
          seq.push_back(w);
          return true;
        }
      return false;
    }
    std::vector<Vertex> nbrs(g.out(at));
    rng.shuffle(nbrs);
    for (Vertex w : nbrs) {
      if (used[w] || blocked[w]) continue;
      used[w] = 1;
      seq.push_back(w);
      if (self(self, w, home)) return true;
      seq.pop_back();
      used[w] = 0;
      if (expansions > budget) return false;
    }
    return false;
  };

  for (Vertex s : starts) {
    if (expansions > budget) break;
    seq.assign(1, s);
    used = blocked;
    used[s] = 1;
    if (dfs(dfs, s, s)) return seq;
  }
  return std::nullopt;
}

// Long cycles: grow a random path to `len` vertices (truncating a random
// suffix on dead ends), then close it. If the closing edge is missing, do
// directed rotations: a chord end -> p_j turns the suffix into a lollipop
// cycle, and any edge p_{j-1} -> p_t re-enters it at a different point,
// yielding a path on the same vertex set with a new endpoint.
inline std::optional<std::vector<Vertex>> rotation_extension_cycle(const OrientedGraph& g, int len,
                                                                   const std::vector<char>& blocked,
                                                                   Rng& rng, long long budget) {
  std::vector<Vertex> pool;
  for (Vertex v = 0; v < g.n(); ++v)
    if (!blocked[v]) pool.push_back(v);
  if (static_cast<int>(pool.size()) < len) return std::nullopt;

  long long work = 0;
  const int restarts = 64;
  for (int attempt = 0; attempt < restarts && work < budget; ++attempt) {
    std::vector<Vertex> path;
    std::vector<char> used = blocked;
    Vertex start = pool[rng.index(pool.size())];
    path.push_back(start);
    used[start] = 1;

    long long grow_steps = 0;
    const long long grow_limit = 40LL * len + 200;
    while (static_cast<int>(path.size()) < len && grow_steps++ < grow_limit && work < budget) {
      ++work;
      std::vector<Vertex> opts;
      for (Vertex w : g.out(path.back()))
        if (!used[w]) opts.push_back(w);
      if (!opts.empty()) {
        Vertex w = opts[rng.index(opts.size())];
        path.push_back(w);
        used[w] = 1;
        continue;
      }
      // dead end: drop a random suffix and regrow
      if (path.size() <= 2) break;
      std::size_t keep = 1 + rng.index(path.size() - 1);
      while (path.size() > keep) {
        used[path.back()] = 0;
        path.pop_back();
      }
    }
    if (static_cast<int>(path.size()) != len) continue;

    const int max_rotations = 8 * len + 50;
    for (int r = 0; r < max_rotations && work < budget; ++r) {
      ++work;
      if (g.contains(path.back(), path.front())) return path;
      // collect chords end -> p_j with j >= 1 (j = 0 handled above)
      std::vector<std::size_t> chords;
      for (std::size_t j = 1; j + 1 < path.size(); ++j)
        if (g.contains(path.back(), path[j])) chords.push_back(j);
      bool rotated = false;
      rng.shuffle(chords);
      for (std::size_t j : chords) {
        // re-entry: p_{j-1} -> p_t for some t in (j, len)
        std::vector<std::size_t> entries;
        for (std::size_t t = j + 1; t < path.size(); ++t)
          if (g.contains(path[j - 1], path[t])) entries.push_back(t);
        if (entries.empty()) continue;
        std::size_t t = entries[rng.index(entries.size())];
        // new path: p_0..p_{j-1}, p_t..p_end, p_j..p_{t-1}
        std::vector<Vertex> next;
        next.reserve(path.size());
        next.insert(next.end(), path.begin(), path.begin() + static_cast<std::ptrdiff_t>(j));
        next.insert(next.end(), path.begin() + static_cast<std::ptrdiff_t>(t), path.end());
        next.insert(next.end(), path.begin() + static_cast<std::ptrdiff_t>(j),
                    path.begin() + static_cast<std::ptrdiff_t>(t));
        path.swap(next);
        rotated = true;
        break;
      }
      if (!rotated) break;
    }
  }
  return std::nullopt;
}

}  // namespace detail

// A directed cycle of exactly `len` vertices avoiding `forbidden`, or
// nullopt once the budget is spent. Deterministic in (g, len, forbidden,
// seed, budget).
inline std::optional<std::vector<Vertex>> find_cycle_of_length(
    const OrientedGraph& g, int len, const std::vector<Vertex>& forbidden, std::uint64_t seed,
    long long budget = 400000) {
  if (len < 3) throw std::invalid_argument("find_cycle_of_length: len >= 3 required");
  std::vector<char> blocked(g.n(), 0);
  for (Vertex v : forbidden) blocked[v] = 1;
  long long free_count = 0;
  for (char b : blocked) free_count += !b;
  if (free_count < len) return std::nullopt;

  Rng rng = Rng(seed).substream("cycle-find");
  if (len <= 10) {
    auto c = detail::dfs_cycle(g, len, blocked, rng, budget);
    if (c) return c;
    // fall through: cheap second chance via rotations for mid lengths
    if (len >= 6) return detail::rotation_extension_cycle(g, len, blocked, rng, budget / 2);
    return std::nullopt;
  }
  auto c = detail::rotation_extension_cycle(g, len, blocked, rng, budget);
  if (c) return c;
  return detail::dfs_cycle(g, len, blocked, rng, budget / 4);
}

}  // namespace oripack
