#pragma once

// Absorbing structures. An absorbing triple for a quadruple Q = (v1..v4) is
// three vertex-disjoint cyclic triangles a1a2a3, b1b2b3, c1c2c3 such that
// v1a1b1, v2c1a2, v3b2c2, v4a3b3 are also cyclic triangles. Swapping the
// three for the four absorbs Q into a packing at the cost of c3, a net gain
// of one triangle and three covered vertices.
//
// For longer cycles: a cycle F absorbs a disjoint path P when one edge of F
// can be replaced by P, spanning a cycle of length |F|+|P|.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "oripack/oriented_graph.hpp"
#include "oripack/rng.hpp"
#include "oripack/triangle_analysis.hpp"

namespace oripack {

// Cyclic orientation of a triangle {x,y,z}, starting at x.
inline std::array<Vertex, 3> oriented_triangle(const OrientedGraph& g, Vertex x, Vertex y,
                                               Vertex z) {
  if (g.contains(x, y) && g.contains(y, z) && g.contains(z, x)) return {x, y, z};
  if (g.contains(x, z) && g.contains(z, y) && g.contains(y, x)) return {x, z, y};
  throw std::invalid_argument("oriented_triangle: {" + std::to_string(x) + "," +
                              std::to_string(y) + "," + std::to_string(z) +
                              "} is not a cyclic triangle");
}

struct AbsorbingTriple {
  std::array<Vertex, 4> q{};
  std::array<Vertex, 3> a{}, b{}, c{};

  std::array<std::array<Vertex, 3>, 3> packed_triangles() const { return {a, b, c}; }
  std::array<std::array<Vertex, 3>, 4> replacement_sets() const {
    return {{{q[0], a[0], b[0]}, {q[1], c[0], a[1]}, {q[2], b[1], c[1]}, {q[3], a[2], b[2]}}};
  }
};

// The pure seven-membership check.
inline bool valid_absorbing_triple(const OrientedGraph& g, const AbsorbingTriple& t) {
  std::vector<Vertex> all(t.q.begin(), t.q.end());
  all.insert(all.end(), t.a.begin(), t.a.end());
  all.insert(all.end(), t.b.begin(), t.b.end());
  all.insert(all.end(), t.c.begin(), t.c.end());
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) return false;
  if (all.front() < 0 || all.back() >= g.n()) return false;
  if (!g.cyclic_triangle(t.a[0], t.a[1], t.a[2])) return false;
  if (!g.cyclic_triangle(t.b[0], t.b[1], t.b[2])) return false;
  if (!g.cyclic_triangle(t.c[0], t.c[1], t.c[2])) return false;
  for (const auto& s : t.replacement_sets())
    if (!g.cyclic_triangle(s[0], s[1], s[2])) return false;
  return true;
}

namespace detail {

// Vertices z completing the pair {x,y} (in whichever orientation its edge
// has) to a cyclic triangle; empty when x,y are non-adjacent.
inline std::vector<Vertex> triangle_completions(const OrientedGraph& g, Vertex x, Vertex y) {
  Vertex from, to;
  if (g.contains(x, y)) {
    from = x;
    to = y;
  } else if (g.contains(y, x)) {
    from = y;
    to = x;
  } else {
    return {};
  }
  // z with to->z and z->from
  const auto& outs = g.out(to);
  const auto& ins = g.in(from);
  std::vector<Vertex> zs;
  std::size_t i = 0, j = 0;
  while (i < outs.size() && j < ins.size()) {
    if (outs[i] < ins[j])
      ++i;
    else if (outs[i] > ins[j])
      ++j;
    else {
      zs.push_back(outs[i]);
      ++i;
      ++j;
    }
  }
  return zs;
}

}  // namespace detail

// Randomized search for an absorbing triple following the proof's greedy
// pick order (a1, a2, a3, b3, b1, b2, c2, c1, c3), with the cascade of
// goodness thresholds collapsed to the single fraction `a` and bounded
// restarts instead of exhaustive enumeration. `budget` caps the total
// number of candidate tests across restarts.
inline std::optional<AbsorbingTriple> find_absorbing_triple(
    const OrientedGraph& g, const std::array<Vertex, 4>& q, const std::vector<Vertex>& forbidden,
    std::uint64_t seed, long long budget, Fraction a = Fraction(1, 32),
    const GoodnessReport* goodness = nullptr) {
  {
    std::array<Vertex, 4> qs = q;
    std::sort(qs.begin(), qs.end());
    if (std::adjacent_find(qs.begin(), qs.end()) != qs.end())
      throw std::invalid_argument("find_absorbing_triple: quadruple not distinct");
  }
  if (g.n() < 13) return std::nullopt;  // 4 quadruple + 9 triple vertices

  GoodnessReport local;
  if (!goodness) {
    local = classify_edges(g, a);
    goodness = &local;
  }

  std::vector<char> blocked(g.n(), 0);
  for (Vertex v : q) blocked[v] = 1;
  for (Vertex v : forbidden) blocked[v] = 1;

  Rng rng = Rng(seed).substream("absorb-triple");
  long long attempts = 0;

  auto good_for = [&](Vertex x, Vertex y) {
    return goodness->good(g, x, y) || goodness->good(g, y, x);
  };

  while (attempts < budget) {
    std::array<Vertex, 9> pick{};  // a1 a2 a3 b3 b1 b2 c2 c1 c3
    std::vector<char> used = blocked;
    int step = 0;
    bool dead = false;

    auto take = [&](Vertex v) {
      pick[step] = v;
      used[v] = 1;
      ++step;
    };

    // a1: good for v1
    {
      std::vector<Vertex> pool(g.out(q[0]));
      pool.insert(pool.end(), g.in(q[0]).begin(), g.in(q[0]).end());
      bool found = false;
      for (int t = 0; t < 40 && !pool.empty() && attempts < budget; ++t) {
        ++attempts;
        Vertex y = pool[rng.index(pool.size())];
        if (!used[y] && good_for(q[0], y)) {
          take(y);
          found = true;
          break;
        }
      }
      if (!found) continue;
    }
    // a2: good for a1 and for v2
    {
      const Vertex a1 = pick[0];
      std::vector<Vertex> pool(g.out(a1));
      pool.insert(pool.end(), g.in(a1).begin(), g.in(a1).end());
      bool found = false;
      for (int t = 0; t < 60 && !pool.empty() && attempts < budget; ++t) {
        ++attempts;
        Vertex y = pool[rng.index(pool.size())];
        if (!used[y] && good_for(a1, y) && good_for(q[1], y)) {
          take(y);
          found = true;
          break;
        }
      }
      if (!found) continue;
    }

    // remaining steps all draw from triangle completions of a known edge,
    // optionally filtered by a goodness requirement
    struct Step {
      int first, second;   // indices into layout below
      int good_with;       // -1 = none
    };
    // layout of vertices referenced by index: 0..3 = q, 4.. = pick order
    auto vertex_at = [&](int idx) { return idx < 4 ? q[idx] : pick[idx - 4]; };
    // steps: a3 from (a1,a2) good for v4; b3 from (v4,a3); b1 from (v1,a1)
    // good for b3; b2 from (b1,b3) good for v3; c2 from (v3,b2); c1 from
    // (v2,a2) good for c2; c3 from (c1,c2)
    const Step steps[] = {
        {4, 5, 3},   // a3
        {3, 6, -1},  // b3
        {0, 4, 7},   // b1
        {8, 7, 2},   // b2
        {2, 9, -1},  // c2
        {1, 5, 10},  // c1
        {11, 10, -1}  // c3
    };
    for (const Step& st : steps) {
      auto zs = detail::triangle_completions(g, vertex_at(st.first), vertex_at(st.second));
      rng.shuffle(zs);
      bool found = false;
      for (Vertex z : zs) {
        ++attempts;
        if (used[z]) continue;
        if (st.good_with >= 0 && !good_for(vertex_at(st.good_with), z)) continue;
        take(z);
        found = true;
        break;
      }
      if (!found) {
        dead = true;
        break;
      }
    }
    if (dead) continue;

    AbsorbingTriple t;
    t.q = q;
    t.a = {pick[0], pick[1], pick[2]};
    t.b = {pick[4], pick[5], pick[3]};
    t.c = {pick[7], pick[6], pick[8]};
    if (valid_absorbing_triple(g, t)) return t;
  }
  return std::nullopt;
}

// Searches for an absorbing triple whose three triangles come from the
// given collection (e.g. the reserved first-bite triangles, or the whole
// current packing). Exhaustive for small collections, sampled otherwise.
inline std::optional<AbsorbingTriple> find_absorbing_triple_in(
    const OrientedGraph& g, const std::array<Vertex, 4>& q,
    const std::vector<std::array<Vertex, 3>>& triangles, Rng& rng, long long budget) {
  const std::size_t m = triangles.size();
  if (m < 3) return std::nullopt;

  std::vector<char> in_q(g.n(), 0);
  for (Vertex v : q) in_q[v] = 1;

  std::vector<std::array<Vertex, 3>> oriented(m);
  std::vector<char> touches_q(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    oriented[i] = oriented_triangle(g, triangles[i][0], triangles[i][1], triangles[i][2]);
    for (Vertex v : oriented[i]) touches_q[i] |= in_q[v];
  }

  auto rotate = [](const std::array<Vertex, 3>& t, int r) {
    return std::array<Vertex, 3>{t[r % 3], t[(r + 1) % 3], t[(r + 2) % 3]};
  };
  auto check = [&](std::size_t ia, std::size_t ib, std::size_t ic, int ra, int rb,
                   int rc) -> std::optional<AbsorbingTriple> {
    AbsorbingTriple t;
    t.q = q;
    t.a = rotate(oriented[ia], ra);
    t.b = rotate(oriented[ib], rb);
    t.c = rotate(oriented[ic], rc);
    if (!g.cyclic_triangle(q[0], t.a[0], t.b[0])) return std::nullopt;
    if (!g.cyclic_triangle(q[1], t.c[0], t.a[1])) return std::nullopt;
    if (!g.cyclic_triangle(q[2], t.b[1], t.c[1])) return std::nullopt;
    if (!g.cyclic_triangle(q[3], t.a[2], t.b[2])) return std::nullopt;
    return t;
  };

  if (m <= 44) {
    for (std::size_t ia = 0; ia < m; ++ia) {
      if (touches_q[ia]) continue;
      for (std::size_t ib = 0; ib < m; ++ib) {
        if (ib == ia || touches_q[ib]) continue;
        for (std::size_t ic = 0; ic < m; ++ic) {
          if (ic == ia || ic == ib || touches_q[ic]) continue;
          for (int ra = 0; ra < 3; ++ra)
            for (int rb = 0; rb < 3; ++rb)
              for (int rc = 0; rc < 3; ++rc)
                if (auto t = check(ia, ib, ic, ra, rb, rc)) return t;
        }
      }
    }
    return std::nullopt;
  }

  for (long long tries = 0; tries < budget; ++tries) {
    std::size_t ia = rng.index(m), ib = rng.index(m), ic = rng.index(m);
    if (ia == ib || ib == ic || ia == ic) continue;
    if (touches_q[ia] || touches_q[ib] || touches_q[ic]) continue;
    auto t = check(ia, ib, ic, static_cast<int>(rng.index(3)), static_cast<int>(rng.index(3)),
                   static_cast<int>(rng.index(3)));
    if (t) return t;
  }
  return std::nullopt;
}

// Applies the swap: the triple's three triangles leave the packing, the four
// replacement triangles enter. Gains one triangle and three covered
// vertices (Q joins, c3 leaves). All other cycles are untouched.
inline CyclePacking absorb_quadruple(const OrientedGraph& g, const CyclePacking& packing,
                                     const std::array<Vertex, 4>& q, const AbsorbingTriple& t) {
  if (!valid_absorbing_triple(g, t))
    throw std::invalid_argument("absorb_quadruple: invalid absorbing triple");
  auto mask = packing.covered_mask();
  for (Vertex v : q)
    if (mask[v])
      throw std::invalid_argument("absorb_quadruple: quadruple vertex " + std::to_string(v) +
                                  " already covered");
  auto as_sorted = [](std::array<Vertex, 3> s) {
    std::sort(s.begin(), s.end());
    return s;
  };
  std::array<std::array<Vertex, 3>, 3> wanted = t.packed_triangles();
  for (auto& w : wanted) w = as_sorted(w);

  CyclePacking out;
  out.host_n = packing.host_n;
  std::array<bool, 3> found = {false, false, false};
  for (const auto& cyc : packing.cycles) {
    bool is_member = false;
    if (cyc.size() == 3) {
      std::array<Vertex, 3> s = {cyc[0], cyc[1], cyc[2]};
      s = as_sorted(s);
      for (int i = 0; i < 3; ++i)
        if (!found[i] && s == wanted[i]) {
          found[i] = true;
          is_member = true;
          break;
        }
    }
    if (!is_member) out.cycles.push_back(cyc);
  }
  if (!(found[0] && found[1] && found[2]))
    throw std::invalid_argument("absorb_quadruple: triple's triangles are not all in the packing");
  for (const auto& s : t.replacement_sets()) {
    auto cyc = oriented_triangle(g, s[0], s[1], s[2]);
    out.cycles.emplace_back(cyc.begin(), cyc.end());
  }
  return out;
}

// A k-cycle together with a disjoint path and the position of the cycle
// edge (u -> u_next) that the path replaces: u -> path front and
// path back -> u_next must be host edges.
struct AbsorbingCycleMatch {
  std::vector<Vertex> cycle;
  std::vector<Vertex> path;
  std::size_t splice_index{0};
};

inline void check_directed_path(const OrientedGraph& g, const std::vector<Vertex>& path) {
  if (path.empty()) throw std::invalid_argument("path is empty");
  std::vector<Vertex> s(path);
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end())
    throw std::invalid_argument("path repeats a vertex");
  if (s.front() < 0 || s.back() >= g.n()) throw std::invalid_argument("path vertex out of range");
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    if (!g.contains(path[i], path[i + 1]))
      throw std::invalid_argument("not a directed path: missing edge " +
                                  std::to_string(path[i]) + "->" + std::to_string(path[i + 1]));
}

// First candidate (in seeded order) that can absorb the path.
inline std::optional<AbsorbingCycleMatch> find_absorbing_cycle_for_path(
    const OrientedGraph& g, const std::vector<Vertex>& path,
    const std::vector<std::vector<Vertex>>& candidates, std::uint64_t seed) {
  check_directed_path(g, path);
  std::vector<char> on_path(g.n(), 0);
  for (Vertex v : path) on_path[v] = 1;

  std::vector<std::size_t> order(candidates.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng = Rng(seed).substream("absorb-cycle");
  rng.shuffle(order);

  for (std::size_t idx : order) {
    const auto& cyc = candidates[idx];
    bool disjoint = true;
    for (Vertex v : cyc) disjoint &= !on_path[v];
    if (!disjoint || cyc.size() < 3) continue;
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      const Vertex u = cyc[i];
      const Vertex next = cyc[(i + 1) % cyc.size()];
      if (g.contains(u, path.front()) && g.contains(path.back(), next))
        return AbsorbingCycleMatch{cyc, path, i};
    }
  }
  return std::nullopt;
}

// Replaces the splice edge by the path: a single cycle on the union.
inline std::vector<Vertex> splice(const AbsorbingCycleMatch& match) {
  const auto& cyc = match.cycle;
  const auto& path = match.path;
  if (match.splice_index >= cyc.size()) throw std::invalid_argument("splice: bad index");
  std::vector<Vertex> out;
  out.reserve(cyc.size() + path.size());
  for (std::size_t i = 0; i <= match.splice_index; ++i) out.push_back(cyc[i]);
  out.insert(out.end(), path.begin(), path.end());
  for (std::size_t i = match.splice_index + 1; i < cyc.size(); ++i) out.push_back(cyc[i]);
  return out;
}

// Finds a cycle C of length target_len - |path| such that path + C spans a
// cycle of length target_len: C runs from an out-neighbor y of the path's
// last vertex around to an in-neighbor x of the path's first vertex, with
// the closing edge x -> y. The returned sequence starts at y and ends at x,
// so path ++ C is the spanned cycle.
inline std::optional<std::vector<Vertex>> find_completing_cycle(
    const OrientedGraph& g, const std::vector<Vertex>& path, int target_len,
    const std::vector<Vertex>& forbidden, std::uint64_t seed, long long budget = 200000) {
  const int k = static_cast<int>(path.size());
  if (target_len < k + 3)
    throw std::invalid_argument("find_completing_cycle: need target_len >= |path| + 3");
  check_directed_path(g, path);
  const int len = target_len - k;

  std::vector<char> blocked(g.n(), 0);
  for (Vertex v : path) blocked[v] = 1;
  for (Vertex v : forbidden) blocked[v] = 1;

  std::vector<Vertex> starts;  // out-neighbors of path's last vertex
  for (Vertex y : g.out(path.back()))
    if (!blocked[y]) starts.push_back(y);
  std::vector<char> is_target(g.n(), 0);  // in-neighbors of path's first vertex
  for (Vertex x : g.in(path.front()))
    if (!blocked[x]) is_target[x] = 1;
  if (starts.empty()) return std::nullopt;

  Rng rng = Rng(seed).substream("completing-cycle");
  long long expansions = 0;
  std::vector<Vertex> seq;
  std::vector<char> used = blocked;

  // randomized DFS from y, closing on any allowed x with x -> y an edge
  auto dfs = [&](auto&& self, Vertex at, Vertex y) -> bool {
    if (++expansions > budget) return false;
    if (static_cast<int>(seq.size()) == len - 1) {
      for (Vertex x : g.out(at))
        if (!used[x] && is_target[x] && g.contains(x, y)) {
          seq.push_back(x);
          return true;
        }
      return false;
    }
    std::vector<Vertex> nbrs(g.out(at));
    rng.shuffle(nbrs);
    for (Vertex w : nbrs) {
      if (used[w]) continue;
      used[w] = 1;
      seq.push_back(w);
      if (self(self, w, y)) return true;
      seq.pop_back();
      used[w] = 0;
      if (expansions > budget) return false;
    }
    return false;
  };

  rng.shuffle(starts);
  for (Vertex y : starts) {
    if (expansions > budget) break;
    seq.assign(1, y);
    used = blocked;
    used[y] = 1;
    if (dfs(dfs, y, y)) return seq;
  }
  return std::nullopt;
}

}  // namespace oripack
