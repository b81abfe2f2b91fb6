#pragma once

// Core oriented-graph representation. An oriented graph has no self-loops
// and no antiparallel pairs: for every ordered pair (u,v) at most one of
// u->v, v->u is present. Adjacency is stored in both directions with sorted
// neighbor lists; in_adj is always the exact transpose of out_adj. Graphs
// are immutable after construction and safe for concurrent reads.

#include <algorithm>
#include <array>
#include <cstdint>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace oripack {

using Vertex = std::int32_t;

struct GraphError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct SelfLoopError : GraphError {
  explicit SelfLoopError(Vertex v)
      : GraphError("self-loop at vertex " + std::to_string(v)) {}
};
struct DuplicateEdgeError : GraphError {
  DuplicateEdgeError(Vertex u, Vertex v)
      : GraphError("duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")") {}
};
struct AntiparallelError : GraphError {
  AntiparallelError(Vertex u, Vertex v)
      : GraphError("antiparallel pair (" + std::to_string(u) + "," + std::to_string(v) + ")") {}
};

// Exact rational, used where the contract is a rational quantity
// (semidegree slack, goodness thresholds) and floating point would
// blur a >= comparison.
struct Fraction {
  long long num{0};
  long long den{1};

  Fraction() = default;
  Fraction(long long n, long long d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("Fraction: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Fraction& o) const { return num == o.num && den == o.den; }
};

class OrientedGraph {
 public:
  OrientedGraph() = default;

  // Builds from an explicit edge list; throws the specific violation.
  static OrientedGraph from_edges(Vertex n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
    if (n < 0) throw GraphError("negative vertex count");
    OrientedGraph g;
    g.n_ = n;
    g.out_.assign(n, {});
    g.in_.assign(n, {});
    for (auto [u, v] : edges) {
      if (u < 0 || u >= n || v < 0 || v >= n)
        throw GraphError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                         ") out of range for n=" + std::to_string(n));
      if (u == v) throw SelfLoopError(u);
      g.out_[u].push_back(v);
      g.in_[v].push_back(u);
    }
    for (Vertex v = 0; v < n; ++v) {
      std::sort(g.out_[v].begin(), g.out_[v].end());
      std::sort(g.in_[v].begin(), g.in_[v].end());
    }
    for (Vertex u = 0; u < n; ++u) {
      for (std::size_t i = 1; i < g.out_[u].size(); ++i)
        if (g.out_[u][i] == g.out_[u][i - 1]) throw DuplicateEdgeError(u, g.out_[u][i]);
    }
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v : g.out_[u])
        if (v > u && g.contains(v, u)) throw AntiparallelError(u, v);
    g.m_ = 0;
    for (Vertex v = 0; v < n; ++v) g.m_ += static_cast<long long>(g.out_[v].size());
    return g;
  }

  Vertex n() const { return n_; }
  long long m() const { return m_; }

  const std::vector<Vertex>& out(Vertex v) const { return out_[v]; }
  const std::vector<Vertex>& in(Vertex v) const { return in_[v]; }
  Vertex out_degree(Vertex v) const { return static_cast<Vertex>(out_[v].size()); }
  Vertex in_degree(Vertex v) const { return static_cast<Vertex>(in_[v].size()); }

  bool contains(Vertex u, Vertex v) const {
    return std::binary_search(out_[u].begin(), out_[u].end(), v);
  }

  // True iff {x,y,z} spans a directed 3-cycle (in either rotation).
  bool cyclic_triangle(Vertex x, Vertex y, Vertex z) const {
    return (contains(x, y) && contains(y, z) && contains(z, x)) ||
           (contains(x, z) && contains(z, y) && contains(y, x));
  }

  // True iff the sequence is a directed cycle: every consecutive pair and
  // the wrap-around pair is an edge, vertices distinct, length >= 3.
  bool is_cycle(const std::vector<Vertex>& cyc) const {
    if (cyc.size() < 3) return false;
    std::vector<Vertex> sorted(cyc);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
    if (sorted.front() < 0 || sorted.back() >= n_) return false;
    for (std::size_t i = 0; i < cyc.size(); ++i)
      if (!contains(cyc[i], cyc[(i + 1) % cyc.size()])) return false;
    return true;
  }

 private:
  Vertex n_{0};
  long long m_{0};
  std::vector<std::vector<Vertex>> out_;
  std::vector<std::vector<Vertex>> in_;
};

struct SemidegreeProfile {
  Vertex min_out{0};
  Vertex min_in{0};
  Vertex min_semi{0};
  Fraction slack_c{0, 1};  // 1/2 - min_semi/n
};

inline SemidegreeProfile semidegree_profile(const OrientedGraph& g) {
  if (g.n() < 1) throw std::invalid_argument("semidegree_profile: empty graph");
  SemidegreeProfile p;
  p.min_out = g.n();
  p.min_in = g.n();
  for (Vertex v = 0; v < g.n(); ++v) {
    p.min_out = std::min(p.min_out, g.out_degree(v));
    p.min_in = std::min(p.min_in, g.in_degree(v));
  }
  p.min_semi = std::min(p.min_out, p.min_in);
  p.slack_c = Fraction(static_cast<long long>(g.n()) - 2LL * p.min_semi, 2LL * g.n());
  return p;
}

inline bool is_tournament(const OrientedGraph& g) {
  // Orientation invariants hold by construction, so edge count decides.
  return g.m() == static_cast<long long>(g.n()) * (g.n() - 1) / 2;
}

struct InducedSubgraph {
  OrientedGraph graph;
  std::vector<Vertex> vertices;  // vertices[i] = original id of new vertex i
};

inline InducedSubgraph induced_subgraph(const OrientedGraph& g, std::vector<Vertex> vs) {
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  if (!vs.empty() && (vs.front() < 0 || vs.back() >= g.n()))
    throw GraphError("induced_subgraph: vertex out of range");
  std::vector<Vertex> pos(g.n(), -1);
  for (std::size_t i = 0; i < vs.size(); ++i) pos[vs[i]] = static_cast<Vertex>(i);
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex u : vs)
    for (Vertex v : g.out(u))
      if (pos[v] >= 0) edges.emplace_back(pos[u], pos[v]);
  InducedSubgraph s;
  s.graph = OrientedGraph::from_edges(static_cast<Vertex>(vs.size()), edges);
  s.vertices = std::move(vs);
  return s;
}

// A set of vertex-disjoint directed cycles in a host graph.
struct CyclePacking {
  Vertex host_n{0};
  std::vector<std::vector<Vertex>> cycles;

  std::vector<char> covered_mask() const {
    std::vector<char> mask(host_n, 0);
    for (const auto& c : cycles)
      for (Vertex v : c) mask[v] = 1;
    return mask;
  }
  long long covered_count() const {
    long long k = 0;
    for (const auto& c : cycles) k += static_cast<long long>(c.size());
    return k;
  }
  std::vector<Vertex> uncovered() const {
    auto mask = covered_mask();
    std::vector<Vertex> u;
    for (Vertex v = 0; v < host_n; ++v)
      if (!mask[v]) u.push_back(v);
    return u;
  }
};

// Every violated invariant, one message per cycle problem; empty = valid.
inline std::vector<std::string> packing_violations(const OrientedGraph& g,
                                                   const CyclePacking& p) {
  std::vector<std::string> bad;
  if (p.host_n != g.n()) bad.push_back("host_n mismatch");
  std::vector<char> seen(g.n(), 0);
  for (std::size_t i = 0; i < p.cycles.size(); ++i) {
    const auto& c = p.cycles[i];
    const std::string tag = "cycle " + std::to_string(i);
    if (c.size() < 3) {
      bad.push_back(tag + ": length < 3");
      continue;
    }
    bool range_ok = true;
    for (Vertex v : c)
      if (v < 0 || v >= g.n()) {
        bad.push_back(tag + ": vertex " + std::to_string(v) + " out of range");
        range_ok = false;
      }
    if (!range_ok) continue;
    for (Vertex v : c) {
      if (seen[v]) bad.push_back(tag + ": vertex " + std::to_string(v) + " reused");
      seen[v] = 1;
    }
    for (std::size_t j = 0; j < c.size(); ++j) {
      Vertex u = c[j], v = c[(j + 1) % c.size()];
      if (!g.contains(u, v))
        bad.push_back(tag + ": missing edge " + std::to_string(u) + "->" + std::to_string(v));
    }
  }
  return bad;
}

inline bool valid_packing(const OrientedGraph& g, const CyclePacking& p) {
  return packing_violations(g, p).empty();
}

// --- ".og" text format -----------------------------------------------------
//
//   og <n> <m>
//   <u> <v>        (m lines, edge u->v, 0-indexed)
//
// The parser reports the offending line for every violation.

struct OgParseError : std::runtime_error {
  OgParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_no(line) {}
  int line_no;
};

inline OrientedGraph read_og(std::istream& is) {
  std::string line;
  int line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(is, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  };
  if (!next_line()) throw OgParseError(1, "missing header");
  std::istringstream hdr(line);
  std::string magic;
  long long n = -1, m = -1;
  hdr >> magic >> n >> m;
  if (magic != "og" || hdr.fail() || n < 0 || m < 0)
    throw OgParseError(line_no, "bad header, expected 'og <n> <m>'");

  std::vector<std::pair<Vertex, Vertex>> edges;
  edges.reserve(static_cast<std::size_t>(m));
  std::vector<std::vector<Vertex>> out(static_cast<std::size_t>(n));
  auto has = [&](Vertex a, Vertex b) {
    return std::find(out[a].begin(), out[a].end(), b) != out[a].end();
  };
  for (long long i = 0; i < m; ++i) {
    if (!next_line()) throw OgParseError(line_no + 1, "unexpected end of file");
    std::istringstream es(line);
    long long u = -1, v = -1;
    es >> u >> v;
    if (es.fail()) throw OgParseError(line_no, "expected '<u> <v>'");
    if (u < 0 || u >= n || v < 0 || v >= n) throw OgParseError(line_no, "vertex out of range");
    if (u == v) throw OgParseError(line_no, "self-loop at vertex " + std::to_string(u));
    auto uu = static_cast<Vertex>(u), vv = static_cast<Vertex>(v);
    if (has(uu, vv)) throw OgParseError(line_no, "duplicate edge");
    if (has(vv, uu))
      throw OgParseError(line_no, "antiparallel pair (" + std::to_string(v) + "," +
                                      std::to_string(u) + ") already present");
    out[uu].push_back(vv);
    edges.emplace_back(uu, vv);
  }
  return OrientedGraph::from_edges(static_cast<Vertex>(n), edges);
}

inline void write_og(const OrientedGraph& g, std::ostream& os) {
  os << "og " << g.n() << ' ' << g.m() << '\n';
  for (Vertex u = 0; u < g.n(); ++u)
    for (Vertex v : g.out(u)) os << u << ' ' << v << '\n';
}

// Canonical byte representation; adjacency is sorted, so equal graphs
// serialize identically. Used for instance hashing.
inline std::string to_og_string(const OrientedGraph& g) {
  std::ostringstream os;
  write_og(g, os);
  return os.str();
}

}  // namespace oripack
