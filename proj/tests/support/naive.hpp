#pragma once

// Slow reference implementations used to cross-check the library. They
// work from raw tuples only and share no code with the library beyond the
// LineGraph accessors tuple() and size().

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "tightcycle/hypergraph.hpp"
#include "tightcycle/line_graph.hpp"
#include "tightcycle/random.hpp"
#include "tightcycle/sigma_path.hpp"

namespace naive {

using tightcycle::Element;
using tightcycle::LineGraph;
using tightcycle::VertexId;
using Tuple = std::vector<Element>;

inline Tuple tuple_of(const LineGraph& g, VertexId v) {
  auto t = g.tuple(v);
  return Tuple(t.begin(), t.end());
}

inline std::set<Tuple> tuple_set(const LineGraph& g) {
  std::set<Tuple> s;
  for (VertexId v = 0; v < g.size(); ++v) s.insert(tuple_of(g, v));
  return s;
}

inline std::size_t differing(const Tuple& a, const Tuple& b) {
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

struct Stats {
  std::size_t blocks = 0;
  std::size_t min_block = 0;
};

// Blocks keyed by (axis, tuple with the axis blanked).
inline Stats block_stats(const LineGraph& g) {
  std::map<std::pair<std::size_t, Tuple>, std::size_t> blocks;
  for (VertexId v = 0; v < g.size(); ++v)
    for (std::size_t a = 0; a < g.rank(); ++a) {
      Tuple key = tuple_of(g, v);
      key[a] = UINT32_MAX;
      ++blocks[{a, key}];
    }
  Stats s;
  s.blocks = blocks.size();
  s.min_block = SIZE_MAX;
  for (const auto& [k, c] : blocks) s.min_block = std::min(s.min_block, c);
  if (blocks.empty()) s.min_block = 0;
  return s;
}

inline std::vector<VertexId> neighborhood(const LineGraph& g, const std::vector<VertexId>& x) {
  std::set<VertexId> in(x.begin(), x.end());
  std::vector<VertexId> out;
  for (VertexId v = 0; v < g.size(); ++v) {
    if (in.count(v)) continue;
    for (auto u : x)
      if (differing(tuple_of(g, u), tuple_of(g, v)) == 1) {
        out.push_back(v);
        break;
      }
  }
  return out;
}

// y is a σ-neighbour of x iff y differs from x everywhere and the tuples
// obtained by copying y's values into x along σ(1), ..., σ(r-1) all exist.
inline bool is_sigma_neighbor(const std::set<Tuple>& verts, const Tuple& x, const Tuple& y,
                              const tightcycle::Permutation& sigma) {
  if (!verts.count(y) || differing(x, y) != x.size()) return false;
  Tuple z = x;
  for (std::size_t k = 0; k + 1 < x.size(); ++k) {
    z[sigma[k]] = y[sigma[k]];
    if (!verts.count(z)) return false;
  }
  return true;
}

inline std::vector<VertexId> sigma_neighbors(const LineGraph& g, VertexId x, const tightcycle::Permutation& sigma) {
  auto verts = tuple_set(g);
  std::vector<VertexId> out;
  for (VertexId y = 0; y < g.size(); ++y)
    if (is_sigma_neighbor(verts, tuple_of(g, x), tuple_of(g, y), sigma)) out.push_back(y);
  return out;
}

// σ-path check straight from the definition: consecutive σ-neighbours and
// all coordinates (axis, value) distinct.
inline bool is_sigma_path(const LineGraph& g, const std::vector<Tuple>& path, const tightcycle::Permutation& sigma) {
  if (path.empty()) return false;
  auto verts = tuple_set(g);
  std::set<std::pair<std::size_t, Element>> coords;
  for (const auto& t : path) {
    if (!verts.count(t)) return false;
    for (std::size_t a = 0; a < t.size(); ++a)
      if (!coords.insert({a, t[a]}).second) return false;
  }
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    if (!is_sigma_neighbor(verts, path[i], path[i + 1], sigma)) return false;
  return true;
}

inline std::vector<Tuple> path_tuples(const tightcycle::SigmaPath& p) {
  std::vector<Tuple> out;
  for (std::size_t i = 0; i < p.size(); ++i) out.emplace_back(p.tuple(i).begin(), p.tuple(i).end());
  return out;
}

// Endpoints of all σ-paths from x with at most max_size vertices, by DFS
// over every path.
inline std::set<Tuple> sigma_path_endpoints(const LineGraph& g, VertexId x, const tightcycle::Permutation& sigma,
                                            std::size_t max_size, bool exactly = false) {
  auto verts = tuple_set(g);
  std::set<Tuple> out;
  std::vector<Tuple> path{tuple_of(g, x)};
  std::set<std::pair<std::size_t, Element>> used;
  for (std::size_t a = 0; a < g.rank(); ++a) used.insert({a, path[0][a]});
  auto dfs = [&](auto&& self) -> void {
    if (!exactly || path.size() == max_size) out.insert(path.back());
    if (path.size() == max_size) return;
    for (const auto& y : verts) {
      if (!is_sigma_neighbor(verts, path.back(), y, sigma)) continue;
      bool fresh = true;
      for (std::size_t a = 0; a < y.size(); ++a) fresh = fresh && !used.count({a, y[a]});
      if (!fresh) continue;
      for (std::size_t a = 0; a < y.size(); ++a) used.insert({a, y[a]});
      path.push_back(y);
      self(self);
      path.pop_back();
      for (std::size_t a = 0; a < y.size(); ++a) used.erase({a, y[a]});
    }
  };
  dfs(dfs);
  return out;
}

// min |N(X)|/|X| over nonempty X with |X| <= n/2.
inline double expansion(const LineGraph& g) {
  const std::size_t n = g.size();
  double best = 1e300;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<VertexId> x;
    for (VertexId v = 0; v < n; ++v)
      if (mask >> v & 1) x.push_back(v);
    if (2 * x.size() > n) continue;
    best = std::min(best, double(naive::neighborhood(g, x).size()) / double(x.size()));
  }
  return best;
}

// Tight cycle search over raw vertex orderings: for each length, each
// subset of that size containing its minimum at the front, each ordering
// of the rest.
inline bool has_tight_cycle(const tightcycle::Hypergraph& h) {
  const std::size_t n = h.vertex_count(), r = h.rank();
  for (std::size_t len = r + 1; len <= n; ++len) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcountll(mask)) != len) continue;
      std::vector<VertexId> s;
      for (VertexId v = 0; v < n; ++v)
        if (mask >> v & 1) s.push_back(v);
      do {
        bool ok = true;
        for (std::size_t i = 0; i < len && ok; ++i) {
          std::vector<VertexId> w;
          for (std::size_t j = 0; j < r; ++j) w.push_back(s[(i + j) % len]);
          ok = h.has_edge(w);
        }
        if (ok) return true;
      } while (std::next_permutation(s.begin() + 1, s.end()));
    }
  }
  return false;
}

// Random line graph: each tuple of [m]^r kept with probability p.
inline LineGraph random_line_graph(std::uint32_t m, std::size_t r, double p, std::uint64_t seed) {
  tightcycle::Rng rng(seed);
  std::vector<Element> tuples;
  std::vector<Element> t(r, 0);
  while (true) {
    if (rng.uniform01() < p) tuples.insert(tuples.end(), t.begin(), t.end());
    std::size_t a = r;
    bool done = true;
    while (a > 0) {
      --a;
      if (++t[a] < m) {
        done = false;
        break;
      }
      t[a] = 0;
    }
    if (done) break;
  }
  return LineGraph(std::vector<std::uint32_t>(r, m), std::move(tuples));
}

inline LineGraph grid(std::uint32_t m, std::size_t r) { return random_line_graph(m, r, 1.0, 0); }

}  // namespace naive
