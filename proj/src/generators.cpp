#include "tightcycle/generators.hpp"

#include "tightcycle/errors.hpp"
#include "tightcycle/random.hpp"

namespace tightcycle {

namespace {

// Calls f(tuple) for every tuple of [sizes[0]] x ... x [sizes[r-1]],
// last axis fastest.
template <class F>
void for_each_tuple(const std::vector<std::uint32_t>& sizes, F&& f) {
  for (auto s : sizes)
    if (s == 0) return;
  std::vector<std::uint32_t> t(sizes.size(), 0);
  while (true) {
    f(t);
    std::size_t a = sizes.size();
    while (a > 0) {
      --a;
      if (++t[a] < sizes[a]) break;
      t[a] = 0;
      if (a == 0) return;
    }
    if (sizes.empty()) return;
  }
}

std::vector<std::uint32_t> offsets(const std::vector<std::uint32_t>& sizes) {
  std::vector<std::uint32_t> out;
  std::uint32_t acc = 0;
  for (auto s : sizes) {
    out.push_back(acc);
    acc += s;
  }
  return out;
}

void check_grid_size(const std::vector<std::uint32_t>& sizes) {
  double total = 1;
  for (auto s : sizes) total *= s;
  if (total > 5e7) throw PreconditionError("generator: too many tuples");
}

}  // namespace

Hypergraph gen_star(std::size_t n, std::size_t r) {
  if (r < 2 || n < r || n > 64) throw PreconditionError("gen_star needs 2 <= r <= n <= 64");
  std::vector<std::vector<VertexId>> edges;
  // (r-1)-subsets of {1..n-1} in lexicographic order
  std::vector<VertexId> rest(r - 1);
  for (std::size_t i = 0; i + 1 < r; ++i) rest[i] = static_cast<VertexId>(i + 1);
  while (true) {
    std::vector<VertexId> e{0};
    e.insert(e.end(), rest.begin(), rest.end());
    edges.push_back(std::move(e));
    std::size_t i = rest.size();
    while (i > 0 && rest[i - 1] == n - rest.size() + i - 1) --i;
    if (i == 0) break;
    ++rest[i - 1];
    for (std::size_t j = i; j < rest.size(); ++j) rest[j] = rest[j - 1] + 1;
  }
  return Hypergraph(r, n, std::move(edges));
}

Hypergraph gen_complete_multipartite(const std::vector<std::uint32_t>& sizes) {
  if (sizes.size() < 2) throw PreconditionError("need at least two parts");
  check_grid_size(sizes);
  auto off = offsets(sizes);
  std::vector<std::vector<VertexId>> edges;
  for_each_tuple(sizes, [&](const std::vector<std::uint32_t>& t) {
    std::vector<VertexId> e(t.size());
    for (std::size_t a = 0; a < t.size(); ++a) e[a] = off[a] + t[a];
    edges.push_back(std::move(e));
  });
  std::uint32_t n = 0;
  for (auto s : sizes) n += s;
  return Hypergraph(sizes.size(), n, std::move(edges), sizes);
}

Hypergraph gen_tight_cycle(std::size_t l, std::size_t r) {
  if (r < 2 || l < r + 1) throw PreconditionError("gen_tight_cycle needs l >= r+1 >= 3");
  std::vector<std::vector<VertexId>> edges;
  for (std::size_t i = 0; i < l; ++i) {
    std::vector<VertexId> e;
    for (std::size_t j = 0; j < r; ++j) e.push_back(static_cast<VertexId>((i + j) % l));
    edges.push_back(std::move(e));
  }
  return Hypergraph(r, l, std::move(edges));
}

Hypergraph gen_random_rpartite(std::uint32_t m, std::size_t r, double p, std::uint64_t seed) {
  if (r < 2 || m < 1) throw PreconditionError("gen_random_rpartite needs r >= 2 and m >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw PreconditionError("probability outside [0, 1]");
  std::vector<std::uint32_t> sizes(r, m);
  check_grid_size(sizes);
  auto off = offsets(sizes);
  Rng rng(seed);
  std::vector<std::vector<VertexId>> edges;
  for_each_tuple(sizes, [&](const std::vector<std::uint32_t>& t) {
    if (rng.uniform01() >= p) return;
    std::vector<VertexId> e(r);
    for (std::size_t a = 0; a < r; ++a) e[a] = off[a] + t[a];
    edges.push_back(std::move(e));
  });
  return Hypergraph(r, static_cast<std::size_t>(m) * r, std::move(edges), sizes);
}

Hypergraph gen_full_grid(std::uint32_t m, std::size_t r) {
  return gen_complete_multipartite(std::vector<std::uint32_t>(r, m));
}

}  // namespace tightcycle
