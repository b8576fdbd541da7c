#include "tightcycle/line_graph.hpp"

#include <algorithm>
#include <numeric>

#include "tightcycle/errors.hpp"

namespace tightcycle {

namespace {

bool tuple_less(std::span<const Element> a, std::span<const Element> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

LineGraph::LineGraph(std::vector<std::uint32_t> part_sizes, std::vector<Element> tuples)
    : part_sizes_(std::move(part_sizes)) {
  const std::size_t r = rank();
  if (r == 0) throw PreconditionError("a line graph needs at least one axis");
  if (tuples.size() % r != 0) throw PreconditionError("tuple data is not a multiple of r");
  std::uint64_t offset = 0;
  for (auto s : part_sizes_) {
    part_offsets_.push_back(static_cast<std::uint32_t>(offset));
    offset += s;
  }
  coordinate_count_ = offset;

  const std::size_t count = tuples.size() / r;
  for (std::size_t v = 0; v < count; ++v)
    for (std::size_t a = 0; a < r; ++a)
      if (tuples[v * r + a] >= part_sizes_[a]) throw PreconditionError("element outside its part");

  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  auto row = [&](std::size_t v) { return std::span<const Element>(tuples.data() + v * r, r); };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return tuple_less(row(a), row(b)); });
  tuples_.reserve(tuples.size());
  for (std::size_t i = 0; i < count; ++i) {
    if (i > 0 && std::ranges::equal(row(order[i]), row(order[i - 1]))) continue;
    auto t = row(order[i]);
    tuples_.insert(tuples_.end(), t.begin(), t.end());
  }

  const std::size_t n = size();
  block_id_.assign(r, std::vector<std::uint32_t>(n));
  block_start_.assign(r, {});
  block_members_.assign(r, {});
  std::vector<VertexId> ids(n);
  for (std::size_t axis = 0; axis < r; ++axis) {
    std::iota(ids.begin(), ids.end(), 0);
    // Order by the tuple with `axis` skipped; stable keeps ids ascending
    // inside each block.
    auto key_less = [&](VertexId a, VertexId b) {
      for (std::size_t k = 0; k < r; ++k) {
        if (k == axis) continue;
        auto ea = element(a, k), eb = element(b, k);
        if (ea != eb) return ea < eb;
      }
      return false;
    };
    std::stable_sort(ids.begin(), ids.end(), key_less);
    auto& start = block_start_[axis];
    auto& members = block_members_[axis];
    members = ids;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == 0 || key_less(ids[i - 1], ids[i])) start.push_back(static_cast<std::uint32_t>(i));
      block_id_[axis][ids[i]] = static_cast<std::uint32_t>(start.size() - 1);
    }
    start.push_back(static_cast<std::uint32_t>(n));
  }
}

Coordinate LineGraph::coordinate_from_id(std::uint32_t id) const {
  auto it = std::upper_bound(part_offsets_.begin(), part_offsets_.end(), id);
  auto axis = static_cast<std::uint32_t>(it - part_offsets_.begin() - 1);
  return {axis, id - part_offsets_[axis]};
}

std::optional<VertexId> LineGraph::find(std::span<const Element> t) const {
  if (t.size() != rank()) return std::nullopt;
  std::size_t lo = 0, hi = size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (tuple_less(tuple(static_cast<VertexId>(mid)), t))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < size() && std::ranges::equal(tuple(static_cast<VertexId>(lo)), t)) return static_cast<VertexId>(lo);
  return std::nullopt;
}

std::size_t LineGraph::block_count() const {
  std::size_t total = 0;
  for (std::size_t a = 0; a < rank(); ++a) total += block_count(a);
  return total;
}

LineGraph from_hypergraph(const Hypergraph& h) {
  if (!h.is_partitioned()) throw PreconditionError("from_hypergraph needs a partitioned hypergraph");
  const auto& sizes = *h.part_sizes();
  const auto& offsets = h.part_offsets();
  const std::size_t r = h.rank();
  std::vector<Element> tuples(h.edge_count() * r);
  for (std::size_t e = 0; e < h.edge_count(); ++e)
    for (auto v : h.edges()[e]) {
      auto part = h.part_of(v);
      tuples[e * r + part] = v - offsets[part];
    }
  return LineGraph(sizes, std::move(tuples));
}

Hypergraph to_hypergraph(const LineGraph& g) {
  const std::size_t r = g.rank();
  std::vector<std::vector<VertexId>> edges;
  edges.reserve(g.size());
  for (VertexId v = 0; v < g.size(); ++v) {
    std::vector<VertexId> e(r);
    for (std::size_t a = 0; a < r; ++a) e[a] = g.coordinate_id(g.coordinate(v, a));
    edges.push_back(std::move(e));
  }
  return Hypergraph(r, g.coordinate_count(), std::move(edges), g.part_sizes());
}

DensityStats stats(const LineGraph& g) {
  DensityStats s;
  s.num_vertices = g.size();
  if (g.empty()) return s;
  s.num_blocks = g.block_count();
  s.density = Rational(static_cast<std::int64_t>(g.rank() * g.size()), static_cast<std::int64_t>(s.num_blocks));
  s.min_degree = g.size();
  for (std::size_t a = 0; a < g.rank(); ++a)
    for (std::uint32_t b = 0; b < g.block_count(a); ++b) s.min_degree = std::min(s.min_degree, g.block(a, b).size());
  return s;
}

AxisNeighborhood neighborhoods(const LineGraph& g, const VertexSet& x, std::size_t axis) {
  AxisNeighborhood out;
  std::vector<std::uint32_t> hits(g.block_count(axis), 0);
  for (auto v : x) ++hits[g.block_of(axis, v)];
  std::vector<char> in_x(g.size(), 0);
  for (auto v : x) in_x[v] = 1;
  for (VertexId v = 0; v < g.size(); ++v) {
    auto h = hits[g.block_of(axis, v)];
    // v has a block-mate in X other than itself
    if (h > (in_x[v] ? 1u : 0u)) {
      out.boundary.push_back(v);
      if (!in_x[v]) out.neighborhood.push_back(v);
    }
  }
  return out;
}

VertexSet neighborhood(const LineGraph& g, const VertexSet& x) {
  std::vector<char> mark(g.size(), 0);
  for (auto v : x) mark[v] = 1;
  for (auto v : x)
    g.for_each_neighbor(v, [&](VertexId u) {
      if (mark[u] == 0) mark[u] = 2;
    });
  VertexSet out;
  for (VertexId v = 0; v < g.size(); ++v)
    if (mark[v] == 2) out.push_back(v);
  return out;
}

std::size_t neighborhood_size(const LineGraph& g, const VertexSet& x) { return neighborhood(g, x).size(); }

LineGraph induced(const LineGraph& g, const VertexSet& x) {
  std::vector<Element> tuples;
  tuples.reserve(x.size() * g.rank());
  for (auto v : x) {
    auto t = g.tuple(v);
    tuples.insert(tuples.end(), t.begin(), t.end());
  }
  return LineGraph(g.part_sizes(), std::move(tuples));
}

LineGraph delete_coordinates(const LineGraph& g, std::span<const Coordinate> coords) {
  std::vector<char> banned(g.coordinate_count(), 0);
  for (auto c : coords)
    if (c.axis < g.rank() && c.element < g.part_sizes()[c.axis]) banned[g.coordinate_id(c)] = 1;
  VertexSet keep;
  for (VertexId v = 0; v < g.size(); ++v) {
    bool ok = true;
    for (std::size_t a = 0; a < g.rank() && ok; ++a) ok = !banned[g.coordinate_id(g.coordinate(v, a))];
    if (ok) keep.push_back(v);
  }
  return induced(g, keep);
}

std::vector<VertexId> embed(const LineGraph& sub, const LineGraph& g) {
  std::vector<VertexId> out(sub.size());
  for (VertexId v = 0; v < sub.size(); ++v) {
    auto id = g.find(sub.tuple(v));
    if (!id) throw PreconditionError("embed: tuple missing from the host graph");
    out[v] = *id;
  }
  return out;
}

VertexSet project(const LineGraph& sub, const LineGraph& g) {
  VertexSet out;
  for (VertexId v = 0; v < sub.size(); ++v)
    if (auto id = g.find(sub.tuple(v))) out.push_back(*id);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace tightcycle
