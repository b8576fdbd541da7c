#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tightcycle/hypergraph.hpp"
#include "tightcycle/rational.hpp"

namespace tightcycle {

/// Identifier of an element within its part A_axis.
using Element = std::uint32_t;

/// An element of A_1 ∪ ... ∪ A_r. Axes are 0-based.
struct Coordinate {
  std::uint32_t axis = 0;
  Element element = 0;

  friend auto operator<=>(const Coordinate&, const Coordinate&) = default;
};

/// Sorted, duplicate-free vertex ids of one LineGraph.
using VertexSet = std::vector<VertexId>;

/// A graph whose vertices are r-tuples over parts A_1..A_r, two tuples being
/// adjacent iff they differ in exactly one coordinate.
///
/// Vertices are stored sorted lexicographically, so vertex ids are a pure
/// function of the tuple set. For each axis i the i-blocks (tuples agreeing
/// everywhere except axis i) are indexed: every vertex knows its block id and
/// every block lists its members in increasing id order.
///
/// Instances are immutable. Subgraphs share the parent's part sizes, so a
/// tuple names the same vertex in a graph and in all of its subgraphs.
class LineGraph {
 public:
  LineGraph() = default;

  /// `tuples` holds r elements per vertex, concatenated. Duplicates are
  /// merged. Throws PreconditionError when an element exceeds its part size.
  LineGraph(std::vector<std::uint32_t> part_sizes, std::vector<Element> tuples);

  std::size_t rank() const { return part_sizes_.size(); }
  std::size_t size() const { return rank() == 0 ? 0 : tuples_.size() / rank(); }
  bool empty() const { return tuples_.empty(); }

  const std::vector<std::uint32_t>& part_sizes() const { return part_sizes_; }
  /// Σ |A_i|; also the number of distinct coordinate ids.
  std::size_t coordinate_count() const { return coordinate_count_; }
  /// Global id of a coordinate: offset of its part plus the element. When
  /// the graph comes from a partitioned hypergraph this is the hypergraph
  /// vertex id.
  std::uint32_t coordinate_id(Coordinate c) const { return part_offsets_[c.axis] + c.element; }
  Coordinate coordinate_from_id(std::uint32_t id) const;

  std::span<const Element> tuple(VertexId v) const {
    return {tuples_.data() + static_cast<std::size_t>(v) * rank(), rank()};
  }
  Element element(VertexId v, std::size_t axis) const { return tuples_[static_cast<std::size_t>(v) * rank() + axis]; }
  Coordinate coordinate(VertexId v, std::size_t axis) const {
    return {static_cast<std::uint32_t>(axis), element(v, axis)};
  }

  /// Vertex id of a tuple, if present. O(r log n).
  std::optional<VertexId> find(std::span<const Element> tuple) const;
  bool contains(std::span<const Element> tuple) const { return find(tuple).has_value(); }

  std::size_t block_count(std::size_t axis) const { return block_start_[axis].size() - 1; }
  /// p(G): the number of blocks over all axes.
  std::size_t block_count() const;
  std::uint32_t block_of(std::size_t axis, VertexId v) const { return block_id_[axis][v]; }
  std::span<const VertexId> block(std::size_t axis, std::uint32_t id) const {
    const auto& start = block_start_[axis];
    return {block_members_[axis].data() + start[id], start[id + 1] - start[id]};
  }
  std::span<const VertexId> block_containing(std::size_t axis, VertexId v) const {
    return block(axis, block_of(axis, v));
  }

  /// Calls f(u) for every neighbour u of v, axis by axis, ids ascending
  /// within an axis.
  template <class F>
  void for_each_neighbor(VertexId v, F&& f) const {
    for (std::size_t axis = 0; axis < rank(); ++axis)
      for (VertexId u : block_containing(axis, v))
        if (u != v) f(u);
  }

  friend bool operator==(const LineGraph& a, const LineGraph& b) {
    return a.part_sizes_ == b.part_sizes_ && a.tuples_ == b.tuples_;
  }

 private:
  std::vector<std::uint32_t> part_sizes_;
  std::vector<std::uint32_t> part_offsets_;
  std::size_t coordinate_count_ = 0;
  std::vector<Element> tuples_;
  std::vector<std::vector<std::uint32_t>> block_id_;
  std::vector<std::vector<std::uint32_t>> block_start_;
  std::vector<std::vector<VertexId>> block_members_;
};

/// n, p(G), dens(G) = r*n/p(G) and δ(G), the minimum block size.
struct DensityStats {
  std::size_t num_vertices = 0;
  std::size_t num_blocks = 0;
  Rational density{0};
  std::size_t min_degree = 0;
};

/// One line-graph vertex per hyperedge. Throws PreconditionError when the
/// hypergraph is not partitioned.
LineGraph from_hypergraph(const Hypergraph& h);
/// The partitioned hypergraph whose edges are the vertices of g.
Hypergraph to_hypergraph(const LineGraph& g);

/// Empty graphs have density 0 and minimum degree 0.
DensityStats stats(const LineGraph& g);

struct AxisNeighborhood {
  VertexSet boundary;      // ∂^(i)(X)
  VertexSet neighborhood;  // N^(i)(X) = ∂^(i)(X) \ X
};

/// i-boundary and i-neighbourhood of X along one axis.
AxisNeighborhood neighborhoods(const LineGraph& g, const VertexSet& x, std::size_t axis);
/// N(X): vertices outside X adjacent to X.
VertexSet neighborhood(const LineGraph& g, const VertexSet& x);
/// |N(X)| without materialising the set.
std::size_t neighborhood_size(const LineGraph& g, const VertexSet& x);

LineGraph induced(const LineGraph& g, const VertexSet& x);
/// Removes every vertex with a coordinate in `coords`.
LineGraph delete_coordinates(const LineGraph& g, std::span<const Coordinate> coords);

/// Maps each vertex of `sub` to its id in `g`. Every tuple of sub must be in g.
std::vector<VertexId> embed(const LineGraph& sub, const LineGraph& g);
/// Ids in g of the vertices of sub that are present in g, sorted.
VertexSet project(const LineGraph& sub, const LineGraph& g);

}  // namespace tightcycle
