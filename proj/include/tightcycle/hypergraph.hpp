#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tightcycle {

using VertexId = std::uint32_t;

/// An r-uniform hypergraph on vertices 0..n-1.
///
/// A partitioned hypergraph carries part sizes p_1..p_r; part i owns the
/// contiguous id range [p_1 + ... + p_{i-1}, p_1 + ... + p_i) and every edge
/// meets each part exactly once. Edges are kept in the order given.
class Hypergraph {
 public:
  /// Throws PreconditionError when an edge has the wrong size, repeats a
  /// vertex, references an id >= vertex_count, duplicates another edge, or
  /// (when partitioned) fails to meet every part exactly once.
  Hypergraph(std::size_t rank, std::size_t vertex_count, std::vector<std::vector<VertexId>> edges,
             std::optional<std::vector<std::uint32_t>> part_sizes = std::nullopt);

  std::size_t rank() const { return rank_; }
  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<std::vector<VertexId>>& edges() const { return edges_; }

  bool is_partitioned() const { return part_sizes_.has_value(); }
  const std::optional<std::vector<std::uint32_t>>& part_sizes() const { return part_sizes_; }
  /// First id of each part; empty when unpartitioned.
  const std::vector<std::uint32_t>& part_offsets() const { return part_offsets_; }
  /// Part index of v; requires a partitioned hypergraph.
  std::size_t part_of(VertexId v) const;

  /// Order-insensitive edge membership.
  bool has_edge(std::span<const VertexId> vertices) const;

  friend bool operator==(const Hypergraph&, const Hypergraph&) = default;

 private:
  std::size_t rank_;
  std::size_t vertex_count_;
  std::vector<std::vector<VertexId>> edges_;
  std::optional<std::vector<std::uint32_t>> part_sizes_;
  std::vector<std::uint32_t> part_offsets_;
  // sorted copies of every edge, sorted lexicographically
  std::vector<std::vector<VertexId>> sorted_edges_;
};

/// Result of reducing a hypergraph to an r-partite one. The partitioned
/// graph uses fresh contiguous ids; original_id maps them back.
struct PartiteReduction {
  Hypergraph graph;
  std::vector<VertexId> original_id;
};

/// Keeps the rainbow edges of the best of `trials` random r-colourings.
/// If no trial reaches the expectation r!/r^r * |E|, a colouring built by
/// the method of conditional expectations is used instead, which always
/// does. Partitioned input is returned unchanged.
PartiteReduction make_r_partite(const Hypergraph& h, std::uint64_t seed, std::size_t trials = 64);

// Text format:
//   HG r=<r> n=<n> parts=<p1,...,pr|none>
//   one edge per line as r space-separated vertex ids
// Lines starting with '#' and blank lines are ignored.
std::string serialize_hypergraph(const Hypergraph& h);
/// Throws InputError with a line number on malformed text.
Hypergraph parse_hypergraph(const std::string& text);

}  // namespace tightcycle
