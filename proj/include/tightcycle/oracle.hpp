#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tightcycle/hypergraph.hpp"

namespace tightcycle {

inline constexpr std::size_t kDefaultOracleVertices = 14;

/// Shortest tight cycle of length at most max_len, by iterative deepening
/// over tight paths whose first vertex is the smallest. Throws
/// PreconditionError when max_len < r+1 or the hypergraph has more than
/// max_vertices vertices (hard limit 64).
std::optional<std::vector<VertexId>> brute_force_tight_cycle(const Hypergraph& h, std::size_t max_len,
                                                             std::size_t max_vertices = kDefaultOracleVertices);

/// ℓ >= r+1 distinct vertices whose ℓ cyclic windows of r are all edges.
bool validate_tight_cycle(const Hypergraph& h, std::span<const VertexId> witness);

// "TCW l=<ℓ>" then ℓ vertex ids, one per line.
std::string serialize_witness(std::span<const VertexId> witness);
std::vector<VertexId> parse_witness(const std::string& text);

}  // namespace tightcycle
