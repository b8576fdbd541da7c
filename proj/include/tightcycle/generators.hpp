#pragma once

#include <cstdint>
#include <vector>

#include "tightcycle/hypergraph.hpp"

namespace tightcycle {

/// All r-subsets of [n] containing vertex 0. Unpartitioned.
Hypergraph gen_star(std::size_t n, std::size_t r);

/// Every rainbow r-tuple over parts of the given sizes. Partitioned.
Hypergraph gen_complete_multipartite(const std::vector<std::uint32_t>& part_sizes);

/// Tight cycle 0, 1, ..., l-1. Unpartitioned. Requires l >= r+1.
Hypergraph gen_tight_cycle(std::size_t l, std::size_t r);

/// Each rainbow r-tuple over r parts of size m kept with probability p.
Hypergraph gen_random_rpartite(std::uint32_t m, std::size_t r, double p, std::uint64_t seed);

/// Complete r-partite hypergraph with parts of size m.
Hypergraph gen_full_grid(std::uint32_t m, std::size_t r);

}  // namespace tightcycle
