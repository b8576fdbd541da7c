#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tightcycle/expander.hpp"
#include "tightcycle/line_graph.hpp"
#include "tightcycle/rational.hpp"
#include "tightcycle/sigma_path.hpp"

namespace tightcycle {

/// Constants of the connector and of cycle assembly, as functions of r
/// and ε. Only c3 (path size bound) and c4 (dense-piece degree floor) drive
/// the search; the others are kept for precondition reports.
struct Constants {
  double c1 = 0, c2 = 0, c3 = 0, c4 = 0;
  double c1p = 0, c2p = 0, c3p = 0;
};

Constants default_constants(std::size_t r, double epsilon);

struct SearchParams {
  std::optional<double> lambda;   // default 1/(2 log2 n)
  std::optional<Rational> d;      // default: measured density (δ(G) inside connect)
  std::optional<double> K;        // default max(2, e^sqrt(ln n))
  std::optional<double> epsilon;  // default 2^(-r-6)
  std::optional<Constants> constants;
  std::uint64_t seed = 0;
  std::size_t partition_retries = 64;
  std::size_t pair_samples = 1000;
  std::size_t pair_attempts = 8;  // endpoint pairs tried by assemble_cycle
  std::size_t max_path_size = 16;  // cap on reach rounds, on top of the c3 bound
  std::size_t exact_threshold = kDefaultExactThreshold;
  std::size_t sweep_seeds = 32;
  /// Use the best random partition when none passes verification.
  bool relaxed_partition = true;
  /// After the partition pipeline fails, try a plain two-sided reach and
  /// meet with an explicit disjointness check.
  bool direct_fallback = true;
  std::size_t max_depth = 64;  // density-increment levels
};

/// Connector stages, in pipeline order. Also the CSV stage column.
enum class Stage { kExpander, kPair, kPartition, kCover, kReachX, kReachY, kMeet, kSplice, kDone };

std::string_view to_string(Stage stage);

/// A 2-colouring of every part. side[a][e] is 0 or 1; x lies in the all-0
/// cell and y in the all-1 cell.
struct BalancedPartition {
  std::vector<std::vector<std::uint8_t>> side;
  bool balanced_blocks = false;  // property 2, checked exactly
  bool balanced_cells = false;   // property 3, checked exactly

  /// Cell of v as a bitmask: bit a is side[a][v_a].
  std::uint32_t cell(const LineGraph& g, VertexId v) const;
  LineGraph cell_graph(const LineGraph& g, std::uint32_t cell) const;
};

/// Exact check of the per-block balance condition.
bool check_block_balance(const LineGraph& g, const BalancedPartition& p, double epsilon);
/// Exact check of the 2^r cell sizes.
bool check_cell_balance(const LineGraph& g, const BalancedPartition& p, double epsilon);

/// One uniformly random partition honouring x and y, with both checks run.
BalancedPartition random_partition(const LineGraph& g, VertexId x, VertexId y, double epsilon, std::uint64_t seed);

class PartitionFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Retries random partitions until both checks pass. Throws PartitionFailed
/// after max_retries attempts.
BalancedPartition balanced_partition(const LineGraph& g, VertexId x, VertexId y, double epsilon,
                                     std::uint64_t seed, std::size_t max_retries);

/// Tight cycle as coordinate ids (which are the hypergraph vertex ids when
/// the line graph came from a partitioned hypergraph), in cyclic order.
struct TightCycle {
  std::size_t rank = 0;
  std::vector<std::uint32_t> ids;
};

struct DenseSubgraph {
  LineGraph graph;
  std::size_t min_degree = 0;
  std::size_t size = 0;
  std::size_t host_size = 0;  // vertices of the graph the connector ran on
  double K = 0;
  double degree = 0;  // the d it was measured against
  double c4 = 0;
};

struct Failure {
  Stage stage = Stage::kExpander;
  std::string detail;
};

enum class OutcomeKind { kPath, kCycle, kDense, kFailure };

std::string_view to_string(OutcomeKind kind);

/// One level of the density-increment chain.
struct ChainLink {
  std::size_t num_vertices = 0;
  Rational density{0};
  std::size_t min_degree = 0;
  /// Set when the level ended in a dense subgraph: the connector's K and d.
  double K = 0;
  double degree = 0;
};

struct SearchOutcome {
  std::variant<SigmaPath, TightCycle, DenseSubgraph, Failure> result;
  Stage stage = Stage::kExpander;  // last stage reached
  std::vector<ChainLink> chain;

  OutcomeKind kind() const { return static_cast<OutcomeKind>(result.index()); }
  bool is_cycle() const { return kind() == OutcomeKind::kCycle; }
};

/// Checks a cycle against g from raw coordinates: length >= r+1, ids
/// distinct, and every cyclic window of r ids is a vertex of g.
bool validate_cycle(const LineGraph& g, const TightCycle& c);

/// σ-path from x to y, or a subgraph of at most n/K vertices with minimum
/// degree at least c4*d, or a Failure naming the stage that came up empty.
/// d defaults to δ(g). x and y must share no coordinate.
SearchOutcome connect(const LineGraph& g, VertexId x, VertexId y, const Permutation& sigma,
                      const SearchParams& params);

/// Expander extraction, then for each of up to pair_attempts endpoint pairs
/// two connector calls and a validated splice.
SearchOutcome assemble_cycle(const LineGraph& g, const SearchParams& params, const Permutation& sigma);

/// assemble_cycle, descending into dense subgraphs until a cycle is found,
/// the graph empties, or it has fewer vertices than its density.
SearchOutcome density_increment_search(const LineGraph& g, const SearchParams& params);

/// A cycle of exactly `length` coordinates. Requires r | length and
/// length >= 2r.
SearchOutcome find_cycle_of_length(const LineGraph& g, std::size_t length, const SearchParams& params);

// "TC r=<r> L=<L>" then L ids, one per line.
std::string serialize_cycle(const TightCycle& c);
TightCycle parse_cycle(const std::string& text);

// "# DENSE n=.. delta=.. K=.. d=.. host=.." then the hypergraph format.
std::string serialize_dense(const DenseSubgraph& d);

}  // namespace tightcycle
