#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "tightcycle/line_graph.hpp"
#include "tightcycle/rational.hpp"

namespace tightcycle {

/// Graphs with at most this many vertices are checked by exhaustive subset
/// enumeration.
inline constexpr std::size_t kDefaultExactThreshold = 20;
/// Hard cap for exhaustive enumeration (64-bit subset masks).
inline constexpr std::size_t kMaxExactThreshold = 40;

struct ExpanderParams {
  double lambda = 0.1;  // expansion factor, 0 < lambda <= 1
  Rational d{1};        // density target / degree floor
  double epsilon = 0.1;
  std::size_t exact_threshold = kDefaultExactThreshold;
  std::size_t sweep_seeds = 32;  // BFS sweeps tried by the heuristic cut finder
};

enum class CertificateMode { kExact, kHeuristic };

std::string_view to_string(CertificateMode mode);

struct ExpanderCertificate {
  double lambda = 0.0;
  std::size_t d = 0;  // minimum degree of the certified graph
  CertificateMode mode = CertificateMode::kHeuristic;
  /// A set with |N(W)| < lambda*|W| and |W| <= n/2, when expansion was refuted.
  std::optional<VertexSet> witness;
};

/// Repeatedly deletes the lowest (axis, block id) block of size < d/r.
/// Result: dens(H) >= dens(G) and δ(H) >= d/r. Throws PreconditionError if
/// dens(G) < d.
LineGraph peel(const LineGraph& g, const Rational& d);

struct SparseCut {
  VertexSet set;
  std::size_t neighborhood_size = 0;
  CertificateMode mode = CertificateMode::kHeuristic;
};

/// Searches for W with |W| <= n/2 and |N(W)| < lambda*|W|. Exhaustive (and
/// returning a minimiser of |N(W)|/|W|) for n <= exact_threshold; otherwise
/// component split followed by BFS sweep cuts. Any returned set is
/// re-verified. nullopt with n > exact_threshold proves nothing.
std::optional<SparseCut> find_sparse_cut(const LineGraph& g, double lambda,
                                         std::size_t exact_threshold = kDefaultExactThreshold,
                                         std::size_t sweep_seeds = 32);

/// Thrown when extraction falls below density d/2 without certifying
/// expansion, which only a heuristic cut finder can cause.
class ExtractionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExtractedExpander {
  LineGraph graph;
  ExpanderCertificate certificate;
  std::size_t iterations = 0;
};

/// Alternates sparse-cut search with peeling until no cut is found. On
/// exit δ(H) >= d/(2r) and dens(H) >= d(1 - lambda*log2 n).
/// Requires lambda <= 1/(2 log2 n) and dens(G) >= d.
ExtractedExpander extract_expander(const LineGraph& g, const ExpanderParams& params);

/// Vertex-disjoint expanders covering at least (1 - epsilon) n vertices,
/// extracted greedily from the uncovered remainder.
std::vector<ExtractedExpander> expander_cover(const LineGraph& g, const ExpanderParams& params);

struct ExpansionCheck {
  bool ok = true;
  std::optional<VertexSet> witness;
};

/// Exhaustively checks |N(X)| >= lambda|X| for |X| <= n/2 and the derived
/// bound |N(X)| >= (lambda*epsilon/2)|X| for |X| <= (1-epsilon)n. Throws
/// PreconditionError above `threshold` vertices.
ExpansionCheck verify_expander_exact(const LineGraph& g, double lambda, double epsilon,
                                     std::size_t threshold = kDefaultExactThreshold);

/// min over nonempty X with |X| <= n/2 of |N(X)|/|X|, by exhaustive
/// enumeration; infinity when n < 2.
double exact_expansion(const LineGraph& g, std::size_t threshold = kDefaultExactThreshold);

}  // namespace tightcycle
