#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "tightcycle/line_graph.hpp"

namespace tightcycle {

/// A permutation of the axes, 0-based: image[k] is the axis rewritten at
/// step k of a σ-move.
struct Permutation {
  std::vector<std::uint32_t> image;

  static Permutation identity(std::size_t r);
  std::size_t size() const { return image.size(); }
  std::uint32_t operator[](std::size_t k) const { return image[k]; }
  bool is_valid() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
};

/// τ(i) = σ(r+1-i).
Permutation reverse(const Permutation& sigma);
/// 1-based, comma separated, e.g. "1,2,3".
std::string to_string(const Permutation& sigma);
/// Inverse of to_string; throws InputError on malformed text.
Permutation parse_permutation(const std::string& text);

/// Per-vertex sets of banned coordinates.
class ForbiddenMap {
 public:
  void forbid(VertexId v, Coordinate c);
  void forbid(VertexId v, std::span<const Coordinate> cs);
  std::span<const Coordinate> at(VertexId v) const;
  bool empty() const { return sets_.empty(); }

 private:
  std::map<VertexId, std::vector<Coordinate>> sets_;
};

/// A sequence of vertices (stored as tuples, so it can be checked against
/// any graph) in which each vertex is a σ-neighbour of the previous one.
struct SigmaPath {
  Permutation sigma;
  std::vector<Element> tuples;  // rank() elements per vertex, axis order

  std::size_t rank() const { return sigma.size(); }
  std::size_t size() const { return rank() == 0 ? 0 : tuples.size() / rank(); }
  std::span<const Element> tuple(std::size_t i) const { return {tuples.data() + i * rank(), rank()}; }
  /// a_1..a_{rk}: the coordinates of x_1, then x_2, ..., each in σ order.
  std::vector<Coordinate> coordinate_sequence() const;
  /// All coordinates of all vertices, in no particular order.
  std::vector<Coordinate> coordinates() const;

  friend bool operator==(const SigmaPath&, const SigmaPath&) = default;
};

/// Appends `tail` to `head`; tail's first vertex must be a σ-neighbour of
/// head's last vertex for the result to validate.
SigmaPath concatenate(const SigmaPath& head, const SigmaPath& tail);
/// Turns a τ-path y..z into the σ-path z..y, with σ the reverse of τ.
SigmaPath reversed(const SigmaPath& path);

/// All y with y_i != x_i on every axis reached from x by rewriting the axes
/// in σ order with every intermediate tuple (and y) a vertex of g.
VertexSet sigma_neighbors(const LineGraph& g, VertexId x, const Permutation& sigma);

/// ∂^σ(X, F): σ-neighbours y of some x ∈ X such that no coordinate of y is
/// in F(x).
VertexSet sigma_boundary(const LineGraph& g, const VertexSet& x, const Permutation& sigma,
                         const ForbiddenMap& forbidden = {});

/// ∂^(i)(X, F): vertices y with an i-neighbour x ∈ X (y != x, same i-block)
/// whose i-th coordinate is not in F(x).
VertexSet axis_boundary(const LineGraph& g, const VertexSet& x, std::size_t axis, const ForbiddenMap& forbidden = {});

/// True iff p has at least one vertex, all rk coordinates are distinct, and
/// every window (a_i, ..., a_{i+r-1}) is a vertex of g.
bool validate_sigma_path(const LineGraph& g, const SigmaPath& p);

enum class ReachMode { kAtMost, kExactly };

/// Paths found by `reach`, one per vertex, stored as parent pointers.
class ReachResult {
 public:
  bool reached(VertexId v) const { return size_[v] != 0; }
  /// Size of the stored path, 0 when v was not reached.
  std::size_t path_size(VertexId v) const { return size_[v]; }
  SigmaPath path(VertexId v) const;
  VertexSet vertices() const;
  std::size_t count() const;
  const Permutation& sigma() const { return sigma_; }

 private:
  friend ReachResult reach(const LineGraph&, VertexId, const Permutation&, std::size_t, ReachMode);

  struct Entry {
    VertexId vertex;
    std::uint32_t parent;  // index into the previous round
  };
  const LineGraph* graph_ = nullptr;
  Permutation sigma_;
  std::vector<std::vector<Entry>> rounds_;
  std::vector<std::uint32_t> size_;   // stored path size per vertex
  std::vector<std::uint32_t> index_;  // position of the stored entry in its round
};

/// Frontier expansion from x. Round i+1 is ∂^σ(round i, F) where F(y) holds
/// the coordinates of the stored path to y minus y itself; the first
/// predecessor in increasing id order wins. kAtMost keeps each vertex's
/// shortest stored path; kExactly reports only the round max_size.
/// The returned object refers to g, which must outlive it.
ReachResult reach(const LineGraph& g, VertexId x, const Permutation& sigma, std::size_t max_size,
                  ReachMode mode = ReachMode::kAtMost);

// "SP sigma=<perm> k=<size>" then k lines of r coordinate ids.
std::string serialize_sigma_path(const LineGraph& g, const SigmaPath& p);
SigmaPath parse_sigma_path(const std::string& text, const LineGraph& g);

}  // namespace tightcycle
