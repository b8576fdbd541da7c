#include "tightcycle/expander.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <limits>
#include <set>
#include <stdexcept>
#include <tuple>

#include "tightcycle/errors.hpp"

namespace tightcycle {

std::string_view to_string(CertificateMode mode) {
  return mode == CertificateMode::kExact ? "exact" : "heuristic";
}

LineGraph peel(const LineGraph& g, const Rational& d) {
  if (g.empty()) return g;
  const std::size_t r = g.rank();
  if (stats(g).density < d) throw PreconditionError("peel: density(G) < d");

  std::vector<std::vector<std::uint32_t>> live(r);
  for (std::size_t a = 0; a < r; ++a) {
    live[a].resize(g.block_count(a));
    for (std::uint32_t b = 0; b < g.block_count(a); ++b) live[a][b] = static_cast<std::uint32_t>(g.block(a, b).size());
  }
  auto small = [&](std::uint32_t sz) { return sz > 0 && Rational(static_cast<std::int64_t>(sz * r)) < d; };
  std::set<std::pair<std::uint32_t, std::uint32_t>> queue;
  for (std::size_t a = 0; a < r; ++a)
    for (std::uint32_t b = 0; b < live[a].size(); ++b)
      if (small(live[a][b])) queue.emplace(static_cast<std::uint32_t>(a), b);

  std::vector<char> alive(g.size(), 1);
  std::int64_t n = static_cast<std::int64_t>(g.size());
  std::int64_t p = static_cast<std::int64_t>(g.block_count());
  while (!queue.empty()) {
    auto [axis, block] = *queue.begin();
    queue.erase(queue.begin());
    const Rational before(static_cast<std::int64_t>(r) * n, p);
    for (VertexId v : g.block(axis, block)) {
      if (!alive[v]) continue;
      alive[v] = 0;
      --n;
      for (std::uint32_t a = 0; a < r; ++a) {
        auto b = g.block_of(a, v);
        auto& sz = live[a][b];
        const bool was_queued = small(sz);
        --sz;
        if (sz == 0) {
          --p;
          if (was_queued) queue.erase({a, b});
        } else if (!was_queued && small(sz)) {
          queue.emplace(a, b);
        }
      }
    }
    if (n > 0 && Rational(static_cast<std::int64_t>(r) * n, p) < before)
      throw std::logic_error("peel: density decreased");
  }
  VertexSet keep;
  for (VertexId v = 0; v < g.size(); ++v)
    if (alive[v]) keep.push_back(v);
  return induced(g, keep);
}

namespace {

std::vector<std::vector<std::uint32_t>> adjacency(const LineGraph& g) {
  std::vector<std::vector<std::uint32_t>> adj(g.size());
  for (VertexId v = 0; v < g.size(); ++v) g.for_each_neighbor(v, [&](VertexId u) { adj[v].push_back(u); });
  return adj;
}

// Visits every nonempty subset of a small graph in Gray-code order,
// maintaining |N(X)| incrementally. visit(mask, |X|, |N(X)|) returns false
// to stop early.
template <class Visit>
void for_each_subset(const LineGraph& g, Visit&& visit) {
  const std::size_t n = g.size();
  const auto adj = adjacency(g);
  std::vector<std::uint32_t> count(n, 0);
  std::vector<char> in(n, 0);
  std::uint64_t mask = 0;
  std::size_t size = 0, boundary = 0;
  const std::uint64_t total = n == 64 ? 0 : (std::uint64_t{1} << n);
  for (std::uint64_t i = 1; i != total; ++i) {
    const auto v = static_cast<std::uint32_t>(std::countr_zero(i));
    if (!in[v]) {
      in[v] = 1;
      ++size;
      if (count[v] > 0) --boundary;
      for (auto u : adj[v]) {
        if (count[u]++ == 0 && !in[u]) ++boundary;
      }
    } else {
      in[v] = 0;
      --size;
      for (auto u : adj[v]) {
        if (--count[u] == 0 && !in[u]) --boundary;
      }
      if (count[v] > 0) ++boundary;
    }
    mask ^= std::uint64_t{1} << v;
    if (!visit(mask, size, boundary)) return;
  }
}

VertexSet mask_to_set(std::uint64_t mask) {
  VertexSet out;
  while (mask) {
    out.push_back(static_cast<VertexId>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return out;
}

void require_small(const LineGraph& g, std::size_t threshold) {
  if (g.size() > threshold || g.size() > kMaxExactThreshold)
    throw PreconditionError("graph has " + std::to_string(g.size()) + " vertices, above the exhaustive threshold");
}

// a/b < c/d for non-negative integers with positive b, d
bool ratio_less(std::size_t a, std::size_t b, std::size_t c, std::size_t d) { return a * d < c * b; }

std::optional<SparseCut> exact_cut(const LineGraph& g, double lambda) {
  const std::size_t n = g.size();
  bool found = false;
  std::uint64_t best_mask = 0;
  std::size_t best_size = 0, best_boundary = 0;
  for_each_subset(g, [&](std::uint64_t mask, std::size_t size, std::size_t boundary) {
    if (2 * size > n) return true;
    if (!(static_cast<double>(boundary) < lambda * static_cast<double>(size))) return true;
    bool better = !found || ratio_less(boundary, size, best_boundary, best_size) ||
                  (!ratio_less(best_boundary, best_size, boundary, size) &&
                   (size < best_size || (size == best_size && mask < best_mask)));
    if (better) {
      found = true;
      best_mask = mask;
      best_size = size;
      best_boundary = boundary;
    }
    return true;
  });
  if (!found) return std::nullopt;
  return SparseCut{mask_to_set(best_mask), best_boundary, CertificateMode::kExact};
}

// Connected components as sorted vertex lists, ordered by smallest member.
std::vector<VertexSet> components(const LineGraph& g) {
  std::vector<VertexSet> out;
  std::vector<char> seen(g.size(), 0);
  for (VertexId s = 0; s < g.size(); ++s) {
    if (seen[s]) continue;
    VertexSet comp{s};
    seen[s] = 1;
    for (std::size_t i = 0; i < comp.size(); ++i)
      g.for_each_neighbor(comp[i], [&](VertexId u) {
        if (!seen[u]) {
          seen[u] = 1;
          comp.push_back(u);
        }
      });
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

std::optional<SparseCut> heuristic_cut(const LineGraph& g, double lambda, std::size_t sweep_seeds) {
  const std::size_t n = g.size();
  auto comps = components(g);
  if (comps.size() > 1) {
    auto smallest = std::min_element(comps.begin(), comps.end(),
                                     [](const VertexSet& a, const VertexSet& b) { return a.size() < b.size(); });
    return SparseCut{*smallest, 0, CertificateMode::kHeuristic};
  }

  struct BlockRef {
    std::size_t size;
    std::uint32_t axis, id;
  };
  std::vector<BlockRef> blocks;
  for (std::uint32_t a = 0; a < g.rank(); ++a)
    for (std::uint32_t b = 0; b < g.block_count(a); ++b) blocks.push_back({g.block(a, b).size(), a, b});
  std::sort(blocks.begin(), blocks.end(), [](const BlockRef& x, const BlockRef& y) {
    return std::tie(x.size, x.axis, x.id) < std::tie(y.size, y.axis, y.id);
  });
  const std::size_t seeds = std::min(sweep_seeds, blocks.size());

  std::vector<std::uint32_t> count(n);
  std::vector<char> in(n), queued(n);
  std::vector<VertexId> order;
  bool found = false;
  VertexSet best;
  std::size_t best_size = 0, best_boundary = 0;
  for (std::size_t k = 0; k < seeds; ++k) {
    const auto& seed = blocks[k * blocks.size() / seeds];
    std::fill(count.begin(), count.end(), 0);
    std::fill(in.begin(), in.end(), 0);
    std::fill(queued.begin(), queued.end(), 0);
    order.clear();
    for (auto v : g.block(seed.axis, seed.id)) {
      order.push_back(v);
      queued[v] = 1;
    }
    std::size_t boundary = 0;
    std::size_t best_prefix = 0, best_prefix_boundary = 0;
    for (std::size_t i = 0; i < order.size() && 2 * (i + 1) <= n; ++i) {
      const VertexId v = order[i];
      in[v] = 1;
      if (count[v] > 0) --boundary;
      g.for_each_neighbor(v, [&](VertexId u) {
        if (count[u]++ == 0 && !in[u]) ++boundary;
        if (!queued[u]) {
          queued[u] = 1;
          order.push_back(u);
        }
      });
      const std::size_t size = i + 1;
      if (best_prefix == 0 || ratio_less(boundary, size, best_prefix_boundary, best_prefix)) {
        best_prefix = size;
        best_prefix_boundary = boundary;
      }
    }
    if (best_prefix == 0) continue;
    if (!found || ratio_less(best_prefix_boundary, best_prefix, best_boundary, best_size) ||
        (!ratio_less(best_boundary, best_size, best_prefix_boundary, best_prefix) && best_prefix < best_size)) {
      found = true;
      best.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(best_prefix));
      std::sort(best.begin(), best.end());
      best_size = best_prefix;
      best_boundary = best_prefix_boundary;
    }
  }
  if (!found || !(static_cast<double>(best_boundary) < lambda * static_cast<double>(best_size))) return std::nullopt;
  return SparseCut{std::move(best), best_boundary, CertificateMode::kHeuristic};
}

}  // namespace

std::optional<SparseCut> find_sparse_cut(const LineGraph& g, double lambda, std::size_t exact_threshold,
                                         std::size_t sweep_seeds) {
  if (g.size() < 2) return std::nullopt;
  auto cut = (g.size() <= std::min(exact_threshold, kMaxExactThreshold)) ? exact_cut(g, lambda)
                                                                         : heuristic_cut(g, lambda, sweep_seeds);
  if (!cut) return std::nullopt;
  // independent re-check of the defining inequalities
  const auto boundary = neighborhood_size(g, cut->set);
  if (cut->set.empty() || 2 * cut->set.size() > g.size() ||
      !(static_cast<double>(boundary) < lambda * static_cast<double>(cut->set.size())) ||
      boundary != cut->neighborhood_size)
    throw std::logic_error("find_sparse_cut produced an invalid witness");
  return cut;
}

ExtractedExpander extract_expander(const LineGraph& g, const ExpanderParams& params) {
  if (params.lambda <= 0.0 || params.lambda > 1.0) throw PreconditionError("lambda must be in (0, 1]");
  if (params.d <= Rational(0)) throw PreconditionError("d must be positive");
  if (g.size() >= 2 && params.lambda > 1.0 / (2.0 * std::log2(static_cast<double>(g.size()))) + 1e-12)
    throw PreconditionError("lambda exceeds 1/(2 log2 n)");
  if (stats(g).density < params.d) throw PreconditionError("extract_expander: density(G) < d");

  const Rational floor = params.d / 2;
  ExtractedExpander out;
  LineGraph current = peel(g, params.d);
  while (true) {
    auto cut = find_sparse_cut(current, params.lambda, params.exact_threshold, params.sweep_seeds);
    if (!cut) {
      out.certificate.mode = current.size() <= std::min(params.exact_threshold, kMaxExactThreshold)
                                 ? CertificateMode::kExact
                                 : CertificateMode::kHeuristic;
      break;
    }
    ++out.iterations;
    const Rational density = stats(current).density;
    const Rational shrunk = scale_down(density, 1.0 - params.lambda);
    LineGraph small_side = induced(current, cut->set);
    LineGraph next;
    if (stats(small_side).density >= shrunk) {
      next = peel(small_side, shrunk);
    } else {
      std::vector<char> drop(current.size(), 0);
      for (auto v : cut->set) drop[v] = 1;
      for (auto v : neighborhood(current, cut->set)) drop[v] = 1;
      VertexSet rest;
      for (VertexId v = 0; v < current.size(); ++v)
        if (!drop[v]) rest.push_back(v);
      LineGraph far_side = induced(current, rest);
      if (stats(far_side).density < density)
        throw std::logic_error("extract_expander: neither side of the cut keeps its density");
      next = peel(far_side, density);
    }
    if (next.empty() || stats(next).density < floor)
      throw ExtractionError("expander extraction fell below density d/2 without certifying expansion");
    current = std::move(next);
  }
  out.certificate.lambda = params.lambda;
  out.certificate.d = stats(current).min_degree;
  out.graph = std::move(current);
  return out;
}

std::vector<ExtractedExpander> expander_cover(const LineGraph& g, const ExpanderParams& params) {
  std::vector<ExtractedExpander> pieces;
  const double stop = params.epsilon * static_cast<double>(g.size());
  LineGraph remaining = g;
  while (!remaining.empty() && static_cast<double>(remaining.size()) > stop) {
    ExpanderParams p = params;
    // The remainder keeps at most p(G) blocks, so its density is at least
    // epsilon * d; extracting at its own density only raises the floor.
    p.d = stats(remaining).density;
    auto piece = extract_expander(remaining, p);
    auto used = project(piece.graph, remaining);
    std::vector<char> drop(remaining.size(), 0);
    for (auto v : used) drop[v] = 1;
    VertexSet rest;
    for (VertexId v = 0; v < remaining.size(); ++v)
      if (!drop[v]) rest.push_back(v);
    remaining = induced(remaining, rest);
    pieces.push_back(std::move(piece));
  }
  return pieces;
}

ExpansionCheck verify_expander_exact(const LineGraph& g, double lambda, double epsilon, std::size_t threshold) {
  require_small(g, threshold);
  const double n = static_cast<double>(g.size());
  ExpansionCheck out;
  bool found = false;
  std::uint64_t best_mask = 0;
  std::size_t best_size = 0, best_boundary = 0;
  // Reports the violator with the smallest |N(X)|/|X|, then smallest |X|.
  for_each_subset(g, [&](std::uint64_t mask, std::size_t size, std::size_t boundary) {
    const double x = static_cast<double>(size), nb = static_cast<double>(boundary);
    bool bad = (2 * size <= g.size() && nb < lambda * x) ||
               (x <= (1.0 - epsilon) * n && nb < lambda * epsilon / 2.0 * x);
    if (!bad) return true;
    bool better = !found || ratio_less(boundary, size, best_boundary, best_size) ||
                  (!ratio_less(best_boundary, best_size, boundary, size) &&
                   (size < best_size || (size == best_size && mask < best_mask)));
    if (better) {
      found = true;
      best_mask = mask;
      best_size = size;
      best_boundary = boundary;
    }
    return true;
  });
  if (found) {
    out.ok = false;
    out.witness = mask_to_set(best_mask);
  }
  return out;
}

double exact_expansion(const LineGraph& g, std::size_t threshold) {
  require_small(g, threshold);
  double best = std::numeric_limits<double>::infinity();
  for_each_subset(g, [&](std::uint64_t, std::size_t size, std::size_t boundary) {
    if (2 * size <= g.size()) best = std::min(best, static_cast<double>(boundary) / static_cast<double>(size));
    return true;
  });
  return best;
}

}  // namespace tightcycle
