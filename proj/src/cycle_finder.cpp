#include "tightcycle/cycle_finder.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "tightcycle/errors.hpp"
#include "tightcycle/hypergraph.hpp"
#include "tightcycle/random.hpp"

namespace tightcycle {

std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::kExpander: return "expander";
    case Stage::kPair: return "pair";
    case Stage::kPartition: return "partition";
    case Stage::kCover: return "cover";
    case Stage::kReachX: return "reach_x";
    case Stage::kReachY: return "reach_y";
    case Stage::kMeet: return "meet";
    case Stage::kSplice: return "splice";
    case Stage::kDone: return "done";
  }
  return "?";
}

std::string_view to_string(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::kPath: return "path";
    case OutcomeKind::kCycle: return "cycle";
    case OutcomeKind::kDense: return "dense";
    case OutcomeKind::kFailure: return "failure";
  }
  return "?";
}

Constants default_constants(std::size_t r, double epsilon) {
  const double rr = static_cast<double>(r);
  Constants c;
  c.c1 = epsilon * epsilon / (240 * std::pow(rr, 4));
  c.c2 = 1e5 * std::pow(rr, 5) / std::pow(epsilon, 3);
  c.c3 = 40 * rr / epsilon;
  c.c4 = epsilon / (6 * rr);
  c.c1p = std::max(64 * rr * c.c2, 256 * std::pow(rr, 3) * c.c3);
  c.c2p = c.c1 / (32 * rr * rr);
  c.c3p = c.c4 / (4 * rr);
  return c;
}

namespace {

struct Resolved {
  double lambda = 0;
  Rational d{1};
  double K = 2;
  double epsilon = 0;
  Constants c;
  std::size_t max_size = 1;
};

double default_lambda(std::size_t n) {
  if (n < 2) return 0.5;
  return std::min(1.0, 1.0 / (2.0 * std::log2(static_cast<double>(n))));
}

Resolved resolve(const LineGraph& g, const SearchParams& p, const Rational& default_d) {
  Resolved r;
  const std::size_t n = g.size();
  const double ln = n >= 2 ? std::log(static_cast<double>(n)) : 0.0;
  r.lambda = p.lambda.value_or(default_lambda(n));
  r.d = p.d.value_or(default_d);
  r.K = p.K.value_or(std::max(2.0, std::exp(std::sqrt(ln))));
  r.epsilon = p.epsilon.value_or(std::ldexp(1.0, -static_cast<int>(g.rank()) - 6));
  r.c = p.constants.value_or(default_constants(g.rank(), r.epsilon));
  double bound = n >= 2 ? std::ceil(r.c.c3 * std::log2(static_cast<double>(n)) / r.lambda) : 1.0;
  std::size_t by_coords = std::max<std::size_t>(1, g.coordinate_count() / std::max<std::size_t>(1, g.rank()));
  r.max_size = std::max<std::size_t>(1, std::min({p.max_path_size, by_coords, static_cast<std::size_t>(bound)}));
  return r;
}

std::vector<Coordinate> coords_of(const LineGraph& g, VertexId v) {
  std::vector<Coordinate> out;
  for (std::size_t a = 0; a < g.rank(); ++a) out.push_back(g.coordinate(v, a));
  return out;
}

bool share_coordinate(const LineGraph& g, VertexId x, VertexId y) {
  for (std::size_t a = 0; a < g.rank(); ++a)
    if (g.element(x, a) == g.element(y, a)) return true;
  return false;
}

void sort_unique(std::vector<Coordinate>& cs) {
  std::sort(cs.begin(), cs.end());
  cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
}

bool disjoint(std::vector<Coordinate> a, std::vector<Coordinate> b) {
  sort_unique(a);
  sort_unique(b);
  std::vector<Coordinate> both;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
  return both.empty();
}

// Drops the first vertex of a path.
SigmaPath tail(const SigmaPath& p) {
  SigmaPath out{p.sigma, {}};
  out.tuples.assign(p.tuples.begin() + static_cast<std::ptrdiff_t>(p.rank()), p.tuples.end());
  return out;
}

bool endpoints_are(const SigmaPath& p, std::span<const Element> x, std::span<const Element> y) {
  return p.size() >= 1 && std::ranges::equal(p.tuple(0), x) && std::ranges::equal(p.tuple(p.size() - 1), y);
}

ExpanderParams expander_params(const Resolved& r, const SearchParams& p, const Rational& d) {
  ExpanderParams e;
  e.lambda = r.lambda;
  e.d = d;
  e.epsilon = r.epsilon;
  e.exact_threshold = p.exact_threshold;
  e.sweep_seeds = p.sweep_seeds;
  return e;
}

std::vector<ExtractedExpander> safe_cover(const LineGraph& g, const Resolved& r, const SearchParams& p) {
  if (g.empty()) return {};
  try {
    return expander_cover(g, expander_params(r, p, stats(g).density));
  } catch (const ExtractionError&) {
  } catch (const PreconditionError&) {
  }
  return {};
}

// Representative of each cover piece: the lowest id of `host` among the
// piece's vertices reached in `reached`. Pieces without one are skipped.
struct Representative {
  std::size_t piece;
  SigmaPath path;
};

std::vector<Representative> representatives(const std::vector<ExtractedExpander>& cover, const LineGraph& host,
                                            const ReachResult& reached) {
  std::vector<Representative> out;
  for (std::size_t i = 0; i < cover.size(); ++i) {
    const auto& piece = cover[i].graph;
    for (VertexId v = 0; v < piece.size(); ++v) {
      auto id = host.find(piece.tuple(v));
      if (id && reached.reached(*id)) {
        out.push_back({i, reached.path(*id)});
        break;
      }
    }
  }
  return out;
}

std::vector<Coordinate> union_coordinates(const std::vector<Representative>& reps) {
  std::vector<Coordinate> out;
  for (const auto& rep : reps) {
    auto cs = rep.path.coordinates();
    out.insert(out.end(), cs.begin(), cs.end());
  }
  sort_unique(out);
  return out;
}

// Extends every representative path inside its piece with U removed (the
// representative's own coordinates kept). Result is keyed by id in g.
std::map<VertexId, SigmaPath> extend_in_pieces(const LineGraph& g, const std::vector<ExtractedExpander>& cover,
                                               const std::vector<Representative>& reps,
                                               const std::vector<Coordinate>& u, const Permutation& sigma,
                                               std::size_t max_size) {
  std::map<VertexId, SigmaPath> out;
  for (const auto& rep : reps) {
    auto end = rep.path.tuple(rep.path.size() - 1);
    std::vector<Coordinate> removed;
    for (auto c : u)
      if (end[c.axis] != c.element) removed.push_back(c);
    LineGraph h = delete_coordinates(cover[rep.piece].graph, removed);
    auto start = h.find(end);
    if (!start) continue;
    auto res = reach(h, *start, sigma, max_size);
    for (VertexId v : res.vertices()) {
      auto gid = g.find(h.tuple(v));
      if (!gid) continue;
      out.emplace(*gid, concatenate(rep.path, tail(res.path(v))));
    }
  }
  return out;
}

std::optional<DenseSubgraph> dense_candidate(const std::vector<ExtractedExpander>& cover, std::size_t n,
                                             const Resolved& r) {
  std::optional<DenseSubgraph> best;
  const double floor = r.c.c4 * to_double(r.d);
  for (const auto& piece : cover) {
    auto s = stats(piece.graph);
    if (s.num_vertices == 0) continue;
    if (static_cast<double>(s.num_vertices) > static_cast<double>(n) / r.K) continue;
    if (static_cast<double>(s.min_degree) < floor) continue;
    if (!best || s.min_degree > best->min_degree ||
        (s.min_degree == best->min_degree && s.num_vertices < best->size)) {
      best = DenseSubgraph{piece.graph, s.min_degree, s.num_vertices, n, r.K, to_double(r.d), r.c.c4};
    }
  }
  return best;
}

// The partition pipeline. `furthest` records the deepest stage entered.
std::optional<SigmaPath> partition_route(const LineGraph& g, VertexId x, VertexId y, const Permutation& sigma,
                                         const Resolved& r, const SearchParams& p, Stage& furthest,
                                         std::optional<DenseSubgraph>& dense) {
  const Permutation tau = reverse(sigma);
  const std::size_t rank = g.rank();
  furthest = Stage::kPartition;
  std::optional<BalancedPartition> part;
  try {
    part = balanced_partition(g, x, y, r.epsilon, p.seed, p.partition_retries);
  } catch (const PartitionFailed&) {
    if (p.relaxed_partition) part = random_partition(g, x, y, r.epsilon, derive_seed(p.seed, 0));
  }
  if (!part) return std::nullopt;

  furthest = Stage::kCover;
  LineGraph g1 = part->cell_graph(g, 0);
  LineGraph g2 = part->cell_graph(g, (1u << rank) - 1);
  auto cover1 = safe_cover(g1, r, p);
  auto cover2 = safe_cover(g2, r, p);
  for (const auto* cover : {&cover1, &cover2}) {
    auto cand = dense_candidate(*cover, g.size(), r);
    if (cand && (!dense || cand->min_degree > dense->min_degree)) dense = std::move(cand);
  }
  if (cover1.empty() || cover2.empty()) return std::nullopt;

  furthest = Stage::kReachX;
  const auto yc = coords_of(g, y);
  LineGraph gx = delete_coordinates(g, yc);
  auto x_in = gx.find(g.tuple(x));
  auto rx = reach(gx, *x_in, sigma, r.max_size);
  auto reps1 = representatives(cover1, gx, rx);
  if (reps1.empty()) return std::nullopt;
  auto u1 = union_coordinates(reps1);

  furthest = Stage::kReachY;
  LineGraph gy = delete_coordinates(g, u1);
  auto y_in = gy.find(g.tuple(y));
  if (!y_in) return std::nullopt;
  auto ry = reach(gy, *y_in, tau, r.max_size);
  auto reps2 = representatives(cover2, gy, ry);
  if (reps2.empty()) return std::nullopt;
  auto u2 = union_coordinates(reps2);
  auto u = u1;
  u.insert(u.end(), u2.begin(), u2.end());
  sort_unique(u);

  furthest = Stage::kMeet;
  auto xs = extend_in_pieces(g, cover1, reps1, u, sigma, r.max_size);
  auto ys = extend_in_pieces(g, cover2, reps2, u, tau, r.max_size);
  std::vector<std::pair<std::size_t, VertexId>> order;
  for (const auto& [v, path] : xs) order.emplace_back(path.size(), v);
  std::sort(order.begin(), order.end());
  for (auto [size, z] : order) {
    for (VertexId w : sigma_neighbors(g, z, sigma)) {
      auto it = ys.find(w);
      if (it == ys.end()) continue;
      auto candidate = concatenate(xs.at(z), reversed(it->second));
      if (validate_sigma_path(g, candidate) && endpoints_are(candidate, g.tuple(x), g.tuple(y))) return candidate;
    }
  }
  return std::nullopt;
}

std::optional<SigmaPath> direct_route(const LineGraph& g, VertexId x, VertexId y, const Permutation& sigma,
                                      std::size_t max_size) {
  const Permutation tau = reverse(sigma);
  LineGraph gx = delete_coordinates(g, coords_of(g, y));
  LineGraph gy = delete_coordinates(g, coords_of(g, x));
  auto rx = reach(gx, *gx.find(g.tuple(x)), sigma, max_size);
  auto ry = reach(gy, *gy.find(g.tuple(y)), tau, max_size);
  std::vector<std::pair<std::size_t, VertexId>> order;
  for (VertexId v : rx.vertices()) order.emplace_back(rx.path_size(v), v);
  std::sort(order.begin(), order.end());
  for (auto [size, z] : order) {
    auto zg = *g.find(gx.tuple(z));
    auto pz = rx.path(z);
    for (VertexId w : sigma_neighbors(g, zg, sigma)) {
      auto wy = gy.find(g.tuple(w));
      if (!wy || !ry.reached(*wy)) continue;
      auto pw = ry.path(*wy);
      if (!disjoint(pz.coordinates(), pw.coordinates())) continue;
      auto candidate = concatenate(pz, reversed(pw));
      if (validate_sigma_path(g, candidate) && endpoints_are(candidate, g.tuple(x), g.tuple(y))) return candidate;
    }
  }
  return std::nullopt;
}

void check_pair(const LineGraph& g, VertexId x, VertexId y, const Permutation& sigma) {
  if (x >= g.size() || y >= g.size()) throw PreconditionError("endpoint not in graph");
  if (share_coordinate(g, x, y)) throw PreconditionError("endpoints share a coordinate");
  if (sigma.size() != g.rank() || !sigma.is_valid()) throw PreconditionError("permutation does not match the rank");
}

// Coordinate-disjoint pairs in scan order (x from the first few vertices),
// then random samples.
std::vector<std::pair<VertexId, VertexId>> candidate_pairs(const LineGraph& g, std::size_t want,
                                                          std::size_t samples, std::uint64_t seed) {
  std::vector<std::pair<VertexId, VertexId>> out;
  const std::size_t n = g.size();
  const std::size_t scan = std::min<std::size_t>(n, 32);
  for (VertexId x = 0; x < scan && out.size() < want; ++x)
    for (VertexId y = 0; y < n && out.size() < want; ++y)
      if (y != x && !share_coordinate(g, x, y)) {
        out.emplace_back(x, y);
        break;
      }
  if (out.empty() && n >= 2) {
    Rng rng(seed);
    for (std::size_t i = 0; i < samples && out.size() < want; ++i) {
      auto x = static_cast<VertexId>(rng.below(n));
      auto y = static_cast<VertexId>(rng.below(n));
      if (x != y && !share_coordinate(g, x, y)) out.emplace_back(x, y);
    }
  }
  return out;
}

SearchOutcome failure(Stage stage, std::string detail) {
  SearchOutcome o;
  o.result = Failure{stage, std::move(detail)};
  o.stage = stage;
  return o;
}

struct ExtractedHost {
  std::optional<ExtractedExpander> expander;
  std::string error;
};

ExtractedHost extract_host(const LineGraph& g, const Resolved& r, const SearchParams& p) {
  ExtractedHost out;
  if (g.empty()) {
    out.error = "empty graph";
    return out;
  }
  try {
    out.expander = extract_expander(g, expander_params(r, p, r.d));
  } catch (const ExtractionError& e) {
    out.error = e.what();
  } catch (const PreconditionError& e) {
    out.error = e.what();
  }
  return out;
}

TightCycle splice(const LineGraph& g, const SigmaPath& p, const SigmaPath& q) {
  const std::size_t r = g.rank();
  TightCycle c;
  c.rank = r;
  for (auto co : p.coordinate_sequence()) c.ids.push_back(g.coordinate_id(co));
  auto second = q.coordinate_sequence();
  for (std::size_t i = r; i + r < second.size(); ++i) c.ids.push_back(g.coordinate_id(second[i]));
  return c;
}

// Coordinates of the vertices of p other than the first and last.
std::vector<Coordinate> interior_coordinates(const SigmaPath& p) {
  std::vector<Coordinate> out;
  for (std::size_t i = 1; i + 1 < p.size(); ++i)
    for (std::size_t a = 0; a < p.rank(); ++a) out.push_back({static_cast<std::uint32_t>(a), p.tuple(i)[a]});
  return out;
}

SearchParams with_degree(const SearchParams& p, double lambda, std::size_t degree, std::uint64_t seed) {
  SearchParams q = p;
  q.lambda = lambda;
  q.d = Rational(static_cast<std::int64_t>(std::max<std::size_t>(1, degree)));
  q.seed = seed;
  return q;
}

}  // namespace

std::uint32_t BalancedPartition::cell(const LineGraph& g, VertexId v) const {
  std::uint32_t mask = 0;
  for (std::size_t a = 0; a < g.rank(); ++a)
    if (side[a][g.element(v, a)]) mask |= 1u << a;
  return mask;
}

LineGraph BalancedPartition::cell_graph(const LineGraph& g, std::uint32_t c) const {
  VertexSet keep;
  for (VertexId v = 0; v < g.size(); ++v)
    if (cell(g, v) == c) keep.push_back(v);
  return induced(g, keep);
}

bool check_block_balance(const LineGraph& g, const BalancedPartition& p, double epsilon) {
  const double slack = epsilon / (2.0 * static_cast<double>(g.rank()));
  for (std::size_t a = 0; a < g.rank(); ++a)
    for (std::uint32_t b = 0; b < g.block_count(a); ++b) {
      auto members = g.block(a, b);
      std::size_t ones = 0;
      for (auto v : members) ones += p.side[a][g.element(v, a)];
      const double size = static_cast<double>(members.size());
      for (std::size_t c : {members.size() - ones, ones}) {
        if (c == 0) continue;
        const double cc = static_cast<double>(c);
        if (cc < (1.0 - slack) / 2.0 * size || cc > (1.0 + slack) / 2.0 * size) return false;
      }
    }
  return true;
}

bool check_cell_balance(const LineGraph& g, const BalancedPartition& p, double epsilon) {
  const std::size_t cells = std::size_t{1} << g.rank();
  std::vector<std::size_t> count(cells, 0);
  for (VertexId v = 0; v < g.size(); ++v) ++count[p.cell(g, v)];
  const double share = static_cast<double>(g.size()) / static_cast<double>(cells);
  for (auto c : count) {
    const double cc = static_cast<double>(c);
    if (cc < (1.0 - epsilon) * share || cc > (1.0 + epsilon) * share) return false;
  }
  return true;
}

BalancedPartition random_partition(const LineGraph& g, VertexId x, VertexId y, double epsilon, std::uint64_t seed) {
  if (g.rank() > 20) throw PreconditionError("balanced_partition: rank too large");
  if (x >= g.size() || y >= g.size() || share_coordinate(g, x, y))
    throw PreconditionError("balanced_partition: x and y must be coordinate-disjoint vertices");
  Rng rng(seed);
  BalancedPartition p;
  p.side.resize(g.rank());
  for (std::size_t a = 0; a < g.rank(); ++a) {
    p.side[a].resize(g.part_sizes()[a]);
    for (auto& s : p.side[a]) s = rng.coin() ? 1 : 0;
    p.side[a][g.element(x, a)] = 0;
    p.side[a][g.element(y, a)] = 1;
  }
  p.balanced_blocks = check_block_balance(g, p, epsilon);
  p.balanced_cells = check_cell_balance(g, p, epsilon);
  return p;
}

BalancedPartition balanced_partition(const LineGraph& g, VertexId x, VertexId y, double epsilon,
                                     std::uint64_t seed, std::size_t max_retries) {
  for (std::size_t attempt = 0; attempt < max_retries; ++attempt) {
    auto p = random_partition(g, x, y, epsilon, derive_seed(seed, attempt));
    if (p.balanced_blocks && p.balanced_cells) return p;
  }
  throw PartitionFailed("no balanced partition after " + std::to_string(max_retries) + " attempts");
}

bool validate_cycle(const LineGraph& g, const TightCycle& c) {
  const std::size_t r = g.rank();
  const std::size_t len = c.ids.size();
  if (c.rank != r || len < r + 1) return false;
  auto sorted = c.ids;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  for (auto id : c.ids)
    if (id >= g.coordinate_count()) return false;
  std::vector<Element> t(r);
  std::vector<char> seen(r);
  for (std::size_t s = 0; s < len; ++s) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t j = 0; j < r; ++j) {
      auto co = g.coordinate_from_id(c.ids[(s + j) % len]);
      if (seen[co.axis]) return false;
      seen[co.axis] = 1;
      t[co.axis] = co.element;
    }
    if (!g.contains(t)) return false;
  }
  return true;
}

SearchOutcome connect(const LineGraph& g, VertexId x, VertexId y, const Permutation& sigma,
                      const SearchParams& params) {
  check_pair(g, x, y, sigma);
  const Resolved r = resolve(g, params, Rational(static_cast<std::int64_t>(stats(g).min_degree)));
  Stage furthest = Stage::kPartition;
  std::optional<DenseSubgraph> dense;
  auto path = partition_route(g, x, y, sigma, r, params, furthest, dense);
  if (!path && params.direct_fallback) path = direct_route(g, x, y, sigma, r.max_size);

  SearchOutcome out;
  out.stage = furthest;
  if (path) {
    out.result = std::move(*path);
    out.stage = Stage::kDone;
  } else if (dense) {
    out.result = std::move(*dense);
  } else {
    out.result = Failure{furthest, "no path between the endpoints"};
  }
  return out;
}

SearchOutcome assemble_cycle(const LineGraph& g, const SearchParams& params, const Permutation& sigma) {
  if (sigma.size() != g.rank() || !sigma.is_valid()) throw PreconditionError("permutation does not match the rank");
  const Resolved r = resolve(g, params, stats(g).density);
  auto host = extract_host(g, r, params);
  if (!host.expander) return failure(Stage::kExpander, host.error);
  const LineGraph& h = host.expander->graph;
  const std::size_t delta = host.expander->certificate.d;

  auto pairs = candidate_pairs(h, params.pair_attempts, params.pair_samples, derive_seed(params.seed, 1));
  if (pairs.empty()) return failure(Stage::kPair, "no coordinate-disjoint pair");

  // A cycle from any pair wins; otherwise a dense piece, otherwise the
  // failure that got furthest.
  std::optional<SearchOutcome> fallback;
  auto keep = [&](SearchOutcome o) {
    if (!fallback) {
      fallback = std::move(o);
      return;
    }
    const bool dense = o.kind() == OutcomeKind::kDense, had_dense = fallback->kind() == OutcomeKind::kDense;
    if ((dense && !had_dense) || (dense == had_dense && !dense && o.stage > fallback->stage)) fallback = std::move(o);
  };
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [x, y] = pairs[i];
    auto first = connect(h, x, y, sigma, with_degree(params, r.lambda, delta, derive_seed(params.seed, 2 + 2 * i)));
    if (first.kind() != OutcomeKind::kPath) {
      keep(std::move(first));
      continue;
    }
    const auto& p = std::get<SigmaPath>(first.result);

    LineGraph rest = delete_coordinates(h, interior_coordinates(p));
    auto y2 = rest.find(h.tuple(y)), x2 = rest.find(h.tuple(x));
    if (!x2 || !y2) {
      keep(failure(Stage::kSplice, "endpoints lost after deletion"));
      continue;
    }
    auto second =
        connect(rest, *y2, *x2, sigma, with_degree(params, r.lambda, delta, derive_seed(params.seed, 3 + 2 * i)));
    if (second.kind() != OutcomeKind::kPath) {
      keep(std::move(second));
      continue;
    }

    auto cycle = splice(g, p, std::get<SigmaPath>(second.result));
    if (!validate_cycle(g, cycle)) {
      keep(failure(Stage::kSplice, "spliced cycle failed validation"));
      continue;
    }
    SearchOutcome out;
    out.result = std::move(cycle);
    out.stage = Stage::kDone;
    return out;
  }
  return std::move(*fallback);
}

SearchOutcome density_increment_search(const LineGraph& g, const SearchParams& params) {
  std::vector<ChainLink> chain;
  LineGraph current = g;
  const Permutation sigma = Permutation::identity(std::max<std::size_t>(1, g.rank()));
  for (std::size_t depth = 0; depth <= params.max_depth; ++depth) {
    if (current.empty()) {
      auto o = failure(Stage::kExpander, "empty graph");
      o.chain = std::move(chain);
      return o;
    }
    auto s = stats(current);
    ChainLink link{s.num_vertices, s.density, s.min_degree, 0, 0};
    if (Rational(static_cast<std::int64_t>(s.num_vertices)) < s.density) {
      chain.push_back(link);
      auto o = failure(Stage::kExpander, "fewer vertices than density");
      o.chain = std::move(chain);
      return o;
    }
    SearchParams p = params;
    p.seed = derive_seed(params.seed, 100 + depth);
    if (depth > 0) {
      p.lambda.reset();
      p.d.reset();
    }
    auto o = assemble_cycle(current, p, sigma);
    if (o.kind() == OutcomeKind::kDense) {
      auto& dense = std::get<DenseSubgraph>(o.result);
      link.K = dense.K;
      link.degree = dense.degree;
      chain.push_back(link);
      current = dense.graph;
      continue;
    }
    chain.push_back(link);
    o.chain = std::move(chain);
    return o;
  }
  auto o = failure(Stage::kExpander, "depth limit reached");
  o.chain = std::move(chain);
  return o;
}

namespace {

// σ-path from x to y of exactly `size` vertices, by meeting an exact-size
// σ-reach from x with an exact-size τ-reach from y.
std::optional<SigmaPath> connect_exact(const LineGraph& g, VertexId x, VertexId y, const Permutation& sigma,
                                       std::size_t size) {
  const Permutation tau = reverse(sigma);
  LineGraph gx = delete_coordinates(g, coords_of(g, y));
  LineGraph gy = delete_coordinates(g, coords_of(g, x));
  const VertexId xs = *gx.find(g.tuple(x)), ys = *gy.find(g.tuple(y));
  // splits closest to the middle first
  std::vector<std::size_t> splits;
  for (std::size_t k = 1; k < size; ++k) splits.push_back(k);
  const auto mid = static_cast<std::ptrdiff_t>((size + 1) / 2);
  std::stable_sort(splits.begin(), splits.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(static_cast<std::ptrdiff_t>(a) - mid) < std::abs(static_cast<std::ptrdiff_t>(b) - mid);
  });
  for (std::size_t k : splits) {
    auto rx = reach(gx, xs, sigma, k, ReachMode::kExactly);
    if (rx.count() == 0) continue;
    auto ry = reach(gy, ys, tau, size - k, ReachMode::kExactly);
    if (ry.count() == 0) continue;
    for (VertexId z : rx.vertices()) {
      auto pz = rx.path(z);
      for (VertexId w : sigma_neighbors(g, *g.find(gx.tuple(z)), sigma)) {
        auto wy = gy.find(g.tuple(w));
        if (!wy || !ry.reached(*wy)) continue;
        auto pw = ry.path(*wy);
        if (!disjoint(pz.coordinates(), pw.coordinates())) continue;
        auto candidate = concatenate(pz, reversed(pw));
        if (candidate.size() == size && validate_sigma_path(g, candidate) &&
            endpoints_are(candidate, g.tuple(x), g.tuple(y)))
          return candidate;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

SearchOutcome find_cycle_of_length(const LineGraph& g, std::size_t length, const SearchParams& params) {
  const std::size_t r = g.rank();
  if (r == 0 || length % r != 0) throw PreconditionError("cycle length must be divisible by r");
  if (length < 2 * r) throw PreconditionError("cycle length must be at least 2r");
  const Permutation sigma = Permutation::identity(r);
  const Resolved res = resolve(g, params, stats(g).density);
  auto host = extract_host(g, res, params);
  if (!host.expander) return failure(Stage::kExpander, host.error);
  const LineGraph& h = host.expander->graph;

  auto pairs = candidate_pairs(h, 8, params.pair_samples, derive_seed(params.seed, 1));
  if (pairs.empty()) return failure(Stage::kPair, "no coordinate-disjoint pair");

  // The two paths share their endpoints, so their sizes add up to L/r + 2.
  const std::size_t total = length / r + 2;
  Stage furthest = Stage::kReachX;
  for (auto [x, y] : pairs) {
    for (std::size_t k = 2; k + 2 <= total; ++k) {
      auto p = connect_exact(h, x, y, sigma, k);
      if (!p) continue;
      furthest = std::max(furthest, Stage::kReachY);
      LineGraph rest = delete_coordinates(h, interior_coordinates(*p));
      auto x2 = rest.find(h.tuple(x)), y2 = rest.find(h.tuple(y));
      if (!x2 || !y2) continue;
      auto q = connect_exact(rest, *y2, *x2, sigma, total - k);
      if (!q) continue;
      furthest = Stage::kSplice;
      auto cycle = splice(g, *p, *q);
      if (cycle.ids.size() != length || !validate_cycle(g, cycle)) continue;
      SearchOutcome out;
      out.result = std::move(cycle);
      out.stage = Stage::kDone;
      return out;
    }
  }
  return failure(furthest, "no cycle of the requested length");
}

std::string serialize_cycle(const TightCycle& c) {
  std::ostringstream out;
  out << "TC r=" << c.rank << " L=" << c.ids.size() << '\n';
  for (auto id : c.ids) out << id << '\n';
  return out.str();
}

TightCycle parse_cycle(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0, expected = 0;
  bool header = false;
  TightCycle c;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    if (!header) {
      std::string tag, rs, ls2;
      ls >> tag >> rs >> ls2;
      if (tag != "TC" || rs.rfind("r=", 0) != 0 || ls2.rfind("L=", 0) != 0)
        throw InputError(lineno, "expected 'TC r=<r> L=<L>'");
      try {
        c.rank = std::stoull(rs.substr(2));
        expected = std::stoull(ls2.substr(2));
      } catch (const std::exception&) {
        throw InputError(lineno, "bad number in TC header");
      }
      header = true;
      continue;
    }
    std::uint64_t id;
    while (ls >> id) {
      if (id > UINT32_MAX) throw InputError(lineno, "id out of range");
      c.ids.push_back(static_cast<std::uint32_t>(id));
    }
    if (!ls.eof()) throw InputError(lineno, "expected vertex ids");
  }
  if (!header) throw InputError(lineno, "missing TC header");
  if (c.ids.size() != expected) throw InputError(lineno, "cycle length does not match L");
  return c;
}

std::string serialize_dense(const DenseSubgraph& d) {
  std::ostringstream out;
  out << "# DENSE n=" << d.size << " delta=" << d.min_degree << " host=" << d.host_size << " K=" << d.K
      << " d=" << d.degree << '\n';
  out << serialize_hypergraph(to_hypergraph(d.graph));
  return out.str();
}

}  // namespace tightcycle
