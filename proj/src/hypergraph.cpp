#include "tightcycle/hypergraph.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <set>
#include <sstream>

#include "tightcycle/errors.hpp"
#include "tightcycle/random.hpp"

namespace tightcycle {

Hypergraph::Hypergraph(std::size_t rank, std::size_t vertex_count,
                       std::vector<std::vector<VertexId>> edges,
                       std::optional<std::vector<std::uint32_t>> part_sizes)
    : rank_(rank), vertex_count_(vertex_count), edges_(std::move(edges)), part_sizes_(std::move(part_sizes)) {
  if (rank_ < 2) throw PreconditionError("uniformity must be at least 2");
  if (part_sizes_) {
    if (part_sizes_->size() != rank_) throw PreconditionError("need exactly r part sizes");
    std::uint64_t total = 0;
    for (auto s : *part_sizes_) {
      part_offsets_.push_back(static_cast<std::uint32_t>(total));
      total += s;
    }
    if (total != vertex_count_) throw PreconditionError("part sizes must sum to n");
  }
  sorted_edges_.reserve(edges_.size());
  for (const auto& e : edges_) {
    if (e.size() != rank_) throw PreconditionError("edge does not have r vertices");
    auto s = e;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      throw PreconditionError("edge repeats a vertex");
    if (s.back() >= vertex_count_) throw PreconditionError("edge references a vertex id >= n");
    if (part_sizes_) {
      std::vector<bool> seen(rank_, false);
      for (auto v : s) {
        auto p = part_of(v);
        if (seen[p]) throw PreconditionError("edge meets a part twice");
        seen[p] = true;
      }
    }
    sorted_edges_.push_back(std::move(s));
  }
  std::sort(sorted_edges_.begin(), sorted_edges_.end());
  if (std::adjacent_find(sorted_edges_.begin(), sorted_edges_.end()) != sorted_edges_.end())
    throw PreconditionError("duplicate edge");
}

std::size_t Hypergraph::part_of(VertexId v) const {
  if (!part_sizes_) throw PreconditionError("hypergraph is not partitioned");
  auto it = std::upper_bound(part_offsets_.begin(), part_offsets_.end(), v);
  // skip empty parts sharing the same offset
  return static_cast<std::size_t>(it - part_offsets_.begin()) - 1;
}

bool Hypergraph::has_edge(std::span<const VertexId> vertices) const {
  if (vertices.size() != rank_) return false;
  std::vector<VertexId> key(vertices.begin(), vertices.end());
  std::sort(key.begin(), key.end());
  return std::binary_search(sorted_edges_.begin(), sorted_edges_.end(), key);
}

namespace {

std::size_t count_rainbow(const Hypergraph& h, const std::vector<std::uint32_t>& colour) {
  std::size_t kept = 0;
  std::vector<bool> seen(h.rank());
  for (const auto& e : h.edges()) {
    std::fill(seen.begin(), seen.end(), false);
    bool ok = true;
    for (auto v : e) {
      if (seen[colour[v]]) {
        ok = false;
        break;
      }
      seen[colour[v]] = true;
    }
    kept += ok ? 1 : 0;
  }
  return kept;
}

// Greedy colouring that never lowers the conditional expectation of the
// number of rainbow edges, so it ends with at least r!/r^r * |E| of them.
std::vector<std::uint32_t> derandomized_colouring(const Hypergraph& h) {
  const std::size_t r = h.rank();
  constexpr std::uint32_t kUnset = UINT32_MAX;
  std::vector<std::uint32_t> colour(h.vertex_count(), kUnset);
  std::vector<std::vector<std::size_t>> incident(h.vertex_count());
  for (std::size_t i = 0; i < h.edge_count(); ++i)
    for (auto v : h.edges()[i]) incident[v].push_back(i);

  // probability that an edge ends rainbow given the current partial colouring
  auto rainbow_probability = [&](const std::vector<VertexId>& e) {
    std::vector<bool> used(r, false);
    std::size_t free = 0;
    for (auto v : e) {
      if (colour[v] == kUnset) {
        ++free;
      } else if (used[colour[v]]) {
        return 0.0;
      } else {
        used[colour[v]] = true;
      }
    }
    double p = 1.0;
    for (std::size_t k = 1; k <= free; ++k) p *= static_cast<double>(k) / static_cast<double>(r);
    return p;
  };

  for (VertexId v = 0; v < h.vertex_count(); ++v) {
    double best = -1.0;
    std::uint32_t best_colour = 0;
    for (std::uint32_t c = 0; c < r; ++c) {
      colour[v] = c;
      double total = 0.0;
      for (auto ei : incident[v]) total += rainbow_probability(h.edges()[ei]);
      if (total > best + 1e-12) {
        best = total;
        best_colour = c;
      }
    }
    colour[v] = best_colour;
  }
  return colour;
}

}  // namespace

PartiteReduction make_r_partite(const Hypergraph& h, std::uint64_t seed, std::size_t trials) {
  if (h.is_partitioned()) {
    std::vector<VertexId> identity(h.vertex_count());
    std::iota(identity.begin(), identity.end(), 0);
    return {h, std::move(identity)};
  }
  const std::size_t r = h.rank();
  Rng rng(seed);
  std::vector<std::uint32_t> best;
  std::size_t best_kept = 0;
  std::vector<std::uint32_t> colour(h.vertex_count());
  for (std::size_t t = 0; t < trials; ++t) {
    for (auto& c : colour) c = static_cast<std::uint32_t>(rng.below(r));
    auto kept = count_rainbow(h, colour);
    if (best.empty() || kept > best_kept) {
      best = colour;
      best_kept = kept;
    }
  }
  // expectation bound r!/r^r * |E|, compared exactly in integers
  std::uint64_t fact = 1, power = 1;
  for (std::size_t k = 1; k <= r; ++k) {
    fact *= k;
    power *= r;
  }
  if (best.empty() || best_kept * power < fact * h.edge_count()) {
    best = derandomized_colouring(h);
    best_kept = count_rainbow(h, best);
  }

  std::vector<std::uint32_t> sizes(r, 0);
  for (auto c : best) ++sizes[c];
  std::vector<std::uint32_t> next(r, 0);
  for (std::size_t i = 1; i < r; ++i) next[i] = next[i - 1] + sizes[i - 1];
  std::vector<VertexId> new_id(h.vertex_count());
  std::vector<VertexId> original(h.vertex_count());
  for (VertexId v = 0; v < h.vertex_count(); ++v) {
    new_id[v] = next[best[v]]++;
    original[new_id[v]] = v;
  }
  std::vector<std::vector<VertexId>> edges;
  edges.reserve(best_kept);
  std::vector<bool> seen(r);
  for (const auto& e : h.edges()) {
    std::vector<VertexId> mapped(r);
    std::fill(seen.begin(), seen.end(), false);
    bool ok = true;
    for (auto v : e) {
      if (seen[best[v]]) {
        ok = false;
        break;
      }
      seen[best[v]] = true;
      mapped[best[v]] = new_id[v];
    }
    if (ok) edges.push_back(std::move(mapped));
  }
  return {Hypergraph(r, h.vertex_count(), std::move(edges), std::move(sizes)), std::move(original)};
}

std::string serialize_hypergraph(const Hypergraph& h) {
  std::string out = "HG r=" + std::to_string(h.rank()) + " n=" + std::to_string(h.vertex_count()) + " parts=";
  if (h.is_partitioned()) {
    const auto& sizes = *h.part_sizes();
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(sizes[i]);
    }
  } else {
    out += "none";
  }
  out += '\n';
  for (const auto& e : h.edges()) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(e[i]);
    }
    out += '\n';
  }
  return out;
}

namespace {

std::uint64_t parse_number(std::string_view s, std::size_t line, const char* what) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw InputError(line, std::string("expected a non-negative integer for ") + what + ", got '" +
                               std::string(s) + "'");
  return value;
}

std::string_view expect_key(std::string_view token, std::string_view key, std::size_t line) {
  if (token.substr(0, key.size()) != key)
    throw InputError(line, "expected '" + std::string(key) + "...', got '" + std::string(token) + "'");
  return token.substr(key.size());
}

}  // namespace

Hypergraph parse_hypergraph(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  bool have_header = false;
  std::size_t r = 0, n = 0;
  std::optional<std::vector<std::uint32_t>> parts;
  std::vector<std::vector<VertexId>> edges;
  std::set<std::vector<VertexId>> seen_edges;
  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::istringstream tokens(raw);
    std::vector<std::string> words;
    for (std::string w; tokens >> w;) words.push_back(w);
    if (words.empty() || words[0][0] == '#') continue;
    if (!have_header) {
      if (words.size() != 4 || words[0] != "HG")
        throw InputError(line, "expected header 'HG r=<r> n=<n> parts=<p1,...,pr|none>'");
      r = parse_number(expect_key(words[1], "r=", line), line, "r");
      n = parse_number(expect_key(words[2], "n=", line), line, "n");
      auto p = expect_key(words[3], "parts=", line);
      if (r < 2) throw InputError(line, "r must be at least 2");
      if (n > UINT32_MAX) throw InputError(line, "n too large");
      if (p != "none") {
        std::vector<std::uint32_t> sizes;
        std::size_t start = 0;
        while (true) {
          auto comma = p.find(',', start);
          auto piece = p.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
          sizes.push_back(static_cast<std::uint32_t>(parse_number(piece, line, "part size")));
          if (comma == std::string_view::npos) break;
          start = comma + 1;
        }
        if (sizes.size() != r) throw InputError(line, "parts must list exactly r sizes");
        std::uint64_t total = 0;
        for (auto s : sizes) total += s;
        if (total != n) throw InputError(line, "part sizes must sum to n");
        parts = std::move(sizes);
      }
      have_header = true;
      continue;
    }
    if (words.size() != r)
      throw InputError(line, "expected " + std::to_string(r) + " vertex ids, got " + std::to_string(words.size()));
    std::vector<VertexId> e;
    e.reserve(r);
    for (const auto& w : words) {
      auto v = parse_number(w, line, "vertex id");
      if (v >= n) throw InputError(line, "vertex id " + w + " out of range (n=" + std::to_string(n) + ")");
      e.push_back(static_cast<VertexId>(v));
    }
    auto key = e;
    std::sort(key.begin(), key.end());
    if (!seen_edges.insert(std::move(key)).second) throw InputError(line, "duplicate edge");
    edges.push_back(std::move(e));
    try {
      // validate incrementally so errors point at the offending line
      Hypergraph(r, n, {edges.back()}, parts);
    } catch (const PreconditionError& err) {
      throw InputError(line, err.what());
    }
  }
  if (!have_header) throw InputError(line, "missing 'HG' header");
  try {
    return Hypergraph(r, n, std::move(edges), std::move(parts));
  } catch (const PreconditionError& err) {
    throw InputError(err.what());
  }
}

}  // namespace tightcycle
