#include "tightcycle/oracle.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "tightcycle/errors.hpp"

namespace tightcycle {

namespace {

struct Search {
  std::size_t r;
  std::size_t n;
  std::size_t len;
  std::unordered_set<std::uint64_t> edges;
  std::vector<VertexId> seq;
  std::uint64_t used = 0;

  bool is_edge(std::size_t first) const {
    std::uint64_t mask = 0;
    for (std::size_t j = 0; j < r; ++j) mask |= std::uint64_t{1} << seq[(first + j) % seq.size()];
    return edges.count(mask) != 0;
  }

  bool closes() const {
    for (std::size_t s = len - r + 1; s < len; ++s)
      if (!is_edge(s)) return false;
    return true;
  }

  bool extend() {
    if (seq.size() == len) return closes();
    for (VertexId v = seq.front() + 1; v < n; ++v) {
      if (used >> v & 1) continue;
      seq.push_back(v);
      used |= std::uint64_t{1} << v;
      bool ok = seq.size() < r || is_edge(seq.size() - r);
      if (ok && extend()) return true;
      seq.pop_back();
      used &= ~(std::uint64_t{1} << v);
    }
    return false;
  }
};

}  // namespace

std::optional<std::vector<VertexId>> brute_force_tight_cycle(const Hypergraph& h, std::size_t max_len,
                                                             std::size_t max_vertices) {
  const std::size_t r = h.rank();
  if (max_len < r + 1) throw PreconditionError("max_len must be at least r+1");
  if (h.vertex_count() > std::min<std::size_t>(max_vertices, 64))
    throw PreconditionError("hypergraph too large for the brute-force oracle");
  Search s{r, h.vertex_count(), 0, {}, {}, 0};
  for (const auto& e : h.edges()) {
    std::uint64_t mask = 0;
    for (auto v : e) mask |= std::uint64_t{1} << v;
    s.edges.insert(mask);
  }
  if (s.edges.empty()) return std::nullopt;
  const std::size_t top = std::min(max_len, h.vertex_count());
  for (std::size_t len = r + 1; len <= top; ++len) {
    s.len = len;
    for (VertexId first = 0; first + len <= s.n; ++first) {
      s.seq = {first};
      s.used = std::uint64_t{1} << first;
      if (s.extend()) return s.seq;
    }
  }
  return std::nullopt;
}

bool validate_tight_cycle(const Hypergraph& h, std::span<const VertexId> w) {
  const std::size_t r = h.rank(), len = w.size();
  if (len < r + 1) return false;
  std::vector<VertexId> sorted(w.begin(), w.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  if (sorted.back() >= h.vertex_count()) return false;
  std::vector<VertexId> window(r);
  for (std::size_t s = 0; s < len; ++s) {
    for (std::size_t j = 0; j < r; ++j) window[j] = w[(s + j) % len];
    if (!h.has_edge(window)) return false;
  }
  return true;
}

std::string serialize_witness(std::span<const VertexId> w) {
  std::ostringstream out;
  out << "TCW l=" << w.size() << '\n';
  for (auto v : w) out << v << '\n';
  return out.str();
}

std::vector<VertexId> parse_witness(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0, expected = 0;
  bool header = false;
  std::vector<VertexId> out;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    if (!header) {
      std::string tag, ls2;
      ls >> tag >> ls2;
      if (tag != "TCW" || ls2.rfind("l=", 0) != 0) throw InputError(lineno, "expected 'TCW l=<length>'");
      try {
        expected = std::stoull(ls2.substr(2));
      } catch (const std::exception&) {
        throw InputError(lineno, "bad length in TCW header");
      }
      header = true;
      continue;
    }
    std::uint64_t id;
    while (ls >> id) {
      if (id > UINT32_MAX) throw InputError(lineno, "id out of range");
      out.push_back(static_cast<VertexId>(id));
    }
    if (!ls.eof()) throw InputError(lineno, "expected vertex ids");
  }
  if (!header) throw InputError(lineno, "missing TCW header");
  if (out.size() != expected) throw InputError(lineno, "witness length does not match l");
  return out;
}

}  // namespace tightcycle
