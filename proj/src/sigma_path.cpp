#include "tightcycle/sigma_path.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <sstream>

#include "tightcycle/errors.hpp"

namespace tightcycle {

Permutation Permutation::identity(std::size_t r) {
  Permutation p;
  for (std::size_t i = 0; i < r; ++i) p.image.push_back(static_cast<std::uint32_t>(i));
  return p;
}

bool Permutation::is_valid() const {
  std::vector<char> seen(image.size(), 0);
  for (auto v : image) {
    if (v >= image.size() || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

Permutation reverse(const Permutation& sigma) {
  Permutation tau;
  tau.image.assign(sigma.image.rbegin(), sigma.image.rend());
  return tau;
}

std::string to_string(const Permutation& sigma) {
  std::string out;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(sigma[i] + 1);
  }
  return out;
}

Permutation parse_permutation(const std::string& text) {
  Permutation p;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    std::uint32_t v = 0;
    auto first = text.data() + pos, last = text.data() + comma;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || v == 0) throw InputError("bad permutation '" + text + "'");
    p.image.push_back(v - 1);
    pos = comma + 1;
  }
  if (!p.is_valid()) throw InputError("not a permutation: '" + text + "'");
  return p;
}

void ForbiddenMap::forbid(VertexId v, Coordinate c) {
  auto& s = sets_[v];
  auto it = std::lower_bound(s.begin(), s.end(), c);
  if (it == s.end() || *it != c) s.insert(it, c);
}

void ForbiddenMap::forbid(VertexId v, std::span<const Coordinate> cs) {
  for (auto c : cs) forbid(v, c);
}

std::span<const Coordinate> ForbiddenMap::at(VertexId v) const {
  auto it = sets_.find(v);
  if (it == sets_.end()) return {};
  return it->second;
}

std::vector<Coordinate> SigmaPath::coordinate_sequence() const {
  std::vector<Coordinate> out;
  out.reserve(tuples.size());
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < rank(); ++j) out.push_back({sigma[j], tuple(i)[sigma[j]]});
  return out;
}

std::vector<Coordinate> SigmaPath::coordinates() const {
  std::vector<Coordinate> out;
  out.reserve(tuples.size());
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t a = 0; a < rank(); ++a) out.push_back({static_cast<std::uint32_t>(a), tuple(i)[a]});
  return out;
}

SigmaPath concatenate(const SigmaPath& head, const SigmaPath& tail) {
  if (head.sigma != tail.sigma) throw PreconditionError("concatenate: paths use different permutations");
  SigmaPath out = head;
  out.tuples.insert(out.tuples.end(), tail.tuples.begin(), tail.tuples.end());
  return out;
}

SigmaPath reversed(const SigmaPath& path) {
  SigmaPath out;
  out.sigma = reverse(path.sigma);
  for (std::size_t i = path.size(); i-- > 0;) {
    auto t = path.tuple(i);
    out.tuples.insert(out.tuples.end(), t.begin(), t.end());
  }
  return out;
}

namespace {

// Depth-first walk over the σ-moves out of x. `banned` (indexed by global
// coordinate id, may be empty) prunes a branch as soon as a new coordinate
// is banned. emit(y) is called once per σ-neighbour y.
template <class Emit>
void walk_sigma(const LineGraph& g, VertexId x, const Permutation& sigma, const std::vector<char>& banned,
                Emit&& emit) {
  const std::size_t r = g.rank();
  auto recurse = [&](auto&& self, VertexId z, std::size_t step) -> void {
    if (step == r) {
      emit(z);
      return;
    }
    const std::uint32_t axis = sigma[step];
    const Element from = g.element(x, axis);
    for (VertexId u : g.block_containing(axis, z)) {
      Element e = g.element(u, axis);
      if (e == from) continue;
      if (!banned.empty() && banned[g.coordinate_id({axis, e})]) continue;
      self(self, u, step + 1);
    }
  };
  recurse(recurse, x, 0);
}

void check_sigma(const LineGraph& g, const Permutation& sigma) {
  if (sigma.size() != g.rank() || !sigma.is_valid()) throw PreconditionError("permutation does not match the rank");
}

VertexSet sorted_unique(std::vector<VertexId> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

VertexSet sigma_neighbors(const LineGraph& g, VertexId x, const Permutation& sigma) {
  check_sigma(g, sigma);
  std::vector<VertexId> out;
  walk_sigma(g, x, sigma, {}, [&](VertexId y) { out.push_back(y); });
  return sorted_unique(std::move(out));
}

VertexSet sigma_boundary(const LineGraph& g, const VertexSet& x, const Permutation& sigma,
                         const ForbiddenMap& forbidden) {
  check_sigma(g, sigma);
  std::vector<char> banned(g.coordinate_count(), 0);
  std::vector<char> hit(g.size(), 0);
  for (VertexId v : x) {
    auto f = forbidden.at(v);
    for (auto c : f) banned[g.coordinate_id(c)] = 1;
    walk_sigma(g, v, sigma, banned, [&](VertexId y) { hit[y] = 1; });
    for (auto c : f) banned[g.coordinate_id(c)] = 0;
  }
  VertexSet out;
  for (VertexId v = 0; v < g.size(); ++v)
    if (hit[v]) out.push_back(v);
  return out;
}

VertexSet axis_boundary(const LineGraph& g, const VertexSet& x, std::size_t axis, const ForbiddenMap& forbidden) {
  std::vector<char> hit(g.size(), 0);
  for (VertexId v : x) {
    auto f = forbidden.at(v);
    for (VertexId y : g.block_containing(axis, v)) {
      if (y == v) continue;
      Coordinate c = g.coordinate(y, axis);
      if (!std::binary_search(f.begin(), f.end(), c)) hit[y] = 1;
    }
  }
  VertexSet out;
  for (VertexId v = 0; v < g.size(); ++v)
    if (hit[v]) out.push_back(v);
  return out;
}

bool validate_sigma_path(const LineGraph& g, const SigmaPath& p) {
  const std::size_t r = g.rank();
  if (p.sigma.size() != r || !p.sigma.is_valid()) return false;
  if (p.tuples.empty() || p.tuples.size() % r != 0) return false;
  for (std::size_t i = 0; i < p.tuples.size(); ++i)
    if (p.tuples[i] >= g.part_sizes()[i % r]) return false;

  auto seq = p.coordinate_sequence();
  auto sorted = seq;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;

  std::vector<Element> window(r);
  for (std::size_t s = 0; s + r <= seq.size(); ++s) {
    for (std::size_t j = 0; j < r; ++j) window[seq[s + j].axis] = seq[s + j].element;
    if (!g.contains(window)) return false;
  }
  return true;
}

SigmaPath ReachResult::path(VertexId v) const {
  if (!reached(v)) throw PreconditionError("reach: vertex was not reached");
  std::vector<VertexId> chain;
  std::size_t round = size_[v] - 1;
  std::uint32_t idx = index_[v];
  while (true) {
    const Entry& e = rounds_[round][idx];
    chain.push_back(e.vertex);
    if (round == 0) break;
    idx = e.parent;
    --round;
  }
  SigmaPath out;
  out.sigma = sigma_;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    auto t = graph_->tuple(*it);
    out.tuples.insert(out.tuples.end(), t.begin(), t.end());
  }
  return out;
}

VertexSet ReachResult::vertices() const {
  VertexSet out;
  for (VertexId v = 0; v < size_.size(); ++v)
    if (size_[v]) out.push_back(v);
  return out;
}

std::size_t ReachResult::count() const {
  return static_cast<std::size_t>(std::count_if(size_.begin(), size_.end(), [](auto s) { return s != 0; }));
}

ReachResult reach(const LineGraph& g, VertexId x, const Permutation& sigma, std::size_t max_size, ReachMode mode) {
  check_sigma(g, sigma);
  if (x >= g.size()) throw PreconditionError("reach: start vertex not in graph");
  const std::size_t r = g.rank();
  ReachResult res;
  res.graph_ = &g;
  res.sigma_ = sigma;
  res.size_.assign(g.size(), 0);
  res.index_.assign(g.size(), 0);
  if (max_size == 0) return res;

  res.rounds_.push_back({{x, 0}});
  std::size_t reached = 1;
  if (mode == ReachMode::kAtMost || max_size == 1) {
    res.size_[x] = 1;
  }

  std::vector<char> banned(g.coordinate_count(), 0);
  std::vector<std::uint32_t> slot(g.size(), std::numeric_limits<std::uint32_t>::max());
  std::vector<Coordinate> forbidden;
  for (std::size_t round = 1; round < max_size; ++round) {
    const auto& prev = res.rounds_[round - 1];
    if (prev.empty()) break;
    if (mode == ReachMode::kAtMost && reached == g.size()) break;

    std::vector<ReachResult::Entry> next;
    std::vector<VertexId> touched;
    for (std::uint32_t i = 0; i < prev.size(); ++i) {
      // F(y): coordinates of the stored path to y, y excluded.
      forbidden.clear();
      std::uint32_t idx = prev[i].parent;
      for (std::size_t k = round - 1; k-- > 0;) {
        VertexId w = res.rounds_[k][idx].vertex;
        for (std::size_t a = 0; a < r; ++a) forbidden.push_back(g.coordinate(w, a));
        idx = res.rounds_[k][idx].parent;
      }
      for (auto c : forbidden) banned[g.coordinate_id(c)] = 1;
      walk_sigma(g, prev[i].vertex, sigma, banned, [&](VertexId z) {
        if (slot[z] != std::numeric_limits<std::uint32_t>::max()) return;
        slot[z] = static_cast<std::uint32_t>(next.size());
        next.push_back({z, i});
        touched.push_back(z);
      });
      for (auto c : forbidden) banned[g.coordinate_id(c)] = 0;
    }
    for (auto z : touched) slot[z] = std::numeric_limits<std::uint32_t>::max();
    std::sort(next.begin(), next.end(), [](const auto& a, const auto& b) { return a.vertex < b.vertex; });
    res.rounds_.push_back(std::move(next));

    const auto& cur = res.rounds_.back();
    for (std::uint32_t i = 0; i < cur.size(); ++i) {
      VertexId z = cur[i].vertex;
      if (mode == ReachMode::kAtMost) {
        if (res.size_[z] == 0) {
          res.size_[z] = static_cast<std::uint32_t>(round + 1);
          res.index_[z] = i;
          ++reached;
        }
      } else if (round + 1 == max_size) {
        res.size_[z] = static_cast<std::uint32_t>(round + 1);
        res.index_[z] = i;
      }
    }
  }
  return res;
}

std::string serialize_sigma_path(const LineGraph& g, const SigmaPath& p) {
  std::ostringstream out;
  out << "SP sigma=" << to_string(p.sigma) << " k=" << p.size() << '\n';
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto t = p.tuple(i);
    for (std::size_t a = 0; a < t.size(); ++a) {
      if (a) out << ' ';
      out << g.coordinate_id({static_cast<std::uint32_t>(a), t[a]});
    }
    out << '\n';
  }
  return out.str();
}

SigmaPath parse_sigma_path(const std::string& text, const LineGraph& g) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  SigmaPath p;
  std::size_t k = 0;
  bool header = false;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    if (!header) {
      std::string tag, sig, ks;
      ls >> tag >> sig >> ks;
      if (tag != "SP" || sig.rfind("sigma=", 0) != 0 || ks.rfind("k=", 0) != 0)
        throw InputError(lineno, "expected 'SP sigma=<perm> k=<size>'");
      try {
        p.sigma = parse_permutation(sig.substr(6));
        k = std::stoull(ks.substr(2));
      } catch (const InputError& e) {
        throw InputError(lineno, e.what());
      } catch (const std::exception&) {
        throw InputError(lineno, "bad path size");
      }
      if (p.sigma.size() != g.rank()) throw InputError(lineno, "permutation length differs from the rank");
      header = true;
      continue;
    }
    std::vector<Element> t(g.rank());
    std::vector<char> set(g.rank(), 0);
    std::uint64_t id = 0;
    std::size_t count = 0;
    while (ls >> id) {
      if (id >= g.coordinate_count()) throw InputError(lineno, "coordinate id out of range");
      auto c = g.coordinate_from_id(static_cast<std::uint32_t>(id));
      if (set[c.axis]) throw InputError(lineno, "two coordinates on one axis");
      set[c.axis] = 1;
      t[c.axis] = c.element;
      ++count;
    }
    if (!ls.eof() || count != g.rank()) throw InputError(lineno, "expected one coordinate id per axis");
    p.tuples.insert(p.tuples.end(), t.begin(), t.end());
    ++rows;
  }
  if (!header) throw InputError(lineno, "missing SP header");
  if (rows != k) throw InputError(lineno, "path size does not match k");
  return p;
}

}  // namespace tightcycle
