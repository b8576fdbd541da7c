#include <gtest/gtest.h>

#include <numeric>

#include "support/naive.hpp"
#include "tightcycle/errors.hpp"
#include "tightcycle/generators.hpp"
#include "tightcycle/line_graph.hpp"

using namespace tightcycle;

TEST(LineGraph, SingleEdge) {
  auto g = from_hypergraph(Hypergraph(3, 3, {{0, 1, 2}}, std::vector<std::uint32_t>{1, 1, 1}));
  auto s = stats(g);
  EXPECT_EQ(s.num_vertices, 1u);
  EXPECT_EQ(s.num_blocks, 3u);
  EXPECT_EQ(s.density, Rational(1));
  EXPECT_EQ(s.min_degree, 1u);
}

TEST(LineGraph, CompleteTripartiteWithPairs) {
  auto g = from_hypergraph(gen_complete_multipartite({2, 2, 2}));
  auto s = stats(g);
  EXPECT_EQ(s.num_vertices, 8u);
  EXPECT_EQ(s.num_blocks, 12u);
  EXPECT_EQ(s.density, Rational(2));
  EXPECT_EQ(s.min_degree, 2u);
}

TEST(LineGraph, FullGrid) {
  auto g = from_hypergraph(gen_full_grid(3, 3));
  auto s = stats(g);
  EXPECT_EQ(s.num_vertices, 27u);
  EXPECT_EQ(s.num_blocks, 27u);
  EXPECT_EQ(s.density, Rational(3));
  EXPECT_EQ(s.min_degree, 3u);
}

TEST(LineGraph, EmptyGraphHasZeroDensity) {
  LineGraph g({2, 2}, {});
  auto s = stats(g);
  EXPECT_EQ(s.num_vertices, 0u);
  EXPECT_EQ(s.density, Rational(0));
}

TEST(LineGraph, RejectsUnpartitioned) {
  EXPECT_THROW(from_hypergraph(gen_star(5, 3)), PreconditionError);
  EXPECT_THROW(LineGraph({2, 2}, {0, 2}), PreconditionError);
}

TEST(LineGraph, BlocksPartitionVerticesAndMatchNaive) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    auto g = naive::random_line_graph(2 + seed % 4, 2 + seed % 3, 0.4, seed);
    for (std::size_t a = 0; a < g.rank(); ++a) {
      std::size_t total = 0;
      std::vector<int> seen(g.size(), 0);
      for (std::uint32_t b = 0; b < g.block_count(a); ++b) {
        auto block = g.block(a, b);
        total += block.size();
        for (auto v : block) {
          ++seen[v];
          EXPECT_EQ(g.block_of(a, v), b);
          for (std::size_t k = 0; k < g.rank(); ++k)
            if (k != a) EXPECT_EQ(g.element(v, k), g.element(block[0], k));
        }
      }
      EXPECT_EQ(total, g.size());
      for (auto c : seen) EXPECT_EQ(c, 1);
    }
    auto s = stats(g);
    auto n = naive::block_stats(g);
    EXPECT_EQ(s.num_blocks, n.blocks);
    EXPECT_EQ(s.min_degree, n.min_block);
    if (!g.empty()) {
      EXPECT_EQ(s.density, Rational(std::int64_t(g.rank() * g.size()), std::int64_t(n.blocks)));
      EXPECT_GE(s.density, Rational(std::int64_t(s.min_degree)));
    }
  }
}

TEST(LineGraph, FindAndCoordinates) {
  auto g = naive::grid(3, 3);
  std::vector<Element> t{1, 2, 0};
  auto v = g.find(t);
  ASSERT_TRUE(v);
  EXPECT_TRUE(std::ranges::equal(g.tuple(*v), t));
  EXPECT_EQ(g.coordinate_id({2, 1}), 7u);
  EXPECT_EQ(g.coordinate_from_id(7), (Coordinate{2, 1}));
  std::vector<Element> bad{3, 0, 0};
  EXPECT_FALSE(g.contains(bad));
}

TEST(Neighborhoods, FullBlock) {
  auto g = naive::grid(3, 2);
  VertexSet block(g.block(0, 0).begin(), g.block(0, 0).end());
  auto nb = neighborhoods(g, block, 0);
  EXPECT_EQ(nb.boundary, block);
  EXPECT_TRUE(nb.neighborhood.empty());
}

TEST(Neighborhoods, SingleVertexInGrid) {
  auto g = naive::grid(3, 3);
  EXPECT_EQ(neighborhood(g, {13}).size(), 6u);
  EXPECT_EQ(neighborhood_size(g, {13}), 6u);
  auto nb = neighborhoods(g, {}, 1);
  EXPECT_TRUE(nb.boundary.empty());
  EXPECT_TRUE(nb.neighborhood.empty());
}

TEST(Neighborhoods, MatchNaive) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto g = naive::random_line_graph(3, 3, 0.5, seed);
    Rng rng(seed + 99);
    VertexSet x;
    for (VertexId v = 0; v < g.size(); ++v)
      if (rng.coin()) x.push_back(v);
    EXPECT_EQ(neighborhood(g, x), naive::neighborhood(g, x));
    VertexSet uni;
    for (std::size_t a = 0; a < g.rank(); ++a) {
      auto nb = neighborhoods(g, x, a);
      for (auto v : nb.neighborhood) uni.push_back(v);
      // boundary: vertices with an axis-a neighbour in X
      for (VertexId v = 0; v < g.size(); ++v) {
        bool expect = false;
        for (auto u : x)
          if (u != v && g.block_of(a, u) == g.block_of(a, v)) expect = true;
        EXPECT_EQ(std::binary_search(nb.boundary.begin(), nb.boundary.end(), v), expect);
      }
    }
    std::sort(uni.begin(), uni.end());
    uni.erase(std::unique(uni.begin(), uni.end()), uni.end());
    EXPECT_EQ(uni, naive::neighborhood(g, x));
  }
}

TEST(DeleteCoordinates, Examples) {
  auto g = naive::grid(3, 3);
  EXPECT_EQ(delete_coordinates(g, {}), g);
  std::vector<Coordinate> u{{0, 1}};
  auto h = delete_coordinates(g, u);
  EXPECT_EQ(h.size(), 18u);
  for (VertexId v = 0; v < h.size(); ++v) EXPECT_NE(h.element(v, 0), 1u);
}

TEST(DeleteCoordinates, CountBounds) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto g = naive::random_line_graph(5, 3, 0.7, seed);
    auto s = stats(g);
    if (s.min_degree == 0) continue;
    Rng rng(seed);
    std::vector<Coordinate> u;
    std::size_t k = rng.below(4);
    std::set<Coordinate> chosen;
    while (chosen.size() < k) chosen.insert({static_cast<std::uint32_t>(rng.below(3)), static_cast<Element>(rng.below(5))});
    u.assign(chosen.begin(), chosen.end());
    auto h = delete_coordinates(g, u);
    auto t = stats(h);
    const auto delta = static_cast<std::int64_t>(s.min_degree), uu = static_cast<std::int64_t>(u.size());
    if (!h.empty()) EXPECT_GE(static_cast<std::int64_t>(t.min_degree), delta - uu);
    EXPECT_GE(static_cast<std::int64_t>(h.size()) * delta, (delta - uu) * static_cast<std::int64_t>(g.size()));
  }
}

TEST(Induced, Examples) {
  auto g = naive::grid(4, 3);
  VertexSet all(g.size());
  std::iota(all.begin(), all.end(), 0);
  EXPECT_EQ(induced(g, all), g);
  EXPECT_TRUE(induced(g, {}).empty());
  auto block = g.block(1, 5);
  auto h = induced(g, VertexSet(block.begin(), block.end()));
  const std::int64_t b = 4, r = 3;
  EXPECT_EQ(stats(h).num_blocks, std::size_t(b * (r - 1) + 1));
  EXPECT_EQ(stats(h).density, Rational(r * b, b * (r - 1) + 1));
}

TEST(Conversions, RoundTrip) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto h = gen_random_rpartite(4, 3, 0.4, seed);
    auto g = from_hypergraph(h);
    auto back = to_hypergraph(g);
    EXPECT_EQ(from_hypergraph(back), g);
    EXPECT_EQ(back.edge_count(), h.edge_count());
    for (const auto& e : back.edges()) EXPECT_TRUE(h.has_edge(e));
  }
}

TEST(Conversions, EmbedAndProject) {
  auto g = naive::grid(3, 2);
  auto h = induced(g, {1, 4, 8});
  EXPECT_EQ(embed(h, g), (std::vector<VertexId>{1, 4, 8}));
  EXPECT_EQ(project(g, h).size(), 3u);
}
