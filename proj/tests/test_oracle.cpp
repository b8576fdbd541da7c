#include <gtest/gtest.h>

#include "support/naive.hpp"
#include "tightcycle/errors.hpp"
#include "tightcycle/generators.hpp"
#include "tightcycle/line_graph.hpp"
#include "tightcycle/oracle.hpp"

using namespace tightcycle;

namespace {

Hypergraph complete(std::size_t n, std::size_t r) {
  std::vector<std::vector<VertexId>> edges;
  std::vector<VertexId> e;
  auto rec = [&](auto&& self, VertexId from) -> void {
    if (e.size() == r) {
      edges.push_back(e);
      return;
    }
    for (VertexId v = from; v < n; ++v) {
      e.push_back(v);
      self(self, v + 1);
      e.pop_back();
    }
  };
  rec(rec, 0);
  return Hypergraph(r, n, edges);
}

Hypergraph random_small(std::size_t n, std::size_t r, std::size_t max_edges, Rng& rng) {
  auto all = complete(n, r).edges();
  std::vector<std::vector<VertexId>> edges;
  const std::size_t want = rng.below(max_edges + 1);
  for (std::size_t i = 0; i < want; ++i) {
    auto& e = all[rng.below(all.size())];
    if (std::find(edges.begin(), edges.end(), e) == edges.end()) edges.push_back(e);
  }
  return Hypergraph(r, n, edges);
}

std::size_t choose(std::size_t n, std::size_t k) {
  std::size_t c = 1;
  for (std::size_t i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
  return c;
}

}  // namespace

TEST(Oracle, CompleteFourVertexTripleSystem) {
  auto w = brute_force_tight_cycle(complete(4, 3), 4);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->size(), 4u);
  EXPECT_TRUE(validate_tight_cycle(complete(4, 3), *w));
}

TEST(Oracle, StarsHaveNoTightCycle) {
  for (std::size_t n = 4; n <= 10; ++n) {
    auto h = gen_star(n, 3);
    EXPECT_EQ(h.edge_count(), choose(n - 1, 2));
    EXPECT_FALSE(brute_force_tight_cycle(h, n, 10));
    if (n <= 7) EXPECT_FALSE(naive::has_tight_cycle(h));
  }
}

TEST(Oracle, GeneratedCycleIsFound) {
  for (std::size_t r : {2u, 3u, 4u})
    for (std::size_t l = r + 1; l <= 9; ++l) {
      auto h = gen_tight_cycle(l, r);
      auto w = brute_force_tight_cycle(h, l);
      ASSERT_TRUE(w) << l << " " << r;
      EXPECT_TRUE(validate_tight_cycle(h, *w));
      EXPECT_LE(w->size(), l);
    }
  auto w = brute_force_tight_cycle(gen_tight_cycle(6, 3), 6);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->size(), 6u);
  EXPECT_FALSE(brute_force_tight_cycle(gen_tight_cycle(7, 3), 6));
}

TEST(Oracle, ReturnsShortest) {
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    auto h = random_small(7, 3, 20, rng);
    auto w = brute_force_tight_cycle(h, 7);
    if (!w) continue;
    if (w->size() > 4) EXPECT_FALSE(brute_force_tight_cycle(h, w->size() - 1));
    EXPECT_EQ(*std::min_element(w->begin(), w->end()), w->front());
  }
}

TEST(Oracle, AgreesWithNaiveOnSmallHypergraphs) {
  Rng rng(2024);
  int with = 0;
  for (int i = 0; i < 2000; ++i) {
    auto h = random_small(6, 3, 8, rng);
    auto w = brute_force_tight_cycle(h, 6);
    ASSERT_EQ(w.has_value(), naive::has_tight_cycle(h)) << serialize_hypergraph(h);
    if (w) {
      ++with;
      EXPECT_TRUE(validate_tight_cycle(h, *w));
    }
  }
  EXPECT_GT(with, 0);
}

TEST(Oracle, Limits) {
  EXPECT_THROW(brute_force_tight_cycle(complete(4, 3), 3), PreconditionError);
  EXPECT_THROW(brute_force_tight_cycle(gen_star(16, 3), 5), PreconditionError);
  EXPECT_NO_THROW(brute_force_tight_cycle(gen_star(16, 3), 5, 16));
  EXPECT_THROW(brute_force_tight_cycle(gen_star(65, 2), 5, 100), PreconditionError);
}

TEST(Validate, Examples) {
  auto h = gen_tight_cycle(6, 3);
  std::vector<VertexId> good{0, 1, 2, 3, 4, 5};
  std::vector<VertexId> shifted{3, 4, 5, 0, 1, 2};
  std::vector<VertexId> reversed{5, 4, 3, 2, 1, 0};
  std::vector<VertexId> bad{0, 2, 1, 3, 4, 5};
  std::vector<VertexId> short_one{0, 1, 2};
  std::vector<VertexId> repeat{0, 1, 2, 0, 1, 2};
  std::vector<VertexId> out_of_range{0, 1, 2, 3, 4, 9};
  EXPECT_TRUE(validate_tight_cycle(h, good));
  EXPECT_TRUE(validate_tight_cycle(h, shifted));
  EXPECT_TRUE(validate_tight_cycle(h, reversed));
  EXPECT_FALSE(validate_tight_cycle(h, bad));
  EXPECT_FALSE(validate_tight_cycle(h, short_one));
  EXPECT_FALSE(validate_tight_cycle(h, repeat));
  EXPECT_FALSE(validate_tight_cycle(h, out_of_range));
}

TEST(Witness, RoundTrip) {
  std::vector<VertexId> w{4, 0, 7, 2};
  auto text = serialize_witness(w);
  EXPECT_EQ(text, "TCW l=4\n4\n0\n7\n2\n");
  EXPECT_EQ(parse_witness(text), w);
  EXPECT_THROW(parse_witness("TCW l=3\n1\n2\n"), InputError);
  EXPECT_THROW(parse_witness("TC l=1\n1\n"), InputError);
  EXPECT_THROW(parse_witness("TCW l=2\n1\nx\n"), InputError);
}

TEST(Generators, Counts) {
  EXPECT_EQ(gen_star(5, 3).edge_count(), 6u);
  EXPECT_FALSE(gen_star(5, 3).is_partitioned());
  auto star = gen_star(7, 3);
  for (const auto& e : star.edges()) EXPECT_TRUE(std::find(e.begin(), e.end(), 0u) != e.end());
  auto k = gen_complete_multipartite({2, 3, 4});
  EXPECT_EQ(k.edge_count(), 24u);
  EXPECT_EQ(k.vertex_count(), 9u);
  EXPECT_TRUE(k.is_partitioned());
  EXPECT_EQ(gen_tight_cycle(7, 3).edge_count(), 7u);
  EXPECT_EQ(gen_full_grid(3, 3).edge_count(), 27u);
  EXPECT_THROW(gen_tight_cycle(3, 3), PreconditionError);
  EXPECT_THROW(gen_random_rpartite(3, 3, 1.5, 0), PreconditionError);
}

TEST(Generators, RandomExtremes) {
  EXPECT_EQ(gen_random_rpartite(4, 3, 1.0, 9), gen_full_grid(4, 3));
  EXPECT_EQ(gen_random_rpartite(4, 3, 0.0, 9).edge_count(), 0u);
  EXPECT_EQ(gen_random_rpartite(5, 3, 0.4, 11), gen_random_rpartite(5, 3, 0.4, 11));
  auto h = gen_random_rpartite(10, 3, 0.3, 1);
  EXPECT_GT(h.edge_count(), 200u);
  EXPECT_LT(h.edge_count(), 400u);
  for (const auto& e : h.edges())
    for (std::size_t a = 0; a < 3; ++a) EXPECT_EQ(h.part_of(e[a]), a);
}

TEST(Generators, GridMatchesLineGraph) {
  auto g = from_hypergraph(gen_full_grid(3, 3));
  EXPECT_EQ(naive::tuple_set(g), naive::tuple_set(naive::grid(3, 3)));
}
