#include <gtest/gtest.h>

#include "tightcycle/errors.hpp"
#include "tightcycle/generators.hpp"
#include "tightcycle/hypergraph.hpp"
#include "tightcycle/random.hpp"

using namespace tightcycle;

TEST(Hypergraph, RejectsMalformedEdges) {
  EXPECT_THROW(Hypergraph(3, 4, {{0, 1}}), PreconditionError);
  EXPECT_THROW(Hypergraph(3, 4, {{0, 1, 1}}), PreconditionError);
  EXPECT_THROW(Hypergraph(3, 4, {{0, 1, 4}}), PreconditionError);
  EXPECT_THROW(Hypergraph(3, 4, {{0, 1, 2}, {2, 1, 0}}), PreconditionError);
  EXPECT_THROW(Hypergraph(2, 4, {{0, 1}}, std::vector<std::uint32_t>{2, 2}), PreconditionError);
  EXPECT_NO_THROW(Hypergraph(2, 4, {{0, 2}}, std::vector<std::uint32_t>{2, 2}));
}

TEST(Hypergraph, EdgeMembershipIgnoresOrder) {
  Hypergraph h(3, 5, {{4, 0, 2}});
  std::vector<VertexId> q{2, 4, 0}, miss{1, 2, 4};
  EXPECT_TRUE(h.has_edge(q));
  EXPECT_FALSE(h.has_edge(miss));
}

TEST(Hypergraph, PartOfHandlesEmptyParts) {
  Hypergraph h(3, 3, {}, std::vector<std::uint32_t>{1, 0, 2});
  EXPECT_EQ(h.part_of(0), 0u);
  EXPECT_EQ(h.part_of(1), 2u);
  EXPECT_EQ(h.part_of(2), 2u);
}

TEST(MakePartite, PartitionedInputIsUnchanged) {
  auto h = gen_full_grid(3, 3);
  auto red = make_r_partite(h, 7);
  EXPECT_EQ(red.graph, h);
  for (VertexId v = 0; v < h.vertex_count(); ++v) EXPECT_EQ(red.original_id[v], v);
}

TEST(MakePartite, SingleEdgeIsKept) {
  Hypergraph h(3, 3, {{0, 1, 2}});
  for (std::uint64_t seed = 0; seed < 20; ++seed) EXPECT_EQ(make_r_partite(h, seed).graph.edge_count(), 1u);
}

TEST(MakePartite, MeetsExpectationBound) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Rng rng(seed);
    std::set<std::vector<VertexId>> edges;
    while (edges.size() < 100) {
      std::set<VertexId> e;
      while (e.size() < 3) e.insert(static_cast<VertexId>(rng.below(12)));
      edges.insert({e.begin(), e.end()});
    }
    Hypergraph h(3, 12, {edges.begin(), edges.end()});
    auto red = make_r_partite(h, seed, 4);
    EXPECT_GE(red.graph.edge_count(), 23u);
    // every kept edge maps back to an input edge
    for (const auto& e : red.graph.edges()) {
      std::vector<VertexId> back;
      for (auto v : e) back.push_back(red.original_id[v]);
      EXPECT_TRUE(h.has_edge(back));
    }
  }
}

TEST(Format, RoundTrip) {
  auto h = gen_random_rpartite(4, 3, 0.3, 11);
  EXPECT_EQ(parse_hypergraph(serialize_hypergraph(h)), h);
  auto s = gen_star(6, 3);
  auto text = serialize_hypergraph(s);
  EXPECT_EQ(text.substr(0, text.find('\n')), "HG r=3 n=6 parts=none");
  EXPECT_EQ(serialize_hypergraph(parse_hypergraph(text)), text);
}

TEST(Format, SkipsCommentsAndBlankLines) {
  auto h = parse_hypergraph("# generated\nHG r=2 n=3 parts=none\n\n0 1\n# x\n1 2\n");
  EXPECT_EQ(h.edge_count(), 2u);
}

TEST(Format, ErrorsCarryLineNumbers) {
  auto line_of = [](const std::string& text) {
    try {
      parse_hypergraph(text);
    } catch (const InputError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  EXPECT_EQ(line_of("HG r=3 n=4\n"), 1u);
  EXPECT_EQ(line_of("HG r=2 n=3 parts=none\n0 1\n0 9\n"), 3u);
  EXPECT_EQ(line_of("HG r=2 n=3 parts=none\n0 1\n0 x\n"), 3u);
  EXPECT_EQ(line_of("HG r=2 n=3 parts=none\n0 1\n1 0\n"), 3u);
  EXPECT_EQ(line_of("HG r=2 n=3 parts=none\n0 1 2\n"), 2u);
  EXPECT_EQ(line_of("HG r=2 n=4 parts=2,2\n0 1\n"), 2u);
  EXPECT_EQ(line_of("HG r=2 n=4 parts=2,1\n"), 1u);
}
