#include <gtest/gtest.h>

#include "hered3/graph.hpp"

using namespace hered3;

namespace {

Graph two_p4() { return disjoint_union(make_path(4), make_path(4)); }

}  // namespace

TEST(Graph, AddRemoveKeepsIdsStable) {
  Graph g(3);
  g.add_edge(vid(0), vid(1));
  g.add_edge(vid(1), vid(2));
  EXPECT_EQ(g.edge_count(), 2U);
  g.remove_vertex(vid(1));
  EXPECT_EQ(g.vertex_count(), 2U);
  EXPECT_EQ(g.edge_count(), 0U);
  EXPECT_FALSE(g.has_vertex(vid(1)));
  const VertexId fresh = g.add_vertex();
  EXPECT_EQ(index(fresh), 3U);
  EXPECT_EQ(g.id_bound(), 4U);
}

TEST(Graph, SelfLoopRejected) {
  Graph g(2);
  EXPECT_THROW(g.add_edge(vid(0), vid(0)), InputError);
}

TEST(Graph, InducedPathInCycle) {
  const Graph c7 = make_cycle(7);
  const VertexSet s{vid(0), vid(1), vid(2), vid(3)};
  const Graph h = induced_subgraph(c7, s);
  EXPECT_EQ(h.vertex_count(), 4U);
  EXPECT_EQ(h.edge_count(), 3U);
  EXPECT_TRUE(h.adjacent(vid(0), vid(1)));
  EXPECT_TRUE(h.adjacent(vid(2), vid(3)));
  EXPECT_FALSE(h.adjacent(vid(0), vid(3)));
}

TEST(Graph, InducedEmptySet) {
  const Graph h = induced_subgraph(make_cycle(5), VertexSet{});
  EXPECT_EQ(h.vertex_count(), 0U);
}

TEST(Graph, InducedCliqueRestriction) {
  const Graph h = induced_subgraph(make_complete(4), VertexSet{vid(0), vid(1), vid(2)});
  EXPECT_EQ(h.vertex_count(), 3U);
  EXPECT_EQ(h.edge_count(), 3U);
}

TEST(Graph, Components) {
  const auto comps = connected_components(two_p4());
  ASSERT_EQ(comps.size(), 2U);
  EXPECT_EQ(comps[0].size(), 4U);
  EXPECT_EQ(comps[1].size(), 4U);
  EXPECT_EQ(connected_components(make_cycle(9)).size(), 1U);
  EXPECT_TRUE(connected_components(Graph{}).empty());
}

TEST(Graph, Bipartition) {
  auto c6 = bipartition(make_cycle(6));
  ASSERT_TRUE(c6);
  EXPECT_EQ(c6->first, (VertexSet{vid(0), vid(2), vid(4)}));
  EXPECT_EQ(c6->second, (VertexSet{vid(1), vid(3), vid(5)}));
  EXPECT_FALSE(bipartition(make_cycle(5)));
  auto edge = bipartition(make_path(2));
  ASSERT_TRUE(edge);
  EXPECT_EQ(edge->first, VertexSet{vid(0)});
  EXPECT_EQ(edge->second, VertexSet{vid(1)});
}

TEST(Graph, CommonNeighbors) {
  EXPECT_EQ(common_neighbors(make_complete(4), vid(0), vid(1)), (VertexSet{vid(2), vid(3)}));
  EXPECT_EQ(common_neighbors(make_path(4), vid(0), vid(2)), VertexSet{vid(1)});
  EXPECT_TRUE(common_neighbors(two_p4(), vid(0), vid(4)).empty());
}

TEST(Graph, Complement) {
  const Graph co = make_complement(make_cycle(7));
  EXPECT_EQ(co.edge_count(), 21U - 7U);
  EXPECT_TRUE(co.adjacent(vid(0), vid(2)));
  EXPECT_FALSE(co.adjacent(vid(0), vid(1)));
}

TEST(Graph, Petersen) {
  const Graph p = make_petersen();
  EXPECT_EQ(p.vertex_count(), 10U);
  EXPECT_EQ(p.edge_count(), 15U);
  for (VertexId v : p.vertices()) EXPECT_EQ(p.degree(v), 3U);
}

TEST(Graph, TwinReductionKeepsSmallestIds) {
  // K_{2,3}: both sides are false-twin classes.
  Graph g(5);
  for (std::uint32_t a : {0U, 1U}) {
    for (std::uint32_t b : {2U, 3U, 4U}) g.add_edge(vid(a), vid(b));
  }
  const Graph r = twin_reduced(g, false);
  EXPECT_EQ(r.vertices(), (VertexSet{vid(0), vid(2)}));
  EXPECT_TRUE(r.adjacent(vid(0), vid(2)));

  // K4 is one true-twin class but has no false twins.
  EXPECT_EQ(twin_reduced(make_complete(4), false).vertex_count(), 4U);
  EXPECT_EQ(twin_reduced(make_complete(4), true).vertex_count(), 1U);

  // Prime graphs are untouched.
  const Graph co = make_complement(make_cycle(7));
  EXPECT_EQ(twin_reduced(co, true).vertex_count(), 7U);
}

TEST(Graph, SetHelpers) {
  const VertexSet a{vid(1), vid(3), vid(5)};
  const VertexSet b{vid(3), vid(4)};
  EXPECT_EQ(set_union(a, b), (VertexSet{vid(1), vid(3), vid(4), vid(5)}));
  EXPECT_EQ(set_intersection(a, b), VertexSet{vid(3)});
  EXPECT_EQ(set_difference(a, b), (VertexSet{vid(1), vid(5)}));
  EXPECT_EQ(make_set({vid(2), vid(1), vid(2)}), (VertexSet{vid(1), vid(2)}));
}
