#include <gtest/gtest.h>

#include <random>

#include "hered3/patterns.hpp"
#include "hered3/reductions.hpp"
#include "hered3/testkit.hpp"

using namespace hered3;

namespace {

// x1, x2 complete to C; x1 also hangs off a triangle so X is a genuine cut.
struct CutFixture {
  ColorInstance inst;
  VertexSet x;
  VertexSet c;
};

CutFixture cut_fixture(Palette c0, Palette c1, bool c_edge) {
  Graph g(4);
  const VertexId x1 = vid(0), x2 = vid(1), a = vid(2), b = vid(3);
  if (c_edge) g.add_edge(a, b);
  for (VertexId xv : {x1, x2}) {
    for (VertexId cv : {a, b}) g.add_edge(xv, cv);
  }
  PaletteMap pal{Palette::of(1, 2), Palette::of(1, 2), c0, c1};
  return {ColorInstance::from_graph(g, pal), {x1, x2}, {a, b}};
}

}  // namespace

TEST(Reductions, IsolatedVertexDeleted) {
  ColorInstance inst = ColorInstance::from_graph(Graph(1));
  const SingleStep s = apply_single_step(inst);
  ASSERT_TRUE(s.rule);
  EXPECT_EQ(*s.rule, BasicRule::kLowDegree);
  EXPECT_EQ(inst.graph.vertex_count(), 0U);
  const Coloring c = replay_coloring(inst, {});
  EXPECT_NE(color_of(c, vid(0)), kNoColor);
}

TEST(Reductions, TriangleWithTwoColorsRejected) {
  ColorInstance inst = ColorInstance::from_graph(make_complete(3), PaletteMap(3, Palette::of(1, 2)));
  const Verdict v = basic_fixpoint(inst);
  EXPECT_EQ(v.status, Status::kRejected);
  ColorInstance again = ColorInstance::from_graph(make_complete(3), PaletteMap(3, Palette::of(1, 2)));
  const SingleStep s = apply_single_step(again);
  ASSERT_TRUE(s.rule);
  EXPECT_EQ(*s.rule, BasicRule::kTwoPaletteComponent);
}

TEST(Reductions, DiamondIntersectsPalettes) {
  Graph g(4);
  const VertexId a = vid(0), b = vid(1), y = vid(2), y2 = vid(3);
  g.add_edge(a, b);
  for (VertexId t : {y, y2}) {
    g.add_edge(t, a);
    g.add_edge(t, b);
  }
  PaletteMap pal{Palette::full(), Palette::full(), Palette::of(1, 2), Palette::of(2, 3)};
  ColorInstance inst = ColorInstance::from_graph(g, pal);
  const SingleStep s = apply_single_step(inst);
  ASSERT_TRUE(s.rule);
  EXPECT_EQ(*s.rule, BasicRule::kDiamond);
  EXPECT_EQ(inst.palette(y), Palette::only(2));
  EXPECT_EQ(inst.palette(y2), Palette::only(2));
  const SingleStep next = apply_single_step(inst);
  ASSERT_TRUE(next.rule);
  EXPECT_EQ(*next.rule, BasicRule::kSingleton);
}

TEST(Reductions, FixpointReplayGivesProperColoring) {
  const Graph g = make_cycle(9);
  ColorInstance inst = ColorInstance::from_graph(g);
  ASSERT_EQ(basic_fixpoint(inst).status, Status::kSolved);
  const Coloring c = replay_coloring(inst, {});
  EXPECT_TRUE(is_proper_coloring(g, c));
}

TEST(Reductions, SingleStepsAreSound) {
  std::mt19937_64 rng(5);
  int steps = 0;
  for (int iter = 0; iter < 300; ++iter) {
    const std::size_t n = 4 + rng() % 8;
    const Graph g = testkit::generate({testkit::GeneratorKind::kErdosRenyi, n, 0.35, "", rng()});
    PaletteMap pal(n);
    for (auto& p : pal) p = rng() % 3 == 0 ? Palette::from_bits(1 + rng() % 7) : Palette::full();
    ColorInstance inst = ColorInstance::from_graph(g, pal);
    const bool before = testkit::oracle_list3color(g, pal).has_value();
    const SingleStep s = apply_single_step(inst, {nullptr, true});
    if (!s.rule) continue;
    ++steps;
    const bool after = s.verdict.status != Status::kRejected &&
                       testkit::oracle_list3color(inst.graph, inst.palettes).has_value();
    EXPECT_EQ(before, after) << "rule " << to_string(*s.rule) << " seed iteration " << iter;
  }
  EXPECT_GT(steps, 200);
}

TEST(Reductions, CutMixedDeletesC) {
  auto f = cut_fixture(Palette::only(3), Palette::only(3), false);
  Telemetry t;
  const Verdict v = cut_reduction(f.inst, f.x, f.c, {&t, false});
  EXPECT_EQ(v.status, Status::kContinue);
  EXPECT_EQ(t.get("cut_reduction.mixed"), 1U);
  EXPECT_FALSE(f.inst.graph.has_vertex(f.c[0]));
  EXPECT_FALSE(f.inst.graph.has_vertex(f.c[1]));
}

TEST(Reductions, CutBothUniformAddsPlaceholder) {
  auto f = cut_fixture(Palette::of(1, 3), Palette::of(2, 3), true);
  Telemetry t;
  cut_reduction(f.inst, f.x, f.c, {&t, false});
  EXPECT_EQ(t.get("cut_reduction.placeholder"), 1U);
  EXPECT_EQ(f.inst.graph.vertex_count(), 3U);
  ASSERT_EQ(basic_fixpoint(f.inst).status, Status::kSolved);
  Coloring c = replay_coloring(f.inst, {});
  auto orig = cut_fixture(Palette::of(1, 3), Palette::of(2, 3), true);
  const VertexSet all = orig.inst.graph.vertices();
  EXPECT_TRUE(is_proper_coloring(orig.inst.graph, all, c, &orig.inst.palettes));
}

TEST(Reductions, CutNothingExtendsRejects) {
  auto f = cut_fixture(Palette::only(3), Palette::only(3), true);
  const Verdict v = cut_reduction(f.inst, f.x, f.c);
  EXPECT_EQ(v.status, Status::kRejected);
}

TEST(Reductions, CutPreconditions) {
  auto f = cut_fixture(Palette::only(3), Palette::only(3), false);
  EXPECT_THROW(cut_reduction(f.inst, f.x, {f.c[0]}), ContractViolation);
  f.inst.set_palette(f.x[0], Palette::full());
  EXPECT_THROW(cut_reduction(f.inst, f.x, f.c), ContractViolation);
}

TEST(Reductions, CollapseSingleEdgeIsIsomorphic) {
  ColorInstance inst = ColorInstance::from_graph(make_complete(3));
  const CollapseResult r = neighborhood_collapse(inst, vid(0));
  EXPECT_EQ(inst.graph.vertex_count(), 3U);
  EXPECT_EQ(inst.graph.edge_count(), 3U);
  EXPECT_TRUE(inst.graph.adjacent(r.x_star, r.y_star));
  EXPECT_TRUE(inst.graph.adjacent(vid(0), r.x_star));
}

TEST(Reductions, CollapseStar) {
  // v = 0 sees the star with center 1 and leaves 2, 3, 4.
  Graph g(5);
  for (std::uint32_t i = 1; i <= 4; ++i) g.add_edge(vid(0), vid(i));
  for (std::uint32_t i = 2; i <= 4; ++i) g.add_edge(vid(1), vid(i));
  ColorInstance inst = ColorInstance::from_graph(g);
  Telemetry t;
  const CollapseResult r = neighborhood_collapse(inst, vid(0), {&t, true});
  EXPECT_EQ(inst.graph.vertex_count(), 3U);
  EXPECT_EQ(t.get("collapse.2p4_violations"), 0U);
  ASSERT_EQ(basic_fixpoint(inst).status, Status::kSolved);
  const Coloring c = replay_coloring(inst, {});
  EXPECT_TRUE(is_proper_coloring(g, c));
  // The center collapses to one side, the three leaves to the other.
  EXPECT_EQ(color_of(c, vid(2)), color_of(c, vid(3)));
  EXPECT_EQ(color_of(c, vid(3)), color_of(c, vid(4)));
  (void)r;
}

TEST(Reductions, CollapseNeedsBipartiteNeighborhood) {
  Graph g = make_cycle(5);
  const VertexId hub = g.add_vertex();
  for (std::uint32_t i = 0; i < 5; ++i) g.add_edge(hub, vid(i));
  ColorInstance inst = ColorInstance::from_graph(g);
  EXPECT_THROW(neighborhood_collapse(inst, hub), ContractViolation);
}
