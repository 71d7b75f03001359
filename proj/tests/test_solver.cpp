#include <gtest/gtest.h>

#include "hered3/patterns.hpp"
#include "hered3/solver.hpp"
#include "hered3/testkit.hpp"

using namespace hered3;

namespace {

SolveOptions exhaustive() {
  SolveOptions o;
  o.exhaustive = true;
  o.paranoid = true;
  o.threads = 1;
  return o;
}

void expect_witness(const Graph& g, const SolveReport& r) {
  ASSERT_TRUE(r.colorable);
  ASSERT_TRUE(r.witness);
  EXPECT_TRUE(is_proper_coloring(g, *r.witness));
}

}  // namespace

TEST(Solver, K4NotColorable) {
  const SolveReport r = solve(make_complete(4));
  EXPECT_FALSE(r.colorable);
  ASSERT_TRUE(r.obstruction);
  EXPECT_EQ(r.obstruction->kind, PatternKind::kK4);
}

TEST(Solver, CoC7NotColorable) {
  const Graph g = make_complement(make_cycle(7));
  const SolveReport r = solve(g);
  EXPECT_FALSE(r.colorable);
  ASSERT_TRUE(r.obstruction);
  EXPECT_TRUE(verify_witness(g, *r.obstruction));
}

TEST(Solver, C9Witness) {
  const Graph g = make_cycle(9);
  const SolveReport r = solve(g);
  expect_witness(g, r);
  int threes = 0;
  for (VertexId v : g.vertices()) threes += color_of(*r.witness, v) == 3 ? 1 : 0;
  EXPECT_GE(threes, 1);
}

TEST(Solver, RootColoringCounts) {
  EXPECT_EQ(solve(make_cycle(7), exhaustive()).stats.n0_colorings, 126U);
  EXPECT_EQ(solve(make_cycle(9), exhaustive()).stats.n0_colorings, 510U);
  EXPECT_EQ(solve(make_cycle(7), exhaustive()).stats.telemetry.get("path.c7"), 1U);
  EXPECT_EQ(solve(make_cycle(9), exhaustive()).stats.telemetry.get("path.c9"), 1U);
}

TEST(Solver, C9WithPendant) {
  Graph g = make_cycle(9);
  g.add_edge(vid(0), g.add_vertex());
  // The pendant path and the far side of the cycle form an induced 2P4.
  EXPECT_THROW(solve(g), ClassViolation);
  SolveOptions o;
  o.assume_class = true;
  expect_witness(g, solve(g, o));
  EXPECT_TRUE(testkit::oracle_3color(g));
}

TEST(Solver, C7WithPendantPath) {
  Graph g = make_cycle(7);
  const VertexId a = g.add_vertex();
  const VertexId b = g.add_vertex();
  const VertexId c = g.add_vertex();
  g.add_edge(vid(0), a);
  g.add_edge(a, b);
  g.add_edge(b, c);
  auto w = check_class(g);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->kind, PatternKind::kTwoP4);
  SolveOptions o;
  o.assume_class = true;
  expect_witness(g, solve(g, o));
  EXPECT_TRUE(testkit::oracle_3color(g));
}

TEST(Solver, BipartiteUsesPerfectPath) {
  Graph g(6);
  for (std::uint32_t a : {0U, 1U, 2U}) {
    for (std::uint32_t b : {3U, 4U, 5U}) g.add_edge(vid(a), vid(b));
  }
  const SolveReport r = solve(g);
  expect_witness(g, r);
  EXPECT_EQ(r.stats.telemetry.get("path.perfect"), 1U);
}

TEST(Solver, ClassViolationCarriesWitness) {
  try {
    solve(make_petersen());
    FAIL() << "expected ClassViolation";
  } catch (const ClassViolation& e) {
    EXPECT_EQ(e.witness().kind, PatternKind::kC5);
    EXPECT_TRUE(verify_witness(make_petersen(), e.witness()));
  }
}

TEST(Solver, EmptyGraph) {
  const SolveReport r = solve(Graph{});
  EXPECT_TRUE(r.colorable);
}

TEST(Solver, TemplatesReachTheirStages) {
  const char* const keys[] = {"stage.ri.branch",           "stage.si.branch",        "stage.n2x.single_vertex_cut",
                              "stage.n2x.edge.pendant",    "stage.n2x.edge.collapse", "stage.n2x.edge.forced"};
  ASSERT_EQ(testkit::c7_template_count(), std::size(keys));
  for (std::size_t i = 0; i < testkit::c7_template_count(); ++i) {
    const Graph g = testkit::c7_template(i);
    ASSERT_FALSE(check_class(g)) << i;
    const SolveReport r = solve(g, exhaustive());
    EXPECT_EQ(r.colorable, testkit::oracle_3color(g).has_value()) << i;
    EXPECT_GT(r.stats.telemetry.get(keys[i]), 0U) << "template " << i << " missed " << keys[i];
    EXPECT_EQ(r.stats.telemetry.get("collapse.2p4_violations"), 0U);
  }
}

TEST(Solver, ThreadCountDoesNotChangeWitness) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Graph g = testkit::generate({testkit::GeneratorKind::kC7Gadget, 16, 0.5, "", seed});
    SolveOptions one;
    one.threads = 1;
    SolveOptions four;
    four.threads = 4;
    const SolveReport a = solve(g, one);
    const SolveReport b = solve(g, four);
    EXPECT_EQ(a.colorable, b.colorable);
    EXPECT_EQ(a.witness, b.witness) << seed;
  }
}

TEST(Solver, ExactColorerBudget) {
  const Graph g = make_cycle(5);
  const VertexSet all = g.vertices();
  bool exhausted = false;
  auto c = exact_list_coloring(g, all, PaletteMap(5, Palette::full()), 1000, &exhausted);
  ASSERT_TRUE(c);
  EXPECT_FALSE(exhausted);
  EXPECT_FALSE(exact_list_coloring(g, all, PaletteMap(5, Palette::of(1, 2)), 1000, &exhausted));
  EXPECT_FALSE(exhausted);
}

TEST(Solver, ThreadsFromEnvironment) {
  EXPECT_EQ(resolve_threads(3), 3U);
}
