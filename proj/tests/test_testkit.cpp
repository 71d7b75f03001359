#include <gtest/gtest.h>

#include "hered3/patterns.hpp"
#include "hered3/testkit.hpp"

using namespace hered3;
using namespace hered3::testkit;

TEST(Testkit, ColoringCounts) {
  EXPECT_EQ(count_proper_3colorings(make_cycle(7)), 126U);
  EXPECT_EQ(count_proper_3colorings(make_cycle(9)), 510U);
  EXPECT_EQ(count_proper_3colorings(make_complete(3)), 6U);
  EXPECT_EQ(count_proper_3colorings(make_complete(4)), 0U);
}

TEST(Testkit, OracleListColoring) {
  const Graph c7 = make_cycle(7);
  EXPECT_FALSE(oracle_list3color(make_complete(4), PaletteMap(4, Palette::full())));
  auto full = oracle_list3color(c7, PaletteMap(7, Palette::full()));
  ASSERT_TRUE(full);
  EXPECT_TRUE(is_proper_coloring(c7, *full));
  PaletteMap forced(7, Palette::full());
  forced[0] = forced[1] = Palette::only(1);
  EXPECT_FALSE(oracle_list3color(c7, forced));
}

TEST(Testkit, NamedGraphs) {
  const Graph p = named_graph("petersen");
  EXPECT_EQ(p.vertex_count(), 10U);
  EXPECT_EQ(p.edge_count(), 15U);
  EXPECT_EQ(named_graph("co-c7").edge_count(), 14U);
  EXPECT_THROW(named_graph("nope"), InputError);
}

TEST(Testkit, GadgetsContainAnchor) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const Graph g = generate({GeneratorKind::kC7Gadget, 18, 0.5, "", seed});
    EXPECT_TRUE(find_induced_cycle(g, 7)) << seed;
    EXPECT_FALSE(check_class(g)) << seed;
    const Graph h = generate({GeneratorKind::kC9Gadget, 18, 0.5, "", seed});
    EXPECT_TRUE(find_induced_cycle(h, 9)) << seed;
    EXPECT_FALSE(find_induced_cycle(h, 7)) << seed;
    EXPECT_FALSE(check_class(h)) << seed;
  }
}

TEST(Testkit, CompositeIsInClass) {
  const Graph g = generate({GeneratorKind::kCographComposite, 60, 0.5, "", 9});
  EXPECT_EQ(g.vertex_count(), 60U);
  EXPECT_FALSE(check_class(g));
  EXPECT_TRUE(oracle_3color(g));
}

TEST(Testkit, ErdosRenyiReproducible) {
  const GeneratorSpec spec{GeneratorKind::kErdosRenyi, 10, 0.3, "", 42};
  EXPECT_EQ(generate(spec), generate(spec));
  GeneratorSpec other = spec;
  other.seed = 43;
  EXPECT_FALSE(generate(spec) == generate(other));
}

TEST(Testkit, SeedDerivationIsPositional) {
  EXPECT_EQ(derive_seed(7, 3), derive_seed(7, 3));
  EXPECT_NE(derive_seed(7, 3), derive_seed(7, 4));
  EXPECT_NE(derive_seed(7, 3), derive_seed(8, 3));
}

TEST(Testkit, KindNamesRoundTrip) {
  for (auto k : {GeneratorKind::kErdosRenyi, GeneratorKind::kC7Gadget, GeneratorKind::kC9Gadget,
                 GeneratorKind::kCographComposite, GeneratorKind::kNamed}) {
    EXPECT_EQ(parse_generator_kind(to_string(k)), k);
  }
}

TEST(Testkit, FuzzEmptyBatch) {
  FuzzOptions o;
  o.budget = 0;
  const FuzzReport r = differential_fuzz(o);
  EXPECT_EQ(r.generated, 0U);
  EXPECT_TRUE(r.mismatches.empty());
}

TEST(Testkit, FuzzSmallBatch) {
  FuzzOptions o;
  o.budget = 300;
  o.min_n = o.max_n = 12;
  o.probabilities = {0.25};
  o.seed = 17;
  const FuzzReport r = differential_fuzz(o);
  EXPECT_EQ(r.generated, 300U);
  EXPECT_GT(r.in_class, 0U);
  EXPECT_TRUE(r.mismatches.empty());
  EXPECT_EQ(r.witness_failures, 0U);
}

TEST(Testkit, FuzzDeterministicAcrossThreads) {
  FuzzOptions o;
  o.budget = 120;
  o.seed = 5;
  o.threads = 1;
  const FuzzReport a = differential_fuzz(o);
  o.threads = 3;
  const FuzzReport b = differential_fuzz(o);
  EXPECT_EQ(a.in_class, b.in_class);
  EXPECT_EQ(a.colorable, b.colorable);
}

TEST(Testkit, FuzzDenseBatchAllNotColorable) {
  // G(9, 0.9) graphs essentially always contain a K4.
  FuzzOptions o;
  o.budget = 50;
  o.min_n = o.max_n = 9;
  o.probabilities = {0.9};
  const FuzzReport r = differential_fuzz(o);
  EXPECT_GT(r.in_class, 0U);
  EXPECT_EQ(r.colorable, 0U);
  EXPECT_TRUE(r.mismatches.empty());
}
