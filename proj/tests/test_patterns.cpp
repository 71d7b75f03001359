#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "hered3/graph.hpp"
#include "hered3/patterns.hpp"

using namespace hered3;

namespace {

Graph wheel(std::size_t rim) {
  Graph g = make_cycle(rim);
  const VertexId hub = g.add_vertex();
  for (std::uint32_t i = 0; i < rim; ++i) g.add_edge(hub, vid(i));
  return g;
}

// Brute force: does some k-subset of g induce a graph isomorphic to h?
bool brute_contains(const Graph& g, const Graph& h) {
  const VertexSet vs = g.vertices();
  const std::size_t k = h.vertex_count();
  if (vs.size() < k) return false;
  std::vector<bool> pick(vs.size(), false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(k), true);
  do {
    std::vector<VertexId> s;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      if (pick[i]) s.push_back(vs[i]);
    }
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      bool ok = true;
      for (std::size_t a = 0; a < k && ok; ++a) {
        for (std::size_t b = a + 1; b < k && ok; ++b) {
          ok = g.adjacent(s[perm[a]], s[perm[b]]) == h.adjacent(vid(static_cast<std::uint32_t>(a)), vid(static_cast<std::uint32_t>(b)));
        }
      }
      if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return false;
}

}  // namespace

TEST(Patterns, P4) {
  auto w = find_induced_p4(make_cycle(7));
  ASSERT_TRUE(w);
  EXPECT_TRUE(verify_witness(make_cycle(7), *w));
  EXPECT_FALSE(find_induced_p4(make_complete(4)));
  EXPECT_FALSE(find_induced_p4(make_cycle(4)));
  EXPECT_FALSE(brute_contains(make_cycle(4), make_path(4)));
}

TEST(Patterns, TwoP4) {
  const Graph c10 = make_cycle(10);
  auto w = find_induced_2p4(c10);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->kind, PatternKind::kTwoP4);
  EXPECT_TRUE(verify_witness(c10, *w));

  EXPECT_FALSE(find_induced_2p4(make_cycle(9)));

  const Graph two = disjoint_union(make_path(4), make_path(4));
  auto self = find_induced_2p4(two);
  ASSERT_TRUE(self);
  EXPECT_EQ(self->vertices.size(), 8U);
}

TEST(Patterns, TwoP4AgreesWithBruteForceOnSmallGraphs) {
  const Graph pattern = disjoint_union(make_path(4), make_path(4));
  for (std::size_t n : {8U, 9U, 10U, 11U}) {
    const Graph c = make_cycle(n);
    EXPECT_EQ(find_induced_2p4(c).has_value(), n >= 10) << n;
    if (n <= 10) EXPECT_EQ(brute_contains(c, pattern), n >= 10) << n;
  }
}

TEST(Patterns, Cycles) {
  auto c7 = find_induced_cycle(make_cycle(7), 7);
  ASSERT_TRUE(c7);
  EXPECT_EQ(c7->vertices.size(), 7U);
  EXPECT_TRUE(verify_witness(make_cycle(7), *c7));

  const Graph p = make_petersen();
  auto c5 = find_induced_cycle(p, 5);
  ASSERT_TRUE(c5);
  EXPECT_TRUE(verify_witness(p, *c5));
  EXPECT_TRUE(brute_contains(p, make_cycle(5)));

  EXPECT_FALSE(find_induced_cycle(make_cycle(6), 5));
  EXPECT_THROW(find_induced_cycle(make_cycle(6), 6), InputError);
  EXPECT_TRUE(find_induced_cycle_any_length(make_cycle(6), 6));
}

TEST(Patterns, NeighborhoodCheck) {
  auto k4 = find_k4_or_odd_neighborhood(make_complete(4));
  ASSERT_TRUE(k4);
  EXPECT_EQ(k4->kind, PatternKind::kK4);
  EXPECT_TRUE(verify_witness(make_complete(4), *k4));

  EXPECT_FALSE(find_k4_or_odd_neighborhood(make_cycle(7)));

  const Graph w5 = wheel(5);
  auto odd = find_k4_or_odd_neighborhood(w5);
  ASSERT_TRUE(odd);
  EXPECT_EQ(odd->kind, PatternKind::kOddWheel);
  EXPECT_TRUE(verify_witness(w5, *odd));
}

TEST(Patterns, NeighborhoodCheckWithTwins) {
  // K4 with every vertex doubled by a false twin still reports a K4.
  Graph g = make_complete(4);
  for (std::uint32_t i = 0; i < 4; ++i) {
    const VertexId t = g.add_vertex();
    for (std::uint32_t j = 0; j < 4; ++j) {
      if (j != i) g.add_edge(t, vid(j));
    }
  }
  auto w = find_k4_or_odd_neighborhood(g);
  ASSERT_TRUE(w);
  EXPECT_TRUE(verify_witness(g, *w));
}

TEST(Patterns, CoC7) {
  const Graph co = make_complement(make_cycle(7));
  auto w = find_co_c7(co);
  ASSERT_TRUE(w);
  EXPECT_TRUE(verify_witness(co, *w));
  EXPECT_FALSE(find_co_c7(make_cycle(7)));
  EXPECT_FALSE(brute_contains(make_cycle(7), co));
  EXPECT_FALSE(find_co_c7(make_complete(6)));
}

TEST(Patterns, CheckClass) {
  auto p = check_class(make_petersen());
  ASSERT_TRUE(p);
  EXPECT_EQ(p->kind, PatternKind::kC5);
  auto c10 = check_class(make_cycle(10));
  ASSERT_TRUE(c10);
  EXPECT_EQ(c10->kind, PatternKind::kTwoP4);
  EXPECT_FALSE(check_class(make_cycle(9)));
  EXPECT_FALSE(check_class(make_cycle(7)));
}

TEST(Patterns, VerifyRejectsWrongWitness) {
  PatternWitness w{PatternKind::kP4, {vid(0), vid(1), vid(2), vid(3)}};
  EXPECT_TRUE(verify_witness(make_path(4), w));
  EXPECT_FALSE(verify_witness(make_cycle(4), w));
}
