#include <gtest/gtest.h>

#include <random>

#include "rtw/hpid.hpp"
#include "rtw/oracle.hpp"
#include "support/graph_gen.hpp"

using namespace rtw;
using namespace rtw::testing;

namespace {

VertexSet vs(std::size_t n, std::initializer_list<Vertex> xs) { return VertexSet(n, xs); }

TEST(Hpid, FreshStateHasInfiniteWidth) {
  HpidState c4(cycle_graph(4), 2);
  EXPECT_EQ(c4.width(), kInfinity);
  HpidState k4(complete_graph(4), 3);
  EXPECT_EQ(k4.width(), kInfinity);
  HpidState one(Graph(1), 0);
  one.import_pmcs(PmcSet{vs(1, {0})});
  EXPECT_EQ(one.width(), 0);
  EXPECT_THROW(HpidState(Graph(2), 1), InputError);
}

TEST(Hpid, Import) {
  Graph c4 = cycle_graph(4);
  HpidState s(c4, 2);
  s.import_pmcs(PmcSet{});
  EXPECT_EQ(s.width(), kInfinity);
  EXPECT_TRUE(s.pmcs().empty());
  s.import_pmcs(all_pmcs(c4));
  EXPECT_EQ(s.width(), 2);
  EXPECT_THROW(s.import_pmcs(PmcSet{vs(4, {0, 1})}), InputError);

  // An oversized PMC is kept but yields no feasible block.
  Graph k4 = complete_graph(4);
  HpidState t(k4, 2);
  t.import_pmcs(PmcSet{k4.all()});
  EXPECT_EQ(t.pmcs().size(), 1u);
  EXPECT_TRUE(t.feasible_blocks().empty());
  EXPECT_FALSE(t.root_feasible());
}

TEST(Hpid, UsefulPmcs) {
  Graph c4 = cycle_graph(4);
  HpidState s(c4, 2);
  EXPECT_THROW(s.useful_pmcs(), StateError);
  s.import_pmcs(all_pmcs(c4));
  EXPECT_EQ(s.useful_pmcs(), all_pmcs(c4));

  Graph p4 = path_graph(4);
  PmcSet exact{vs(4, {0, 1}), vs(4, {1, 2}), vs(4, {2, 3})};
  HpidState p(p4, 1);
  p.import_pmcs(exact);
  EXPECT_EQ(p.useful_pmcs(), exact);

  // {0,1,2,3} of the 4-cycle with pendant 4 at vertex 0 is never needed.
  Graph g = Graph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 4}});
  HpidState q(g, 3);
  PmcSet with_extra{vs(5, {0, 1, 2}), vs(5, {0, 2, 3}), vs(5, {0, 4})};
  q.import_pmcs(with_extra);
  EXPECT_EQ(q.width(), 2);
  EXPECT_EQ(q.useful_pmcs(), with_extra);
}

TEST(Hpid, SearchNewFeasible) {
  Graph c4 = cycle_graph(4);
  HpidState s(c4, 2);
  s.improve(1);  // seeds leaves
  ASSERT_TRUE(s.is_feasible(vs(4, {1})) || s.root_feasible());
  HpidState fresh(c4, 2);
  EXPECT_THROW(fresh.search_new_feasible(vs(4, {1})), InputError);

  HpidState k1(c4, 1);
  k1.finish();
  for (const VertexSet& b : k1.feasible_blocks()) EXPECT_TRUE(k1.search_new_feasible(b).empty());
  EXPECT_FALSE(k1.root_feasible());

  Graph k4 = complete_graph(4);
  HpidState k(k4, 3);
  k.improve(1000);
  EXPECT_TRUE(k.root_feasible());
  EXPECT_EQ(k.width(), 3);
}

TEST(Hpid, Improve) {
  Graph c4 = cycle_graph(4);
  HpidState s(c4, 2);
  s.improve(0);
  EXPECT_EQ(s.steps(), 0u);
  EXPECT_TRUE(s.feasible_blocks().empty());
  s.import_pmcs(all_pmcs(c4));
  s.improve(10000);
  EXPECT_EQ(s.width(), 2);
  HpidState low(c4, 1);
  low.improve(10000);
  EXPECT_EQ(low.width(), kInfinity);
}

TEST(Hpid, FinishExamples) {
  HpidState c4(cycle_graph(4), 2);
  EXPECT_TRUE(c4.finish());
  EXPECT_EQ(c4.width(), 2);
  HpidState c4low(cycle_graph(4), 1);
  EXPECT_FALSE(c4low.finish());
  HpidState k5(complete_graph(5), 3);
  EXPECT_FALSE(k5.finish());
  HpidState grid(grid_graph(4, 4), 4);
  EXPECT_TRUE(grid.finish());
  EXPECT_EQ(grid.width(), 4);
  HpidState grid3(grid_graph(4, 4), 3);
  EXPECT_FALSE(grid3.finish());
}

TEST(HpidProperties, FinishIsExactOnSmallGraphs) {
  for (int n = 1; n <= 7; ++n)
    for (const Graph& g : connected_graphs(n)) {
      int tw = oracle_treewidth(g);
      for (int k = 0; k < n; ++k) {
        HpidState s(g, k);
        bool yes = s.finish();
        ASSERT_EQ(yes, tw <= k) << "n=" << n << " k=" << k << " tw=" << tw;
        if (yes) {
          EXPECT_LE(s.width(), k);
          BtTable t(g, s.pmcs(), cardinality_weight());
          auto ds = t.decompositions(1);
          ASSERT_EQ(ds.size(), 1u);
          EXPECT_TRUE(validate(g, ds[0]));
        } else {
          EXPECT_EQ(s.width(), kInfinity);
        }
        for (const VertexSet& b : s.feasible_blocks()) EXPECT_TRUE(is_small_block(g, b));
        for (const VertexSet& x : s.pmcs()) EXPECT_TRUE(is_pmc(g, x));
      }
    }
}

TEST(HpidProperties, RandomGraphsOfEightToTwelveVertices) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 8 + trial % 5;
    int m = n - 1 + static_cast<int>(rng() % (2 * n));
    Graph g = random_connected(n, m, rng);
    int tw = oracle_treewidth(g);
    for (int k = std::max(0, tw - 1); k <= tw; ++k) {
      HpidState s(g, k);
      EXPECT_EQ(s.finish(), tw <= k);
    }
  }
}

TEST(HpidProperties, ImproveRespectsBudgetAndNeverRaisesWidth) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    Graph g = random_connected(10, 18, rng);
    int tw = oracle_treewidth(g);
    HpidState s(g, tw);
    s.import_pmcs(PmcSet::from_range(greedy_td(g).bags));
    int last = s.width();
    for (int round = 1; round <= 5; ++round) {
      std::uint64_t before = s.steps();
      s.improve(50);
      EXPECT_LE(s.steps() - before, 50u);
      int w = s.width();
      EXPECT_LE(w, last);
      last = w;
    }
  }
}

}  // namespace
