#include <gtest/gtest.h>

#include "rtw/graph.hpp"
#include "support/graph_gen.hpp"

using namespace rtw;
using namespace rtw::testing;

namespace {

VertexSet vs(std::size_t n, std::initializer_list<Vertex> xs) { return VertexSet(n, xs); }

TEST(VertexSet, BasicOps) {
  VertexSet a(130, {0, 64, 129});
  EXPECT_EQ(a.size(), 3u);
  EXPECT_EQ(a.first(), 0);
  EXPECT_EQ(a.next(0), 64);
  EXPECT_EQ(a.next(64), 129);
  EXPECT_EQ(a.next(129), -1);
  EXPECT_EQ(a.complement().size(), 127u);
  EXPECT_TRUE(VertexSet(130, {64}).is_subset_of(a));
  EXPECT_EQ((a - VertexSet(130, {64})).to_vector(), (std::vector<Vertex>{0, 129}));
}

TEST(VertexSet, SetOrderIsSizeThenLexicographic) {
  EXPECT_TRUE(set_less(vs(5, {4}), vs(5, {0, 1})));
  EXPECT_TRUE(set_less(vs(5, {0, 4}), vs(5, {1, 2})));
  EXPECT_TRUE(set_less(vs(5, {0, 1}), vs(5, {0, 2})));
  EXPECT_FALSE(set_less(vs(5, {0, 2}), vs(5, {0, 2})));
  EXPECT_FALSE(set_less(vs(5, {1, 2}), vs(5, {0, 4})));
}

TEST(Graph, RejectsSelfLoopsAndUnknownIds) {
  Graph g(3);
  EXPECT_THROW(g.add_edge(1, 1), InputError);
  EXPECT_THROW(g.add_edge(0, 3), InputError);
  EXPECT_TRUE(g.add_edge(0, 1));
  EXPECT_FALSE(g.add_edge(1, 0));
  EXPECT_EQ(g.num_edges(), 1u);
}

TEST(Graph, Neighborhood) {
  Graph c4 = cycle_graph(4);
  EXPECT_EQ(neighborhood(c4, vs(4, {0})), vs(4, {1, 3}));
  Graph k4 = complete_graph(4);
  EXPECT_EQ(neighborhood(k4, vs(4, {0, 1})), vs(4, {2, 3}));
  Graph p3 = path_graph(3);
  EXPECT_EQ(neighborhood(p3, vs(3, {0, 2})), vs(3, {1}));
  EXPECT_THROW(neighborhood(p3, vs(4, {0})), InputError);
}

TEST(Graph, Components) {
  Graph c4 = cycle_graph(4);
  EXPECT_EQ(components(c4, vs(4, {1, 3})), (std::vector<VertexSet>{vs(4, {1}), vs(4, {3})}));
  Graph k4 = complete_graph(4);
  EXPECT_EQ(components(k4, vs(4, {1, 2, 3})), (std::vector<VertexSet>{vs(4, {1, 2, 3})}));
  Graph p5 = path_graph(5);
  EXPECT_EQ(components(p5, vs(5, {0, 1, 3, 4})), (std::vector<VertexSet>{vs(5, {0, 1}), vs(5, {3, 4})}));
}

TEST(Graph, IsClique) {
  EXPECT_TRUE(is_clique(complete_graph(4), vs(4, {0, 1, 2})));
  EXPECT_FALSE(is_clique(cycle_graph(4), vs(4, {0, 1, 2})));
  EXPECT_TRUE(is_clique(cycle_graph(4), vs(4, {})));
  EXPECT_TRUE(is_clique(cycle_graph(4), vs(4, {2})));
}

TEST(Contractor, Validation) {
  Graph c4 = cycle_graph(4);
  EXPECT_THROW(Contractor::from_parts(c4, {vs(4, {0, 2}), vs(4, {1}), vs(4, {3})}), ContractorError);
  EXPECT_THROW(Contractor::from_parts(c4, {vs(4, {0, 1}), vs(4, {1, 2}), vs(4, {3})}), ContractorError);
  EXPECT_THROW(Contractor::from_parts(c4, {vs(4, {0, 1}), vs(4, {3})}), ContractorError);
  EXPECT_NO_THROW(Contractor::from_parts(c4, {vs(4, {0, 1}), vs(4, {2}), vs(4, {3})}));
}

TEST(Contractor, Contract) {
  Graph c4 = cycle_graph(4);
  Graph t = contract(c4, Contractor::from_parts(c4, {vs(4, {0, 1}), vs(4, {2}), vs(4, {3})}));
  EXPECT_EQ(t, complete_graph(3));
  Graph k4 = complete_graph(4);
  EXPECT_EQ(contract(k4, Contractor::from_parts(k4, {vs(4, {0, 1}), vs(4, {2}), vs(4, {3})})), complete_graph(3));
  Graph p = petersen_graph();
  EXPECT_EQ(contract(p, Contractor::identity(10)), p);
}

TEST(Contractor, ContractEdge) {
  auto [p2, g1] = contract_edge(path_graph(3), Edge(0, 1));
  EXPECT_EQ(p2, path_graph(2));
  auto [tri, g2] = contract_edge(cycle_graph(4), Edge(0, 1));
  EXPECT_EQ(tri, complete_graph(3));
  for (const Edge& e : cycle_graph(5).edges()) {
    auto [h, gamma] = contract_edge(cycle_graph(5), e);
    EXPECT_EQ(h.num_vertices(), 4u);
    EXPECT_EQ(h.num_edges(), 4u);
    EXPECT_TRUE(is_connected(h));
    for (Vertex v = 0; v < 4; ++v) EXPECT_EQ(h.degree(v), 2u);
  }
  EXPECT_THROW(contract_edge(cycle_graph(4), Edge(0, 2)), InputError);
}

TEST(Contractor, Compose) {
  Graph c5 = cycle_graph(5);
  Contractor id = Contractor::identity(5);
  auto [c4, outer] = contract_edge(c5, Edge(0, 1));
  EXPECT_EQ(compose(id, outer), outer);
  // outer maps {0,1} -> 0, 2 -> 1; merge those.
  auto [tri, inner] = contract_edge(c4, Edge(0, 1));
  Contractor both = compose(outer, inner);
  EXPECT_EQ(both.part(both(0)), vs(5, {0, 1, 2}));
  EXPECT_EQ(contract(c5, both), tri);

  Graph k4 = complete_graph(4);
  auto [k3, a] = contract_edge(k4, Edge(0, 1));
  auto [k2, b] = contract_edge(k3, Edge(0, 1));
  Contractor ab = compose(a, b);
  std::vector<std::size_t> sizes;
  for (const VertexSet& p : ab.parts()) sizes.push_back(p.size());
  std::sort(sizes.begin(), sizes.end());
  EXPECT_EQ(sizes, (std::vector<std::size_t>{1, 3}));
  EXPECT_THROW(compose(b, a), InputError);
}

TEST(GraphProperties, EdgeContractionMatchesExplicitContractor) {
  for (int n = 2; n <= 7; ++n)
    for (const Graph& g : all_graphs(n))
      for (const Edge& e : g.edges()) {
        auto [h, gamma] = contract_edge(g, e);
        std::vector<VertexSet> parts;
        for (Vertex v = 0; v < n; ++v) {
          if (v == e.v) continue;
          VertexSet p(n, {v});
          if (v == e.u) p.insert(e.v);
          parts.push_back(p);
        }
        Contractor explicit_gamma = Contractor::from_parts(g, parts);
        EXPECT_EQ(contract(g, explicit_gamma), h);
        // Adjacency soundness.
        for (const Edge& f : h.edges()) {
          bool found = false;
          for (Vertex a : gamma.part(f.u))
            if (g.neighbors(a).intersects(gamma.part(f.v))) found = true;
          EXPECT_TRUE(found);
        }
      }
}

TEST(GraphProperties, ComponentsAndNeighborhoods) {
  for (int n = 1; n <= 6; ++n)
    for (const Graph& g : all_graphs(n)) {
      EXPECT_EQ(components(g, g.all()).size() == 1, is_connected(g));
      for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
        VertexSet u(n);
        for (int v = 0; v < n; ++v)
          if ((mask >> v) & 1U) u.insert(v);
        EXPECT_FALSE(neighborhood(g, u).intersects(u));
      }
    }
}

TEST(GraphGenerators, IsomorphismClassCounts) {
  const std::size_t all[] = {1, 2, 4, 11, 34, 156};
  const std::size_t connected[] = {1, 1, 2, 6, 21, 112, 853};
  for (int n = 1; n <= 6; ++n) EXPECT_EQ(all_graphs(n).size(), all[n - 1]);
  for (int n = 1; n <= 7; ++n) EXPECT_EQ(connected_graphs(n).size(), connected[n - 1]);
}

}  // namespace
