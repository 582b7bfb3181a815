#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "rtw/decomposition.hpp"
#include "rtw/graph.hpp"

namespace rtw::testing {

inline Graph path_graph(int n) {
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

inline Graph cycle_graph(int n) {
  Graph g = path_graph(n);
  g.add_edge(0, n - 1);
  return g;
}

inline Graph complete_graph(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

inline Graph grid_graph(int rows, int cols) {
  Graph g(rows * cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      int v = r * cols + c;
      if (c + 1 < cols) g.add_edge(v, v + 1);
      if (r + 1 < rows) g.add_edge(v, v + cols);
    }
  return g;
}

inline Graph petersen_graph() {
  Graph g(10);
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(i, i + 5);
    g.add_edge(5 + i, 5 + (i + 2) % 5);
  }
  return g;
}

// Two triangles sharing vertex 2.
inline Graph bowtie_graph() {
  return Graph::from_edges(5, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {2, 4}, {3, 4}});
}

// Uniform random spanning tree by random attachment, then extra random edges
// up to m.
inline Graph random_connected(int n, int m, std::mt19937_64& rng) {
  Graph g(n);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> pick(0, i - 1);
    g.add_edge(perm[i], perm[pick(rng)]);
  }
  long max_edges = static_cast<long>(n) * (n - 1) / 2;
  if (m > max_edges) m = static_cast<int>(max_edges);
  std::uniform_int_distribution<int> any(0, n - 1);
  while (static_cast<int>(g.num_edges()) < m) {
    int a = any(rng), b = any(rng);
    if (a != b) g.add_edge(a, b);
  }
  return g;
}

namespace detail {

using Code = std::vector<std::uint8_t>;

inline Code adjacency_code(const Graph& g, const std::vector<int>& perm) {
  // perm[new] = old
  int n = static_cast<int>(perm.size());
  Code code;
  code.reserve(n * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) code.push_back(g.adjacent(perm[i], perm[j]) ? 1 : 0);
  return code;
}

// Smallest adjacency code over all vertex orders that list vertices by
// nondecreasing (degree, sorted neighbor degrees).
inline Code canonical_code(const Graph& g) {
  int n = static_cast<int>(g.num_vertices());
  std::vector<std::vector<int>> key(n);
  for (int v = 0; v < n; ++v) {
    key[v].push_back(static_cast<int>(g.degree(v)));
    std::vector<int> nd;
    for (int w : g.neighbor_list(v)) nd.push_back(static_cast<int>(g.degree(w)));
    std::sort(nd.begin(), nd.end());
    key[v].insert(key[v].end(), nd.begin(), nd.end());
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return key[a] < key[b]; });
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && key[order[j]] == key[order[i]]) ++j;
    cells.emplace_back(i, j);
    i = j;
  }
  for (auto [a, b] : cells) std::sort(order.begin() + a, order.begin() + b);
  Code best;
  bool have = false;
  while (true) {
    Code c = adjacency_code(g, order);
    if (!have || c < best) {
      best = std::move(c);
      have = true;
    }
    // Advance the product of per-cell permutations.
    int ci = static_cast<int>(cells.size()) - 1;
    for (; ci >= 0; --ci) {
      auto [a, b] = cells[ci];
      if (std::next_permutation(order.begin() + a, order.begin() + b)) break;
    }
    if (ci < 0) break;
  }
  return best;
}

}  // namespace detail

// One representative of every isomorphism class of graphs on n vertices,
// built by adding a vertex with every possible neighborhood to the classes on
// n - 1 vertices.
inline std::vector<Graph> all_graphs(int n) {
  std::vector<Graph> level{Graph(0)};
  for (int k = 1; k <= n; ++k) {
    std::set<detail::Code> seen;
    std::vector<Graph> next;
    for (const Graph& h : level) {
      for (std::uint32_t mask = 0; mask < (1U << (k - 1)); ++mask) {
        Graph g(k);
        for (const Edge& e : h.edges()) g.add_edge(e.u, e.v);
        for (int v = 0; v < k - 1; ++v)
          if ((mask >> v) & 1U) g.add_edge(v, k - 1);
        if (seen.insert(detail::canonical_code(g)).second) next.push_back(std::move(g));
      }
    }
    level = std::move(next);
  }
  return level;
}

inline std::vector<Graph> connected_graphs(int n) {
  std::vector<Graph> out;
  for (Graph& g : all_graphs(n))
    if (is_connected(g)) out.push_back(std::move(g));
  return out;
}

// Potential maximal cliques by definition: maximal cliques of minimal
// triangulations.  Every minimal triangulation is the elimination graph of
// some vertex order, so the minimal ones are the elimination graphs that
// contain no other elimination graph.
inline std::vector<VertexSet> pmcs_by_definition(const Graph& g) {
  int n = static_cast<int>(g.num_vertices());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<Graph> tri;
  std::set<std::vector<Edge>> seen;
  do {
    Graph h = elimination_graph(g, order);
    if (seen.insert(h.edges()).second) tri.push_back(std::move(h));
  } while (std::next_permutation(order.begin(), order.end()));
  std::set<std::vector<Vertex>> found;
  std::vector<VertexSet> out;
  for (std::size_t i = 0; i < tri.size(); ++i) {
    bool minimal = true;
    for (std::size_t j = 0; j < tri.size() && minimal; ++j) {
      if (i == j || tri[j].num_edges() >= tri[i].num_edges()) continue;
      bool inside = true;
      for (const Edge& e : tri[j].edges())
        if (!tri[i].adjacent(e.u, e.v)) {
          inside = false;
          break;
        }
      if (inside) minimal = false;
    }
    if (!minimal) continue;
    for (const VertexSet& c : maximal_cliques_chordal(tri[i]))
      if (found.insert(c.to_vector()).second) out.push_back(c);
  }
  return out;
}

}  // namespace rtw::testing
