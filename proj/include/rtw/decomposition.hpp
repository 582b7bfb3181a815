#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rtw/errors.hpp"
#include "rtw/graph.hpp"
#include "rtw/vertex_set.hpp"

namespace rtw {

struct TreeDecomposition {
  std::vector<VertexSet> bags;
  std::vector<std::pair<int, int>> edges;  // indices into bags

  std::size_t num_bags() const { return bags.size(); }

  // Adjacency lists of the underlying tree.
  std::vector<std::vector<int>> tree_adjacency() const {
    std::vector<std::vector<int>> adj(bags.size());
    for (auto [a, b] : edges) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    return adj;
  }
};

inline int width(const TreeDecomposition& t) {
  if (t.bags.empty()) throw InputError("width of an empty decomposition");
  std::size_t w = 0;
  for (const VertexSet& b : t.bags) w = std::max(w, b.size());
  return static_cast<int>(w) - 1;
}

struct ValidationReport {
  bool ok = true;
  std::string violation;

  explicit operator bool() const { return ok; }

  static ValidationReport fail(std::string why) { return {false, std::move(why)}; }
};

// Checks t against g: tree shape, vertex coverage, edge coverage, the
// occurrence-subtree condition, and pairwise distinct bags.
inline ValidationReport validate(const Graph& g, const TreeDecomposition& t) {
  const std::size_t n = g.num_vertices();
  const std::size_t nb = t.bags.size();
  if (nb == 0) return ValidationReport::fail("decomposition has no bags");
  for (std::size_t i = 0; i < nb; ++i)
    if (t.bags[i].universe() != n)
      return ValidationReport::fail("bag " + std::to_string(i) + " is over a universe of " +
                                    std::to_string(t.bags[i].universe()) + " vertices, graph has " +
                                    std::to_string(n));
  if (t.edges.size() + 1 != nb)
    return ValidationReport::fail("tree has " + std::to_string(t.edges.size()) + " edges for " +
                                  std::to_string(nb) + " bags");
  for (auto [a, b] : t.edges)
    if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= nb || static_cast<std::size_t>(b) >= nb || a == b)
      return ValidationReport::fail("bad tree edge " + std::to_string(a) + "-" + std::to_string(b));
  auto adj = t.tree_adjacency();
  {
    std::vector<char> seen(nb, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y : adj[x])
        if (!seen[y]) {
          seen[y] = 1;
          ++reached;
          stack.push_back(y);
        }
    }
    if (reached != nb) return ValidationReport::fail("tree edges do not connect all bags");
  }

  VertexSet covered(n);
  for (const VertexSet& b : t.bags) covered |= b;
  if (covered.size() != n) {
    Vertex missing = covered.complement().first();
    return ValidationReport::fail("vertex " + std::to_string(missing) + " is in no bag");
  }

  for (const Edge& e : g.edges()) {
    bool inside = false;
    for (const VertexSet& b : t.bags)
      if (b.contains(e.u) && b.contains(e.v)) {
        inside = true;
        break;
      }
    if (!inside)
      return ValidationReport::fail("edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                    "} is in no bag");
  }

  // A vertex's bags induce a subtree iff they induce exactly (count - 1) tree edges.
  for (Vertex v = 0; v < static_cast<Vertex>(n); ++v) {
    std::size_t nodes = 0, links = 0;
    for (const VertexSet& b : t.bags) nodes += b.contains(v);
    for (auto [a, b] : t.edges) links += t.bags[a].contains(v) && t.bags[b].contains(v);
    if (links + 1 != nodes)
      return ValidationReport::fail("bags containing vertex " + std::to_string(v) + " are not connected in the tree");
  }

  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = i + 1; j < nb; ++j)
      if (t.bags[i] == t.bags[j])
        return ValidationReport::fail("bags " + std::to_string(i) + " and " + std::to_string(j) + " are equal");
  return {};
}

inline void require_valid(const Graph& g, const TreeDecomposition& t) {
  ValidationReport r = validate(g, t);
  if (!r) throw InputError("invalid tree decomposition: " + r.violation);
}

// g with every bag of t completed to a clique.
inline Graph fill(const Graph& g, const TreeDecomposition& t) {
  require_valid(g, t);
  Graph h = g;
  for (const VertexSet& b : t.bags) h.add_clique(b);
  return h;
}

// Graph obtained by eliminating vertices in the given order.
inline Graph elimination_graph(const Graph& g, const std::vector<Vertex>& order) {
  if (order.size() != g.num_vertices()) throw InputError("elimination order does not list every vertex");
  Graph h = g;
  VertexSet gone(g.num_vertices());
  for (Vertex v : order) {
    if (gone.contains(v)) throw InputError("vertex repeated in elimination order");
    VertexSet later = h.neighbors(v) - gone;
    h.add_clique(later);
    gone.insert(v);
  }
  return h;
}

// Maximum cardinality search.  Returns vertices in the reverse of visiting
// order, which is a perfect elimination order whenever h is chordal.
inline std::vector<Vertex> mcs_order(const Graph& h) {
  const std::size_t n = h.num_vertices();
  std::vector<int> weight(n, 0);
  std::vector<char> done(n, 0);
  std::vector<Vertex> visit;
  visit.reserve(n);
  for (std::size_t step = 0; step < n; ++step) {
    Vertex best = -1;
    for (Vertex v = 0; v < static_cast<Vertex>(n); ++v)
      if (!done[v] && (best < 0 || weight[v] > weight[best])) best = v;
    done[best] = 1;
    visit.push_back(best);
    for (Vertex w : h.neighbor_list(best))
      if (!done[w]) ++weight[w];
  }
  std::reverse(visit.begin(), visit.end());
  return visit;
}

inline bool is_perfect_elimination_order(const Graph& h, const std::vector<Vertex>& order) {
  const std::size_t n = h.num_vertices();
  std::vector<int> pos(n);
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
  for (Vertex v : order) {
    Vertex parent = -1;
    VertexSet later(n);
    for (Vertex w : h.neighbor_list(v))
      if (pos[w] > pos[v]) {
        later.insert(w);
        if (parent < 0 || pos[w] < pos[parent]) parent = w;
      }
    if (parent < 0) continue;
    later.erase(parent);
    if (!later.is_subset_of(h.neighbors(parent))) return false;
  }
  return true;
}

inline bool is_chordal(const Graph& h) { return is_perfect_elimination_order(h, mcs_order(h)); }

// Maximal cliques of a chordal graph, ordered by set_less.
inline std::vector<VertexSet> maximal_cliques_chordal(const Graph& h) {
  const std::size_t n = h.num_vertices();
  std::vector<Vertex> order = mcs_order(h);
  if (!is_perfect_elimination_order(h, order)) throw InputError("graph is not chordal");
  std::vector<int> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[order[i]] = static_cast<int>(i);
  std::vector<VertexSet> cand;
  for (Vertex v : order) {
    VertexSet c(n, {v});
    for (Vertex w : h.neighbor_list(v))
      if (pos[w] > pos[v]) c.insert(w);
    cand.push_back(std::move(c));
  }
  std::vector<VertexSet> out;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    bool maximal = true;
    for (std::size_t j = 0; j < cand.size() && maximal; ++j)
      if (i != j && cand[i].is_subset_of(cand[j]) && (cand[i] != cand[j] || j < i)) maximal = false;
    if (maximal) out.push_back(cand[i]);
  }
  std::sort(out.begin(), out.end(), set_less);
  return out;
}

// A clique tree of chordal h: maximal cliques joined by a maximum-weight
// spanning tree under intersection size.
inline TreeDecomposition clique_tree(const Graph& h) {
  TreeDecomposition t;
  t.bags = maximal_cliques_chordal(h);
  const std::size_t m = t.bags.size();
  if (m == 0) return t;
  std::vector<char> in(m, 0);
  std::vector<int> best(m, -1), link(m, -1);
  in[0] = 1;
  for (std::size_t j = 1; j < m; ++j) {
    best[j] = static_cast<int>(t.bags[0].intersection_size(t.bags[j]));
    link[j] = 0;
  }
  for (std::size_t step = 1; step < m; ++step) {
    int pick = -1;
    for (std::size_t j = 0; j < m; ++j)
      if (!in[j] && (pick < 0 || best[j] > best[pick])) pick = static_cast<int>(j);
    in[pick] = 1;
    t.edges.emplace_back(link[pick], pick);
    for (std::size_t j = 0; j < m; ++j)
      if (!in[j]) {
        int w = static_cast<int>(t.bags[pick].intersection_size(t.bags[j]));
        if (w > best[j]) {
          best[j] = w;
          link[j] = pick;
        }
      }
  }
  return t;
}

namespace detail {

// Merges bag `drop` into its tree neighbor `keep`.
inline void merge_bags(TreeDecomposition& t, int keep, int drop) {
  for (std::size_t e = 0; e < t.edges.size(); ++e) {
    auto [a, b] = t.edges[e];
    if ((a == keep && b == drop) || (a == drop && b == keep)) {
      t.edges.erase(t.edges.begin() + static_cast<std::ptrdiff_t>(e));
      break;
    }
  }
  for (auto& [x, y] : t.edges) {
    if (x == drop) x = keep;
    if (y == drop) y = keep;
  }
  int last = static_cast<int>(t.bags.size()) - 1;
  if (drop != last) {
    t.bags[drop] = std::move(t.bags[last]);
    for (auto& [x, y] : t.edges) {
      if (x == last) x = drop;
      if (y == last) y = drop;
    }
  }
  t.bags.pop_back();
}

}  // namespace detail

// Restores pairwise distinct bags after bags were mapped: adjacent equal bags
// are merged, and a bag with an equal twin elsewhere is merged into the
// neighbor on the path to its twin, which contains it.
inline TreeDecomposition merge_duplicate_bags(TreeDecomposition t) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto [a, b] : t.edges)
      if (t.bags[a] == t.bags[b]) {
        detail::merge_bags(t, a, b);
        changed = true;
        break;
      }
    if (changed) continue;
    std::unordered_map<VertexSet, int, VertexSetHash> count;
    for (const VertexSet& x : t.bags) ++count[x];
    for (auto [a, b] : t.edges) {
      if (count[t.bags[a]] > 1 && t.bags[a].is_subset_of(t.bags[b])) {
        detail::merge_bags(t, b, a);
        changed = true;
        break;
      }
      if (count[t.bags[b]] > 1 && t.bags[b].is_subset_of(t.bags[a])) {
        detail::merge_bags(t, a, b);
        changed = true;
        break;
      }
    }
  }
  return t;
}

// Replaces each bag X of a decomposition of G/gamma by gamma^{-1}(X).
inline TreeDecomposition uncontract_td(const TreeDecomposition& t, const Contractor& gamma) {
  TreeDecomposition out;
  out.edges = t.edges;
  for (const VertexSet& b : t.bags) out.bags.push_back(gamma.preimage(b));
  return merge_duplicate_bags(std::move(out));
}

// Maps each bag X of a decomposition of G to gamma(X).
inline TreeDecomposition image_td(const TreeDecomposition& t, const Contractor& gamma) {
  TreeDecomposition out;
  out.edges = t.edges;
  for (const VertexSet& b : t.bags) out.bags.push_back(gamma.image(b));
  return merge_duplicate_bags(std::move(out));
}

// Removes fill edges of the triangulation h of g one at a time while the
// result stays chordal, ending at a minimal triangulation inside h.
inline Graph minimal_triangulation_within(const Graph& g, Graph h) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Edge& e : h.edges()) {
      if (g.adjacent(e.u, e.v)) continue;
      check_deadline();
      VertexSet common = h.neighbors(e.u) & h.neighbors(e.v);
      if (is_clique(h, common)) {
        h.remove_edge(e.u, e.v);
        changed = true;
      }
    }
  }
  return h;
}

// A minimal decomposition whose fill is contained in fill(g, t).
inline TreeDecomposition minimalize(const Graph& g, const TreeDecomposition& t) {
  return clique_tree(minimal_triangulation_within(g, fill(g, t)));
}

// Min-fill elimination (ties: smaller degree, then smaller id), then minimalized.
inline TreeDecomposition greedy_td(const Graph& g) {
  if (g.num_vertices() == 0) throw InputError("graph has no vertices");
  if (!is_connected(g)) throw InputError("greedy decomposition needs a connected graph");
  const std::size_t n = g.num_vertices();
  Graph h = g;
  Graph work = g;
  VertexSet alive = g.all();
  for (std::size_t step = 0; step < n; ++step) {
    Vertex best = -1;
    std::size_t best_fill = 0, best_deg = 0;
    for (Vertex v : alive) {
      check_deadline();
      const VertexSet& nb = work.neighbors(v);
      std::size_t f = deficiency(work, nb);
      std::size_t d = nb.size();
      if (best < 0 || f < best_fill || (f == best_fill && d < best_deg)) {
        best = v;
        best_fill = f;
        best_deg = d;
      }
    }
    VertexSet nb = work.neighbors(best);
    work.add_clique(nb);
    h.add_clique(nb);
    for (Vertex w : nb) work.remove_edge(best, w);
    alive.erase(best);
  }
  return clique_tree(minimal_triangulation_within(g, std::move(h)));
}

inline std::ostream& operator<<(std::ostream& os, const TreeDecomposition& t) {
  os << "td[";
  for (std::size_t i = 0; i < t.bags.size(); ++i) os << (i ? " " : "") << t.bags[i];
  os << " |";
  for (auto [a, b] : t.edges) os << ' ' << a << '-' << b;
  return os << ']';
}

}  // namespace rtw
