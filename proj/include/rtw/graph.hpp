#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "rtw/errors.hpp"
#include "rtw/vertex_set.hpp"

namespace rtw {

// Unordered vertex pair in canonical form u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(std::min(a, b)), v(std::max(a, b)) {}

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Simple undirected graph on vertices 0..n-1.  Adjacency is kept both as
// per-vertex bitsets and as sorted neighbor lists.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : adj_(n, VertexSet(n)), lists_(n) {}

  static Graph from_edges(std::size_t n, const std::vector<Edge>& edges) {
    Graph g(n);
    for (const Edge& e : edges) g.add_edge(e.u, e.v);
    return g;
  }

  std::size_t num_vertices() const { return adj_.size(); }
  std::size_t num_edges() const { return num_edges_; }

  VertexSet all() const { return VertexSet::full(num_vertices()); }
  VertexSet empty_set() const { return VertexSet(num_vertices()); }

  const VertexSet& neighbors(Vertex v) const { return adj_[check(v)]; }
  const std::vector<Vertex>& neighbor_list(Vertex v) const { return lists_[check(v)]; }
  std::size_t degree(Vertex v) const { return lists_[check(v)].size(); }

  bool adjacent(Vertex u, Vertex v) const { return adj_[check(u)].contains(v); }

  // Adds {u,v}.  Self-loops are rejected; an existing edge is left as is and
  // false is returned.
  bool add_edge(Vertex u, Vertex v) {
    check(u);
    check(v);
    if (u == v) throw InputError("self-loop on vertex " + std::to_string(u));
    if (adj_[u].contains(v)) return false;
    adj_[u].insert(v);
    adj_[v].insert(u);
    insert_sorted(lists_[u], v);
    insert_sorted(lists_[v], u);
    ++num_edges_;
    return true;
  }

  bool remove_edge(Vertex u, Vertex v) {
    check(u);
    check(v);
    if (!adj_[u].contains(v)) return false;
    adj_[u].erase(v);
    adj_[v].erase(u);
    lists_[u].erase(std::lower_bound(lists_[u].begin(), lists_[u].end(), v));
    lists_[v].erase(std::lower_bound(lists_[v].begin(), lists_[v].end(), u));
    --num_edges_;
    return true;
  }

  // Turns u into a clique.
  void add_clique(const VertexSet& u) {
    for (Vertex a : u)
      for (Vertex b = u.next(a); b >= 0; b = u.next(b)) add_edge(a, b);
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(num_edges_);
    for (Vertex u = 0; u < static_cast<Vertex>(num_vertices()); ++u)
      for (Vertex v : lists_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  bool has_vertex_set(const VertexSet& s) const { return s.universe() == num_vertices(); }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.num_edges_ == b.num_edges_ && a.adj_ == b.adj_;
  }

 private:
  Vertex check(Vertex v) const {
    if (v < 0 || static_cast<std::size_t>(v) >= adj_.size())
      throw InputError("unknown vertex id " + std::to_string(v));
    return v;
  }
  static void insert_sorted(std::vector<Vertex>& xs, Vertex v) {
    xs.insert(std::lower_bound(xs.begin(), xs.end(), v), v);
  }

  std::vector<VertexSet> adj_;
  std::vector<std::vector<Vertex>> lists_;
  std::size_t num_edges_ = 0;
};

namespace detail {
inline void require_universe(const Graph& g, const VertexSet& s) {
  if (s.universe() != g.num_vertices())
    throw InputError("vertex set universe " + std::to_string(s.universe()) +
                     " does not match graph order " + std::to_string(g.num_vertices()));
}
}  // namespace detail

// N_G(U): vertices adjacent to U but outside it.
inline VertexSet neighborhood(const Graph& g, const VertexSet& u) {
  detail::require_universe(g, u);
  VertexSet out(g.num_vertices());
  for (Vertex v : u) out |= g.neighbors(v);
  return out -= u;
}

inline VertexSet closed_neighborhood(const Graph& g, Vertex v) {
  VertexSet out = g.neighbors(v);
  out.insert(v);
  return out;
}

// The component of g[within] containing start.
inline VertexSet component_of(const Graph& g, const VertexSet& within, Vertex start) {
  VertexSet comp(g.num_vertices());
  comp.insert(start);
  VertexSet frontier = comp;
  while (!frontier.empty()) {
    VertexSet next(g.num_vertices());
    for (Vertex v : frontier) next |= g.neighbors(v);
    next &= within;
    next -= comp;
    comp |= next;
    frontier = std::move(next);
  }
  return comp;
}

// Connected components of g[u], each listed once, ordered by smallest member.
inline std::vector<VertexSet> components(const Graph& g, const VertexSet& u) {
  detail::require_universe(g, u);
  std::vector<VertexSet> out;
  VertexSet rest = u;
  for (Vertex s = rest.first(); s >= 0; s = rest.first()) {
    VertexSet c = component_of(g, rest, s);
    rest -= c;
    out.push_back(std::move(c));
  }
  return out;
}

inline bool is_connected(const Graph& g, const VertexSet& u) {
  Vertex s = u.first();
  if (s < 0) return true;
  return component_of(g, u, s).size() == u.size();
}

inline bool is_connected(const Graph& g) { return is_connected(g, g.all()); }

inline bool is_clique(const Graph& g, const VertexSet& u) {
  detail::require_universe(g, u);
  for (Vertex v : u) {
    VertexSet rest = u;
    rest.erase(v);
    if (!rest.is_subset_of(g.neighbors(v))) return false;
  }
  return true;
}

// Number of non-adjacent pairs inside u.
inline std::size_t deficiency(const Graph& g, const VertexSet& u) {
  std::size_t missing = 0;
  for (Vertex v : u) {
    VertexSet later(g.num_vertices());
    for (Vertex w = u.next(v); w >= 0; w = u.next(w)) later.insert(w);
    missing += later.size() - later.intersection_size(g.neighbors(v));
  }
  return missing;
}

// g[u] relabelled onto 0..|u|-1 in ascending id order.  `ids` receives the
// original id of every new vertex.
inline Graph induced_subgraph(const Graph& g, const VertexSet& u, std::vector<Vertex>* ids = nullptr) {
  std::vector<Vertex> order = u.to_vector();
  std::vector<Vertex> local(g.num_vertices(), -1);
  for (std::size_t i = 0; i < order.size(); ++i) local[order[i]] = static_cast<Vertex>(i);
  Graph h(order.size());
  for (std::size_t i = 0; i < order.size(); ++i)
    for (Vertex w : g.neighbor_list(order[i]))
      if (local[w] > static_cast<Vertex>(i)) h.add_edge(static_cast<Vertex>(i), local[w]);
  if (ids) *ids = std::move(order);
  return h;
}

class Contractor;
inline Contractor compose(const Contractor& outer, const Contractor& inner);

// Partition of V(G) into connected parts.  Part index w is the vertex of
// G/gamma that the part contracts to.
class Contractor {
 public:
  Contractor() = default;

  // Validates the partition against g: parts must be nonempty, disjoint,
  // covering, and connected in g.
  static Contractor from_parts(const Graph& g, std::vector<VertexSet> parts) {
    Contractor c = from_parts_unchecked(g.num_vertices(), std::move(parts));
    for (std::size_t w = 0; w < c.parts_.size(); ++w) {
      detail::require_universe(g, c.parts_[w]);
      if (!is_connected(g, c.parts_[w]))
        throw ContractorError("contractor part " + std::to_string(w) + " is not connected");
    }
    return c;
  }

  // Same as from_parts, given the vertex -> part map instead.
  static Contractor from_mapping(const Graph& g, const std::vector<Vertex>& image) {
    if (image.size() != g.num_vertices()) throw ContractorError("mapping size does not match graph order");
    Vertex m = 0;
    for (Vertex w : image) {
      if (w < 0) throw ContractorError("negative part index");
      m = std::max(m, w + 1);
    }
    std::vector<VertexSet> parts(static_cast<std::size_t>(m), VertexSet(g.num_vertices()));
    for (std::size_t v = 0; v < image.size(); ++v) parts[image[v]].insert(static_cast<Vertex>(v));
    return from_parts(g, std::move(parts));
  }

  static Contractor identity(std::size_t n) {
    std::vector<VertexSet> parts;
    parts.reserve(n);
    for (std::size_t v = 0; v < n; ++v) parts.push_back(VertexSet(n, {static_cast<Vertex>(v)}));
    return from_parts_unchecked(n, std::move(parts));
  }

  std::size_t source_size() const { return image_.size(); }
  std::size_t image_size() const { return parts_.size(); }

  Vertex operator()(Vertex v) const {
    if (v < 0 || static_cast<std::size_t>(v) >= image_.size())
      throw InputError("vertex " + std::to_string(v) + " outside contractor domain");
    return image_[v];
  }

  // gamma(U)
  VertexSet image(const VertexSet& u) const {
    if (u.universe() != source_size()) throw InputError("vertex set is not over the contractor's source");
    VertexSet out(image_size());
    for (Vertex v : u) out.insert(image_[v]);
    return out;
  }

  // gamma^{-1}(U)
  VertexSet preimage(const VertexSet& u) const {
    if (u.universe() != image_size()) throw InputError("vertex set is not over the contractor's image");
    VertexSet out(source_size());
    for (Vertex w : u) out |= parts_[w];
    return out;
  }

  const VertexSet& part(Vertex w) const { return parts_.at(static_cast<std::size_t>(w)); }
  const std::vector<VertexSet>& parts() const { return parts_; }
  const std::vector<Vertex>& mapping() const { return image_; }

  bool is_identity() const { return image_size() == source_size(); }

  friend bool operator==(const Contractor& a, const Contractor& b) { return a.image_ == b.image_; }

 private:
  friend Contractor compose(const Contractor&, const Contractor&);

  static Contractor from_parts_unchecked(std::size_t n, std::vector<VertexSet> parts) {
    Contractor c;
    c.image_.assign(n, -1);
    for (std::size_t w = 0; w < parts.size(); ++w) {
      if (parts[w].universe() != n) throw ContractorError("contractor part over the wrong universe");
      if (parts[w].empty()) throw ContractorError("empty contractor part " + std::to_string(w));
      for (Vertex v : parts[w]) {
        if (c.image_[v] >= 0) throw ContractorError("vertex " + std::to_string(v) + " lies in two parts");
        c.image_[v] = static_cast<Vertex>(w);
      }
    }
    for (std::size_t v = 0; v < n; ++v)
      if (c.image_[v] < 0) throw ContractorError("vertex " + std::to_string(v) + " is in no part");
    c.parts_ = std::move(parts);
    return c;
  }

  std::vector<VertexSet> parts_;
  std::vector<Vertex> image_;
};

// G/gamma on vertices 0..|parts|-1.
inline Graph contract(const Graph& g, const Contractor& gamma) {
  if (gamma.source_size() != g.num_vertices()) throw InputError("contractor does not match graph");
  Graph h(gamma.image_size());
  for (const Edge& e : g.edges()) {
    Vertex a = gamma(e.u), b = gamma(e.v);
    if (a != b) h.add_edge(a, b);
  }
  return h;
}

// Contractor merging the ends of e; other vertices keep their relative order.
inline Contractor edge_contractor(const Graph& g, Edge e) {
  if (!g.adjacent(e.u, e.v))
    throw InputError("{" + std::to_string(e.u) + "," + std::to_string(e.v) + "} is not an edge");
  std::size_t n = g.num_vertices();
  std::vector<Vertex> image(n);
  Vertex next = 0;
  for (Vertex v = 0; v < static_cast<Vertex>(n); ++v) {
    if (v == e.v) {
      image[v] = image[e.u];
    } else {
      image[v] = next++;
    }
  }
  return Contractor::from_mapping(g, image);
}

inline std::pair<Graph, Contractor> contract_edge(const Graph& g, Edge e) {
  Contractor gamma = edge_contractor(g, e);
  Graph h = contract(g, gamma);
  return {std::move(h), std::move(gamma)};
}

// The contractor of G equivalent to applying `outer`, then `inner` on G/outer.
inline Contractor compose(const Contractor& outer, const Contractor& inner) {
  if (inner.source_size() != outer.image_size())
    throw InputError("inner contractor is not over the image of the outer contractor");
  std::vector<VertexSet> parts;
  parts.reserve(inner.image_size());
  for (const VertexSet& p : inner.parts()) parts.push_back(outer.preimage(p));
  return Contractor::from_parts_unchecked(outer.source_size(), std::move(parts));
}

}  // namespace rtw
