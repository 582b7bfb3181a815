#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "rtw/decomposition.hpp"
#include "rtw/errors.hpp"
#include "rtw/graph.hpp"
#include "rtw/hpid.hpp"
#include "rtw/pmc.hpp"
#include "rtw/vertex_set.hpp"

namespace rtw {

// Partition of `region` into connected parts, one per root, that are
// pairwise adjacent: contracting them turns the roots into a clique.  Greedy:
// while two parts miss each other, the shortest path of unassigned vertices
// joining them is absorbed by the part with more missing partners.  Leftover
// vertices join an adjacent part.  `budget` caps the number of paths.
inline std::optional<std::vector<VertexSet>> rooted_clique_contraction(const Graph& g, const VertexSet& region,
                                                                      const VertexSet& roots,
                                                                      std::uint64_t budget = 1000) {
  detail::require_universe(g, region);
  detail::require_universe(g, roots);
  if (!roots.is_subset_of(region)) throw InputError("roots must lie inside the region");
  const std::vector<Vertex> rs = roots.to_vector();
  const std::size_t r = rs.size();
  const std::size_t n = g.num_vertices();
  std::vector<VertexSet> parts;
  for (std::size_t i = 0; i < r; ++i) parts.push_back(VertexSet(n, {rs[i]}));
  VertexSet free = region - roots;

  auto touches = [&](std::size_t a, std::size_t b) { return neighborhood(g, parts[a]).intersects(parts[b]); };
  auto missing_of = [&](std::size_t a) {
    std::size_t c = 0;
    for (std::size_t b = 0; b < r; ++b)
      if (b != a && !touches(a, b)) ++c;
    return c;
  };

  for (std::uint64_t round = 0;; ++round) {
    check_deadline();
    std::optional<std::pair<std::size_t, std::size_t>> pair;
    for (std::size_t a = 0; a < r && !pair; ++a)
      for (std::size_t b = a + 1; b < r; ++b)
        if (!touches(a, b)) {
          pair.emplace(a, b);
          break;
        }
    if (!pair) break;
    if (round >= budget) return std::nullopt;

    // Shortest path through free vertices from some missing pair; the first
    // pair in scan order that has one wins ties.
    std::vector<Vertex> best_path;
    std::size_t best_a = 0;
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = a + 1; b < r; ++b) {
        if (touches(a, b)) continue;
        std::vector<Vertex> prev(n, -2);
        std::deque<Vertex> q;
        for (Vertex v : neighborhood(g, parts[a]) & free) {
          prev[v] = -1;
          q.push_back(v);
        }
        const VertexSet target = neighborhood(g, parts[b]);
        Vertex hit = -1;
        while (!q.empty() && hit < 0) {
          Vertex v = q.front();
          q.pop_front();
          if (target.contains(v)) {
            hit = v;
            break;
          }
          for (Vertex w : g.neighbor_list(v))
            if (free.contains(w) && prev[w] == -2) {
              prev[w] = v;
              q.push_back(w);
            }
        }
        if (hit < 0) return std::nullopt;
        std::vector<Vertex> path;
        for (Vertex v = hit; v >= 0; v = prev[v]) path.push_back(v);
        if (best_path.empty() || path.size() < best_path.size()) {
          best_path = std::move(path);
          best_a = missing_of(a) >= missing_of(b) ? a : b;
        }
      }
    for (Vertex v : best_path) {
      parts[best_a].insert(v);
      free.erase(v);
    }
  }

  // Remaining free vertices, one component at a time.
  while (!free.empty()) {
    bool progress = false;
    for (const VertexSet& c : components(g, free)) {
      for (std::size_t a = 0; a < r; ++a)
        if (neighborhood(g, parts[a]).intersects(c)) {
          parts[a] |= c;
          free -= c;
          progress = true;
          break;
        }
    }
    if (!progress) return std::nullopt;
  }
  return parts;
}

// One subproblem of a safe-separator split: G[X] with the neighborhood of
// every outside component filled, on local ids.  `witness` contracts the
// original graph onto it, local vertex i being the part of vertices[i].
struct SafePiece {
  Graph graph;
  std::vector<Vertex> vertices;
  Contractor witness;
};

// Pieces a and b share the clique `separator` (original ids).
struct PieceJoin {
  std::size_t a = 0;
  std::size_t b = 0;
  VertexSet separator;
};

struct SafeSeparatorSplit {
  std::vector<SafePiece> pieces;
  std::vector<PieceJoin> joins;
  std::vector<VertexSet> separators;  // the separators used, original ids
};

namespace detail {

// g[keep] with `clique` (a subset of keep) made complete, on local ids.
inline Graph filled_subgraph(const Graph& g, const VertexSet& keep, const VertexSet& clique,
                             std::vector<Vertex>* ids = nullptr) {
  std::vector<Vertex> local;
  Graph h = induced_subgraph(g, keep, &local);
  VertexSet c(keep.size());
  for (std::size_t i = 0; i < local.size(); ++i)
    if (clique.contains(local[i])) c.insert(static_cast<Vertex>(i));
  h.add_clique(c);
  if (ids) *ids = std::move(local);
  return h;
}

// Contractor of piece graph gp onto gp[C + N(C)] + K(N(C)), or nullopt when
// no rooted contraction of the rest onto N(C) was found.
inline std::optional<Contractor> side_contractor(const Graph& gp, const VertexSet& c, std::uint64_t budget) {
  const VertexSet sep = neighborhood(gp, c);
  auto parts = rooted_clique_contraction(gp, c.complement(), sep, budget);
  if (!parts) return std::nullopt;
  const VertexSet keep = c | sep;
  std::vector<Vertex> image(gp.num_vertices(), -1);
  Vertex next = 0;
  std::vector<Vertex> rank(gp.num_vertices(), -1);
  for (Vertex v : keep) rank[v] = next++;
  for (Vertex v : c) image[v] = rank[v];
  std::size_t i = 0;
  for (Vertex s : sep) {
    for (Vertex v : (*parts)[i]) image[v] = rank[s];
    ++i;
  }
  return Contractor::from_mapping(gp, image);
}

}  // namespace detail

// Splits g along minimal separators of a fixed minimal triangulation.  A
// separator S is used when, for every component C of the current piece minus
// S, the rest of the piece contracts onto N(C) as a clique.  This covers the
// almost-clique minimal separators and makes every piece a contraction of g,
// so tw(g) is the largest piece treewidth.
inline SafeSeparatorSplit preprocess_safe_separators(const Graph& g, std::uint64_t budget = 1000) {
  if (g.num_vertices() == 0) throw InputError("graph has no vertices");
  if (!is_connected(g)) throw InputError("safe-separator preprocessing needs a connected graph");
  const std::size_t n = g.num_vertices();

  TreeDecomposition t = greedy_td(g);
  std::vector<VertexSet> candidates;
  for (auto [a, b] : t.edges) {
    VertexSet s = t.bags[a] & t.bags[b];
    if (std::find(candidates.begin(), candidates.end(), s) == candidates.end()) candidates.push_back(s);
  }
  std::sort(candidates.begin(), candidates.end(), set_less);

  SafeSeparatorSplit out;
  {
    std::vector<Vertex> ids(n);
    for (std::size_t v = 0; v < n; ++v) ids[v] = static_cast<Vertex>(v);
    out.pieces.push_back(SafePiece{g, ids, Contractor::identity(n)});
  }

  for (const VertexSet& s : candidates) {
    for (std::size_t pi = 0; pi < out.pieces.size(); ++pi) {
      const SafePiece& piece = out.pieces[pi];
      VertexSet covered = VertexSet::from_range(n, piece.vertices);
      if (!s.is_subset_of(covered)) continue;
      std::vector<Vertex> local(n, -1);
      for (std::size_t i = 0; i < piece.vertices.size(); ++i) local[piece.vertices[i]] = static_cast<Vertex>(i);
      VertexSet ls(piece.graph.num_vertices());
      for (Vertex v : s) ls.insert(local[v]);
      if (!is_minimal_separator(piece.graph, ls)) continue;

      std::vector<VertexSet> comps = components(piece.graph, ls.complement());
      std::vector<Contractor> sides;
      for (const VertexSet& c : comps) {
        auto gamma = detail::side_contractor(piece.graph, c, budget);
        if (!gamma) break;
        sides.push_back(std::move(*gamma));
      }
      if (sides.size() != comps.size()) continue;

      // Replace piece pi by one piece per component; the first full
      // component's piece takes index pi and the others join it.
      SafePiece old = out.pieces[pi];
      std::vector<std::size_t> index(comps.size());
      std::size_t hub = comps.size();
      for (std::size_t i = 0; i < comps.size(); ++i)
        if (neighborhood(old.graph, comps[i]) == ls) {
          hub = i;
          break;
        }
      if (hub == comps.size()) throw InvariantError("minimal separator without a full component");
      std::vector<VertexSet> orig_sets(comps.size());
      for (std::size_t i = 0; i < comps.size(); ++i) {
        const VertexSet keep = comps[i] | neighborhood(old.graph, comps[i]);
        SafePiece np;
        np.graph = contract(old.graph, sides[i]);
        for (Vertex v : keep) np.vertices.push_back(old.vertices[v]);
        np.witness = compose(old.witness, sides[i]);
        Graph expect = detail::filled_subgraph(old.graph, keep, neighborhood(old.graph, comps[i]));
        if (!(np.graph == expect)) throw InvariantError("safe-separator piece is not the filled subgraph");
        orig_sets[i] = VertexSet::from_range(n, np.vertices);
        if (i == hub) {
          index[i] = pi;
          out.pieces[pi] = std::move(np);
        } else {
          index[i] = out.pieces.size();
          out.pieces.push_back(std::move(np));
        }
      }
      for (PieceJoin& j : out.joins) {
        for (std::size_t side : {std::size_t{0}, std::size_t{1}}) {
          std::size_t& end = side == 0 ? j.a : j.b;
          if (end != pi) continue;
          for (std::size_t i = 0; i < comps.size(); ++i)
            if (j.separator.is_subset_of(orig_sets[i])) {
              end = index[i];
              break;
            }
        }
      }
      for (std::size_t i = 0; i < comps.size(); ++i) {
        if (i == hub) continue;
        VertexSet sep(n);
        for (Vertex v : neighborhood(old.graph, comps[i])) sep.insert(old.vertices[v]);
        out.joins.push_back(PieceJoin{pi, index[i], sep});
      }
      out.separators.push_back(s);
      break;
    }
  }
  return out;
}

// Tree decomposition of g from one decomposition per piece (local ids), glued
// along the joins.
inline TreeDecomposition reassemble(const Graph& g, const SafeSeparatorSplit& split,
                                    const std::vector<TreeDecomposition>& piece_tds) {
  if (piece_tds.size() != split.pieces.size()) throw InputError("one decomposition per piece expected");
  const std::size_t n = g.num_vertices();
  TreeDecomposition out;
  std::vector<std::size_t> offset;
  for (std::size_t p = 0; p < split.pieces.size(); ++p) {
    offset.push_back(out.bags.size());
    const SafePiece& piece = split.pieces[p];
    for (const VertexSet& b : piece_tds[p].bags) {
      if (b.universe() != piece.graph.num_vertices()) throw InputError("decomposition does not match its piece");
      VertexSet ob(n);
      for (Vertex v : b) ob.insert(piece.vertices[v]);
      out.bags.push_back(ob);
    }
    for (auto [a, b] : piece_tds[p].edges)
      out.edges.emplace_back(static_cast<int>(offset[p]) + a, static_cast<int>(offset[p]) + b);
  }
  auto bag_with = [&](std::size_t p, const VertexSet& s) {
    for (std::size_t i = 0; i < piece_tds[p].bags.size(); ++i)
      if (s.is_subset_of(out.bags[offset[p] + i])) return static_cast<int>(offset[p] + i);
    throw InvariantError("no bag holds a join separator");
  };
  for (const PieceJoin& j : split.joins) out.edges.emplace_back(bag_with(j.a, j.separator), bag_with(j.b, j.separator));
  return out;
}

struct SafeSepConfig {
  int lb = 0;
  std::uint64_t heuristic_budget = 1000;
  std::size_t max_side_vertices = 24;
};

// A full component C of a minimal separator S = N(C) such that G[C + S] + K(S) has treewidth at most
// lb and G[C + S] contracts onto S as a clique.  gamma maps G onto
// (G - C) + K(S), vertex i of which is the i-th vertex of V(G) - C.
struct SafeContraction {
  Contractor gamma;
  VertexSet component;
  VertexSet separator;
  Graph side;                        // G[C + S] + K(S) on local ids
  std::vector<Vertex> side_vertices;  // local -> original
  PmcSet side_pmcs;                   // tw over them is at most lb
};

namespace detail {

inline std::optional<SafeContraction> try_safe_component(const Graph& g, const VertexSet& c, const SafeSepConfig& cfg) {
  const VertexSet s = neighborhood(g, c);
  if (s.empty()) return std::nullopt;
  if (static_cast<int>(s.size()) - 1 > cfg.lb) return std::nullopt;
  const VertexSet keep = c | s;
  if (keep.size() > cfg.max_side_vertices) return std::nullopt;
  // S must stay a minimal separator: some component beyond it sees all of S.
  bool far_full = false;
  for (const VertexSet& d : components(g, keep.complement()))
    if (neighborhood(g, d) == s) far_full = true;
  if (!far_full) return std::nullopt;
  auto parts = rooted_clique_contraction(g, keep, s, cfg.heuristic_budget);
  if (!parts) return std::nullopt;

  SafeContraction out;
  out.component = c;
  out.separator = s;
  out.side = detail::filled_subgraph(g, keep, s, &out.side_vertices);
  HpidState st(out.side, cfg.lb);
  if (!st.finish()) return std::nullopt;
  out.side_pmcs = st.useful_pmcs();

  const std::size_t n = g.num_vertices();
  std::vector<Vertex> image(n, -1);
  Vertex next = 0;
  for (Vertex v = 0; v < static_cast<Vertex>(n); ++v)
    if (!c.contains(v)) image[v] = next++;
  std::size_t i = 0;
  for (Vertex root : s) {
    for (Vertex v : (*parts)[i]) image[v] = image[root];
    ++i;
  }
  out.gamma = Contractor::from_mapping(g, image);
  return out;
}

}  // namespace detail

// Looks for a contractor gamma' with G/gamma' = (G - C) + K(S) whose side
// G[C + S] + K(S) has treewidth at most cfg.lb.  Candidates: single vertices
// of degree at most lb, then components beyond the minimal separators of a
// greedy minimal triangulation, smallest first.
inline std::optional<SafeContraction> find_safe_contractor(const Graph& g, const SafeSepConfig& cfg) {
  const std::size_t n = g.num_vertices();
  if (n < 2 || cfg.lb < 0 || !is_connected(g)) return std::nullopt;
  for (Vertex v = 0; v < static_cast<Vertex>(n); ++v) {
    if (static_cast<int>(g.degree(v)) > cfg.lb) continue;
    const VertexSet& nb = g.neighbors(v);
    bool almost = is_clique(g, nb);
    for (Vertex u : nb) {
      if (almost) break;
      VertexSet rest = nb;
      rest.erase(u);
      almost = is_clique(g, rest);
    }
    if (!almost) continue;
    if (auto r = detail::try_safe_component(g, VertexSet(n, {v}), cfg)) return r;
  }

  TreeDecomposition t = greedy_td(g);
  std::vector<VertexSet> comps;
  for (auto [a, b] : t.edges) {
    VertexSet s = t.bags[a] & t.bags[b];
    if (static_cast<int>(s.size()) - 1 > cfg.lb) continue;
    for (const VertexSet& c : full_components(g, s))
      if (c.size() > 1 && std::find(comps.begin(), comps.end(), c) == comps.end()) comps.push_back(c);
  }
  std::sort(comps.begin(), comps.end(), set_less);
  for (const VertexSet& c : comps) {
    if (auto r = detail::try_safe_component(g, c, cfg)) return r;
  }
  return std::nullopt;
}

// PMCs of G from PMCs of G/gamma' and of the side graph, by relabeling.
// Both families stay PMCs in G because S is a minimal separator with full
// components on both sides.
inline PmcSet stitch_certificate(const PmcSet& pi, const SafeContraction& sc, const Graph& g) {
  if (sc.gamma.source_size() != g.num_vertices()) throw InputError("contraction does not match graph");
  const std::size_t n = g.num_vertices();
  std::vector<Vertex> rest = sc.component.complement().to_vector();
  PmcSet out;
  auto add = [&](VertexSet x) {
    if (!is_pmc(g, x)) {
      std::ostringstream os;
      os << "relabeled set " << x << " is not a potential maximal clique";
      throw InvariantError(os.str());
    }
    out.insert(x);
  };
  for (const VertexSet& x : pi) {
    if (x.universe() != rest.size()) throw InputError("PMC is not over the contracted graph");
    VertexSet y(n);
    for (Vertex w : x) y.insert(rest[w]);
    add(std::move(y));
  }
  for (const VertexSet& x : sc.side_pmcs) {
    VertexSet y(n);
    for (Vertex w : x) y.insert(sc.side_vertices[w]);
    add(std::move(y));
  }
  return out;
}

}  // namespace rtw
