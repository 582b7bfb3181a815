#pragma once

#include <cstddef>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "rtw/decomposition.hpp"
#include "rtw/graph.hpp"
#include "rtw/pmc.hpp"
#include "rtw/vertex_set.hpp"

namespace rtw {

struct MinimalizationStats {
  std::size_t candidate_pmcs = 0;
  bool truncated = false;  // some bag's candidate closure hit its cap
};

namespace detail {

// PMCs of g contained in bag x.  They coincide with the PMCs inside x of the
// graph where each component of g - x is contracted to one vertex; each is a
// closed neighborhood or a union of minimal separators of that graph.
inline std::vector<VertexSet> pmcs_inside_bag(const Graph& g, const VertexSet& x, std::size_t cap,
                                              bool* truncated) {
  const std::size_t n = g.num_vertices();
  std::vector<VertexSet> parts;
  for (Vertex v : x) parts.push_back(VertexSet(n, {v}));
  for (VertexSet& c : components(g, x.complement())) parts.push_back(std::move(c));
  Contractor gamma = Contractor::from_parts(g, std::move(parts));
  Graph a = contract(g, gamma);
  const std::size_t nx = x.size();
  VertexSet inside(a.num_vertices());
  for (std::size_t i = 0; i < nx; ++i) inside.insert(static_cast<Vertex>(i));

  std::vector<VertexSet> seps;
  SeparatorList all = minimal_separators(a, cap);
  if (all.truncated) *truncated = true;
  for (VertexSet& s : all.separators)
    if (s.is_subset_of(inside)) seps.push_back(std::move(s));

  std::unordered_set<VertexSet, VertexSetHash> seen;
  std::vector<VertexSet> cand;
  auto add = [&](const VertexSet& s) {
    if (seen.size() >= cap) {
      *truncated = true;
      return;
    }
    if (seen.insert(s).second) cand.push_back(s);
  };
  for (std::size_t i = 0; i < nx; ++i) {
    VertexSet c = closed_neighborhood(a, static_cast<Vertex>(i));
    if (c.is_subset_of(inside)) add(c);
  }
  std::size_t first_union = cand.size();
  for (const VertexSet& s : seps) add(s);
  for (std::size_t i = first_union; i < cand.size(); ++i) {
    check_deadline();
    for (const VertexSet& s : seps) {
      if (s.is_subset_of(cand[i])) continue;
      add(cand[i] | s);
    }
  }

  std::vector<VertexSet> out;
  for (const VertexSet& c : cand)
    if (is_pmc(a, c)) out.push_back(gamma.preimage(c));
  return out;
}

}  // namespace detail

// A minimal decomposition of g of least width among those whose fill lies in
// fill(g, t): BT dynamic programming over the PMCs of g contained in bags of
// t, followed by minimalize.
inline TreeDecomposition minimalize_optimally(const Graph& g, const TreeDecomposition& t,
                                              MinimalizationStats* stats = nullptr,
                                              std::size_t per_bag_cap = 1 << 14) {
  require_valid(g, t);
  PmcSet pi;
  for (const VertexSet& b : minimalize(g, t).bags) pi.insert(b);
  bool truncated = false;
  for (const VertexSet& x : t.bags)
    for (const VertexSet& p : detail::pmcs_inside_bag(g, x, per_bag_cap, &truncated)) pi.insert(p);
  if (stats) {
    stats->candidate_pmcs = pi.size();
    stats->truncated = truncated;
  }
  BtTable table(g, pi, cardinality_weight());
  std::vector<TreeDecomposition> best = table.decompositions(1);
  if (best.empty()) throw InvariantError("no decomposition over the PMCs inside a valid decomposition");
  return minimalize(g, best.front());
}

}  // namespace rtw
