#pragma once

#include <cstddef>
#include <vector>

#include "rtw/decomposition.hpp"
#include "rtw/errors.hpp"
#include "rtw/graph.hpp"
#include "rtw/optimal_minimalization.hpp"
#include "rtw/pmc.hpp"

namespace rtw {

// Bag weights for decompositions of G/gamma that are to be uncontracted into
// G: a bag costs 2|gamma^{-1}(U)|, less one when gamma^{-1}(U) is not a PMC of
// G and minimalization may still shrink it.
inline WeightFn uncontract_weight(const Graph& g, const Contractor& gamma) {
  return [&g, &gamma](const VertexSet& u) {
    VertexSet pre = gamma.preimage(u);
    int w = 2 * static_cast<int>(pre.size());
    return is_pmc(g, pre) ? w : w - 1;
  };
}

// Bag weights for decompositions of G that are to be mapped into G/gamma.
inline WeightFn contract_weight(const Graph& h, const Contractor& gamma) {
  return [&h, &gamma](const VertexSet& u) {
    VertexSet img = gamma.image(u);
    int w = 2 * static_cast<int>(img.size());
    return is_pmc(h, img) ? w : w - 1;
  };
}

// PMCs of G from PMCs of G/gamma: optimal decompositions under
// uncontract_weight, uncontracted and then minimalized optimally.
inline PmcSet uncontract_pmcs(const PmcSet& pi, const Graph& g, const Contractor& gamma,
                              std::size_t max_solutions = 16) {
  if (gamma.source_size() != g.num_vertices()) throw InputError("contractor does not match graph");
  Graph h = contract(g, gamma);
  WeightFn w = uncontract_weight(g, gamma);
  BtTable table(h, pi, w);
  if (table.value() == kInfinity) throw InputError("no decomposition of the contracted graph over the given PMCs");
  // Among equally weighted caps, grown bags that are already PMCs of G go last.
  WeightFn penalty = [&w, &gamma](const VertexSet& u) {
    return (w(u) % 2 == 0 && gamma.preimage(u).size() > u.size()) ? 1 : 0;
  };
  PmcSet out;
  for (const TreeDecomposition& t : table.decompositions(max_solutions, kInfinity, penalty))
    for (const VertexSet& b : minimalize_optimally(g, uncontract_td(t, gamma)).bags) out.insert(b);
  return out;
}

// PMCs of G/gamma from PMCs of G: optimal decompositions under
// contract_weight, mapped through gamma and minimalized optimally.
inline PmcSet contract_pmcs(const PmcSet& pi, const Graph& g, const Contractor& gamma,
                            std::size_t max_solutions = 16) {
  if (gamma.source_size() != g.num_vertices()) throw InputError("contractor does not match graph");
  Graph h = contract(g, gamma);
  WeightFn w = contract_weight(h, gamma);
  BtTable table(g, pi, w);
  if (table.value() == kInfinity) throw InputError("no decomposition of the graph over the given PMCs");
  PmcSet out;
  for (const TreeDecomposition& t : table.decompositions(max_solutions))
    for (const VertexSet& b : minimalize_optimally(h, image_td(t, gamma)).bags) out.insert(b);
  return out;
}

}  // namespace rtw
