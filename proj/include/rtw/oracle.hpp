#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "rtw/errors.hpp"
#include "rtw/graph.hpp"

namespace rtw {

// Exact treewidth by dynamic programming over vertex subsets: the best
// elimination of a set S costs max(best(S - v), |Q(S - v, v)|) where Q(S, v)
// is the set of vertices outside S + v reachable from v through S.
// Exponential in the vertex count; refuses graphs above max_vertices.
inline int oracle_treewidth(const Graph& g, std::size_t max_vertices = 22) {
  const std::size_t n = g.num_vertices();
  if (n > max_vertices || n > 30)
    throw CapExceededError("oracle: " + std::to_string(n) + " vertices exceeds the cap of " +
                           std::to_string(max_vertices));
  if (n == 0) return -1;
  std::vector<std::uint32_t> adj(n, 0);
  for (const Edge& e : g.edges()) {
    adj[e.u] |= std::uint32_t{1} << e.v;
    adj[e.v] |= std::uint32_t{1} << e.u;
  }
  const std::uint32_t full = n == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1;
  auto q_size = [&](std::uint32_t s, int v) {
    std::uint32_t seen = std::uint32_t{1} << v;
    std::uint32_t frontier = seen;
    std::uint32_t outside = 0;
    while (frontier) {
      std::uint32_t next = 0;
      for (std::uint32_t f = frontier; f; f &= f - 1) next |= adj[__builtin_ctz(f)];
      next &= ~seen;
      seen |= next;
      outside |= next & ~s;
      frontier = next & s;
    }
    return __builtin_popcount(outside);
  };
  std::vector<std::int8_t> best(std::size_t{1} << n, 0);
  best[0] = -1;
  for (std::uint32_t s = 1; s <= full; ++s) {
    if ((s & 0xFFFU) == 0) check_deadline();
    int b = 127;
    for (std::uint32_t r = s; r; r &= r - 1) {
      int v = __builtin_ctz(r);
      std::uint32_t rest = s & ~(std::uint32_t{1} << v);
      int c = std::max<int>(best[rest], q_size(rest, v));
      if (c < b) b = c;
    }
    best[s] = static_cast<std::int8_t>(b);
    if (s == full) break;
  }
  return best[full];
}

}  // namespace rtw
