#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rtw/errors.hpp"
#include "rtw/graph.hpp"
#include "rtw/pmc.hpp"
#include "rtw/vertex_set.hpp"

namespace rtw {

// A block given by its component; its separator is N(component).
inline bool is_small_block(const Graph& g, const VertexSet& b) {
  VertexSet sep = neighborhood(g, b);
  if (sep.empty()) return false;
  for (const VertexSet& c : components(g, sep.complement()))
    if (c != b && neighborhood(g, c) == sep && set_less(b, c)) return true;
  return false;
}

// Positive-instance driven search for a fixed graph and target width k.
// Keeps the small feasible blocks found so far and the set of caps (the root
// bags of their partial decompositions), and grows both by combining blocks.
class HpidState {
 public:
  HpidState(const Graph& g, int k) : g_(g), k_(k) {
    if (k < 0) throw InputError("target width must be nonnegative");
    if (g.num_vertices() == 0) throw InputError("graph has no vertices");
    if (!is_connected(g)) throw InputError("search needs a connected graph");
  }

  const Graph& graph() const { return g_; }
  int k() const { return k_; }
  std::uint64_t steps() const { return steps_; }
  const PmcSet& pmcs() const { return pi_; }
  const std::vector<VertexSet>& feasible_blocks() const { return feasible_; }
  bool is_feasible(const VertexSet& b) const { return feasible_index_.count(b) != 0; }
  bool root_feasible() const { return root_found_; }

  void import_pmcs(const PmcSet& pi) {
    bool any = false;
    for (const VertexSet& x : pi) {
      if (x.universe() != g_.num_vertices() || !is_pmc(g_, x)) {
        std::ostringstream os;
        os << "not a potential maximal clique: " << x;
        throw InputError(os.str());
      }
      any |= add_pmc(x);
    }
    if (!any) return;
    refresh_table();
    for (std::size_t i = 0; i < table_->num_blocks(); ++i) {
      const VertexSet& b = table_->block(i);
      if (table_->block_value(i) > k_) continue;
      if (b.size() == g_.num_vertices()) {
        root_found_ = true;
      } else if (is_small_block(g_, b)) {
        add_feasible(b);
      }
    }
  }

  // tw over the current caps; kInfinity while no full decomposition exists.
  int width() {
    refresh_table();
    return table_->value();
  }

  PmcSet useful_pmcs() {
    int w = width();
    if (w == kInfinity) throw StateError("useful_pmcs needs a finite width");
    PmcSet out;
    for (int xi : table_->reachable_caps(w)) out.insert(pi_[static_cast<std::size_t>(xi)]);
    return out;
  }

  // Newly feasible blocks obtained by combining b with smaller feasible
  // blocks.  V(G) is listed when the whole graph became feasible.
  std::vector<VertexSet> search_new_feasible(const VertexSet& b) {
    if (!is_feasible(b)) throw InputError("block is not a feasible block of this state");
    std::vector<VertexSet> found;
    search(b, std::numeric_limits<std::uint64_t>::max(), found);
    return found;
  }

  // Searches from the largest pending blocks until the queue empties, the
  // root becomes feasible, or `budget` more steps have been spent.
  void improve(std::uint64_t budget) {
    if (budget == 0) return;
    seed();
    const std::uint64_t limit = steps_ + budget;
    while (!root_found_ && !queue_.empty() && steps_ < limit) {
      auto it = std::prev(queue_.end());
      VertexSet b = *it;
      queue_.erase(it);
      std::vector<VertexSet> found;
      if (!search(b, limit, found)) {
        queue_.insert(b);
        break;
      }
    }
  }

  // Exhaustive search, smallest blocks first.  Afterwards the root is
  // feasible iff tw(G) <= k.
  bool finish() {
    seed();
    for (const VertexSet& b : feasible_) queue_.insert(b);
    while (!root_found_ && !queue_.empty()) {
      VertexSet b = *queue_.begin();
      queue_.erase(queue_.begin());
      std::vector<VertexSet> found;
      search(b, std::numeric_limits<std::uint64_t>::max(), found);
    }
    return root_found_;
  }

 private:
  struct SetLessCmp {
    bool operator()(const VertexSet& a, const VertexSet& b) const { return set_less(a, b); }
  };

  bool add_pmc(const VertexSet& x) {
    if (!pi_.insert(x)) return false;
    table_.reset();
    return true;
  }

  void refresh_table() {
    if (!table_) table_ = std::make_unique<BtTable>(g_, pi_, cardinality_weight());
  }

  bool add_feasible(const VertexSet& b) {
    if (!feasible_index_.emplace(b, feasible_.size()).second) return false;
    feasible_.push_back(b);
    queue_.insert(b);
    return true;
  }

  // Records block o with cap x; o = V(G) is the root.
  void record(const VertexSet& o, const VertexSet& x, std::vector<VertexSet>& found) {
    add_pmc(x);
    if (o.size() == g_.num_vertices()) {
      if (!root_found_) found.push_back(o);
      root_found_ = true;
      return;
    }
    if (add_feasible(o)) found.push_back(o);
  }

  bool spend(std::uint64_t limit) {
    if (steps_ >= limit) return false;
    ++steps_;
    check_deadline();
    return true;
  }

  bool fits(const VertexSet& x) const { return static_cast<int>(x.size()) <= k_ + 1; }

  // Blocks whose only cap is a closed neighborhood with no component of
  // G - N[v] on the inside.
  void seed() {
    if (seeded_) return;
    seeded_ = true;
    const std::size_t n = g_.num_vertices();
    std::vector<VertexSet> none;
    for (Vertex v = 0; v < static_cast<Vertex>(n); ++v) {
      VertexSet x = closed_neighborhood(g_, v);
      if (!fits(x) || !is_pmc(g_, x)) continue;
      if (x.size() == n) {
        record(g_.all(), x, none);
        continue;
      }
      std::vector<VertexSet> comps = components(g_, x.complement());
      for (const VertexSet& d : comps) {
        VertexSet sep = neighborhood(g_, d);
        VertexSet o = component_of(g_, sep.complement(), v);
        bool leaf = true;
        for (const VertexSet& c : comps)
          if (c != d && c.is_subset_of(o)) leaf = false;
        if (leaf && is_minimal_separator(g_, sep) && is_small_block(g_, o)) record(o, x, none);
      }
    }
  }

  // Tries every combination whose largest member is b.  Returns false when
  // the step limit interrupted the search.
  bool search(const VertexSet& b, std::uint64_t limit, std::vector<VertexSet>& found) {
    const VertexSet nb = neighborhood(g_, b);
    if (!search_closed_neighborhoods(b, nb, limit, found)) return false;
    if (root_found_) return true;

    // Copies: feasible_ grows while the search runs.
    std::vector<VertexSet> pool;
    for (const VertexSet& c : feasible_) {
      if (!set_less(c, b)) continue;
      if (c.intersects(b) || c.intersects(nb)) continue;
      if (!fits(nb | neighborhood(g_, c))) continue;
      pool.push_back(c);
    }
    return extend(b, nb, pool, 0, limit, found);
  }

  // X = N[v] for a vertex v outside b + N(b) seeing all of N(b).
  bool search_closed_neighborhoods(const VertexSet& b, const VertexSet& nb, std::uint64_t limit,
                                   std::vector<VertexSet>& found) {
    if (nb.empty()) return true;
    VertexSet cand = g_.all();
    for (Vertex s : nb) cand &= g_.neighbors(s);
    cand -= b;
    cand -= nb;
    for (Vertex v : cand) {
      VertexSet x = closed_neighborhood(g_, v);
      if (!fits(x)) continue;
      if (!spend(limit)) return false;
      if (!is_pmc(g_, x)) continue;
      std::vector<VertexSet> comps = components(g_, x.complement());
      auto largest_is_b = [&](const std::vector<const VertexSet*>& inner) {
        for (const VertexSet* c : inner)
          if (*c != b && (!is_feasible(*c) || !set_less(*c, b))) return false;
        return true;
      };
      std::vector<const VertexSet*> all;
      for (const VertexSet& c : comps) all.push_back(&c);
      if (largest_is_b(all)) {
        record(g_.all(), x, found);
        return true;
      }
      for (const VertexSet& d : comps) {
        if (d == b) continue;
        VertexSet sep = neighborhood(g_, d);
        VertexSet o = component_of(g_, sep.complement(), v);
        if (!b.is_subset_of(o)) continue;
        std::vector<const VertexSet*> inner;
        for (const VertexSet& c : comps)
          if (c != d && c.is_subset_of(o)) inner.push_back(&c);
        if (!largest_is_b(inner)) continue;
        if (is_minimal_separator(g_, sep) && is_small_block(g_, o)) record(o, x, found);
      }
    }
    return true;
  }

  // Backtracking over collections: tries the current collection, then adds
  // members from pool[from..] that stay disjoint and nonadjacent.
  bool extend(const VertexSet& u, const VertexSet& k_set, const std::vector<VertexSet>& pool, std::size_t from,
              std::uint64_t limit, std::vector<VertexSet>& found) {
    if (!spend(limit)) return false;
    if (!try_collection(u, k_set, limit, found)) return false;
    if (root_found_) return true;
    for (std::size_t i = from; i < pool.size(); ++i) {
      const VertexSet& c = pool[i];
      if (c.intersects(k_set)) continue;
      VertexSet k2 = k_set | neighborhood(g_, c);
      if (!fits(k2)) continue;
      VertexSet u2 = u | c;
      k2 -= u2;
      if (!extend(u2, k2, pool, i + 1, limit, found)) return false;
      if (root_found_) return true;
    }
    return true;
  }

  // For U the union of a collection and K = N(U): every nonempty W inside K
  // with X = W + N(U + W) of at most k + 1 vertices.
  bool try_collection(const VertexSet& u, const VertexSet& k_set, std::uint64_t limit,
                      std::vector<VertexSet>& found) {
    std::vector<Vertex> ks = k_set.to_vector();
    VertexSet w(g_.num_vertices());
    return grow_w(u, k_set, ks, 0, w, limit, found);
  }

  bool grow_w(const VertexSet& u, const VertexSet& k_set, const std::vector<Vertex>& ks, std::size_t from,
              VertexSet& w, std::uint64_t limit, std::vector<VertexSet>& found) {
    for (std::size_t i = from; i < ks.size(); ++i) {
      w.insert(ks[i]);
      VertexSet o = u | w;
      VertexSet sep = neighborhood(g_, o);
      VertexSet x = sep | w;
      if (fits(x)) {
        if (!spend(limit)) {
          w.erase(ks[i]);
          return false;
        }
        if (is_connected(g_, o) && is_pmc(g_, x)) {
          if (sep.empty()) {
            record(g_.all(), x, found);
          } else if (is_minimal_separator(g_, sep) && is_small_block(g_, o)) {
            record(o, x, found);
          } else {
            add_pmc(x);
          }
        }
        if (root_found_ || !grow_w(u, k_set, ks, i + 1, w, limit, found)) {
          w.erase(ks[i]);
          return root_found_;
        }
      }
      w.erase(ks[i]);
    }
    return true;
  }

  Graph g_;
  int k_;
  PmcSet pi_;
  std::vector<VertexSet> feasible_;
  std::unordered_map<VertexSet, std::size_t, VertexSetHash> feasible_index_;
  std::set<VertexSet, SetLessCmp> queue_;
  std::unique_ptr<BtTable> table_;
  bool root_found_ = false;
  bool seeded_ = false;
  std::uint64_t steps_ = 0;
};

}  // namespace rtw
