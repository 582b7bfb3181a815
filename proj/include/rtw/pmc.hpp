#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "rtw/decomposition.hpp"
#include "rtw/errors.hpp"
#include "rtw/graph.hpp"
#include "rtw/vertex_set.hpp"

namespace rtw {

inline constexpr int kInfinity = std::numeric_limits<int>::max();

// Components of g - s whose neighborhood is all of s.
inline std::vector<VertexSet> full_components(const Graph& g, const VertexSet& s) {
  std::vector<VertexSet> out;
  for (VertexSet& c : components(g, s.complement()))
    if (neighborhood(g, c) == s) out.push_back(std::move(c));
  return out;
}

inline bool is_minimal_separator(const Graph& g, const VertexSet& s) {
  detail::require_universe(g, s);
  std::size_t full = 0;
  for (const VertexSet& c : components(g, s.complement()))
    if (neighborhood(g, c) == s && ++full == 2) return true;
  return false;
}

struct SeparatorList {
  std::vector<VertexSet> separators;  // ordered by set_less
  bool truncated = false;
};

// All minimal separators, by closing the seeds N(C), C a component of
// G - N[v], under S -> N(C) for components C of G - (S + N(x)), x in S.
// Stops after `cap` separators and reports truncation.
inline SeparatorList minimal_separators(const Graph& g, std::size_t cap = 2'000'000) {
  SeparatorList out;
  std::unordered_set<VertexSet, VertexSetHash> seen;
  std::vector<VertexSet> work;
  auto add = [&](VertexSet s) {
    if (s.empty() || seen.count(s)) return true;
    if (seen.size() >= cap) {
      out.truncated = true;
      return false;
    }
    seen.insert(s);
    work.push_back(std::move(s));
    return true;
  };
  const VertexSet all = g.all();
  for (Vertex v = 0; v < static_cast<Vertex>(g.num_vertices()); ++v) {
    VertexSet closed = closed_neighborhood(g, v);
    for (const VertexSet& c : components(g, all - closed))
      if (!add(neighborhood(g, c))) break;
  }
  for (std::size_t i = 0; i < work.size() && !out.truncated; ++i) {
    check_deadline();
    const VertexSet s = work[i];
    for (Vertex x : s) {
      VertexSet removed = s | g.neighbors(x);
      for (const VertexSet& c : components(g, all - removed))
        if (!add(neighborhood(g, c))) break;
      if (out.truncated) break;
    }
  }
  out.separators = std::move(work);
  std::sort(out.separators.begin(), out.separators.end(), set_less);
  return out;
}

// Local characterization: g - x has no full component, and every pair of
// nonadjacent vertices of x has a common component in whose neighborhood
// both lie.
inline bool is_pmc(const Graph& g, const VertexSet& x) {
  detail::require_universe(g, x);
  if (x.empty()) return false;
  std::vector<VertexSet> nbhd;
  for (const VertexSet& c : components(g, x.complement())) {
    VertexSet s = neighborhood(g, c);
    if (s == x) return false;
    nbhd.push_back(std::move(s));
  }
  for (Vertex u : x) {
    VertexSet reach = g.neighbors(u) & x;
    reach.insert(u);
    for (const VertexSet& s : nbhd)
      if (s.contains(u)) reach |= s;
    if (reach != x) return false;
  }
  return true;
}

// Deduplicated family of vertex sets in insertion order.
class PmcSet {
 public:
  PmcSet() = default;
  PmcSet(std::initializer_list<VertexSet> xs) {
    for (const VertexSet& x : xs) insert(x);
  }
  template <class Range>
  static PmcSet from_range(const Range& xs) {
    PmcSet p;
    for (const VertexSet& x : xs) p.insert(x);
    return p;
  }

  bool insert(const VertexSet& x) {
    if (!index_.insert(x).second) return false;
    items_.push_back(x);
    return true;
  }
  void insert_all(const PmcSet& o) {
    for (const VertexSet& x : o) insert(x);
  }
  bool contains(const VertexSet& x) const { return index_.count(x) != 0; }

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const VertexSet& operator[](std::size_t i) const { return items_[i]; }
  std::vector<VertexSet>::const_iterator begin() const { return items_.begin(); }
  std::vector<VertexSet>::const_iterator end() const { return items_.end(); }
  const std::vector<VertexSet>& items() const { return items_; }

  // Members in set_less order; for comparisons in tests.
  std::vector<VertexSet> sorted() const {
    std::vector<VertexSet> out = items_;
    std::sort(out.begin(), out.end(), set_less);
    return out;
  }

  friend bool operator==(const PmcSet& a, const PmcSet& b) {
    if (a.size() != b.size()) return false;
    for (const VertexSet& x : a)
      if (!b.contains(x)) return false;
    return true;
  }

 private:
  std::vector<VertexSet> items_;
  std::unordered_set<VertexSet, VertexSetHash> index_;
};

// Every member of pi that is a cap of the block with component b.
inline std::vector<VertexSet> caps(const Graph& g, const PmcSet& pi, const VertexSet& b) {
  VertexSet sep = neighborhood(g, b);
  VertexSet closed = b | sep;
  std::vector<VertexSet> out;
  for (const VertexSet& x : pi)
    if (sep.is_subset_of(x) && x.is_subset_of(closed) && x.intersects(b)) out.push_back(x);
  return out;
}

inline std::vector<VertexSet> all_pmcs_list(const Graph& g, std::size_t max_vertices);

// Every PMC of g, by testing all vertex subsets.  Refuses graphs above
// max_vertices.
inline PmcSet all_pmcs(const Graph& g, std::size_t max_vertices = 20) {
  return PmcSet::from_range(all_pmcs_list(g, max_vertices));
}

inline std::vector<VertexSet> all_pmcs_list(const Graph& g, std::size_t max_vertices) {
  const std::size_t n = g.num_vertices();
  if (n > max_vertices || n >= 63)
    throw CapExceededError("all_pmcs: " + std::to_string(n) + " vertices exceeds the cap of " +
                           std::to_string(max_vertices));
  std::vector<VertexSet> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    VertexSet x(n);
    for (std::size_t v = 0; v < n; ++v)
      if ((mask >> v) & 1U) x.insert(static_cast<Vertex>(v));
    if (is_pmc(g, x)) out.push_back(std::move(x));
  }
  std::sort(out.begin(), out.end(), set_less);
  return out;
}

using WeightFn = std::function<int(const VertexSet&)>;

inline WeightFn cardinality_weight() {
  return [](const VertexSet& x) { return static_cast<int>(x.size()) - 1; };
}

// Dynamic programming over blocks and caps: the value of a block is the
// least, over its caps X in pi, of max(w(X), values of the components of
// B - X).  Blocks are the components of G - X for X in pi, plus V(G).
class BtTable {
 public:
  BtTable(const Graph& g, const PmcSet& pi, WeightFn w) : pi_(pi.items()) {
    weight_.reserve(pi_.size());
    for (const VertexSet& x : pi_) {
      detail::require_universe(g, x);
      weight_.push_back(w(x));
    }
    root_ = block_id(g.all());
    for (std::size_t xi = 0; xi < pi_.size(); ++xi) {
      check_deadline();
      const VertexSet& x = pi_[xi];
      if (x.empty()) continue;
      std::vector<VertexSet> comps = components(g, x.complement());
      std::vector<int> ids;
      std::vector<VertexSet> seps;
      ids.reserve(comps.size());
      for (const VertexSet& c : comps) {
        ids.push_back(block_id(c));
        seps.push_back(neighborhood(g, c));
      }
      add_entry(root_, static_cast<int>(xi), ids);
      for (std::size_t ci = 0; ci < comps.size(); ++ci) {
        VertexSet rest = x - seps[ci];
        if (rest.empty()) continue;
        VertexSet b = component_of(g, seps[ci].complement(), rest.first());
        if (!rest.is_subset_of(b)) continue;
        VertexSet nb = neighborhood(g, b);
        if (!x.is_subset_of(b | nb)) continue;
        std::vector<int> kids;
        for (std::size_t di = 0; di < comps.size(); ++di)
          if (di != ci && comps[di].is_subset_of(b)) kids.push_back(ids[di]);
        add_entry(block_id(b), static_cast<int>(xi), kids);
      }
    }
    evaluate();
  }

  int value() const { return value_[root_]; }

  // Value of the block with component b, or infinity when b is unknown.
  int block_value(const VertexSet& b) const {
    auto it = ids_.find(b);
    return it == ids_.end() ? kInfinity : value_[it->second];
  }

  std::size_t num_blocks() const { return blocks_.size(); }
  const VertexSet& block(std::size_t i) const { return blocks_[i]; }
  int block_value(std::size_t i) const { return value_[i]; }
  int weight(std::size_t xi) const { return weight_[xi]; }

  // Indices into pi of caps used by some partial decomposition of value at
  // most `threshold` reachable from the root.
  std::vector<int> reachable_caps(int threshold) const {
    std::vector<char> used(pi_.size(), 0), seen(blocks_.size(), 0);
    std::vector<int> stack;
    if (value() <= threshold) {
      stack.push_back(root_);
      seen[root_] = 1;
    }
    while (!stack.empty()) {
      int b = stack.back();
      stack.pop_back();
      for (const Entry& e : entries_[b]) {
        if (entry_value(e) > threshold) continue;
        used[e.cap] = 1;
        for (int c : e.children)
          if (!seen[c]) {
            seen[c] = 1;
            stack.push_back(c);
          }
      }
    }
    std::vector<int> out;
    for (std::size_t i = 0; i < used.size(); ++i)
      if (used[i]) out.push_back(static_cast<int>(i));
    return out;
  }

  // Up to max_solutions distinct decompositions of g whose every partial
  // decomposition has value at most threshold (default: the optimum).  Caps
  // are tried in increasing (entry value, penalty) order.
  std::vector<TreeDecomposition> decompositions(std::size_t max_solutions, int threshold = kInfinity,
                                                const WeightFn& penalty = nullptr) const {
    if (threshold == kInfinity) threshold = value();
    if (value() > threshold || threshold == kInfinity || max_solutions == 0) return {};
    std::unordered_map<int, std::vector<Partial>> memo;
    std::vector<Partial> roots = trace(root_, threshold, max_solutions, penalty, memo);
    std::vector<TreeDecomposition> out;
    std::unordered_set<std::size_t> seen_shapes;
    for (Partial& p : roots) {
      std::vector<VertexSet> key = p.bags;
      std::sort(key.begin(), key.end(), set_less);
      std::size_t h = 0;
      for (const VertexSet& k : key) h = h * 1000003u ^ k.hash();
      if (!seen_shapes.insert(h).second) continue;
      TreeDecomposition t;
      t.bags = std::move(p.bags);
      t.edges = std::move(p.edges);
      out.push_back(std::move(t));
    }
    return out;
  }

 private:
  struct Entry {
    int cap;
    std::vector<int> children;
  };
  struct Partial {
    std::vector<VertexSet> bags;  // bags[0] is the root bag
    std::vector<std::pair<int, int>> edges;
  };

  int block_id(const VertexSet& b) {
    auto [it, fresh] = ids_.try_emplace(b, static_cast<int>(blocks_.size()));
    if (fresh) {
      blocks_.push_back(b);
      entries_.emplace_back();
    }
    return it->second;
  }

  void add_entry(int b, int cap, std::vector<int> kids) {
    // Entries arrive grouped by cap, so a repeat can only follow its twin.
    if (!entries_[b].empty() && entries_[b].back().cap == cap) return;
    entries_[b].push_back({cap, std::move(kids)});
  }

  int entry_value(const Entry& e) const {
    int v = weight_[e.cap];
    for (int c : e.children) v = std::max(v, value_[c]);
    return v;
  }

  void evaluate() {
    std::vector<int> order(blocks_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return blocks_[a].size() < blocks_[b].size(); });
    value_.assign(blocks_.size(), kInfinity);
    for (int b : order) {
      check_deadline();
      int best = kInfinity;
      for (const Entry& e : entries_[b]) best = std::min(best, entry_value(e));
      value_[b] = best;
    }
  }

  std::vector<Partial> trace(int b, int threshold, std::size_t limit, const WeightFn& penalty,
                             std::unordered_map<int, std::vector<Partial>>& memo) const {
    if (auto it = memo.find(b); it != memo.end()) return it->second;
    std::vector<std::pair<std::pair<int, int>, const Entry*>> ok;
    for (const Entry& e : entries_[b]) {
      int v = entry_value(e);
      if (v > threshold) continue;
      ok.push_back({{v, penalty ? penalty(pi_[e.cap]) : 0}, &e});
    }
    std::stable_sort(ok.begin(), ok.end(),
                     [](const auto& a, const auto& c) { return a.first < c.first; });
    std::vector<Partial> out;
    for (const auto& [key, e] : ok) {
      if (out.size() >= limit) break;
      std::vector<Partial> combos(1);
      combos[0].bags.push_back(pi_[e->cap]);
      for (int c : e->children) {
        std::vector<Partial> subs = trace(c, threshold, limit, penalty, memo);
        std::vector<Partial> next;
        for (const Partial& base : combos)
          for (const Partial& sub : subs) {
            if (next.size() >= limit) break;
            Partial p = base;
            int offset = static_cast<int>(p.bags.size());
            p.bags.insert(p.bags.end(), sub.bags.begin(), sub.bags.end());
            for (auto [x, y] : sub.edges) p.edges.emplace_back(x + offset, y + offset);
            p.edges.emplace_back(0, offset);
            next.push_back(std::move(p));
          }
        combos = std::move(next);
        if (combos.empty()) break;
      }
      for (Partial& p : combos) {
        if (out.size() >= limit) break;
        out.push_back(std::move(p));
      }
    }
    memo[b] = out;
    return out;
  }

  std::vector<VertexSet> pi_;
  std::vector<int> weight_;
  std::vector<VertexSet> blocks_;
  std::vector<std::vector<Entry>> entries_;
  std::unordered_map<VertexSet, int, VertexSetHash> ids_;
  std::vector<int> value_;
  int root_ = 0;
};

struct BtResult {
  int value = kInfinity;
  std::vector<TreeDecomposition> decompositions;
  std::unordered_map<VertexSet, int, VertexSetHash> table;  // block component -> value
};

inline BtResult bt_dp(const Graph& g, const PmcSet& pi, const WeightFn& w, std::size_t max_solutions = 16,
                      const WeightFn& penalty = nullptr) {
  BtTable t(g, pi, w);
  BtResult r;
  r.value = t.value();
  r.decompositions = t.decompositions(max_solutions, kInfinity, penalty);
  for (std::size_t i = 0; i < t.num_blocks(); ++i) r.table.emplace(t.block(i), t.block_value(i));
  return r;
}

inline int tw_pi(const Graph& g, const PmcSet& pi) { return BtTable(g, pi, cardinality_weight()).value(); }

}  // namespace rtw
