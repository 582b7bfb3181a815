#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rtw/bridge.hpp"
#include "rtw/decomposition.hpp"
#include "rtw/errors.hpp"
#include "rtw/graph.hpp"
#include "rtw/hpid.hpp"
#include "rtw/pmc.hpp"
#include "rtw/safe_separators.hpp"

namespace rtw {

struct SolverOptions {
  std::uint64_t unit_budget = 1000;
  std::size_t max_solutions = 16;
  bool safe_separators = true;
  std::uint64_t seed = 0;  // nonzero: ties in the edge order are shuffled
  std::uint64_t safe_search_budget = 1000;
};

struct SolverStats {
  std::uint64_t rtw_calls = 0;
  std::size_t max_depth = 0;
  std::uint64_t suppressed_edges = 0;
  std::uint64_t safe_reductions = 0;
  std::uint64_t finish_calls = 0;
  std::uint64_t hpid_steps = 0;
  std::size_t safe_pieces = 0;
};

// Edges whose contraction keeps the treewidth by the almost-clique rule come
// first; the rest by min{defic(u,v)/|N(v)|, defic(v,u)/|N(u)|}, where
// defic(u,v) counts the non-adjacent pairs of N(v) - u.  Ties keep canonical
// order unless `rng` shuffles them.
inline std::vector<Edge> order_edges(const Graph& g, std::mt19937_64* rng = nullptr) {
  struct Keyed {
    Edge e;
    std::size_t num;
    std::size_t den;
  };
  std::vector<Keyed> keyed;
  for (const Edge& e : g.edges()) {
    auto defic = [&](Vertex u, Vertex v) {
      VertexSet s = g.neighbors(v);
      s.erase(u);
      return deficiency(g, s);
    };
    std::size_t a = defic(e.u, e.v), da = g.degree(e.v);
    std::size_t b = defic(e.v, e.u), db = g.degree(e.u);
    if (a * db <= b * da) {
      keyed.push_back({e, a, da});
    } else {
      keyed.push_back({e, b, db});
    }
  }
  if (rng) std::shuffle(keyed.begin(), keyed.end(), *rng);
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const Keyed& x, const Keyed& y) { return x.num * y.den < y.num * x.den; });
  std::vector<Edge> out;
  out.reserve(keyed.size());
  for (const Keyed& k : keyed) out.push_back(k.e);
  return out;
}

struct RtwCallResult {
  bool yes = false;
  PmcSet pmcs;          // YES: tw over them is at most k
  Graph obstruction;    // NO: minimal contraction with treewidth k + 1
  Contractor witness;   // NO: maps the input graph onto the obstruction
};

// A finished recursive call on G'/e' that answered YES.  The ends of e' are
// named by one root vertex each, so any descendant G of G' finds the edge
// e' maps to by following its own root contractor.
struct SuppressionRecord {
  Vertex end_u = 0;
  Vertex end_v = 0;
  Graph contracted;      // G'/e'
  Contractor root_map;   // root -> G'/e'
  PmcSet pmcs;           // tw over them on G'/e' is at most k
};

class SuppressionLedger {
 public:
  std::size_t size() const { return records_.size(); }
  const SuppressionRecord& operator[](std::size_t i) const { return records_.at(i); }
  void push(SuppressionRecord r) { records_.push_back(std::move(r)); }
  void truncate(std::size_t size) { records_.resize(std::min(size, records_.size())); }

  // Edges of g suppressed by some record, keyed to the first such record.
  // g must be a descendant of every recorded G'.
  std::map<Edge, std::size_t> suppressed(const Graph& g, const Contractor& root_map) const {
    std::map<Edge, std::size_t> out;
    for (std::size_t i = 0; i < records_.size(); ++i) {
      Vertex x = root_map(records_[i].end_u), y = root_map(records_[i].end_v);
      if (x == y) continue;
      if (!g.adjacent(x, y)) throw InvariantError("suppressing record does not map onto an edge");
      out.emplace(Edge(x, y), i);
    }
    return out;
  }

  // PMCs of G/e with tw at most k, contracted from record i.
  PmcSet transfer(std::size_t i, const Graph& target, const Contractor& target_root_map,
                  std::size_t max_solutions) const {
    const SuppressionRecord& r = records_.at(i);
    std::vector<Vertex> image(r.contracted.num_vertices());
    for (std::size_t z = 0; z < image.size(); ++z) {
      const VertexSet& part = r.root_map.part(static_cast<Vertex>(z));
      image[z] = target_root_map(part.first());
      for (Vertex v : part)
        if (target_root_map(v) != image[z]) throw InvariantError("target is not a contraction of the record");
    }
    Contractor gamma = Contractor::from_mapping(r.contracted, image);
    if (gamma.image_size() != target.num_vertices()) throw InvariantError("record maps onto the wrong graph");
    return contract_pmcs(r.pmcs, r.contracted, gamma, max_solutions);
  }

 private:
  std::vector<SuppressionRecord> records_;
};

namespace detail {

class RtwSolver {
 public:
  RtwSolver(const Graph& root, int k, const SolverOptions& opts, SolverStats* stats)
      : root_(root), k_(k), opts_(opts), stats_(stats ? stats : &own_stats_) {
    if (opts.seed != 0) rng_.emplace(opts.seed);
  }

  RtwCallResult run(const PmcSet& pi) { return call(root_, Contractor::identity(root_.num_vertices()), pi, 0); }

 private:
  RtwCallResult yes(PmcSet pmcs) {
    RtwCallResult r;
    r.yes = true;
    r.pmcs = std::move(pmcs);
    return r;
  }

  RtwCallResult call(const Graph& g, const Contractor& root_map, const PmcSet& pi, std::size_t depth) {
    ++stats_->rtw_calls;
    stats_->max_depth = std::max(stats_->max_depth, depth);
    HpidState s(g, k_);
    s.import_pmcs(pi);
    if (s.width() == kInfinity) s.import_pmcs(PmcSet::from_range(greedy_td(g).bags));
    auto done = [&](RtwCallResult r) {
      stats_->hpid_steps += s.steps();
      return r;
    };
    if (s.width() <= k_) return done(yes(s.useful_pmcs()));

    if (opts_.safe_separators) {
      SafeSepConfig cfg;
      cfg.lb = k_;
      cfg.heuristic_budget = opts_.safe_search_budget;
      if (auto sc = find_safe_contractor(g, cfg)) {
        ++stats_->safe_reductions;
        Graph h = contract(g, sc->gamma);
        PmcSet theta = contract_pmcs(s.useful_pmcs(), g, sc->gamma, opts_.max_solutions);
        RtwCallResult r = call(h, compose(root_map, sc->gamma), theta, depth + 1);
        if (!r.yes) return done(std::move(r));
        PmcSet stitched = stitch_certificate(r.pmcs, *sc, g);
        if (tw_pi(g, stitched) > k_) throw InvariantError("stitched PMCs exceed the target width");
        return done(yes(std::move(stitched)));
      }
    }

    const std::vector<Edge> order = order_edges(g, rng_ ? &*rng_ : nullptr);
    const std::map<Edge, std::size_t> suppressed = ledger_.suppressed(g, root_map);
    const std::size_t mark = ledger_.size();
    for (std::size_t i = 1; i <= order.size(); ++i) {
      const Edge e = order[i - 1];
      auto [h, gamma] = contract_edge(g, e);
      Contractor h_root = compose(root_map, gamma);
      PmcSet psi;
      if (auto it = suppressed.find(e); it != suppressed.end()) {
        ++stats_->suppressed_edges;
        psi = ledger_.transfer(it->second, h, h_root, opts_.max_solutions);
      } else {
        PmcSet theta = contract_pmcs(s.useful_pmcs(), g, gamma, opts_.max_solutions);
        RtwCallResult r = call(h, h_root, theta, depth + 1);
        if (!r.yes) {
          ledger_.truncate(mark);
          return done(std::move(r));
        }
        psi = std::move(r.pmcs);
      }
      s.import_pmcs(uncontract_pmcs(psi, g, gamma, opts_.max_solutions));
      ledger_.push(SuppressionRecord{root_map.part(e.u).first(), root_map.part(e.v).first(), std::move(h),
                                     std::move(h_root), std::move(psi)});
      s.improve(opts_.unit_budget * i);
      if (s.width() <= k_) {
        ledger_.truncate(mark);
        return done(yes(s.useful_pmcs()));
      }
    }
    ledger_.truncate(mark);

    ++stats_->finish_calls;
    if (s.finish()) return done(yes(s.useful_pmcs()));
    RtwCallResult no;
    no.obstruction = g;
    no.witness = root_map;
    return done(std::move(no));
  }

  const Graph& root_;
  int k_;
  SolverOptions opts_;
  SolverStats own_stats_;
  SolverStats* stats_;
  SuppressionLedger ledger_;
  std::optional<std::mt19937_64> rng_;
};

}  // namespace detail

// Decides tw(g) <= k for connected g given PMCs pi of g with tw_pi(g) <= k+1.
// An empty or insufficient pi is completed with greedy bags.
inline RtwCallResult rtw(const Graph& g, int k, const PmcSet& pi, const SolverOptions& opts = {},
                         SolverStats* stats = nullptr) {
  if (k < 0) throw InputError("target width must be nonnegative");
  if (g.num_vertices() == 0 || !is_connected(g)) throw InputError("rtw needs a nonempty connected graph");
  for (const VertexSet& x : pi)
    if (x.universe() != g.num_vertices() || !is_pmc(g, x)) {
      std::ostringstream os;
      os << "not a potential maximal clique: " << x;
      throw InputError(os.str());
    }
  int w = tw_pi(g, pi);
  if (w != kInfinity && w > k + 1) throw InputError("tw over the given PMCs exceeds k + 1");
  return detail::RtwSolver(g, k, opts, stats).run(pi);
}

struct Certificate {
  int width = 0;
  TreeDecomposition decomposition;
  Graph obstruction;
  Contractor witness;  // g -> obstruction
};

namespace detail {

inline Certificate solve_core(const Graph& g, const SolverOptions& opts, SolverStats* stats) {
  TreeDecomposition t = greedy_td(g);
  int k = width(t);
  if (k == 0) return Certificate{0, t, g, Contractor::identity(g.num_vertices())};
  PmcSet pi = PmcSet::from_range(t.bags);
  for (;;) {
    RtwCallResult r = detail::RtwSolver(g, k - 1, opts, stats).run(pi);
    if (!r.yes) {
      BtTable table(g, pi, cardinality_weight());
      std::vector<TreeDecomposition> ds = table.decompositions(1);
      if (ds.empty() || width(ds.front()) != k) throw InvariantError("certified PMCs do not reach the width");
      return Certificate{k, std::move(ds.front()), std::move(r.obstruction), std::move(r.witness)};
    }
    --k;
    pi = std::move(r.pmcs);
  }
}

inline Certificate solve_connected(const Graph& g, const SolverOptions& opts, SolverStats* stats) {
  if (!opts.safe_separators || g.num_vertices() < 3) return solve_core(g, opts, stats);
  SafeSeparatorSplit split = preprocess_safe_separators(g, opts.safe_search_budget);
  if (stats) stats->safe_pieces += split.pieces.size();
  if (split.pieces.size() == 1) return solve_core(g, opts, stats);
  std::vector<Certificate> parts;
  std::vector<TreeDecomposition> tds;
  std::size_t widest = 0;
  for (std::size_t p = 0; p < split.pieces.size(); ++p) {
    parts.push_back(solve_core(split.pieces[p].graph, opts, stats));
    tds.push_back(parts.back().decomposition);
    if (parts[p].width > parts[widest].width) widest = p;
  }
  Certificate out;
  out.width = parts[widest].width;
  out.decomposition = reassemble(g, split, tds);
  out.obstruction = parts[widest].obstruction;
  out.witness = compose(split.pieces[widest].witness, parts[widest].witness);
  return out;
}

}  // namespace detail

// tw(g) with an optimal decomposition and a minimal contraction of the same
// treewidth.  Components are solved separately; the obstruction of a
// disconnected graph is the widest component's obstruction plus one vertex
// for every other component.
inline Certificate compute_treewidth(const Graph& g, const SolverOptions& opts = {}, SolverStats* stats = nullptr) {
  const std::size_t n = g.num_vertices();
  if (n == 0) throw InputError("graph has no vertices");
  std::vector<VertexSet> comps = components(g, g.all());
  if (comps.size() == 1) return detail::solve_connected(g, opts, stats);

  std::vector<Certificate> certs;
  std::vector<std::vector<Vertex>> ids(comps.size());
  std::size_t widest = 0;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    certs.push_back(detail::solve_connected(induced_subgraph(g, comps[i], &ids[i]), opts, stats));
    if (certs[i].width > certs[widest].width) widest = i;
  }

  Certificate out;
  out.width = certs[widest].width;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const int base = static_cast<int>(out.decomposition.bags.size());
    for (const VertexSet& b : certs[i].decomposition.bags) {
      VertexSet ob(n);
      for (Vertex v : b) ob.insert(ids[i][v]);
      out.decomposition.bags.push_back(ob);
    }
    for (auto [a, b] : certs[i].decomposition.edges) out.decomposition.edges.emplace_back(base + a, base + b);
    if (i > 0) out.decomposition.edges.emplace_back(0, base);
  }

  const Certificate& top = certs[widest];
  const std::size_t h = top.obstruction.num_vertices();
  out.obstruction = Graph(h + comps.size() - 1);
  for (const Edge& e : top.obstruction.edges()) out.obstruction.add_edge(e.u, e.v);
  std::vector<VertexSet> parts;
  for (const VertexSet& p : top.witness.parts()) {
    VertexSet q(n);
    for (Vertex v : p) q.insert(ids[widest][v]);
    parts.push_back(q);
  }
  for (std::size_t i = 0; i < comps.size(); ++i)
    if (i != widest) parts.push_back(comps[i]);
  out.witness = Contractor::from_parts(g, std::move(parts));
  return out;
}

// Exact decision tw(g) <= k, component by component.
inline bool treewidth_at_most(const Graph& g, int k) {
  if (g.num_vertices() == 0) return true;
  if (k < 0) return false;
  for (const VertexSet& c : components(g, g.all())) {
    if (static_cast<int>(c.size()) <= k + 1) continue;
    HpidState s(induced_subgraph(g, c), k);
    if (!s.finish()) return false;
  }
  return true;
}

struct CertificateReport {
  std::vector<std::string> failures;  // "<invariant>: <detail>"
  bool ok() const { return failures.empty(); }
};

// Rechecks every certificate invariant from scratch: the decomposition, the
// witness contraction, tw(H) = width, and that contracting any edge of H
// drops its treewidth.
inline CertificateReport verify_certificate(const Graph& g, const Certificate& c) {
  CertificateReport rep;
  auto fail = [&](const std::string& what, const std::string& detail) { rep.failures.push_back(what + ": " + detail); };

  if (c.decomposition.bags.empty()) {
    fail("decomposition", "no bags");
  } else if (ValidationReport v = validate(g, c.decomposition); !v) {
    fail("decomposition", v.violation);
  } else if (width(c.decomposition) != c.width) {
    fail("width", "decomposition has width " + std::to_string(width(c.decomposition)) + ", certificate claims " +
                      std::to_string(c.width));
  }

  if (c.witness.source_size() != g.num_vertices()) {
    fail("witness", "contractor is not over the graph");
  } else if (!(contract(g, c.witness) == c.obstruction)) {
    fail("witness", "contracting the graph does not give the obstruction");
  }

  const Graph& h = c.obstruction;
  if (!treewidth_at_most(h, c.width)) {
    fail("obstruction", "treewidth exceeds " + std::to_string(c.width));
  } else if (treewidth_at_most(h, c.width - 1)) {
    fail("obstruction", "treewidth is below " + std::to_string(c.width));
  } else {
    for (const Edge& e : h.edges()) {
      if (!treewidth_at_most(contract_edge(h, e).first, c.width - 1)) {
        fail("minimality", "contracting {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                               "} keeps treewidth " + std::to_string(c.width));
        break;
      }
    }
  }
  return rep;
}

}  // namespace rtw
