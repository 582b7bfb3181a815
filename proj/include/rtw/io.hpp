#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <istream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rtw/decomposition.hpp"
#include "rtw/errors.hpp"
#include "rtw/graph.hpp"
#include "rtw/solver.hpp"

// PACE 2017 .gr and .td text, and the certificate document.  Files use
// 1-based vertex and bag ids; everything in memory is 0-based.

namespace rtw {

namespace detail {

struct TextLine {
  std::size_t number = 0;
  std::vector<std::string> tokens;
};

// Non-blank lines that are not comments, tokenized.
inline std::vector<TextLine> significant_lines(std::istream& in, std::vector<std::string>* comments = nullptr) {
  std::vector<TextLine> out;
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::istringstream ls(raw);
    TextLine line{number, {}};
    for (std::string tok; ls >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty() && line.tokens[0] == "c") {
      if (comments) {
        std::size_t at = raw.find('c') + 1;
        if (at < raw.size() && (raw[at] == ' ' || raw[at] == '\t')) ++at;
        comments->push_back(raw.substr(std::min(at, raw.size())));
      }
      continue;
    }
    if (line.tokens.empty()) continue;
    out.push_back(std::move(line));
  }
  return out;
}

inline long long parse_number(const std::string& tok, std::size_t line) {
  long long v = 0;
  auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || end != tok.data() + tok.size()) throw ParseError(line, "expected an integer, got '" + tok + "'");
  return v;
}

// A 1-based id in 1..limit, returned 0-based.
inline Vertex parse_id(const std::string& tok, std::size_t limit, std::size_t line, const char* what) {
  long long v = parse_number(tok, line);
  if (v < 1 || static_cast<unsigned long long>(v) > limit)
    throw ParseError(line, std::string(what) + " " + tok + " out of range 1.." + std::to_string(limit));
  return static_cast<Vertex>(v - 1);
}

inline std::size_t parse_count(const std::string& tok, std::size_t line) {
  long long v = parse_number(tok, line);
  if (v < 0) throw ParseError(line, "negative count " + tok);
  return static_cast<std::size_t>(v);
}

inline void expect_arity(const TextLine& l, std::size_t k, const char* what) {
  if (l.tokens.size() != k) throw ParseError(l.number, std::string("malformed ") + what);
}

inline void add_edge_checked(Graph& g, Vertex u, Vertex v, std::size_t line) {
  if (u == v) throw ParseError(line, "self-loop at vertex " + std::to_string(u + 1));
  if (!g.add_edge(u, v))
    throw ParseError(line, "duplicate edge " + std::to_string(u + 1) + " " + std::to_string(v + 1));
}

// Parses a td section starting at lines[pos]; stops at the first "s" line
// after the header.
inline TreeDecomposition parse_td_section(const std::vector<TextLine>& lines, std::size_t& pos,
                                          std::size_t* vertices = nullptr) {
  if (pos >= lines.size()) throw ParseError(0, "missing 's td' header");
  const TextLine& h = lines[pos];
  if (h.tokens[0] != "s" || h.tokens.size() < 2 || h.tokens[1] != "td")
    throw ParseError(h.number, "expected 's td <bags> <max bag size> <vertices>'");
  expect_arity(h, 5, "td header");
  const std::size_t nb = parse_count(h.tokens[2], h.number);
  const std::size_t wmax = parse_count(h.tokens[3], h.number);
  const std::size_t n = parse_count(h.tokens[4], h.number);
  ++pos;

  TreeDecomposition t;
  t.bags.assign(nb, VertexSet(n));
  std::vector<bool> seen(nb, false);
  for (; pos < lines.size() && lines[pos].tokens[0] != "s"; ++pos) {
    const TextLine& l = lines[pos];
    if (l.tokens[0] == "b") {
      if (l.tokens.size() < 2) throw ParseError(l.number, "malformed bag line");
      Vertex b = parse_id(l.tokens[1], nb, l.number, "bag");
      if (seen[b]) throw ParseError(l.number, "bag " + l.tokens[1] + " listed twice");
      seen[b] = true;
      for (std::size_t i = 2; i < l.tokens.size(); ++i) {
        Vertex v = parse_id(l.tokens[i], n, l.number, "vertex");
        if (t.bags[b].contains(v)) throw ParseError(l.number, "vertex " + l.tokens[i] + " repeated in bag");
        t.bags[b].insert(v);
      }
    } else {
      expect_arity(l, 2, "tree edge");
      Vertex a = parse_id(l.tokens[0], nb, l.number, "bag");
      Vertex b = parse_id(l.tokens[1], nb, l.number, "bag");
      t.edges.emplace_back(a, b);
    }
  }
  for (std::size_t b = 0; b < nb; ++b)
    if (!seen[b]) throw ParseError(h.number, "bag " + std::to_string(b + 1) + " is never listed");
  std::size_t actual = 0;
  for (const VertexSet& b : t.bags) actual = std::max(actual, b.size());
  if (nb > 0 && actual != wmax)
    throw ParseError(h.number, "header says max bag size " + std::to_string(wmax) + ", bags have " +
                                   std::to_string(actual));
  if (vertices) *vertices = n;
  return t;
}

inline void emit_td_section(std::ostream& os, std::size_t n, const TreeDecomposition& t) {
  std::size_t wmax = 0;
  for (const VertexSet& b : t.bags) wmax = std::max(wmax, b.size());
  os << "s td " << t.bags.size() << ' ' << wmax << ' ' << n << '\n';
  for (std::size_t i = 0; i < t.bags.size(); ++i) {
    os << "b " << i + 1;
    for (Vertex v : t.bags[i]) os << ' ' << v + 1;
    os << '\n';
  }
  for (auto [a, b] : t.edges) os << a + 1 << ' ' << b + 1 << '\n';
}

}  // namespace detail

struct GrDocument {
  Graph graph;
  std::vector<std::string> comments;  // text after "c ", in file order
};

inline GrDocument parse_gr_document(std::istream& in) {
  std::vector<std::string> comments;
  std::vector<detail::TextLine> lines = detail::significant_lines(in, &comments);
  if (lines.empty()) throw ParseError(0, "missing 'p tw' header");
  const detail::TextLine& h = lines[0];
  if (h.tokens[0] != "p" || h.tokens.size() < 2 || h.tokens[1] != "tw")
    throw ParseError(h.number, "expected 'p tw <vertices> <edges>'");
  detail::expect_arity(h, 4, "header");
  const std::size_t n = detail::parse_count(h.tokens[2], h.number);
  const std::size_t m = detail::parse_count(h.tokens[3], h.number);
  Graph g(n);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const detail::TextLine& l = lines[i];
    if (l.tokens[0] == "p") throw ParseError(l.number, "second header");
    detail::expect_arity(l, 2, "edge line");
    Vertex u = detail::parse_id(l.tokens[0], n, l.number, "vertex");
    Vertex v = detail::parse_id(l.tokens[1], n, l.number, "vertex");
    detail::add_edge_checked(g, u, v, l.number);
  }
  if (g.num_edges() != m)
    throw ParseError(h.number, "header announces " + std::to_string(m) + " edges, found " +
                                   std::to_string(g.num_edges()));
  return GrDocument{std::move(g), std::move(comments)};
}

inline Graph parse_gr(std::istream& in) { return parse_gr_document(in).graph; }

inline Graph parse_gr(const std::string& text) {
  std::istringstream in(text);
  return parse_gr(in);
}

inline std::string emit_gr(const Graph& g, const std::vector<std::string>& comments = {}) {
  std::ostringstream os;
  for (const std::string& c : comments) os << (c.empty() ? "c" : "c " + c) << '\n';
  os << "p tw " << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const Edge& e : g.edges()) os << e.u + 1 << ' ' << e.v + 1 << '\n';
  return os.str();
}

inline TreeDecomposition parse_td(std::istream& in) {
  std::vector<detail::TextLine> lines = detail::significant_lines(in);
  std::size_t pos = 0;
  TreeDecomposition t = detail::parse_td_section(lines, pos);
  if (pos < lines.size()) throw ParseError(lines[pos].number, "unexpected line after the decomposition");
  return t;
}

inline TreeDecomposition parse_td(const std::string& text) {
  std::istringstream in(text);
  return parse_td(in);
}

// Refuses decompositions that do not validate against g.
inline std::string emit_td(const Graph& g, const TreeDecomposition& t) {
  require_valid(g, t);
  std::ostringstream os;
  detail::emit_td_section(os, g.num_vertices(), t);
  return os.str();
}

inline std::string emit_certificate(const Graph& g, const Certificate& c) {
  require_valid(g, c.decomposition);
  if (c.witness.source_size() != g.num_vertices()) throw InputError("witness is not over the graph");
  const Graph& h = c.obstruction;
  if (c.witness.image_size() != h.num_vertices()) throw InputError("witness does not map onto the obstruction");
  std::ostringstream os;
  os << "c rtw certificate v1\n";
  os << "s width " << c.width << '\n';
  detail::emit_td_section(os, g.num_vertices(), c.decomposition);
  os << "s obstruction " << h.num_vertices() << ' ' << h.num_edges() << '\n';
  for (const Edge& e : h.edges()) os << "e " << e.u + 1 << ' ' << e.v + 1 << '\n';
  for (std::size_t w = 0; w < h.num_vertices(); ++w) {
    os << "m " << w + 1;
    for (Vertex v : c.witness.part(static_cast<Vertex>(w))) os << ' ' << v + 1;
    os << '\n';
  }
  return os.str();
}

// Syntax problems raise ParseError; a witness that is not a contractor of g
// raises ContractorError.
inline Certificate parse_certificate(std::istream& in, const Graph& g) {
  std::vector<detail::TextLine> lines = detail::significant_lines(in);
  std::size_t pos = 0;
  if (lines.empty()) throw ParseError(0, "empty certificate");
  const detail::TextLine& wl = lines[pos++];
  if (wl.tokens.size() != 3 || wl.tokens[0] != "s" || wl.tokens[1] != "width")
    throw ParseError(wl.number, "expected 's width <w>'");
  Certificate c;
  long long w = detail::parse_number(wl.tokens[2], wl.number);
  if (w < 0 || w > static_cast<long long>(g.num_vertices())) throw ParseError(wl.number, "width out of range");
  c.width = static_cast<int>(w);

  std::size_t n = 0;
  c.decomposition = detail::parse_td_section(lines, pos, &n);
  if (n != g.num_vertices())
    throw ParseError(lines[0].number, "certificate is for a graph on " + std::to_string(n) + " vertices");

  if (pos >= lines.size()) throw ParseError(0, "missing 's obstruction' section");
  const detail::TextLine& oh = lines[pos++];
  if (oh.tokens.size() != 4 || oh.tokens[0] != "s" || oh.tokens[1] != "obstruction")
    throw ParseError(oh.number, "expected 's obstruction <vertices> <edges>'");
  const std::size_t hn = detail::parse_count(oh.tokens[2], oh.number);
  const std::size_t hm = detail::parse_count(oh.tokens[3], oh.number);
  if (hn > g.num_vertices()) throw ParseError(oh.number, "obstruction larger than the graph");
  c.obstruction = Graph(hn);
  std::vector<VertexSet> parts(hn, VertexSet(g.num_vertices()));
  std::vector<bool> seen(hn, false);
  for (; pos < lines.size(); ++pos) {
    const detail::TextLine& l = lines[pos];
    if (l.tokens[0] == "e") {
      detail::expect_arity(l, 3, "obstruction edge");
      Vertex u = detail::parse_id(l.tokens[1], hn, l.number, "obstruction vertex");
      Vertex v = detail::parse_id(l.tokens[2], hn, l.number, "obstruction vertex");
      detail::add_edge_checked(c.obstruction, u, v, l.number);
    } else if (l.tokens[0] == "m") {
      if (l.tokens.size() < 3) throw ParseError(l.number, "empty preimage");
      Vertex h = detail::parse_id(l.tokens[1], hn, l.number, "obstruction vertex");
      if (seen[h]) throw ParseError(l.number, "preimage of " + l.tokens[1] + " listed twice");
      seen[h] = true;
      for (std::size_t i = 2; i < l.tokens.size(); ++i)
        parts[h].insert(detail::parse_id(l.tokens[i], g.num_vertices(), l.number, "vertex"));
    } else {
      throw ParseError(l.number, "unexpected line in obstruction section");
    }
  }
  if (c.obstruction.num_edges() != hm)
    throw ParseError(oh.number, "header announces " + std::to_string(hm) + " obstruction edges, found " +
                                    std::to_string(c.obstruction.num_edges()));
  for (std::size_t h = 0; h < hn; ++h)
    if (!seen[h]) throw ParseError(oh.number, "no preimage for obstruction vertex " + std::to_string(h + 1));
  c.witness = Contractor::from_parts(g, std::move(parts));
  return c;
}

inline Certificate parse_certificate(const std::string& text, const Graph& g) {
  std::istringstream in(text);
  return parse_certificate(in, g);
}

}  // namespace rtw
