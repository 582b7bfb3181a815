#include <gtest/gtest.h>

#include <random>

#include "rtw/io.hpp"
#include "support/graph_gen.hpp"

using namespace rtw;
using namespace rtw::testing;

namespace {

VertexSet vs(std::size_t n, std::initializer_list<Vertex> xs) { return VertexSet(n, xs); }

std::size_t error_line(const std::string& text) {
  try {
    parse_gr(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  ADD_FAILURE() << "no ParseError for:\n" << text;
  return 0;
}

TEST(ParseGr, Examples) {
  EXPECT_EQ(parse_gr("p tw 3 2\n1 2\n2 3"), path_graph(3));
  EXPECT_EQ(parse_gr("c x\np tw 4 4\n1 2\n2 3\n3 4\n1 4"), cycle_graph(4));
  EXPECT_EQ(parse_gr("p tw 3 0\n"), Graph(3));
  EXPECT_EQ(parse_gr("p tw 2 1\r\n\n1 2\r\n"), complete_graph(2));

  EXPECT_EQ(error_line("p tw 2 2\n1 2\n1 2"), 3u);
  EXPECT_EQ(error_line("p tw 2 1\n1 1"), 2u);
  EXPECT_EQ(error_line("p tw 2 1\n1 3"), 2u);
  EXPECT_EQ(error_line("p tw 2 1\n0 1"), 2u);
  EXPECT_EQ(error_line("p tw 3 3\n1 2\n2 3"), 1u);
  EXPECT_EQ(error_line("p td 3 0"), 1u);
  EXPECT_EQ(error_line("p tw 3"), 1u);
  EXPECT_EQ(error_line("c only\n1 2"), 2u);
  EXPECT_EQ(error_line("p tw 3 1\n1 x"), 2u);
  EXPECT_EQ(error_line("p tw 3 1\n1 2 3"), 2u);
  EXPECT_EQ(error_line(""), 0u);
}

TEST(ParseGr, CommentsSurviveRoundTrip) {
  std::istringstream in("c first\np tw 2 1\nc second\n1 2\n");
  GrDocument doc = parse_gr_document(in);
  EXPECT_EQ(doc.comments, (std::vector<std::string>{"first", "second"}));
  EXPECT_EQ(emit_gr(doc.graph, doc.comments), "c first\nc second\np tw 2 1\n1 2\n");
}

TEST(EmitTd, Examples) {
  Graph c4 = cycle_graph(4);
  TreeDecomposition t{{vs(4, {0, 1, 2}), vs(4, {0, 2, 3})}, {{0, 1}}};
  EXPECT_EQ(emit_td(c4, t), "s td 2 3 4\nb 1 1 2 3\nb 2 1 3 4\n1 2\n");

  Graph k1(1);
  EXPECT_EQ(emit_td(k1, TreeDecomposition{{vs(1, {0})}, {}}), "s td 1 1 1\nb 1 1\n");

  TreeDecomposition broken{{vs(4, {0, 1, 2})}, {}};
  EXPECT_THROW(emit_td(c4, broken), InputError);
}

TEST(ParseTd, Examples) {
  TreeDecomposition t = parse_td("c hi\ns td 2 3 4\nb 1 1 2 3\nb 2 1 3 4\n1 2\n");
  ASSERT_EQ(t.bags.size(), 2u);
  EXPECT_EQ(t.bags[1], vs(4, {0, 2, 3}));
  EXPECT_EQ(t.edges, (std::vector<std::pair<int, int>>{{0, 1}}));

  // Empty bags are legal in the format.
  EXPECT_EQ(parse_td("s td 2 1 1\nb 1 1\nb 2\n1 2\n").bags[1].size(), 0u);

  EXPECT_THROW(parse_td("s td 2 3 4\nb 1 1 2 3\n"), ParseError);          // bag 2 missing
  EXPECT_THROW(parse_td("s td 1 2 4\nb 1 1 2 3\n"), ParseError);          // wrong max bag size
  EXPECT_THROW(parse_td("s td 1 3 4\nb 1 1 2 5\n"), ParseError);          // vertex out of range
  EXPECT_THROW(parse_td("s td 1 2 4\nb 1 1 1\n"), ParseError);            // repeated vertex
  EXPECT_THROW(parse_td("s td 1 1 4\nb 1 1\nb 1 2\n"), ParseError);       // bag listed twice
  EXPECT_THROW(parse_td("s td 2 1 4\nb 1 1\nb 2 2\n1 3\n"), ParseError);  // edge to unknown bag
  EXPECT_THROW(parse_td("b 1 1\n"), ParseError);
}

TEST(IoProperties, GraphRoundTrip) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 1 + trial % 15;
    Graph g = random_connected(n, n - 1 + static_cast<int>(rng() % (n + 1)), rng);
    EXPECT_EQ(parse_gr(emit_gr(g)), g);
  }
}

TEST(IoProperties, DecompositionRoundTrip) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 1 + trial % 15;
    Graph g = random_connected(n, n - 1 + static_cast<int>(rng() % (2 * n)), rng);
    TreeDecomposition t = greedy_td(g);
    std::string text = emit_td(g, t);
    TreeDecomposition back = parse_td(text);
    EXPECT_EQ(back.bags, t.bags);
    EXPECT_EQ(back.edges, t.edges);
    EXPECT_EQ(emit_td(g, back), text);
  }
}

TEST(Certificate, RoundTripAndTampering) {
  Graph c5 = cycle_graph(5);
  Certificate c = compute_treewidth(c5);
  std::string text = emit_certificate(c5, c);
  EXPECT_EQ(text.rfind("c rtw certificate v1\ns width 2\ns td ", 0), 0u);
  EXPECT_NE(text.find("s obstruction 3 3\n"), std::string::npos);

  Certificate back = parse_certificate(text, c5);
  EXPECT_EQ(back.width, 2);
  EXPECT_EQ(back.obstruction, c.obstruction);
  EXPECT_EQ(back.witness, c.witness);
  EXPECT_EQ(emit_certificate(c5, back), text);
  EXPECT_TRUE(verify_certificate(c5, back).ok());

  std::string wider = text;
  wider.replace(wider.find("s width 2"), 9, "s width 3");
  EXPECT_FALSE(verify_certificate(c5, parse_certificate(wider, c5)).ok());

  // A certificate for another graph is rejected at parse time.
  Graph p4 = path_graph(4);
  Certificate pc = compute_treewidth(p4);
  std::string ptext = emit_certificate(p4, pc);
  ASSERT_EQ(pc.obstruction.num_vertices(), 2u);
  EXPECT_THROW(parse_certificate(ptext, cycle_graph(5)), ParseError);

  std::string overlap = "s width 1\ns td 1 2 2\nb 1 1 2\ns obstruction 2 1\ne 1 2\nm 1 1 2\nm 2 2\n";
  EXPECT_THROW(parse_certificate(overlap, path_graph(2)), ContractorError);
  std::string gap = "s width 1\ns td 1 2 3\nb 1 1 2\ns obstruction 2 1\ne 1 2\nm 1 1\nm 2 3\n";
  EXPECT_THROW(parse_certificate(gap, path_graph(3)), ContractorError);
  std::string missing = "s width 1\ns td 1 2 2\nb 1 1 2\ns obstruction 2 1\ne 1 2\nm 1 1\n";
  EXPECT_THROW(parse_certificate(missing, path_graph(2)), ParseError);
}

TEST(CertificateProperties, RoundTripVerifies) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 2 + trial % 9;
    Graph g = random_connected(n, n - 1 + static_cast<int>(rng() % (2 * n)), rng);
    Certificate c = compute_treewidth(g);
    Certificate back = parse_certificate(emit_certificate(g, c), g);
    EXPECT_TRUE(verify_certificate(g, back).ok());
    EXPECT_EQ(back.width, c.width);
  }
}

}  // namespace
