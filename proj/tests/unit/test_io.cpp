#include "doctest.h"
#include "hgc/io.hpp"

using namespace hgc;

TEST_CASE("graph text round trip") {
  const Context ctx{1, 3};
  Graph g = graphs::hedgehog2();
  const std::string t = graph_to_text(g, ctx);
  const ParsedGraph p = parse_graph_text(t);
  CHECK(p.ctx == ctx);
  CHECK(p.graph == g);
  CHECK(parse_graph_text(graph_to_text(Graph::line(), ctx)).graph.is_line);
  Graph d = graphs::edge_directed();
  CHECK(parse_graph(graph_to_text(d, Context{0, 2})).graph == d);
}

TEST_CASE("graph json round trip") {
  const Context ctx{2, 3};
  const Graph g = graphs::cycle_with_hair(4);
  const ParsedGraph p = parse_graph_json(graph_to_json(g, ctx));
  CHECK(p.ctx == ctx);
  CHECK(p.graph == g);
  CHECK(parse_graph(graph_to_json(g, ctx).dump()).graph == g);
}

TEST_CASE("malformed graphs are usage errors") {
  CHECK_THROWS_AS(parse_graph_text("G m=1 n=3 v=2 e=[0-5]"), UsageError);
  CHECK_THROWS_AS(parse_graph_text("H m=1"), UsageError);
  CHECK_THROWS_AS(parse_graph("{\"m\": 1}"), UsageError);
  CHECK_THROWS_AS(parse_rational("1/0"), UsageError);
}

TEST_CASE("sum json round trip") {
  const Context ctx{1, 3};
  GraphSum x(ctx);
  x.add(graphs::hedgehog2(), Rational(3, 2));
  x.add(Graph::line(), -1);
  x.add(graphs::cycle_with_hair(3), Rational(-7, 5));
  CHECK(sum_from_json(sum_to_json(x)) == x);
  CHECK(parse_sum(sum_to_json(x).dump()) == x);
}

TEST_CASE("sum text lines") {
  const GraphSum x = parse_sum("# comment\n2 G m=1 n=3 LINE\n\n-1/3 G m=1 n=3 v=1 h=[0] e=[]\n");
  CHECK(x.size() == 2);
  CHECK(x.coefficient(Graph::line()) == 2);
  CHECK(x.coefficient(graphs::mu()) == Rational(-1, 3));
  CHECK_THROWS_AS(parse_sum("1 G m=1 n=3 LINE\n1 G m=2 n=3 LINE\n"), UsageError);
  CHECK_THROWS_AS(read_sum_file("/nonexistent/file"), UsageError);
}

TEST_CASE("action graph text") {
  ActionGraph a;
  a.vertex_count = 3;
  a.edges = {{0, 2}, {1, 2}};
  a.black = {false, false, true};
  const ActionGraph b = parse_action_text(action_to_text(a));
  CHECK(b.vertex_count == 3);
  CHECK(b.edges == a.edges);
  CHECK(b.black == a.black);
}
