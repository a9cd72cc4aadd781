#pragma once

#include <string>
#include <string_view>

#include "hgc/graph_sum.hpp"
#include "hgc/operad.hpp"
#include "json.hpp"

namespace hgc {

struct ParsedGraph {
  Context ctx;
  Graph graph;
};

// Text form, one graph per line:
//   G m=1 n=3 v=2 h=[1] e=[0-1, 0-1, 0-1]
// `>` marks a directed edge; `LINE` in place of v/h/e is the line graph.
// Edge and hair lists keep their order, which is part of the orientation.
std::string graph_to_text(const Graph& g, const Context& ctx);
ParsedGraph parse_graph_text(std::string_view line);

nlohmann::json graph_to_json(const Graph& g, const Context& ctx);
ParsedGraph parse_graph_json(const nlohmann::json& j);

/// Accepts either form.
ParsedGraph parse_graph(std::string_view text);

// Action graphs: the graph text with a colour list, e.g.
//   G v=3 c=[w,w,b] e=[0>2, 1>2]
std::string action_to_text(const ActionGraph& a);
ActionGraph parse_action_text(std::string_view line);

// {"context": {"m":..,"n":..}, "terms": [{"graph": "<text>", "coeff": "p/q"}]}
// Terms are in canonical key order.
nlohmann::json sum_to_json(const GraphSum& x);
GraphSum sum_from_json(const nlohmann::json& j);

/// File contents: a GraphSum JSON object, a single graph JSON object, or text
/// lines of the form "[coeff] G ..." (blank lines and lines starting with #
/// are skipped). All graphs must share one context.
GraphSum parse_sum(std::string_view text);
GraphSum read_sum_file(const std::string& path);

}  // namespace hgc
