#pragma once

#include <vector>

#include "hgc/graph_sum.hpp"

namespace hgc {

/// Plain-graph degree n(v-1) + (1-n)e.
int plain_degree(const Graph& g, int n);

/// Sum over all reconnections of the half-edges at `slot` to vertices of
/// `guest`. Plain graphs (directed or not) in the context ctx.
GraphSum insert(const Graph& host, int slot, const Graph& guest, const Context& ctx);

/// Pre-Lie product: sum over slots of host.
GraphSum pre_lie(const GraphSum& x, const GraphSum& y);

/// Graded commutator of the insertion pre-Lie product.
GraphSum gc_bracket(const GraphSum& x, const GraphSum& y);

/// Directed acyclic graph whose white vertices take inputs and whose black
/// vertices take the Maurer-Cartan element mu. Edge order is the orientation.
struct ActionGraph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;  // source -> target
  std::vector<bool> black;                 // empty means all white

  bool is_black(int v) const { return !black.empty() && black[v]; }
  int white_count() const;
  int out_degree(int v) const;
  bool acyclic() const;
};

enum class HairMatch {
  Exact,     // the out-degree of a white vertex must equal its input's hair count
  Embedded,  // leftover hairs of an input survive in the output
};

/// Contracts every edge (i -> j) of a with a hair of the input at i and a
/// vertex of the input at j; summed over all choices, hair reuse excluded.
/// inputs are listed for all vertices of a in index order.
GraphSum hairy_action(const ActionGraph& a, const std::vector<GraphSum>& inputs,
                      HairMatch match = HairMatch::Exact);

/// hairy_action with mu at every black vertex; `white_inputs` are taken by the
/// white vertices in index order.
GraphSum twist_substitute(const ActionGraph& a, const std::vector<GraphSum>& white_inputs);

}  // namespace hgc
