#include "hgc/graph.hpp"

#include <numeric>
#include <string>

namespace hgc {

namespace {

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

int Graph::component_count() const {
  if (is_line) return 1;
  std::vector<int> parent(vertex_count);
  std::iota(parent.begin(), parent.end(), 0);
  int components = vertex_count;
  for (const Edge& e : edges) {
    const int a = find_root(parent, e.s);
    const int b = find_root(parent, e.t);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components;
}

int Graph::loop_order() const {
  if (is_line) return 0;
  return edge_count() - vertex_count + component_count();
}

bool Graph::has_directed_cycle() const {
  // Kahn's algorithm on the directed edges; undirected edges are ignored.
  std::vector<int> indeg(vertex_count, 0);
  std::vector<std::vector<int>> out(vertex_count);
  for (const Edge& e : edges) {
    if (!e.directed) continue;
    if (e.s == e.t) return true;
    out[e.s].push_back(e.t);
    ++indeg[e.t];
  }
  std::vector<int> stack;
  for (int v = 0; v < vertex_count; ++v)
    if (indeg[v] == 0) stack.push_back(v);
  int seen = 0;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    ++seen;
    for (int w : out[v])
      if (--indeg[w] == 0) stack.push_back(w);
  }
  return seen != vertex_count;
}

int Graph::valence(int v) const {
  int val = 0;
  for (const Edge& e : edges) val += (e.s == v) + (e.t == v);
  for (int h : hairs) val += (h == v);
  return val;
}

int Graph::in_degree(int v) const {
  int d = 0;
  for (const Edge& e : edges) d += (e.directed && e.t == v);
  return d;
}

int Graph::out_degree(int v) const {
  int d = 0;
  for (const Edge& e : edges) d += (e.directed && e.s == v);
  return d;
}

void Graph::validate() const {
  if (vertex_count < 0) throw StructuralError("negative vertex count");
  if (is_line) {
    if (vertex_count != 0 || !edges.empty() || !hairs.empty())
      throw StructuralError("line graph must have no vertices, edges or stored hairs");
    return;
  }
  for (const Edge& e : edges) {
    if (e.s < 0 || e.s >= vertex_count || e.t < 0 || e.t >= vertex_count)
      throw StructuralError("edge endpoint " + std::to_string(e.s) + "," + std::to_string(e.t) +
                            " out of range");
  }
  for (int h : hairs)
    if (h < 0 || h >= vertex_count)
      throw StructuralError("hair anchor " + std::to_string(h) + " out of range");
}

namespace graphs {

Graph mu() { return Graph{1, {}, {0}, false}; }

Graph edge_undirected() { return Graph{2, {{0, 1, false}}, {}, false}; }

Graph edge_directed() { return Graph{2, {{0, 1, true}}, {}, false}; }

Graph theta() { return Graph{2, {{0, 1, false}, {0, 1, false}, {0, 1, false}}, {}, false}; }

Graph hedgehog2() { return Graph{2, {{0, 1, false}, {0, 1, false}}, {0, 1}, false}; }

Graph tripod() { return Graph{1, {}, {0, 0, 0}, false}; }

Graph cycle_with_hair(int k) {
  Graph g;
  g.vertex_count = k;
  for (int i = 0; i < k; ++i) g.edges.push_back({i, (i + 1) % k, false});
  g.hairs = {0};
  return g;
}

}  // namespace graphs

}  // namespace hgc
