#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hgc/parity.hpp"

namespace hgc {

class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Edge {
  int s = 0;
  int t = 0;
  bool directed = false;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// A (possibly directed, possibly hairy) multigraph together with its
/// orientation datum: the order of the edge list, the order of the hair
/// list and the stored direction of every undirected edge. Vertex order is
/// the index order.
///
/// The line graph L has no vertices and two hair ends; it is represented by
/// is_line = true with empty edge and hair lists.
struct Graph {
  int vertex_count = 0;
  std::vector<Edge> edges;
  std::vector<int> hairs;  // anchor vertex of each hair
  bool is_line = false;

  int edge_count() const { return static_cast<int>(edges.size()); }
  int hair_count() const { return is_line ? 2 : static_cast<int>(hairs.size()); }
  /// First Betti number (number of components is taken into account).
  int loop_order() const;
  int component_count() const;
  bool connected() const { return component_count() <= 1; }
  bool has_directed_cycle() const;
  /// Edge ends plus hairs at v.
  int valence(int v) const;
  int in_degree(int v) const;
  int out_degree(int v) const;

  void validate() const;

  static Graph line() {
    Graph g;
    g.is_line = true;
    return g;
  }

  friend bool operator==(const Graph&, const Graph&) = default;
};

// Frequently used graphs.
namespace graphs {
Graph mu();                   // one vertex, one hair
Graph edge_undirected();      // two vertices, one undirected edge
Graph edge_directed();        // 0 -> 1
Graph theta();                // two vertices, three parallel undirected edges
Graph hedgehog2();            // H2: double edge, one hair at each vertex
Graph tripod();               // one vertex, three hairs
Graph cycle_with_hair(int k); // k-cycle, one hair at vertex 0
}  // namespace graphs

}  // namespace hgc
