#pragma once

#include <vector>

#include "hgc/canonical.hpp"

namespace hgc {

struct BasisParams {
  int vertices = 0;
  int edges = 0;
  int hairs = 0;
  bool connected = true;
  int min_valence = 1;     // counts edge ends and hairs
  bool tadpoles = false;
  bool directed = false;   // all edges directed
  bool acyclic = false;
  // Every vertex has at least two incoming or at least two outgoing edges.
  bool two_in_or_out = false;
  // No 2-valent vertex with exactly one incoming and one outgoing edge.
  bool no_passing = false;
  // Directed: every vertex needs an outgoing edge or a hair.
  bool oriented_quotient = false;
};

struct Basis {
  BasisParams params;
  ParityProfile parity;
  std::vector<Canonical> graphs;  // sorted by key, all with sign +1

  int size() const { return static_cast<int>(graphs.size()); }
  /// Index of the graph with this key, or -1.
  int index_of(const GraphKey& key) const;
};

/// Largest vertex count accepted by enumerate_basis (10, or HGC_VERTEX_CAP).
int vertex_cap();

/// True if g satisfies every structural flag of params (slice sizes included).
bool matches(const Graph& g, const BasisParams& params);

/// All canonical graphs of the slice that are nonzero under p. jobs > 1 splits
/// the search; the result does not depend on it.
Basis enumerate_basis(const BasisParams& params, const ParityProfile& p, int jobs = 1);

}  // namespace hgc
