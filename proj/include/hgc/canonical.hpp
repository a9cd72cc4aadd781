#pragma once

#include <string>

#include "hgc/graph.hpp"
#include "hgc/parity.hpp"

namespace hgc {

/// Byte string that determines a graph up to isomorphism. Equal keys iff
/// isomorphic graphs (orientation ignored).
using GraphKey = std::string;

struct Canonical {
  Graph graph;   // canonical representative
  GraphKey key;
  int sign = 0;  // g = sign * graph in the oriented complex; 0 if g vanishes
};

/// Lexicographically least relabeling within the invariant-refined vertex
/// partition. sign is 0 iff g has an automorphism acting by -1 on the
/// orientation under p.
Canonical canonicalize(const Graph& g, const ParityProfile& p);

/// Same key and sign as canonicalize, without building the representative.
int canonical_key(const Graph& g, const ParityProfile& p, GraphKey& key);

/// Number of vertex permutations preserving all edge and hair multiplicities.
int vertex_automorphism_count(const Graph& g);

/// Rebuilds the canonical representative from its key.
Graph decode_key(const GraphKey& key);

/// Sign by which relabeling g with the vertex map old -> perm[old] (then
/// sorting edges/hairs into canonical order) changes the orientation.
/// Returns 0 when g has an odd local symmetry (parallel odd edges etc).
int relabel_sign(const Graph& g, const std::vector<int>& perm, const ParityProfile& p,
                 Graph* out = nullptr);

}  // namespace hgc
