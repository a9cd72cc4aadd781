#pragma once

// Slow reference implementations used only to check the library.

#include <string>
#include <vector>

#include "hgc/graph.hpp"
#include "hgc/graph_sum.hpp"

namespace oracle {

/// Isomorphism-invariant string: minimum over all vertex permutations.
std::string brute_key(const hgc::Graph& g);

/// True if some automorphism (vertex map plus matching of edges and hairs)
/// reverses the orientation.
bool brute_vanishes(const hgc::Graph& g, const hgc::ParityProfile& p);

/// Canonical-form-free count of the isomorphism classes of nonzero graphs in
/// a slice, from all labeled graphs.
struct SliceSpec {
  int v, e, h;
  bool directed, acyclic, connected, two_in_or_out;
  int min_valence;
};
std::vector<hgc::Graph> brute_slice(const SliceSpec& s, const hgc::ParityProfile& p);

/// Splitting differential computed on labeled half-edge bipartitions and
/// summed with signs from explicit orientation words.
hgc::GraphSum brute_split(const hgc::Graph& g, const hgc::Context& ctx, int min_valence);

/// Free associative algebra on a, b restricted to words with one b: the
/// weight w_n such that the symmetrization of a^(k-n) ad_a^n(b) terms
/// reproduce a^k b.
std::vector<hgc::Rational> pbw_chain_weights(int max_n);

}  // namespace oracle
