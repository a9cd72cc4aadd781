#pragma once

#include <map>
#include <vector>

#include "hgc/complex.hpp"
#include "hgc/operad.hpp"

namespace hgc {

/// Degree of a hairy graph in HGC_{m,n}.
int hairy_degree(const Graph& g, int m, int n);

/// Symmetric form of the standard bracket: action of (0->1) + (1->0), with
/// leftover hairs surviving. Graded symmetric in the degrees shifted by m+1.
GraphSum std_l2(const GraphSum& x, const GraphSum& y);

/// Standard Lie bracket of degree -m: [x, y] = (-1)^(|x|+m) l2(x, y).
GraphSum std_bracket(const GraphSum& x, const GraphSum& y);

/// Loop-graded Maurer-Cartan element in the oriented graph complex (n = 2).
struct MCElement {
  std::map<int, GraphSum> terms_by_loop;
  Rational scale = 1;

  GraphSum total() const;
  bool empty() const;
};

/// The two-loop oriented graphs in the order of the (1, 2, 1) combination.
std::vector<Graph> two_loop_graphs();
MCElement mc_element_2loop(const Rational& lambda);

/// delta m^(g) + 1/2 sum_{a+b=g} [m^(a), m^(b)] for every g up to max_loop.
std::map<int, GraphSum> mc_residuals(const MCElement& mc, int max_loop);

/// Solves for the next loop orders up to target_loops (at most 4). Throws
/// ConsistencyError when the obstruction is not exact.
MCElement mc_extend(const MCElement& mc, int target_loops, int jobs = 1);

/// Sum over terms of mc and over ordered pairs of distinct vertices (i, j):
/// twist with i white (x), j white (y), other vertices black.
GraphSum shoikhet_correction(const GraphSum& x, const GraphSum& y, const MCElement& mc);
GraphSum shoikhet_bracket(const GraphSum& x, const GraphSum& y, const MCElement& mc);

/// k-ary operation from the Maurer-Cartan element: sum over ordered k-tuples
/// of distinct vertices taking the inputs, the rest black.
GraphSum linfty_operation(const MCElement& mc, const std::vector<GraphSum>& inputs);

/// Bernoulli numbers; plus_half selects the B1 = +1/2 convention.
Rational bernoulli(int j, bool plus_half = false);

/// Chain tree T_j of the one-hair cup product: whites 0 (x) and 1 (x1),
/// blacks w_1..w_j at 2..j+1; edges 0 -> every w_i, 1 -> w_j and
/// w_i -> w_(i-1). The hair of w_1 survives.
ActionGraph cup_chain_tree(int j);

/// x \cup x1 for x1 with one hair per term, truncated at chain length n_max.
/// The disjoint-union part is kept as pairs because the line graph cannot be
/// one component of a larger graph.
struct CupTerm {
  Graph left, right;
  Rational coeff;
};
struct CupResult {
  std::vector<CupTerm> disjoint;
  GraphSum chains;
};
CupResult cup_one_hair(const GraphSum& x, const GraphSum& x1, int n_max);

/// Disjoint union x \sqcup y as one oriented graph (x's word first).
std::pair<Graph, int> disjoint_union(const Graph& x, const Graph& y, const ParityProfile& p);

/// Weight of the chain shape of length n in the symmetrized star product,
/// computed by symmetrization in the free associative algebra on a, b.
/// Memoized.
Rational pbw_weight(int chain_length);

/// Degree-0 context of the oriented graph complex holding Maurer-Cartan
/// elements.
ComplexContext oriented_complex();

/// Normalization of the correction terms: each ordered vertex choice in a term
/// c_G G is weighted by c_G times this.
/// Chosen so that the corrected bracket of the line with itself is the theta
/// graph with one hair, coefficient +1.
Rational shoikhet_norm();

}  // namespace hgc
