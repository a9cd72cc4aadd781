#pragma once

#include "hgc/basis.hpp"
#include "hgc/graph_sum.hpp"
#include "hgc/sparse.hpp"

namespace hgc {

enum class Variant { Hairy, PlainUndirected, PlainDirectedAcyclic };

struct ComplexContext {
  int m = 1;
  int n = 3;
  int min_valence = 1;  // 1 or 3; counts edge ends and hairs
  Variant variant = Variant::Hairy;
  // Directed variant: restrict to graphs whose vertices all have two
  // incoming or two outgoing edges.
  bool two_in_or_out = false;

  Context ctx() const { return {m, n}; }
  ParityProfile parity() const { return ParityProfile::from(m, n); }
  /// Basis flags of this complex for a (v, e, h) slice.
  BasisParams slice(int v, int e, int h = 0) const;
  bool admits(const Graph& g) const;
};

/// Hair contribution to the hairy degree: deg = n(v-1) + (1-n)e + C h + D.
struct HairDegree {
  int C, D;
};
HairDegree hair_degree_constants(int m, int n);

int degree(const Graph& g, const ComplexContext& cc);

/// Vertex splitting; both new vertices must meet the valence policy. For
/// directed graphs the splits are ordered and each new vertex keeps at least
/// one old half-edge.
GraphSum delta_split(const Graph& g, const ComplexContext& cc);
GraphSum delta_split(const GraphSum& x, const ComplexContext& cc);

/// [mu, g] filtered by the valence policy. Hairy variant only.
GraphSum delta_hair(const Graph& g, const ComplexContext& cc);
GraphSum delta_hair(const GraphSum& x, const ComplexContext& cc);

GraphSum delta(const Graph& g, const ComplexContext& cc);
GraphSum delta(const GraphSum& x, const ComplexContext& cc);

/// Twisting by -sum_{2<=k<=k_max} 1/k! (k parallel edges from a white vertex to
/// a black one): k hairs are glued to a new vertex that keeps one hair.
GraphSum deformed_delta_even_m(const Graph& g, const ComplexContext& cc, int k_max);
GraphSum deformed_delta_even_m(const GraphSum& x, const ComplexContext& cc, int k_max);

/// Drops terms not admitted by cc.
GraphSum restrict_to(const GraphSum& x, const ComplexContext& cc);

enum class Piece { Split, Hair, Full, Deformed };

/// Column j = coordinates of the chosen differential of src[j] in dst.
/// Throws CompletenessError when a term is missing from dst.
SparseMat differential_matrix(const Basis& src, const Basis& dst, const ComplexContext& cc,
                              Piece which = Piece::Full, int jobs = 1, int k_max = 2);

struct Coboundary {
  bool feasible = false;
  int rank_a = 0;   // rank of the differential on src
  int rank_ab = 0;  // with rhs appended; infeasible iff larger
  GraphSum primitive;
};

/// Looks for z in the span of src with delta z = rhs. Rows are all graphs that
/// occur, so nothing is dropped.
Coboundary solve_coboundary(const Basis& src, const GraphSum& rhs, const ComplexContext& cc, int jobs = 1);

class CompletenessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hgc
