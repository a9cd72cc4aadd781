#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hgc/complex.hpp"
#include "json.hpp"

namespace hgc {

struct CheckResult {
  std::string name;
  bool pass = true;
  std::string detail;    // witness on failure, summary otherwise
  nlohmann::json stats;  // counts; never timings
};

/// delta(delta(g)) = 0 for every basis graph g of every connected slice with
/// v <= v_max, e <= e_max, h <= h_max (hairs only for the hairy variant).
CheckResult check_delta_squared(const std::vector<Context>& contexts, const std::vector<int>& policies,
                                int v_max, int e_max, int h_max, int jobs);

/// The first `size` nonzero graphs with at least one hair, by slice (v, e, h)
/// and canonical key, valence >= 1; the line graph comes first.
std::vector<Graph> bracket_pool(const Context& ctx, int size = 20);

/// Graded antisymmetry on all pairs, Jacobi on all triples and the chain map
/// identity delta[x,y] = [delta x, y] + (-1)^(|x|+m) [x, delta y] on all pairs.
CheckResult check_bracket_axioms(const Context& ctx, const std::vector<Graph>& pool, int jobs);

/// MC closure of the two-loop element, and of its extension when loops = 4.
CheckResult check_mc_closure(int loops, int jobs);

/// pbw_weight(n) = B_n / n! (B_1 = +1/2) for 0 <= n <= n_max.
CheckResult check_pbw(int n_max);

/// Exact rank equals the rank mod 101 or mod 10007 on differential matrices
/// of a fixed list of slices.
CheckResult check_rank_crosscheck(int jobs);

/// Random relabelings of pool graphs keep the canonical key and transport
/// the sign consistently.
CheckResult check_relabel_invariance(const Context& ctx, std::uint64_t seed, int trials);

struct VerifyOptions {
  int jobs = 1;
  std::uint64_t seed = 20240601;
};

/// Runs the quick invariant suite. Report fields are deterministic.
nlohmann::json run_verify(const VerifyOptions& opts, bool* all_pass);

nlohmann::json check_to_json(const CheckResult& r);

}  // namespace hgc
