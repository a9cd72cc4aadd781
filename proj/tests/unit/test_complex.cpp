#include "doctest.h"
#include "hgc/complex.hpp"
#include "hgc/structures.hpp"
#include "oracles.hpp"

using namespace hgc;

namespace {

std::vector<ComplexContext> contexts() {
  std::vector<ComplexContext> out;
  for (Context c : {Context{0, 2}, Context{1, 2}, Context{1, 3}, Context{2, 3}})
    for (int pol : {1, 3}) out.push_back({c.m, c.n, pol});
  return out;
}

}  // namespace

TEST_CASE("delta squares to zero on small hairy slices") {
  for (const ComplexContext& cc : contexts()) {
    for (int v = 1; v <= 3; ++v)
      for (int e = v - 1; e <= v + 1; ++e)
        for (int h = 0; h <= 2; ++h) {
          const Basis b = enumerate_basis(cc.slice(v, e, h), cc.parity());
          for (const auto& c : b.graphs) {
            CAPTURE(cc.m);
            CAPTURE(cc.n);
            CAPTURE(cc.min_valence);
            CHECK(delta(delta(c.graph, cc), cc).empty());
          }
        }
  }
}

TEST_CASE("splitting agrees with the labeled brute force") {
  for (const ComplexContext& cc : contexts()) {
    const Rational sign = cc.n % 2 ? Rational(1) : Rational(-1);  // (-1)^(n+1)
    for (int v = 1; v <= 3; ++v)
      for (int h = 0; h <= 2; ++h) {
        const Basis b = enumerate_basis(cc.slice(v, v, h), cc.parity());
        for (const auto& c : b.graphs) {
          const GraphSum want = sign * oracle::brute_split(c.graph, cc.ctx(), cc.min_valence);
          CHECK(delta_split(c.graph, cc) == want);
        }
      }
  }
}

TEST_CASE("delta raises the degree by one") {
  const ComplexContext cc{1, 3, 1};
  const Basis b = enumerate_basis(cc.slice(2, 3, 1), cc.parity());
  REQUIRE(b.size() > 0);
  for (const auto& c : b.graphs) {
    const int d = degree(c.graph, cc);
    for (const auto& [k, q] : delta(c.graph, cc).sorted()) CHECK(degree(decode_key(k), cc) == d + 1);
  }
  CHECK(degree(Graph::line(), cc) == 2 * 1 + 1 - 3);
}

TEST_CASE("the line graph is a cycle") {
  for (const ComplexContext& cc : contexts()) CHECK(delta(Graph::line(), cc).empty());
}

TEST_CASE("differential matrices compose to zero") {
  const ComplexContext cc{1, 3, 1};
  const Basis a = enumerate_basis(cc.slice(2, 2, 1), cc.parity());
  const Basis b = enumerate_basis(cc.slice(3, 3, 1), cc.parity());
  const Basis c = enumerate_basis(cc.slice(4, 4, 1), cc.parity());
  const SparseMat d1 = differential_matrix(a, b, cc), d2 = differential_matrix(b, c, cc);
  CHECK(d1.rows() == b.size());
  CHECK(d1.cols() == a.size());
  CHECK((d2 * d1).is_zero());
  CHECK(homology_dim(d1, d2) >= 0);
}

TEST_CASE("matrix columns reproduce delta") {
  const ComplexContext cc{2, 3, 1};
  const Basis a = enumerate_basis(cc.slice(2, 3, 1), cc.parity());
  const Basis b = enumerate_basis(cc.slice(3, 4, 1), cc.parity());
  const SparseMat d = differential_matrix(a, b, cc);
  std::vector<GraphSum> cols(a.size(), GraphSum(cc.ctx()));
  for (const Entry& e : d.entries()) cols[e.col].add_key(b.graphs[e.row].key, e.value);
  for (int j = 0; j < a.size(); ++j) CHECK(cols[j] == delta(a.graphs[j].graph, cc));
}

TEST_CASE("missing target rows are reported") {
  const ComplexContext cc{1, 3, 1};
  const Basis a = enumerate_basis(cc.slice(2, 3, 1), cc.parity());
  const Basis wrong = enumerate_basis(cc.slice(3, 4, 0), cc.parity());
  bool any = false;
  for (const auto& c : a.graphs) any = any || !delta(c.graph, cc).empty();
  if (any) CHECK_THROWS_AS(differential_matrix(a, wrong, cc), CompletenessError);
}

TEST_CASE("a coboundary is recovered") {
  const ComplexContext cc{1, 3, 1};
  const Basis a = enumerate_basis(cc.slice(2, 3, 1), cc.parity());
  REQUIRE(a.size() > 0);
  GraphSum z(cc.ctx());
  for (int i = 0; i < a.size(); ++i) z.add(a.graphs[i].graph, Rational(i + 1));
  const GraphSum dz = delta(z, cc);
  const Coboundary cb = solve_coboundary(a, dz, cc);
  CHECK(cb.feasible);
  CHECK(delta(cb.primitive, cc) == dz);
  // the theta graph with a hair is not exact over this slice
  Graph t = graphs::theta();
  t.hairs = {0};
  const Coboundary no = solve_coboundary(enumerate_basis(cc.slice(1, 2, 1), cc.parity()),
                                         GraphSum(cc.ctx(), t), cc);
  CHECK_FALSE(no.feasible);
}

TEST_CASE("the mu term of delta is the bracket with mu") {
  const ComplexContext cc{1, 3, 1};
  const Basis a = enumerate_basis(cc.slice(2, 2, 1), cc.parity());
  const GraphSum mu(cc.ctx(), graphs::mu());
  for (const auto& c : a.graphs) {
    const GraphSum x(cc.ctx(), c.graph);
    const GraphSum h = delta_hair(c.graph, cc);
    const GraphSum br = restrict_to(std_bracket(mu, x), cc);
    CHECK((h == br || h == Rational(-1) * br));
  }
}

TEST_CASE("the mu term vanishes once valence is at least three") {
  for (auto [m, n] : {std::pair{1, 3}, std::pair{2, 3}, std::pair{1, 2}}) {
    const ComplexContext cc{m, n, 3};
    const GraphSum mu(cc.ctx(), graphs::mu());
    for (int h = 1; h <= 3; ++h)
      for (const auto& c : enumerate_basis(cc.slice(4, 6, h), cc.parity()).graphs) {
        CHECK(delta_hair(c.graph, cc).empty());
        CHECK(restrict_to(std_bracket(mu, GraphSum(cc.ctx(), c.graph)), cc).empty());
      }
  }
}

TEST_CASE("split terms of admitted graphs stay in the complex") {
  for (auto [m, n] : {std::pair{0, 2}, std::pair{1, 3}, std::pair{2, 3}})
    for (int mv : {1, 3}) {
      const ComplexContext cc{m, n, mv};
      for (int v = 1; v <= 4; ++v)
        for (int h = 0; h <= 2; ++h)
          for (const auto& c : enumerate_basis(cc.slice(v, v + 1, h), cc.parity()).graphs) {
            const GraphSum d = delta_split(c.graph, cc);
            CHECK(restrict_to(d, cc) == d);
          }
    }
}

TEST_CASE("the mu term agrees with the bracket with mu exactly") {
  for (auto [m, n] : {std::pair{0, 2}, std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 3}})
    for (int mv : {1, 2}) {
      const ComplexContext cc{m, n, mv};
      const GraphSum mu(cc.ctx(), graphs::mu());
      CHECK(delta_hair(Graph::line(), cc) == restrict_to(std_bracket(mu, GraphSum(cc.ctx(), Graph::line())), cc));
      for (int v = 1; v <= 4; ++v)
        for (int e = v - 1; e <= v + 1; ++e)
          for (int h = 0; h <= 3; ++h)
            for (const auto& c : enumerate_basis(cc.slice(v, e, h), cc.parity()).graphs) {
              const GraphSum br = restrict_to(std_bracket(mu, GraphSum(cc.ctx(), c.graph)), cc);
              CHECK(delta_hair(c.graph, cc) == br);
            }
    }
}
