#include <random>
#include <sstream>

#include "doctest.h"
#include "hgc/graph.hpp"
#include "hgc/sparse.hpp"

using namespace hgc;

namespace {

// Dense Gaussian elimination over Q, the slow way.
int dense_rank(std::vector<std::vector<Rational>> a) {
  int r = 0;
  const int rows = static_cast<int>(a.size());
  const int cols = rows ? static_cast<int>(a[0].size()) : 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (a[i][c] != 0) p = i;
    if (p < 0) continue;
    std::swap(a[p], a[r]);
    for (int i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational f = a[i][c] / a[r][c];
      for (int j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

SparseMat random_mat(std::mt19937& rng, int rows, int cols, int density_pct) {
  std::vector<Entry> es;
  std::uniform_int_distribution<int> pct(0, 99), val(-3, 3), den(1, 4);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (pct(rng) < density_pct) es.push_back({i, j, Rational(val(rng), den(rng))});
  return SparseMat(rows, cols, es);
}

std::vector<std::vector<Rational>> dense(const SparseMat& a) {
  std::vector<std::vector<Rational>> d(a.rows(), std::vector<Rational>(a.cols()));
  for (const Entry& e : a.entries()) d[e.row][e.col] = e.value;
  return d;
}

}  // namespace

TEST_CASE("exact rank matches dense elimination") {
  std::mt19937 rng(7);
  for (int t = 0; t < 60; ++t) {
    const SparseMat a = random_mat(rng, 1 + t % 9, 1 + (t * 5) % 11, 15 + t % 50);
    CHECK(rank(a) == dense_rank(dense(a)));
  }
}

TEST_CASE("mod p rank never exceeds the exact rank") {
  std::mt19937 rng(11);
  for (int t = 0; t < 40; ++t) {
    const SparseMat a = random_mat(rng, 8, 8, 40);
    CHECK(rank_modp(a, 101) <= rank(a));
    CHECK(rank(a, RankMode::ModP, 10007) <= rank(a));
  }
  // 101 kills this determinant
  const SparseMat b(2, 2, {{0, 0, 101}, {1, 1, 1}});
  CHECK(rank(b) == 2);
  CHECK(rank_modp(b, 101) == 1);
}

TEST_CASE("mod p rank needs a prime") {
  CHECK(is_prime(10007));
  CHECK_FALSE(is_prime(10005));
  CHECK_THROWS(rank_modp(SparseMat(1, 1, {{0, 0, 1}}), 100));
}

TEST_CASE("solve returns a solution or a rank certificate") {
  std::mt19937 rng(3);
  for (int t = 0; t < 40; ++t) {
    const SparseMat a = random_mat(rng, 7, 5, 35);
    std::vector<Rational> x(5);
    for (auto& v : x) v = Rational(static_cast<int>(rng() % 7) - 3);
    const auto b = a.apply(x);
    const SolveResult s = solve(a, b);
    REQUIRE(s.feasible);
    CHECK(a.apply(s.x) == b);
    CHECK(s.rank_a == s.rank_ab);
  }
  const SparseMat z(2, 1, {{0, 0, 1}});
  const SolveResult s = solve(z, {Rational(0), Rational(1)});
  CHECK_FALSE(s.feasible);
  CHECK(s.rank_ab == s.rank_a + 1);
}

TEST_CASE("homology of a short exact piece") {
  // d_in: Q -> Q^2 (1,1); d_out: Q^2 -> Q (1,-1)
  const SparseMat d_in(2, 1, {{0, 0, 1}, {1, 0, 1}});
  const SparseMat d_out(1, 2, {{0, 0, 1}, {0, 1, -1}});
  CHECK(homology_dim(d_in, d_out) == 0);
  CHECK(homology_dim(SparseMat(2, 0), d_out) == 1);
  const SparseMat bad(1, 2, {{0, 0, 1}, {0, 1, 1}});
  CHECK_THROWS_AS(homology_dim(d_in, bad), ConsistencyError);
}

TEST_CASE("products and transposes") {
  std::mt19937 rng(5);
  const SparseMat a = random_mat(rng, 4, 6, 50), b = random_mat(rng, 6, 3, 50);
  const SparseMat ab = a * b;
  const auto da = dense(a), db = dense(b), dab = dense(ab);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 3; ++j) {
      Rational s = 0;
      for (int k = 0; k < 6; ++k) s += da[i][k] * db[k][j];
      CHECK(dab[i][j] == s);
    }
  CHECK(a.transpose().transpose() == a);
  CHECK(SparseMat(2, 2, {{0, 0, 1}, {0, 0, -1}}).is_zero());
}

TEST_CASE("SMS round trip") {
  std::mt19937 rng(9);
  const SparseMat a = random_mat(rng, 6, 7, 30);
  std::stringstream ss;
  write_sms(ss, a);
  CHECK(read_sms(ss) == a);
  std::stringstream bad("3 3 Q\n1 1 x\n");
  CHECK_THROWS(read_sms(bad));
}
