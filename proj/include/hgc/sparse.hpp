#pragma once

#include <iosfwd>
#include <string>
#include <tuple>
#include <vector>

#include <stdexcept>

#include "hgc/graph.hpp"
#include "hgc/rational.hpp"

namespace hgc {

class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Entry {
  int row, col;
  Rational value;
  friend bool operator==(const Entry&, const Entry&) = default;
};

/// Exact sparse matrix; entries sorted by (row, col), no duplicates, no zeros.
class SparseMat {
 public:
  SparseMat() = default;
  SparseMat(int rows, int cols) : rows_(rows), cols_(cols) {}
  /// Duplicate coordinates are summed.
  SparseMat(int rows, int cols, std::vector<Entry> entries);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t nnz() const { return entries_.size(); }
  bool is_zero() const { return entries_.empty(); }

  SparseMat transpose() const;
  SparseMat operator*(const SparseMat& b) const;
  std::vector<Rational> apply(const std::vector<Rational>& x) const;
  /// Appends b as an extra column.
  SparseMat with_column(const std::vector<Rational>& b) const;

  friend bool operator==(const SparseMat&, const SparseMat&) = default;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Entry> entries_;
};

enum class RankMode { Exact, ModP };

/// Exact: fraction-free elimination over big integers after clearing column
/// denominators. ModP: elimination over F_p (a lower bound for the exact rank).
int rank(const SparseMat& a, RankMode mode = RankMode::Exact, unsigned prime = 0);
int rank_modp(const SparseMat& a, unsigned prime);
bool is_prime(unsigned p);

struct SolveResult {
  bool feasible = false;
  std::vector<Rational> x;  // a solution when feasible
  int rank_a = 0;           // certificate: infeasible iff rank_ab > rank_a
  int rank_ab = 0;
};

SolveResult solve(const SparseMat& a, const std::vector<Rational>& b);

/// dim ker(d_out) - rank(d_in); throws ConsistencyError if d_out * d_in != 0.
int homology_dim(const SparseMat& d_in, const SparseMat& d_out);

void write_sms(std::ostream& os, const SparseMat& a);
SparseMat read_sms(std::istream& is);

}  // namespace hgc
