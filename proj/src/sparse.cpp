#include "hgc/sparse.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace hgc {

SparseMat::SparseMat(int rows, int cols, std::vector<Entry> entries) : rows_(rows), cols_(cols) {
  for (const Entry& e : entries)
    if (e.row < 0 || e.row >= rows || e.col < 0 || e.col >= cols) throw UsageError("matrix index out of range");
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return std::tie(a.row, a.col) < std::tie(b.row, b.col); });
  for (Entry& e : entries) {
    e.value.canonicalize();  // callers may hand in unreduced fractions
    if (!entries_.empty() && entries_.back().row == e.row && entries_.back().col == e.col) {
      entries_.back().value += e.value;
      if (entries_.back().value == 0) entries_.pop_back();
    } else if (e.value != 0) {
      entries_.push_back(std::move(e));
    }
  }
}

SparseMat SparseMat::transpose() const {
  std::vector<Entry> t;
  t.reserve(entries_.size());
  for (const Entry& e : entries_) t.push_back({e.col, e.row, e.value});
  return SparseMat(cols_, rows_, std::move(t));
}

SparseMat SparseMat::operator*(const SparseMat& b) const {
  if (cols_ != b.rows_) throw UsageError("matrix product dimension mismatch");
  std::vector<std::vector<std::pair<int, const Rational*>>> brow(b.rows_);
  for (const Entry& e : b.entries_) brow[e.row].emplace_back(e.col, &e.value);
  std::vector<Entry> out;
  std::size_t i = 0;
  while (i < entries_.size()) {
    const int r = entries_[i].row;
    std::map<int, Rational> acc;
    for (; i < entries_.size() && entries_[i].row == r; ++i)
      for (auto [c, v] : brow[entries_[i].col]) acc[c] += entries_[i].value * *v;
    for (auto& [c, v] : acc)
      if (v != 0) out.push_back({r, c, v});
  }
  return SparseMat(rows_, b.cols_, std::move(out));
}

std::vector<Rational> SparseMat::apply(const std::vector<Rational>& x) const {
  if (static_cast<int>(x.size()) != cols_) throw UsageError("vector length mismatch");
  std::vector<Rational> y(rows_);
  for (const Entry& e : entries_) y[e.row] += e.value * x[e.col];
  return y;
}

SparseMat SparseMat::with_column(const std::vector<Rational>& b) const {
  if (static_cast<int>(b.size()) != rows_) throw UsageError("vector length mismatch");
  std::vector<Entry> es = entries_;
  for (int r = 0; r < rows_; ++r)
    if (b[r] != 0) es.push_back({r, cols_, b[r]});
  return SparseMat(rows_, cols_ + 1, std::move(es));
}

bool is_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

namespace {

using IntRow = std::vector<std::pair<int, BigInt>>;  // sorted by column

// Integer matrix with the same rank: every column scaled by the lcm of its
// denominators. Stored by rows.
std::vector<IntRow> integer_rows(const SparseMat& a) {
  std::vector<BigInt> lcm(a.cols(), 1);
  for (const Entry& e : a.entries()) mpz_lcm(lcm[e.col].get_mpz_t(), lcm[e.col].get_mpz_t(), e.value.get_den_mpz_t());
  std::vector<IntRow> rows(a.rows());
  for (const Entry& e : a.entries()) {
    BigInt v = e.value.get_num() * (lcm[e.col] / e.value.get_den());
    rows[e.row].emplace_back(e.col, std::move(v));
  }
  return rows;
}

// Sparse elimination with a Markowitz-style pivot order: repeatedly take the
// sparsest remaining column and, inside it, the sparsest row.
template <class Ops>
int eliminate(std::vector<typename Ops::Row> rows, int cols, Ops ops) {
  std::vector<char> row_done(rows.size(), 0);
  std::vector<std::vector<int>> col_rows(cols);
  auto rebuild = [&] {
    for (auto& c : col_rows) c.clear();
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (!row_done[r])
        for (const auto& [c, v] : rows[r]) col_rows[c].push_back(static_cast<int>(r));
  };
  rebuild();
  int rank = 0;
  std::vector<char> col_done(cols, 0);
  for (;;) {
    int best_col = -1;
    std::size_t best_count = 0;
    for (int c = 0; c < cols; ++c) {
      if (col_done[c] || col_rows[c].empty()) continue;
      if (best_col < 0 || col_rows[c].size() < best_count) {
        best_col = c;
        best_count = col_rows[c].size();
      }
    }
    if (best_col < 0) break;
    int piv = -1;
    for (int r : col_rows[best_col])
      if (piv < 0 || rows[r].size() < rows[piv].size()) piv = r;
    if (piv < 0) break;
    col_done[best_col] = 1;
    row_done[piv] = 1;
    ++rank;
    const auto& prow = rows[piv];
    for (int r : col_rows[best_col]) {
      if (r == piv) continue;
      rows[r] = ops.reduce(rows[r], prow, best_col);
    }
    rebuild();
  }
  return rank;
}

struct IntOps {
  using Row = IntRow;
  static const BigInt& at(const Row& row, int col) {
    for (const auto& [c, v] : row)
      if (c == col) return v;
    static const BigInt zero = 0;
    return zero;
  }
  Row reduce(const Row& r, const Row& p, int col) const {
    const BigInt a = at(r, col), b = at(p, col);
    // r <- b*r - a*p, then strip the content
    BigInt g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    const BigInt fa = b / g, fb = a / g;
    Row out;
    std::size_t i = 0, j = 0;
    while (i < r.size() || j < p.size()) {
      if (j == p.size() || (i < r.size() && r[i].first < p[j].first)) {
        out.emplace_back(r[i].first, fa * r[i].second);
        ++i;
      } else if (i == r.size() || p[j].first < r[i].first) {
        out.emplace_back(p[j].first, -fb * p[j].second);
        ++j;
      } else {
        BigInt v = fa * r[i].second - fb * p[j].second;
        if (v != 0) out.emplace_back(r[i].first, std::move(v));
        ++i;
        ++j;
      }
    }
    BigInt content = 0;
    for (const auto& [c, v] : out) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
    if (content > 1)
      for (auto& [c, v] : out) v /= content;
    return out;
  }
};

struct ModOps {
  using Row = std::vector<std::pair<int, unsigned long>>;
  unsigned long p;
  unsigned long inv(unsigned long a) const {
    unsigned long r = 1, e = p - 2, b = a % p;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  }
  Row reduce(const Row& r, const Row& q, int col) const {
    unsigned long a = 0, b = 0;
    for (const auto& [c, v] : r)
      if (c == col) a = v;
    for (const auto& [c, v] : q)
      if (c == col) b = v;
    const unsigned long f = a * inv(b) % p;
    Row out;
    std::size_t i = 0, j = 0;
    while (i < r.size() || j < q.size()) {
      if (j == q.size() || (i < r.size() && r[i].first < q[j].first)) {
        out.push_back(r[i++]);
      } else if (i == r.size() || q[j].first < r[i].first) {
        out.emplace_back(q[j].first, (p - f * q[j].second % p) % p);
        ++j;
      } else {
        const unsigned long v = (r[i].second + p - f * q[j].second % p) % p;
        if (v) out.emplace_back(r[i].first, v);
        ++i;
        ++j;
      }
    }
    return out;
  }
};

}  // namespace

int rank_modp(const SparseMat& a, unsigned prime) {
  if (!is_prime(prime) || prime > 65521) throw UsageError("modulus must be a prime below 2^16");
  std::vector<ModOps::Row> rows(a.rows());
  const auto ints = integer_rows(a);
  for (int r = 0; r < a.rows(); ++r)
    for (const auto& [c, v] : ints[r]) {
      BigInt m = v % prime;
      if (m < 0) m += prime;
      if (m != 0) rows[r].emplace_back(c, m.get_ui());
    }
  return eliminate(std::move(rows), a.cols(), ModOps{prime});
}

int rank(const SparseMat& a, RankMode mode, unsigned prime) {
  if (mode == RankMode::ModP) return rank_modp(a, prime);
  return eliminate(integer_rows(a), a.cols(), IntOps{});
}

SolveResult solve(const SparseMat& a, const std::vector<Rational>& b) {
  if (static_cast<int>(b.size()) != a.rows()) throw UsageError("right-hand side length mismatch");
  const int n = a.cols();
  // Dense-row Gauss-Jordan over Q on [a | b]; sizes here stay in the thousands.
  std::vector<std::map<int, Rational>> rows(a.rows());
  for (const Entry& e : a.entries()) rows[e.row][e.col] = e.value;
  for (int r = 0; r < a.rows(); ++r)
    if (b[r] != 0) {
      rows[r][n] = b[r];
      rows[r][n].canonicalize();
    }
  std::vector<int> pivot_col;
  std::vector<std::map<int, Rational>> pivots;
  SolveResult res;
  bool inconsistent = false;
  for (int r = 0; r < a.rows(); ++r) {
    auto row = std::move(rows[r]);
    for (std::size_t k = 0; k < pivots.size(); ++k) {
      auto it = row.find(pivot_col[k]);
      if (it == row.end()) continue;
      const Rational f = it->second;
      for (const auto& [c, v] : pivots[k]) {
        Rational& x = row[c];
        x -= f * v;
        if (x == 0) row.erase(c);
      }
    }
    if (row.empty()) continue;
    const int c0 = row.begin()->first;
    if (c0 == n) {
      inconsistent = true;  // a combination of rows reads 0 = c
      continue;
    }
    const Rational lead = row.begin()->second;
    for (auto& [c, v] : row) v /= lead;
    // keep pivots fully reduced against the new one
    for (auto& pk : pivots) {
      auto it = pk.find(c0);
      if (it == pk.end()) continue;
      const Rational f = it->second;
      for (const auto& [c, v] : row) {
        Rational& x = pk[c];
        x -= f * v;
        if (x == 0) pk.erase(c);
      }
    }
    pivot_col.push_back(c0);
    pivots.push_back(std::move(row));
  }
  res.rank_a = static_cast<int>(pivots.size());
  res.rank_ab = res.rank_a + (inconsistent ? 1 : 0);
  res.feasible = !inconsistent;
  if (res.feasible) {
    res.x.assign(n, 0);
    for (std::size_t k = 0; k < pivots.size(); ++k) {
      auto it = pivots[k].find(n);
      if (it != pivots[k].end()) res.x[pivot_col[k]] = it->second;
    }
  }
  return res;
}

int homology_dim(const SparseMat& d_in, const SparseMat& d_out) {
  if (d_in.rows() != d_out.cols()) throw UsageError("differentials do not compose");
  if (!(d_out * d_in).is_zero()) throw ConsistencyError("d_out * d_in is not zero");
  return d_out.cols() - rank(d_out) - rank(d_in);
}

void write_sms(std::ostream& os, const SparseMat& a) {
  os << a.rows() << ' ' << a.cols() << " M\n";
  for (const Entry& e : a.entries()) os << e.row + 1 << ' ' << e.col + 1 << ' ' << e.value.get_str() << '\n';
  os << "0 0 0\n";
}

SparseMat read_sms(std::istream& is) {
  int rows = 0, cols = 0;
  std::string tag;
  if (!(is >> rows >> cols >> tag) || rows < 0 || cols < 0) throw UsageError("bad SMS header");
  std::vector<Entry> es;
  for (;;) {
    int i = 0, j = 0;
    std::string v;
    if (!(is >> i >> j >> v)) throw UsageError("SMS data not terminated by 0 0 0");
    if (i == 0 && j == 0) break;
    es.push_back({i - 1, j - 1, parse_rational(v)});
  }
  return SparseMat(rows, cols, std::move(es));
}

}  // namespace hgc
