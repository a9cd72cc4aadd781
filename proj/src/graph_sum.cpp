#include "hgc/graph_sum.hpp"

#include <algorithm>

namespace hgc {

void GraphSum::add(const Graph& g, const Rational& c) {
  if (c == 0) return;
  thread_local GraphKey key;
  const int sign = canonical_key(g, parity_, key);
  if (sign == 0) return;
  if (sign > 0) {
    add_key(key, c);
    return;
  }
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (inserted) {
    mpq_neg(it->second.get_mpq_t(), it->second.get_mpq_t());
  } else {
    it->second -= c;
    if (it->second == 0) terms_.erase(it);
  }
}

void GraphSum::add_key(const GraphKey& key, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void GraphSum::check_context(const GraphSum& other) const {
  if (!(ctx_ == other.ctx_)) throw UsageError("graph sums live in different complexes");
}

void GraphSum::add_scaled(const GraphSum& other, const Rational& c) {
  check_context(other);
  if (c == 0) return;
  for (const auto& [key, coeff] : other.terms_) add_key(key, coeff * c);
}

GraphSum& GraphSum::operator+=(const GraphSum& other) {
  add_scaled(other, 1);
  return *this;
}

GraphSum& GraphSum::operator-=(const GraphSum& other) {
  add_scaled(other, -1);
  return *this;
}

GraphSum& GraphSum::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, coeff] : terms_) coeff *= c;
  return *this;
}

Rational GraphSum::coefficient(const GraphKey& key) const {
  const auto it = terms_.find(key);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational GraphSum::coefficient(const Graph& g) const {
  const Canonical canon = canonicalize(g, parity_);
  if (canon.sign == 0) return 0;
  const Rational c = coefficient(canon.key);
  return canon.sign > 0 ? c : Rational(-c);
}

std::vector<std::pair<GraphKey, Rational>> GraphSum::sorted() const {
  std::vector<std::pair<GraphKey, Rational>> out(terms_.begin(), terms_.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

GraphSum GraphSum::filtered(const std::function<bool(const Graph&)>& keep) const {
  GraphSum out(ctx_);
  for (const auto& [key, coeff] : terms_)
    if (keep(decode_key(key))) out.terms_.emplace(key, coeff);
  return out;
}

bool operator==(const GraphSum& a, const GraphSum& b) {
  return a.ctx_ == b.ctx_ && a.terms_ == b.terms_;
}

GraphSum operator+(GraphSum a, const GraphSum& b) { return a += b; }
GraphSum operator-(GraphSum a, const GraphSum& b) { return a -= b; }
GraphSum operator*(const Rational& c, GraphSum a) { return a *= c; }

GraphSum gsum_combine(const GraphSum& a, const GraphSum& b, const Rational& scalar) {
  GraphSum out = a;
  out.add_scaled(b, scalar);
  return out;
}

}  // namespace hgc
