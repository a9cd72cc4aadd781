#pragma once

#include <functional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hgc/canonical.hpp"
#include "hgc/rational.hpp"

namespace hgc {

/// Finite Q-linear combination of canonical graphs. Zero coefficients are
/// never stored.
class GraphSum {
 public:
  GraphSum() = default;
  explicit GraphSum(Context ctx) : ctx_(ctx), parity_(ParityProfile::from(ctx)) {}
  GraphSum(Context ctx, const Graph& g, const Rational& c = 1) : GraphSum(ctx) { add(g, c); }

  const Context& context() const { return ctx_; }
  const ParityProfile& parity() const { return parity_; }

  /// Canonicalizes g and adds sign * c.
  void add(const Graph& g, const Rational& c);
  void add_key(const GraphKey& key, const Rational& c);
  void add_scaled(const GraphSum& other, const Rational& c);

  GraphSum& operator+=(const GraphSum& other);
  GraphSum& operator-=(const GraphSum& other);
  GraphSum& operator*=(const Rational& c);

  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Rational coefficient(const GraphKey& key) const;
  Rational coefficient(const Graph& g) const;

  /// Terms ordered by canonical key.
  std::vector<std::pair<GraphKey, Rational>> sorted() const;
  const std::unordered_map<GraphKey, Rational>& terms() const { return terms_; }

  GraphSum filtered(const std::function<bool(const Graph&)>& keep) const;

  friend bool operator==(const GraphSum& a, const GraphSum& b);

 private:
  void check_context(const GraphSum& other) const;

  Context ctx_;
  ParityProfile parity_ = ParityProfile::from(Context{});
  std::unordered_map<GraphKey, Rational> terms_;
};

GraphSum operator+(GraphSum a, const GraphSum& b);
GraphSum operator-(GraphSum a, const GraphSum& b);
GraphSum operator*(const Rational& c, GraphSum a);

/// a + scalar * b.
GraphSum gsum_combine(const GraphSum& a, const GraphSum& b, const Rational& scalar);

}  // namespace hgc
