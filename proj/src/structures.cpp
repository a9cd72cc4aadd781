#include "hgc/structures.hpp"

#include <functional>
#include <mutex>

#include "assembly.hpp"
#include "hgc/canonical.hpp"

namespace hgc {

namespace {

std::vector<std::pair<Graph, Rational>> expand(const GraphSum& x) {
  std::vector<std::pair<Graph, Rational>> out;
  for (const auto& [k, c] : x.sorted()) out.emplace_back(decode_key(k), c);
  return out;
}

ActionGraph single_edge(int s, int t) {
  ActionGraph a;
  a.vertex_count = 2;
  a.edges = {{s, t}};
  return a;
}

}  // namespace

GraphSum std_l2(const GraphSum& x, const GraphSum& y) {
  // Swapping the two labels of the generator costs (-1)^(m+1) in the vertex
  // part of its orientation.
  GraphSum out = hairy_action(single_edge(0, 1), {x, y}, HairMatch::Embedded);
  const GraphSum back = hairy_action(single_edge(1, 0), {x, y}, HairMatch::Embedded);
  out.add_scaled(back, x.context().m % 2 == 0 ? -1 : 1);
  return out;
}

GraphSum std_bracket(const GraphSum& x, const GraphSum& y) {
  const Context ctx = x.context();
  GraphSum out(ctx);
  const auto ys = expand(y);
  for (const auto& [g, c] : expand(x)) {
    const int sx = (hairy_degree(g, ctx.m, ctx.n) + ctx.m) % 2 != 0 ? -1 : 1;
    for (const auto& [h, d] : ys)
      out.add_scaled(std_l2(GraphSum(ctx, g), GraphSum(ctx, h)), sx * c * d);
  }
  return out;
}

Rational shoikhet_norm() { return Rational(-1, 8); }

ComplexContext oriented_complex() { return ComplexContext{0, 2, 1, Variant::PlainDirectedAcyclic}; }

GraphSum MCElement::total() const {
  GraphSum out(oriented_complex().ctx());
  for (const auto& [g, x] : terms_by_loop) out += x;
  return out;
}

bool MCElement::empty() const {
  for (const auto& [g, x] : terms_by_loop)
    if (!x.empty()) return false;
  return true;
}

std::vector<Graph> two_loop_graphs() {
  return {
      Graph{4, {{0, 1, true}, {2, 1, true}, {2, 0, true}, {3, 0, true}, {3, 1, true}}, {}, false},
      Graph{4, {{0, 1, true}, {1, 2, true}, {0, 2, true}, {3, 0, true}, {3, 1, true}}, {}, false},
      Graph{4, {{0, 1, true}, {1, 2, true}, {0, 2, true}, {0, 3, true}, {1, 3, true}}, {}, false},
  };
}

MCElement mc_element_2loop(const Rational& lambda) {
  MCElement mc;
  mc.scale = lambda;
  if (lambda == 0) return mc;
  const auto g = two_loop_graphs();
  // With the edge orders above the closed combination has a relative minus
  // sign on the middle graph.
  GraphSum x(oriented_complex().ctx());
  x.add(g[0], lambda);
  x.add(g[1], -2 * lambda);
  x.add(g[2], lambda);
  mc.terms_by_loop[2] = x;
  return mc;
}

std::map<int, GraphSum> mc_residuals(const MCElement& mc, int max_loop) {
  const ComplexContext cc = oriented_complex();
  std::map<int, GraphSum> out;
  for (int g = 2; g <= max_loop; ++g) {
    GraphSum r(cc.ctx());
    if (auto it = mc.terms_by_loop.find(g); it != mc.terms_by_loop.end()) r += delta(it->second, cc);
    for (const auto& [a, xa] : mc.terms_by_loop)
      for (const auto& [b, xb] : mc.terms_by_loop)
        if (a + b == g) r.add_scaled(gc_bracket(xa, xb), Rational(1, 2));
    out[g] = r;
  }
  return out;
}


MCElement mc_extend(const MCElement& mc, int target_loops, int jobs) {
  if (target_loops > 4) throw ResourceError("extension is supported up to four loops");
  MCElement out = mc;
  const ComplexContext cc = oriented_complex();
  for (int g = 3; g <= target_loops; ++g) {
    if (out.terms_by_loop.count(g)) continue;
    GraphSum rhs(cc.ctx());
    for (const auto& [a, xa] : out.terms_by_loop)
      for (const auto& [b, xb] : out.terms_by_loop)
        if (a + b == g) rhs.add_scaled(gc_bracket(xa, xb), Rational(-1, 2));
    if (rhs.empty()) continue;  // nothing forced at this order
    // degree one: v = g + 2 vertices, e = 2g + 1 edges
    ComplexContext shaped = cc;
    shaped.two_in_or_out = true;
    const Basis narrow = enumerate_basis(shaped.slice(g + 2, 2 * g + 1), cc.parity(), jobs);
    Coboundary z = solve_coboundary(narrow, rhs, cc, jobs);
    if (!z.feasible) {
      const Basis wide = enumerate_basis(cc.slice(g + 2, 2 * g + 1), cc.parity(), jobs);
      z = solve_coboundary(wide, rhs, cc, jobs);
      if (!z.feasible)
        throw ConsistencyError("Maurer-Cartan obstruction at loop order " + std::to_string(g) +
                               " is not exact");
    }
    out.terms_by_loop[g] = z.primitive;
  }
  return out;
}

namespace {

// Action graph with the chosen vertices first (in the given order) and the
// remaining ones black. Returns the sign of the vertex reordering.
int reorder_action(const Graph& g, const std::vector<int>& whites, int m, ActionGraph& a) {
  std::vector<int> order = whites;
  std::vector<char> taken(g.vertex_count, 0);
  for (int w : whites) taken[w] = 1;
  for (int v = 0; v < g.vertex_count; ++v)
    if (!taken[v]) order.push_back(v);
  std::vector<int> pos(g.vertex_count);
  for (int i = 0; i < g.vertex_count; ++i) pos[order[i]] = i;
  a = ActionGraph{};
  a.vertex_count = g.vertex_count;
  for (const Edge& e : g.edges) a.edges.emplace_back(pos[e.s], pos[e.t]);
  a.black.assign(g.vertex_count, true);
  for (std::size_t i = 0; i < whites.size(); ++i) a.black[i] = false;
  int inv = 0;
  for (int i = 0; i < g.vertex_count; ++i)
    for (int j = i + 1; j < g.vertex_count; ++j) inv += order[i] > order[j];
  return ((m + 1) % 2 != 0 && inv % 2 != 0) ? -1 : 1;
}

GraphSum mc_operation(const MCElement& mc, const std::vector<GraphSum>& inputs) {
  const Context ctx = inputs.at(0).context();
  GraphSum out(ctx);
  const int k = static_cast<int>(inputs.size());
  for (const auto& [loop, terms] : mc.terms_by_loop) {
    for (const auto& [key, c] : terms.sorted()) {
      const Graph g = decode_key(key);
      if (g.vertex_count < k) continue;
      const Rational w = c * shoikhet_norm();
      std::vector<int> pick;
      std::vector<char> used(g.vertex_count, 0);
      std::function<void()> rec = [&] {
        if (static_cast<int>(pick.size()) == k) {
          ActionGraph a;
          const int s = reorder_action(g, pick, ctx.m, a);
          for (int v = k; v < a.vertex_count; ++v)
            if (a.out_degree(v) > 1) return;
          out.add_scaled(twist_substitute(a, inputs), w * s);
          return;
        }
        for (int v = 0; v < g.vertex_count; ++v) {
          if (used[v]) continue;
          used[v] = 1;
          pick.push_back(v);
          rec();
          pick.pop_back();
          used[v] = 0;
        }
      };
      rec();
    }
  }
  return out;
}

}  // namespace

GraphSum shoikhet_correction(const GraphSum& x, const GraphSum& y, const MCElement& mc) {
  return mc_operation(mc, {x, y});
}

GraphSum shoikhet_bracket(const GraphSum& x, const GraphSum& y, const MCElement& mc) {
  const Context ctx = x.context();
  GraphSum out = std_bracket(x, y);
  for (const auto& [k, c] : x.sorted()) {
    const Graph g = decode_key(k);
    const int sx = (hairy_degree(g, ctx.m, ctx.n) + ctx.m) % 2 != 0 ? -1 : 1;
    out.add_scaled(shoikhet_correction(GraphSum(ctx, g), y, mc), sx * c);
  }
  return out;
}

GraphSum linfty_operation(const MCElement& mc, const std::vector<GraphSum>& inputs) {
  if (inputs.size() < 2) throw UsageError("operations need arity at least 2");
  return mc_operation(mc, inputs);
}

Rational bernoulli(int j, bool plus_half) {
  if (j < 0) throw UsageError("negative Bernoulli index");
  std::vector<Rational> b(j + 1);
  b[0] = 1;
  for (int m = 1; m <= j; ++m) {
    // sum_{k=0}^{m} C(m+1, k) B_k = 0
    Rational acc = 0;
    BigInt binom = 1;  // C(m+1, k)
    for (int k = 0; k < m; ++k) {
      acc += binom * b[k];
      binom = binom * (m + 1 - k) / (k + 1);
    }
    b[m] = -acc / (m + 1);
  }
  if (j == 1 && plus_half) return -b[1];
  return b[j];
}

Rational pbw_weight(int n) {
  if (n < 0) throw UsageError("negative chain length");
  static std::mutex mu;
  static std::map<int, Rational> memo;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = memo.find(n); it != memo.end()) return it->second;
  }
  // Elements with a single b are vectors indexed by the position of b.
  using Vec = std::vector<Rational>;
  auto ad_a = [](const Vec& x) {
    Vec y(x.size() + 1);
    for (std::size_t p = 0; p < x.size(); ++p) {
      y[p + 1] += x[p];
      y[p] -= x[p];
    }
    return y;
  };
  auto sym_with_a = [](const Vec& x, int r) {  // symmetrization of a^r and x
    Vec y(x.size() + r);
    for (std::size_t p = 0; p < x.size(); ++p)
      for (int s = 0; s <= r; ++s) y[p + s] += x[p] / (r + 1);
    return y;
  };
  const int k = n;
  std::vector<Entry> es;
  Vec ad{Rational(1)};
  for (int j = 0; j <= k; ++j) {
    const Vec col = sym_with_a(ad, k - j);
    for (int p = 0; p <= k; ++p)
      if (col[p] != 0) es.push_back({p, j, col[p]});
    ad = ad_a(ad);
  }
  std::vector<Rational> target(k + 1);
  target[k] = 1;  // a^k b
  const SolveResult res = solve(SparseMat(k + 1, k + 1, std::move(es)), target);
  if (!res.feasible) throw ConsistencyError("symmetrization system is singular");
  // a^k * b = sum_j coef_j Sym(a^(k-j) ad_a^j b) and the chain operator on
  // (a^k, b) is k!/(k-j)! a^(k-j) ad_a^j b.
  Rational fact = 1;
  for (int i = 2; i <= n; ++i) fact *= i;
  const Rational w = res.x[n] / fact;
  std::lock_guard<std::mutex> lock(mu);
  memo[n] = w;
  return w;
}

ActionGraph cup_chain_tree(int j) {
  if (j < 1) throw UsageError("chain length must be positive");
  ActionGraph a;
  a.vertex_count = j + 2;
  a.black.assign(j + 2, true);
  a.black[0] = a.black[1] = false;
  for (int i = 1; i <= j; ++i) a.edges.emplace_back(0, i + 1);
  a.edges.emplace_back(1, j + 1);
  for (int i = 2; i <= j; ++i) a.edges.emplace_back(i + 1, i);
  return a;
}

std::pair<Graph, int> disjoint_union(const Graph& x, const Graph& y, const ParityProfile& p) {
  if (x.is_line || y.is_line) throw UsageError("the line graph has no disjoint unions here");
  detail::Assembly as(p);
  as.append_graph(x);
  as.append_graph(y);
  Graph g;
  const int s = as.finish(g);
  return {g, s};
}

CupResult cup_one_hair(const GraphSum& x, const GraphSum& x1, int n_max) {
  const Context ctx = x.context();
  CupResult out{{}, GraphSum(ctx)};
  const auto ones = expand(x1);
  for (const auto& [h, d] : ones)
    if (h.hair_count() != 1) throw UsageError("second factor must have exactly one hair");
  for (const auto& [g, c] : expand(x)) {
    for (const auto& [h, d] : ones) {
      out.disjoint.push_back({g, h, c * d});
      const GraphSum xg(ctx, g), xh(ctx, h);
      for (int j = 1; j <= n_max && j <= g.hair_count(); ++j) {
        const Rational w = pbw_weight(j);
        if (w == 0) continue;
        out.chains.add_scaled(twist_substitute(cup_chain_tree(j), {xg, xh}), w * c * d);
      }
    }
  }
  return out;
}

}  // namespace hgc
