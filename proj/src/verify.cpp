#include "hgc/verify.hpp"

#include <map>
#include <mutex>
#include <random>
#include <numeric>
#include <unordered_map>

#include "hgc/canonical.hpp"
#include "hgc/io.hpp"
#include "hgc/structures.hpp"
#include "parallel.hpp"

namespace hgc {

namespace {

std::string ctx_label(const Context& c) { return "(" + std::to_string(c.m) + "," + std::to_string(c.n) + ")"; }

std::string slice_label(int v, int e, int h) {
  return "(" + std::to_string(v) + "," + std::to_string(e) + "," + std::to_string(h) + ")";
}

int shifted(const Graph& g, const Context& c) { return hairy_degree(g, c.m, c.n) + c.m; }

}  // namespace

nlohmann::json check_to_json(const CheckResult& r) {
  return {{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}, {"stats", r.stats}};
}

CheckResult check_delta_squared(const std::vector<Context>& contexts, const std::vector<int>& policies,
                                int v_max, int e_max, int h_max, int jobs) {
  CheckResult res;
  res.name = "delta_squared";
  res.stats = nlohmann::json::object();
  using Image = std::vector<std::pair<GraphKey, Rational>>;
  using Level = std::map<std::pair<int, int>, std::unordered_map<GraphKey, Image>>;
  for (const Context& c : contexts) {
    for (int mv : policies) {
      ComplexContext cc{c.m, c.n, mv};
      long graphs = 0, slices = 0;
      // Walk v downwards: the images of slice (v,e,h) are basis elements of
      // (v+1,e+1,h), whose differentials were computed one level up.
      Level upper;
      for (int v = v_max; v >= 0; --v) {
        Level here;
        for (int e = v == 0 ? 0 : v - 1; e <= e_max; ++e) {
          for (int h = 0; h <= h_max; ++h) {
            if (v == 0 && (e != 0 || h != 2)) continue;
            const Basis b = enumerate_basis(cc.slice(v, e, h), cc.parity(), jobs);
            if (b.size() == 0) continue;
            ++slices;
            graphs += b.size();
            std::vector<Image> first(b.size());
            detail::parallel_for(b.size(), jobs, [&](int j) { first[j] = delta(b.graphs[j].graph, cc).sorted(); });
            const auto up = upper.find({e + 1, h});
            const std::unordered_map<GraphKey, Image>* known = up == upper.end() ? nullptr : &up->second;
            std::unordered_map<GraphKey, const Image*> cache;
            std::vector<GraphKey> missing;
            for (const Image& d : first)
              for (const auto& [k, x] : d) {
                if (cache.count(k)) continue;
                const Image* hit = nullptr;
                if (known) {
                  const auto it = known->find(k);
                  if (it != known->end()) hit = &it->second;
                }
                cache.emplace(k, hit);
                if (!hit) missing.push_back(k);
              }
            std::vector<Image> second(missing.size());
            detail::parallel_for(static_cast<int>(missing.size()), jobs,
                                 [&](int i) { second[i] = delta(decode_key(missing[i]), cc).sorted(); });
            for (std::size_t i = 0; i < missing.size(); ++i) cache[missing[i]] = &second[i];
            for (int j = 0; j < b.size(); ++j) {
              GraphSum dd(cc.ctx());
              for (const auto& [k, x] : first[j])
                for (const auto& [k2, y] : *cache.at(k)) dd.add_key(k2, x * y);
              if (!dd.empty() && res.pass) {
                res.pass = false;
                res.detail = "delta^2 != 0 in context " + ctx_label(c) + ", valence >= " + std::to_string(mv) +
                             ", slice " + slice_label(v, e, h) + ": " + graph_to_text(b.graphs[j].graph, c);
              }
            }
            if (v > 0) {
              auto& mine = here[{e, h}];
              mine.reserve(b.size());
              for (int j = 0; j < b.size(); ++j) mine.emplace(b.graphs[j].key, std::move(first[j]));
            }
          }
        }
        upper = std::move(here);
      }
      res.stats[ctx_label(c) + " valence>=" + std::to_string(mv)] = {{"slices", slices}, {"graphs", graphs}};
    }
  }
  if (res.pass) res.detail = "delta^2 = 0 on all slices";
  return res;
}

std::vector<Graph> bracket_pool(const Context& ctx, int size) {
  const ComplexContext cc{ctx.m, ctx.n, 1};
  std::vector<Graph> pool;
  const Canonical line = canonicalize(Graph::line(), cc.parity());
  if (line.sign != 0) pool.push_back(line.graph);
  for (int v = 1; v <= 4 && static_cast<int>(pool.size()) < size; ++v)
    for (int e = v - 1; e <= v + 1 && static_cast<int>(pool.size()) < size; ++e)
      for (int h = 1; h <= 3 && static_cast<int>(pool.size()) < size; ++h) {
        const Basis b = enumerate_basis(cc.slice(v, e, h), cc.parity(), 1);
        for (const auto& c : b.graphs) {
          if (static_cast<int>(pool.size()) == size) break;
          pool.push_back(c.graph);
        }
      }
  return pool;
}

CheckResult check_bracket_axioms(const Context& ctx, const std::vector<Graph>& pool, int jobs) {
  CheckResult res;
  res.name = "bracket_axioms " + ctx_label(ctx);
  const ComplexContext cc{ctx.m, ctx.n, 1};
  const int n = static_cast<int>(pool.size());
  std::vector<GraphSum> x;
  for (const Graph& g : pool) x.emplace_back(ctx, g);
  std::vector<GraphSum> br(n * n), dx(n);
  detail::parallel_for(n * n, jobs, [&](int k) { br[k] = std_bracket(x[k / n], x[k % n]); });
  detail::parallel_for(n, jobs, [&](int i) { dx[i] = delta(x[i], cc); });
  std::mutex mu;
  auto fail = [&](const std::string& what) {
    std::lock_guard<std::mutex> lock(mu);
    if (res.pass) {
      res.pass = false;
      res.detail = what;
    }
  };
  auto txt = [&](int i) { return graph_to_text(pool[i], ctx); };
  // antisymmetry and chain map on pairs
  detail::parallel_for(n * n, jobs, [&](int k) {
    const int i = k / n, j = k % n;
    const int a = shifted(pool[i], ctx), b = shifted(pool[j], ctx);
    GraphSum t = br[k];
    t.add_scaled(br[j * n + i], (a * b) % 2 != 0 ? -1 : 1);
    if (!t.empty()) fail("antisymmetry fails for " + txt(i) + " , " + txt(j));
    GraphSum lhs = delta(br[k], cc);
    lhs -= std_bracket(dx[i], x[j]);
    lhs.add_scaled(std_bracket(x[i], dx[j]), a % 2 != 0 ? 1 : -1);
    if (!lhs.empty()) fail("chain map identity fails for " + txt(i) + " , " + txt(j));
  });
  // Jacobi: [x,[y,z]] = [[x,y],z] + (-1)^(ab) [y,[x,z]]
  detail::parallel_for(n * n * n, jobs, [&](int k) {
    const int i = k / (n * n), j = (k / n) % n, l = k % n;
    const int a = shifted(pool[i], ctx), b = shifted(pool[j], ctx);
    GraphSum t = std_bracket(x[i], br[j * n + l]);
    t -= std_bracket(br[i * n + j], x[l]);
    t.add_scaled(std_bracket(x[j], br[i * n + l]), (a * b) % 2 != 0 ? 1 : -1);
    if (!t.empty()) fail("Jacobi fails for " + txt(i) + " , " + txt(j) + " , " + txt(l));
  });
  res.stats = {{"pool", n}, {"pairs", n * n}, {"triples", n * n * n}};
  if (res.pass) res.detail = "antisymmetry, Jacobi and chain map hold on the pool";
  return res;
}

CheckResult check_mc_closure(int loops, int jobs) {
  CheckResult res;
  res.name = "mc_closure loops<=" + std::to_string(loops);
  MCElement mc = mc_element_2loop(1);
  if (loops >= 4) mc = mc_extend(mc, loops, jobs);
  long residual = 0;
  for (const auto& [g, r] : mc_residuals(mc, loops)) {
    residual += static_cast<long>(r.size());
    res.stats["residual_terms_loop_" + std::to_string(g)] = r.size();
  }
  for (const auto& [g, x] : mc.terms_by_loop) res.stats["terms_loop_" + std::to_string(g)] = x.size();
  // the two-loop element must not be exact
  const ComplexContext cc = oriented_complex();
  const Basis src = enumerate_basis(cc.slice(3, 4), cc.parity(), jobs);
  const bool exact = solve_coboundary(src, mc.terms_by_loop.at(2), cc, jobs).feasible;
  res.stats["two_loop_exact"] = exact;
  res.pass = residual == 0 && !exact;
  res.detail = res.pass ? "closure residuals vanish; the two-loop element is not exact"
                        : "nonzero closure residual or exact two-loop element";
  return res;
}

CheckResult check_pbw(int n_max) {
  CheckResult res;
  res.name = "pbw_weights";
  Rational fact = 1;
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0) fact *= n;
    const Rational w = pbw_weight(n), want = bernoulli(n, true) / fact;
    res.stats[std::to_string(n)] = to_string(w);
    if (w != want && res.pass) {
      res.pass = false;
      res.detail = "weight of chain " + std::to_string(n) + " is " + to_string(w) + ", expected " + to_string(want);
    }
  }
  if (res.pass) res.detail = "chain weights equal B_n/n!";
  return res;
}

CheckResult check_rank_crosscheck(int jobs) {
  CheckResult res;
  res.name = "rank_crosscheck";
  struct Item {
    ComplexContext cc;
    int v, e, h;
  };
  const std::vector<Item> items = {
      {oriented_complex(), 4, 5, 0}, {oriented_complex(), 3, 4, 0},  {{1, 3, 3}, 3, 5, 1},
      {{1, 3, 1}, 3, 4, 3},           {{1, 3, 1}, 2, 3, 2},           {{0, 2, 1}, 3, 3, 2},
      {{2, 3, 1}, 3, 3, 2},           {{1, 2, 3}, 3, 4, 1},
  };
  int matrices = 0;
  for (const Item& it : items) {
    const Basis src = enumerate_basis(it.cc.slice(it.v, it.e, it.h), it.cc.parity(), jobs);
    const Basis dst = enumerate_basis(it.cc.slice(it.v + 1, it.e + 1, it.h), it.cc.parity(), jobs);
    const SparseMat d = differential_matrix(src, dst, it.cc, Piece::Full, jobs);
    const int exact = rank(d), r1 = rank_modp(d, 101), r2 = rank_modp(d, 10007);
    ++matrices;
    const std::string label = ctx_label(it.cc.ctx()) + " " + slice_label(it.v, it.e, it.h);
    res.stats[label] = {{"exact", exact}, {"mod101", r1}, {"mod10007", r2}};
    if (r1 > exact || r2 > exact || (r1 != exact && r2 != exact)) {
      if (res.pass) res.detail = "rank mismatch on " + label;
      res.pass = false;
    }
  }
  if (res.pass) res.detail = std::to_string(matrices) + " matrices agree";
  return res;
}

CheckResult check_relabel_invariance(const Context& ctx, std::uint64_t seed, int trials) {
  CheckResult res;
  res.name = "relabel_invariance " + ctx_label(ctx);
  const ParityProfile p = ParityProfile::from(ctx);
  const std::vector<Graph> pool = bracket_pool(ctx, 20);
  std::mt19937_64 rng(seed);
  int checked = 0;
  for (int t = 0; t < trials; ++t) {
    const Graph& g = pool[rng() % pool.size()];
    if (g.is_line) continue;
    std::vector<int> perm(g.vertex_count);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Graph h;
    const int s = relabel_sign(g, perm, p, &h);
    if (s == 0) continue;
    const Canonical a = canonicalize(g, p), b = canonicalize(h, p);
    ++checked;
    if (a.key != b.key || a.sign != s * b.sign) {
      res.pass = false;
      res.detail = "relabeling changes the class of " + graph_to_text(g, ctx);
      break;
    }
  }
  res.stats = {{"trials", trials}, {"checked", checked}, {"seed", seed}};
  if (res.pass) res.detail = "canonical form is relabeling invariant";
  return res;
}

nlohmann::json run_verify(const VerifyOptions& opts, bool* all_pass) {
  std::vector<CheckResult> checks;
  const std::vector<Context> ctxs = {{0, 2}, {1, 2}, {1, 3}, {2, 3}};
  checks.push_back(check_delta_squared(ctxs, {1, 3}, 4, 6, 3, opts.jobs));
  checks.push_back(check_bracket_axioms({1, 3}, bracket_pool({1, 3}, 12), opts.jobs));
  checks.push_back(check_mc_closure(2, opts.jobs));
  checks.push_back(check_pbw(6));
  checks.push_back(check_rank_crosscheck(opts.jobs));
  for (const Context& c : ctxs) checks.push_back(check_relabel_invariance(c, opts.seed, 200));
  bool ok = true;
  nlohmann::json list = nlohmann::json::array();
  for (const auto& c : checks) {
    ok = ok && c.pass;
    list.push_back(check_to_json(c));
  }
  if (all_pass) *all_pass = ok;
  return {{"command", "verify"}, {"seed", opts.seed}, {"pass", ok}, {"checks", list}};
}

}  // namespace hgc
