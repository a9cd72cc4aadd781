#include "hgc/complex.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <tuple>
#include <thread>

#include "hgc/structures.hpp"
#include "parallel.hpp"

namespace hgc {

BasisParams ComplexContext::slice(int v, int e, int h) const {
  BasisParams q{v, e, h};
  q.min_valence = min_valence;
  if (variant == Variant::PlainDirectedAcyclic) {
    q.directed = q.acyclic = true;
    q.two_in_or_out = two_in_or_out;
  }
  return q;
}

bool ComplexContext::admits(const Graph& g) const {
  if (g.is_line) return variant == Variant::Hairy;
  if (variant != Variant::Hairy && g.hair_count() != 0) return false;
  return matches(g, slice(g.vertex_count, g.edge_count(), g.hair_count()));
}

HairDegree hair_degree_constants(int m, int n) { return {m + 1 - n, n}; }

int hairy_degree(const Graph& g, int m, int n) {
  if (g.is_line) return 2 * m + 1 - n;
  const HairDegree c = hair_degree_constants(m, n);
  return n * (g.vertex_count - 1) + (1 - n) * g.edge_count() + c.C * g.hair_count() + c.D;
}

int degree(const Graph& g, const ComplexContext& cc) {
  if (cc.variant == Variant::Hairy) return hairy_degree(g, cc.m, cc.n);
  return plain_degree(g, cc.n);
}

GraphSum restrict_to(const GraphSum& x, const ComplexContext& cc) {
  return x.filtered([&](const Graph& g) { return cc.admits(g); });
}

GraphSum delta_split(const Graph& g, const ComplexContext& cc) {
  GraphSum out(cc.ctx());
  if (g.is_line) return out;
  const bool directed = cc.variant == Variant::PlainDirectedAcyclic;
  // (-1)^(n+1) makes the split agree with [edge, -] and with the
  // Maurer-Cartan equation for mu.
  const int global = cc.n % 2 != 0 ? 1 : -1;
  const Rational weight = global * (directed ? Rational(1) : Rational(1, 2));
  const int mv = cc.min_valence;
  const ParityProfile p = cc.parity();
  long binom[21][21] = {};
  for (int a = 0; a <= 20; ++a) {
    binom[a][0] = 1;
    for (int b = 1; b <= a; ++b) binom[a][b] = binom[a - 1][b - 1] + (b < a ? binom[a - 1][b] : 0);
  }
  std::map<long, Rational> coef;
  Graph h;
  h.vertex_count = g.vertex_count + 1;
  // New vertex w' is vertex 0 and the new edge w -> w' is edge 0, i.e. both
  // are prepended to the orientation word.
  for (int w = 0; w < g.vertex_count; ++w) {
    struct Half {
      int kind;  // 0 source end, 1 target end, 2 hair
      int idx;
    };
    std::vector<Half> halves;
    for (int i = 0; i < g.edge_count(); ++i) {
      if (g.edges[i].s == w) halves.push_back({0, i});
      if (g.edges[i].t == w) halves.push_back({1, i});
    }
    for (int i = 0; i < g.hair_count(); ++i)
      if (g.hairs[i] == w) halves.push_back({2, i});
    const int k = static_cast<int>(halves.size());
    if (k > 20) throw ResourceError("vertex valence too large to split");
    // Interchangeable half-edges (parallel edges stored alike, or hairs) give
    // the same term whichever of them move, as long as swapping them is even;
    // so count how many of each class move and weight by binomials. Odd
    // classes stay split into single half-edges so cancellations are exact.
    std::vector<std::vector<int>> classes;
    {
      std::map<std::tuple<int, int, bool>, int> index;
      for (int b = 0; b < k; ++b) {
        const Half& x = halves[b];
        std::tuple<int, int, bool> key;
        bool odd = false;
        if (x.kind == 2) {
          key = {2, 0, false};
          odd = p.hair_odd;
        } else {
          const Edge& e = g.edges[x.idx];
          const int other = x.kind == 0 ? e.t : e.s;
          if (other == w) {
            classes.push_back({b});
            continue;
          }
          key = {x.kind, other, e.directed};
          odd = p.edge_odd;
        }
        auto it = index.find(key);
        if (odd || it == index.end()) {
          if (!odd) index.emplace(key, static_cast<int>(classes.size()));
          classes.push_back({b});
        } else {
          classes[it->second].push_back(b);
        }
      }
    }
    const int r = static_cast<int>(classes.size());
    std::vector<int> j(r, 0);
    for (;;) {
      int moved = 0;
      for (int i = 0; i < r; ++i) moved += j[i];
      bool keep = moved + 1 >= mv && k - moved + 1 >= mv;
      if (directed && (moved == 0 || moved == k)) keep = false;
      // Undirected: j and its complement give the same term (swap w and w',
      // flip the new edge), so keep the smaller one and count it twice.
      int factor = 1;
      if (keep && !directed) {
        int cmp = 0;
        for (int i = 0; i < r && cmp == 0; ++i) {
          const int c = static_cast<int>(classes[i].size()) - j[i];
          cmp = j[i] < c ? -1 : (j[i] > c ? 1 : 0);
        }
        if (cmp > 0) keep = false;
        factor = cmp < 0 ? 2 : 1;
      }
      if (keep) {
        // at most 20 half-edges, so the product stays below 2^21
        long mult = factor;
        for (int i = 0; i < r; ++i) mult *= binom[classes[i].size()][j[i]];
        auto cached = coef.find(mult);
        if (cached == coef.end()) cached = coef.emplace(mult, weight * Rational(mult)).first;
        h.edges.resize(1);
        h.edges[0] = {w + 1, 0, directed};
        for (const Edge& e : g.edges) h.edges.push_back({e.s + 1, e.t + 1, e.directed});
        h.hairs.clear();
        for (int a : g.hairs) h.hairs.push_back(a + 1);
        for (int i = 0; i < r; ++i)
          for (int t = 0; t < j[i]; ++t) {
            const Half& x = halves[classes[i][t]];
            if (x.kind == 0) h.edges[1 + x.idx].s = 0;
            else if (x.kind == 1) h.edges[1 + x.idx].t = 0;
            else h.hairs[x.idx] = 0;
          }
        out.add(h, cached->second);
      }
      int i = 0;
      while (i < r && j[i] == static_cast<int>(classes[i].size())) j[i++] = 0;
      if (i == r) break;
      ++j[i];
    }
  }
  return out;
}

namespace {

template <class F>
GraphSum linear(const GraphSum& x, F f) {
  GraphSum out(x.context());
  for (const auto& [k, c] : x.sorted()) out.add_scaled(f(decode_key(k)), c);
  return out;
}

}  // namespace

GraphSum delta_split(const GraphSum& x, const ComplexContext& cc) {
  return linear(x, [&](const Graph& g) { return delta_split(g, cc); });
}

GraphSum delta_hair(const Graph& g, const ComplexContext& cc) {
  if (cc.variant != Variant::Hairy) throw UsageError("hair differential needs the hairy variant");
  // every term grows a vertex of valence 1 or 2
  if (cc.min_valence >= 3) return GraphSum(cc.ctx());
  if (g.is_line || !cc.admits(g)) {
    const GraphSum mu(cc.ctx(), graphs::mu());
    return restrict_to(std_bracket(mu, GraphSum(cc.ctx(), g)), cc);
  }
  // Same as the bracket with mu, written out: an antenna at each vertex and
  // each hair pushed out along a new edge. New vertex 0, new edge first.
  GraphSum out(cc.ctx());
  const Rational s = cc.n % 2 != 0 ? -1 : 1;
  Graph h;
  h.vertex_count = g.vertex_count + 1;
  auto reset = [&](int from) {
    h.edges.clear();
    h.edges.push_back({from + 1, 0, false});
    for (const Edge& e : g.edges) h.edges.push_back({e.s + 1, e.t + 1, e.directed});
    h.hairs.clear();
    for (int a : g.hairs) h.hairs.push_back(a + 1);
  };
  if (cc.min_valence <= 1)
    for (int u = 0; u < g.vertex_count; ++u) {
      reset(u);
      out.add(h, s);
    }
  for (int i = 0; i < g.hair_count(); ++i) {
    reset(g.hairs[i]);
    h.hairs[i] = 0;
    out.add(h, s);
  }
  return out;
}

GraphSum delta_hair(const GraphSum& x, const ComplexContext& cc) {
  return linear(x, [&](const Graph& g) { return delta_hair(g, cc); });
}

GraphSum delta(const Graph& g, const ComplexContext& cc) {
  GraphSum out = delta_split(g, cc);
  if (cc.variant != Variant::Hairy) return restrict_to(out, cc);
  // Splitting keeps hairy graphs connected and respects the valence bound,
  // so only graphs outside the complex need the filter.
  if (!cc.admits(g)) out = restrict_to(out, cc);
  out += delta_hair(g, cc);
  return out;
}

GraphSum delta(const GraphSum& x, const ComplexContext& cc) {
  return linear(x, [&](const Graph& g) { return delta(g, cc); });
}

GraphSum deformed_delta_even_m(const Graph& g, const ComplexContext& cc, int k_max) {
  if (cc.m % 2 != 0) throw UsageError("the deformed differential needs even m");
  if (k_max < 2) throw UsageError("k_max must be at least 2");
  GraphSum out(cc.ctx());
  const GraphSum x(cc.ctx(), g);
  Rational fact = 1;
  for (int k = 2; k <= k_max && k <= g.hair_count(); ++k) {
    fact *= k;
    ActionGraph a;
    a.vertex_count = 2;
    a.black = {false, true};
    for (int i = 0; i < k; ++i) a.edges.emplace_back(0, 1);
    // minus sign: matches the sign of delta so that (delta + this)^2 vanishes
    // below the truncation
    out.add_scaled(twist_substitute(a, {x}), -1 / fact);
  }
  return restrict_to(out, cc);
}

GraphSum deformed_delta_even_m(const GraphSum& x, const ComplexContext& cc, int k_max) {
  return linear(x, [&](const Graph& g) { return deformed_delta_even_m(g, cc, k_max); });
}

SparseMat differential_matrix(const Basis& src, const Basis& dst, const ComplexContext& cc, Piece which,
                              int jobs, int k_max) {
  const int cols = src.size();
  std::vector<std::vector<Entry>> columns(cols);
  std::vector<std::string> errors(cols);
  auto column = [&](int j) {
    const Graph& g = src.graphs[j].graph;
    GraphSum d(cc.ctx());
    switch (which) {
      case Piece::Split: d = restrict_to(delta_split(g, cc), cc); break;
      case Piece::Hair: d = delta_hair(g, cc); break;
      case Piece::Full: d = delta(g, cc); break;
      case Piece::Deformed: d = deformed_delta_even_m(g, cc, k_max); break;
    }
    for (const auto& [key, c] : d.sorted()) {
      const int i = dst.index_of(key);
      if (i < 0) {
        errors[j] = "term of the differential of basis element " + std::to_string(j) + " missing from the target slice";
        return;
      }
      columns[j].push_back({i, j, c});
    }
  };
  std::atomic<int> next{0};
  auto work = [&] {
    for (int j = next++; j < cols; j = next++) column(j);
  };
  const int workers = std::max(1, std::min(jobs, cols));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  std::vector<Entry> all;
  for (int j = 0; j < cols; ++j) {
    if (!errors[j].empty()) throw CompletenessError(errors[j]);
    for (Entry& e : columns[j]) all.push_back(std::move(e));
  }
  return SparseMat(dst.size(), cols, std::move(all));
}

Coboundary solve_coboundary(const Basis& src, const GraphSum& rhs, const ComplexContext& cc, int jobs) {
  std::vector<GraphSum> images(src.size(), GraphSum(cc.ctx()));
  detail::parallel_for(src.size(), jobs, [&](int j) { images[j] = delta(src.graphs[j].graph, cc); });
  std::map<GraphKey, int> row;
  for (const auto& [k, c] : rhs.terms()) row.emplace(k, 0);
  for (const GraphSum& im : images)
    for (const auto& [k, c] : im.terms()) row.emplace(k, 0);
  int r = 0;
  for (auto& [k, i] : row) i = r++;
  std::vector<Entry> es;
  for (int j = 0; j < src.size(); ++j)
    for (const auto& [k, c] : images[j].terms()) es.push_back({row[k], j, c});
  std::vector<Rational> b(r);
  for (const auto& [k, c] : rhs.terms()) b[row[k]] = c;
  const SolveResult res = solve(SparseMat(r, src.size(), std::move(es)), b);
  Coboundary out;
  out.feasible = res.feasible;
  out.rank_a = res.rank_a;
  out.rank_ab = res.rank_ab;
  out.primitive = GraphSum(cc.ctx());
  if (res.feasible)
    for (int j = 0; j < src.size(); ++j)
      if (res.x[j] != 0) out.primitive.add(src.graphs[j].graph, res.x[j]);
  return out;
}

}  // namespace hgc
