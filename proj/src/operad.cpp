#include "hgc/operad.hpp"

#include <functional>

#include "assembly.hpp"

namespace hgc {

using detail::Assembly;
using detail::Tok;

int plain_degree(const Graph& g, int n) { return n * (g.vertex_count - 1) + (1 - n) * g.edge_count(); }

GraphSum insert(const Graph& host, int slot, const Graph& guest, const Context& ctx) {
  if (slot < 0 || slot >= host.vertex_count) throw UsageError("insertion slot out of range");
  const ParityProfile p = ParityProfile::from(ctx);
  GraphSum out(ctx);
  // Half-edges at the slot.
  std::vector<std::pair<int, int>> halves;  // (edge index, 0 source / 1 target)
  for (int i = 0; i < host.edge_count(); ++i) {
    if (host.edges[i].s == slot) halves.emplace_back(i, 0);
    if (host.edges[i].t == slot) halves.emplace_back(i, 1);
  }
  const int gv = guest.vertex_count;
  if (gv == 0) return out;
  std::vector<int> choice(halves.size(), 0);
  // Orientation word: shift(host) V1 E1 shift(guest) V2 E2, shifts of parity n.
  for (;;) {
    Assembly as(p);
    const int t1 = as.push_op(p.vertex_odd);
    as.append_graph(host);
    const int t2 = as.push_op(p.vertex_odd);
    const int gbase = as.append_graph(guest);
    for (std::size_t k = 0; k < halves.size(); ++k) {
      auto& rec = as.edges()[halves[k].first];
      (halves[k].second == 0 ? rec.s : rec.t) = gbase + choice[k];
    }
    const int vpos = as.find(Tok::Vertex, slot);
    const int tpos = as.find(Tok::Op, t2);
    as.move(tpos, vpos + 1);
    as.erase(vpos + 1);
    as.erase(vpos);
    as.drop_op_to_front(as.find(Tok::Op, t1));
    Graph g;
    const int s = as.finish(g);
    if (s != 0) out.add(g, s);
    std::size_t k = 0;
    while (k < choice.size() && ++choice[k] == gv) choice[k++] = 0;
    if (k == choice.size()) break;
  }
  return out;
}

namespace {

std::vector<std::pair<Graph, Rational>> expand(const GraphSum& x) {
  std::vector<std::pair<Graph, Rational>> out;
  for (const auto& [k, c] : x.sorted()) out.emplace_back(decode_key(k), c);
  return out;
}

}  // namespace

GraphSum pre_lie(const GraphSum& x, const GraphSum& y) {
  GraphSum out(x.context());
  const auto ys = expand(y);
  for (const auto& [g, c] : expand(x))
    for (const auto& [h, d] : ys)
      for (int v = 0; v < g.vertex_count; ++v) out.add_scaled(insert(g, v, h, x.context()), c * d);
  return out;
}

GraphSum gc_bracket(const GraphSum& x, const GraphSum& y) {
  const Context ctx = x.context();
  GraphSum out(ctx);
  const auto xs = expand(x);
  const auto ys = expand(y);
  for (const auto& [g, c] : xs) {
    for (const auto& [h, d] : ys) {
      const int dg = plain_degree(g, ctx.n), dh = plain_degree(h, ctx.n);
      const Rational sgn = ((dg * dh) % 2 != 0) ? -1 : 1;
      for (int v = 0; v < g.vertex_count; ++v) out.add_scaled(insert(g, v, h, ctx), c * d);
      for (int v = 0; v < h.vertex_count; ++v) out.add_scaled(insert(h, v, g, ctx), -sgn * c * d);
    }
  }
  return out;
}

int ActionGraph::white_count() const {
  int w = 0;
  for (int v = 0; v < vertex_count; ++v) w += !is_black(v);
  return w;
}

int ActionGraph::out_degree(int v) const {
  int d = 0;
  for (auto [s, t] : edges) d += s == v;
  return d;
}

bool ActionGraph::acyclic() const {
  Graph g;
  g.vertex_count = vertex_count;
  for (auto [s, t] : edges) g.edges.push_back({s, t, true});
  return !g.has_directed_cycle();
}

namespace {

GraphSum action_impl(const ActionGraph& a, const std::vector<const GraphSum*>& inputs,
                     const std::vector<bool>& exact) {
  const int k = a.vertex_count;
  if (static_cast<int>(inputs.size()) != k) throw UsageError("action arity mismatch");
  if (!a.acyclic()) throw UsageError("action graph has a directed cycle");
  if (k == 0) throw UsageError("empty action graph");
  const Context ctx = inputs[0]->context();
  for (const GraphSum* x : inputs)
    if (!(x->context() == ctx)) throw UsageError("context mismatch");
  const ParityProfile p = ParityProfile::from(ctx);
  const bool edge_tok_odd = ctx.m % 2 != 0;
  const bool slot_tok_odd = (ctx.m + 1) % 2 != 0;
  GraphSum out(ctx);

  std::vector<std::vector<std::pair<Graph, Rational>>> terms(k);
  for (int i = 0; i < k; ++i) terms[i] = expand(*inputs[i]);
  std::vector<int> outdeg(k);
  for (int i = 0; i < k; ++i) outdeg[i] = a.out_degree(i);
  const int ne = static_cast<int>(a.edges.size());

  std::vector<int> pick(k, 0);
  std::vector<const Graph*> gs(k);
  std::vector<int> hair_choice(ne), vertex_choice(ne);
  std::vector<std::vector<char>> used(k);

  auto emit = [&](const Rational& coef) {
    Assembly as(p);
    std::vector<int> eop(ne), sop(k), vbase(k), hbase(k);
    for (int e = 0; e < ne; ++e) eop[e] = as.push_op(edge_tok_odd);
    for (int i = 0; i < k; ++i) {
      sop[i] = as.push_op(slot_tok_odd);
      vbase[i] = as.append_graph(*gs[i]);
      hbase[i] = as.first_hair_of_last_graph();
    }
    for (int e = 0; e < ne; ++e) {
      const auto [s, t] = a.edges[e];
      as.contract_hair(as.find(Tok::Op, eop[e]), hbase[s] + hair_choice[e], vbase[t] + vertex_choice[e]);
    }
    for (int i = 0; i < k; ++i) as.drop_op_to_front(as.find(Tok::Op, sop[i]));
    Graph g;
    const int sg = as.finish(g);
    if (sg != 0) out.add(g, coef * sg);
  };

  std::function<void(int, const Rational&)> assign = [&](int e, const Rational& coef) {
    if (e == ne) {
      emit(coef);
      return;
    }
    const auto [s, t] = a.edges[e];
    const Graph& src = *gs[s];
    const Graph& dst = *gs[t];
    for (int h = 0; h < src.hair_count(); ++h) {
      if (used[s][h]) continue;
      used[s][h] = 1;
      hair_choice[e] = h;
      for (int v = 0; v < dst.vertex_count; ++v) {
        vertex_choice[e] = v;
        assign(e + 1, coef);
      }
      used[s][h] = 0;
    }
  };

  std::function<void(int, const Rational&)> over_terms = [&](int i, const Rational& coef) {
    if (i == k) {
      for (int j = 0; j < k; ++j) used[j].assign(gs[j]->hair_count(), 0);
      assign(0, coef);
      return;
    }
    for (const auto& [g, c] : terms[i]) {
      const int h = g.hair_count();
      if (exact[i] ? h != outdeg[i] : h < outdeg[i]) continue;
      gs[i] = &g;
      over_terms(i + 1, coef * c);
    }
  };
  over_terms(0, Rational(1));
  return out;
}

}  // namespace

GraphSum hairy_action(const ActionGraph& a, const std::vector<GraphSum>& inputs, HairMatch match) {
  std::vector<const GraphSum*> ptrs;
  for (const GraphSum& x : inputs) ptrs.push_back(&x);
  return action_impl(a, ptrs, std::vector<bool>(a.vertex_count, match == HairMatch::Exact));
}

GraphSum twist_substitute(const ActionGraph& a, const std::vector<GraphSum>& white_inputs) {
  if (static_cast<int>(white_inputs.size()) != a.white_count()) throw UsageError("action arity mismatch");
  if (white_inputs.empty()) throw UsageError("twist substitution needs a white vertex");
  const GraphSum mu(white_inputs[0].context(), graphs::mu());
  std::vector<const GraphSum*> ptrs;
  std::vector<bool> exact;
  std::size_t w = 0;
  for (int v = 0; v < a.vertex_count; ++v) {
    if (a.is_black(v)) {
      if (a.out_degree(v) > 1) return GraphSum(white_inputs[0].context());
      ptrs.push_back(&mu);
      exact.push_back(false);
    } else {
      ptrs.push_back(&white_inputs[w++]);
      exact.push_back(false);
    }
  }
  return action_impl(a, ptrs, exact);
}

}  // namespace hgc
