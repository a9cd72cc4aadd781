#include "assembly.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

namespace hgc::detail {

int Assembly::append_graph(const Graph& g) {
  const int vbase = vertex_total_;
  last_hair_base_ = static_cast<int>(hairs_.size());
  last_edge_base_ = static_cast<int>(edges_.size());
  if (g.is_line) {
    const int l = static_cast<int>(lines_.size());
    const int h0 = static_cast<int>(hairs_.size());
    hairs_.push_back({-1, -1, l, false});
    hairs_.push_back({-1, -1, l, false});
    lines_.push_back({h0, h0 + 1});
    word_.push_back({Tok::LineEdge, l, p_.edge_odd});
    word_.push_back({Tok::Point, h0, p_.point_odd});
    word_.push_back({Tok::Point, h0 + 1, p_.point_odd});
    return vbase;
  }
  for (int v = 0; v < g.vertex_count; ++v) word_.push_back({Tok::Vertex, vbase + v, p_.vertex_odd});
  vertex_total_ += g.vertex_count;
  for (const Edge& e : g.edges) {
    word_.push_back({Tok::Edge, static_cast<int>(edges_.size()), p_.edge_odd});
    edges_.push_back({vbase + e.s, vbase + e.t, e.directed});
  }
  for (int a : g.hairs) {
    const int h = static_cast<int>(hairs_.size());
    hairs_.push_back({vbase + a});
    word_.push_back({Tok::HairEdge, h, p_.edge_odd});
    word_.push_back({Tok::Point, h, p_.point_odd});
  }
  return vbase;
}

int Assembly::new_vertex() { return vertex_total_++; }

int Assembly::new_edge(int s, int t, bool directed) {
  edges_.push_back({s, t, directed});
  return static_cast<int>(edges_.size()) - 1;
}

void Assembly::push_token(Token t, int position) {
  if (position < 0) word_.push_back(t);
  else word_.insert(word_.begin() + position, t);
}

int Assembly::push_op(bool odd, int position) {
  const int id = op_count_++;
  push_token({Tok::Op, id, odd}, position);
  return id;
}

int Assembly::find(Tok kind, int id) const {
  for (int i = 0; i < static_cast<int>(word_.size()); ++i)
    if (word_[i].kind == kind && word_[i].id == id) return i;
  return -1;
}

void Assembly::move(int from, int to) {
  if (from == to) return;
  const Token t = word_[from];
  if (t.odd) {
    int passed = 0;
    if (to < from) {
      for (int i = to; i < from; ++i) passed += word_[i].odd;
    } else {
      for (int i = from + 1; i <= to; ++i) passed += word_[i].odd;
    }
    if (passed % 2) sign_ = -sign_;
  }
  if (to < from)
    std::rotate(word_.begin() + to, word_.begin() + from, word_.begin() + from + 1);
  else
    std::rotate(word_.begin() + from, word_.begin() + from + 1, word_.begin() + to + 1);
}

void Assembly::contract_hair(int op_index, int hair, int v) {
  const int pos = find(Tok::Point, hair);
  if (pos < op_index) {
    move(pos, op_index);  // op slides one to the left
    erase(op_index);
    erase(op_index - 1);
  } else {
    move(pos, op_index + 1);
    erase(op_index + 1);
    erase(op_index);
  }
  hairs_[hair].attach = v;
  hairs_[hair].consumed = true;
}

void Assembly::drop_op_to_front(int op_index) {
  move(op_index, 0);
  erase(0);
}

int Assembly::finish(Graph& out, bool undirected_glue) {
  out = Graph{};
  const int len = static_cast<int>(word_.size());

  // A whole line graph surviving untouched.
  for (int i = 0; i < len; ++i) {
    if (word_[i].kind != Tok::LineEdge) continue;
    const LineRec& l = lines_[word_[i].id];
    if (hairs_[l.end0].consumed || hairs_[l.end1].consumed) continue;
    if (len != 3) throw StructuralError("line graph cannot be part of a larger graph");
    int s = sign_;
    if (word_[0].kind != Tok::LineEdge) throw StructuralError("malformed line word");
    if (word_[1].id != l.end0 && p_.point_odd) s = -s;
    out = Graph::line();
    return s;
  }

  // Block assignment: 0 vertex, 1 edge, 2 hair.
  std::vector<int> rep_of_hair(hairs_.size(), -1);
  std::vector<std::tuple<int, int, int>> key(len);
  for (int i = 0; i < len; ++i) {
    const Token& t = word_[i];
    switch (t.kind) {
      case Tok::Vertex: key[i] = {0, i, 0}; break;
      case Tok::Edge: key[i] = {1, i, 0}; break;
      case Tok::HairEdge:
        if (hairs_[t.id].consumed) key[i] = {1, i, 0};
        else {
          key[i] = {2, i, 0};
          rep_of_hair[t.id] = i;
        }
        break;
      case Tok::LineEdge: {
        const LineRec& l = lines_[t.id];
        const bool c0 = hairs_[l.end0].consumed, c1 = hairs_[l.end1].consumed;
        if (c0 && c1) key[i] = {1, i, 0};
        else {
          key[i] = {2, i, 0};
          rep_of_hair[c0 ? l.end1 : l.end0] = i;
        }
        break;
      }
      case Tok::Point: break;
      case Tok::Op: throw StructuralError("operation token left in word");
    }
  }
  for (int i = 0; i < len; ++i) {
    if (word_[i].kind != Tok::Point) continue;
    const int r = rep_of_hair[word_[i].id];
    if (r < 0) throw StructuralError("dangling external point");
    key[i] = {2, r, 1};
  }

  std::vector<int> order(len);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return key[a] < key[b]; });
  // Koszul sign of the permutation restricted to odd tokens.
  int s = sign_;
  {
    std::vector<int> odd_positions;
    for (int idx : order)
      if (word_[idx].odd) odd_positions.push_back(idx);
    int inv = 0;
    for (std::size_t a = 0; a < odd_positions.size(); ++a)
      for (std::size_t b = a + 1; b < odd_positions.size(); ++b)
        if (odd_positions[a] > odd_positions[b]) ++inv;
    if (inv % 2) s = -s;
  }

  std::vector<int> vmap(vertex_total_, -1);
  for (int idx : order) {
    const Token& t = word_[idx];
    if (t.kind == Tok::Vertex) vmap[t.id] = out.vertex_count++;
  }
  auto mapped = [&](int v) {
    if (v < 0 || vmap[v] < 0) throw StructuralError("edge attached to a removed vertex");
    return vmap[v];
  };
  for (int idx : order) {
    const Token& t = word_[idx];
    switch (t.kind) {
      case Tok::Edge: {
        const EdgeRec& e = edges_[t.id];
        out.edges.push_back({mapped(e.s), mapped(e.t), e.directed});
        break;
      }
      case Tok::HairEdge: {
        const HairRec& h = hairs_[t.id];
        if (h.consumed) out.edges.push_back({mapped(h.anchor), mapped(h.attach), !undirected_glue});
        else out.hairs.push_back(mapped(h.anchor));
        break;
      }
      case Tok::LineEdge: {
        const LineRec& l = lines_[t.id];
        const HairRec& a = hairs_[l.end0];
        const HairRec& b = hairs_[l.end1];
        if (a.consumed && b.consumed) {
          out.edges.push_back({mapped(a.attach), mapped(b.attach), !undirected_glue});
        } else if (a.consumed) {
          out.hairs.push_back(mapped(a.attach));
        } else {
          out.hairs.push_back(mapped(b.attach));
          if (p_.flip_odd) s = -s;  // the surviving hair points against the line
        }
        break;
      }
      default: break;
    }
  }
  return s;
}

}  // namespace hgc::detail
