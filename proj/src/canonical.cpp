#include "hgc/canonical.hpp"

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <tuple>

namespace hgc {

namespace {

constexpr char kLineTag = 'L';
constexpr char kGraphTag = 'G';

bool edge_less(const Edge& a, const Edge& b) {
  return std::tie(a.s, a.t, a.directed) < std::tie(b.s, b.t, b.directed);
}

// All scratch space lives in one thread-local workspace so that
// canonicalizing small graphs does not touch the allocator.
struct Adjacency {
  int n = 0;
  // pk[i*n+j] = u(i,j) | d(i,j) << 8 | d(j,i) << 16, loops only in the low
  // two bytes
  std::vector<std::uint32_t> pk;
  std::vector<int> hair;
  // Refinement data: base[i] packs the local invariants of i, nbr lists the
  // (j, pk[i*n+j]) with j != i and pk nonzero.
  std::vector<std::uint64_t> base;
  std::vector<int> nbr_start;
  std::vector<std::pair<int, std::uint64_t>> nbr;

  void load(const Graph& g) {
    n = g.vertex_count;
    pk.assign(static_cast<std::size_t>(n) * n, 0);
    hair.assign(n, 0);
    base.assign(n, 0);
    for (const Edge& e : g.edges) {
      if (e.directed) {
        pk[e.s * n + e.t] += 1u << 8;
        if (e.s != e.t) {
          pk[e.t * n + e.s] += 1u << 16;
          base[e.s] += 1ull << 40;
          base[e.t] += 1ull << 32;
        }
      } else {
        pk[e.s * n + e.t] += 1;
        if (e.s != e.t) {
          pk[e.t * n + e.s] += 1;
          base[e.s] += 1ull << 24;
          base[e.t] += 1ull << 24;
        }
      }
    }
    for (int h : g.hairs) ++hair[h];
    nbr_start.resize(n + 1);
    nbr.clear();
    nbr_start[0] = 0;
    for (int i = 0; i < n; ++i) {
      base[i] |= static_cast<std::uint64_t>(hair[i]) | static_cast<std::uint64_t>(pk[i * n + i] & 0xffff) << 8;
      const std::uint32_t* row = pk.data() + static_cast<std::ptrdiff_t>(i) * n;
      for (int j = 0; j < n; ++j)
        if (j != i && row[j]) nbr.emplace_back(j, row[j]);
      nbr_start[i + 1] = static_cast<int>(nbr.size());
    }
  }
  int u(int i, int j) const { return static_cast<int>(pk[i * n + j] & 0xff); }
  int d(int i, int j) const { return static_cast<int>((pk[i * n + j] >> 8) & 0xff); }
};

// Iterated colour refinement. A colour is the rank of (old colour, signature);
// signatures depend only on invariant data, so the colouring is invariant,
// and a hash collision only makes it coarser.
std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
  h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h * 0xff51afd7ed558ccdULL;
}

struct Refiner {
  std::vector<std::uint64_t> sig, nb;
  std::vector<int> colour, idx, next;

  int rank(int n) {
    auto less = [&](int a, int b) { return std::tie(colour[a], sig[a]) < std::tie(colour[b], sig[b]); };
    for (int k = 0; k < n; ++k) {
      int q = k;
      while (q > 0 && less(k, idx[q - 1])) {
        idx[q] = idx[q - 1];
        --q;
      }
      idx[q] = k;
    }
    int classes = 0;
    for (int k = 0; k < n; ++k) {
      if (k > 0 && (colour[idx[k]] != colour[idx[k - 1]] || sig[idx[k]] != sig[idx[k - 1]])) ++classes;
      next[idx[k]] = classes;
    }
    colour.swap(next);
    return n ? classes + 1 : 0;
  }

  const std::vector<int>& run(const Adjacency& adj) {
    const int n = adj.n;
    sig.assign(adj.base.begin(), adj.base.end());
    colour.assign(n, 0);
    idx.resize(n);
    next.resize(n);
    int classes = rank(n);
    while (classes < n) {
      for (int i = 0; i < n; ++i) {
        nb.clear();
        for (int q = adj.nbr_start[i]; q < adj.nbr_start[i + 1]; ++q) {
          const auto& [j, x] = adj.nbr[q];
          nb.push_back(static_cast<std::uint64_t>(colour[j]) << 24 | x);
        }
        std::sort(nb.begin(), nb.end());
        std::uint64_t h = 0;
        for (std::uint64_t x : nb) h = mix(h, x);
        sig[i] = h;
      }
      const int more = rank(n);
      if (more == classes) break;
      classes = more;
    }
    return colour;
  }
};

bool twins(const Adjacency& adj, int a, int b) {
  if (adj.hair[a] != adj.hair[b] || adj.u(a, a) != adj.u(b, b) || adj.d(a, a) != adj.d(b, b)) return false;
  if (adj.d(a, b) != adj.d(b, a)) return false;
  for (int w = 0; w < adj.n; ++w) {
    if (w == a || w == b) continue;
    if (adj.u(a, w) != adj.u(b, w) || adj.d(a, w) != adj.d(b, w) || adj.d(w, a) != adj.d(w, b)) return false;
  }
  return true;
}

class LabelSearch {
 public:
  // twin[v]: least vertex w such that swapping w and v is an automorphism
  // (empty: no pruning). Only the first unplaced member of a twin class is
  // tried; the skipped subtrees are images of the explored one.
  void run(const Adjacency& adj, const std::vector<int>& colour, const std::vector<int>* twin = nullptr) {
    twin_ = twin;
    adj_ = &adj;
    n_ = adj.n;
    colour_ = colour;
    order_ = colour_;
    std::sort(order_.begin(), order_.end());
    placed_.assign(n_, -1);
    used_.assign(n_, 0);
    current_.resize(static_cast<std::size_t>(3 * n_ * (n_ + 1) / 2));
    len_ = 0;
    best_.clear();
    optimal_.clear();
    have_best_ = false;
    best_version_ = 0;
    dfs(0, true);
  }

  // Concatenated vertex segments of the least labeling; this is exactly the
  // body of the key.
  const std::string& best_key() const { return best_; }
  int optimal_count() const { return n_ == 0 ? 1 : static_cast<int>(optimal_.size()) / n_; }
  // placed[pos] = vertex put at position pos, for the i-th optimal labeling.
  const int* optimal(int i) const { return optimal_.data() + static_cast<std::ptrdiff_t>(i) * n_; }

 private:
  void segment(int pos, int v) {
    const Adjacency& a = *adj_;
    char* out = current_.data() + len_;
    *out++ = static_cast<char>(a.hair[v]);
    *out++ = static_cast<char>(a.u(v, v));
    *out++ = static_cast<char>(a.d(v, v));
    for (int j = 0; j < pos; ++j) {
      const int w = placed_[j];
      *out++ = static_cast<char>(a.u(w, v));
      *out++ = static_cast<char>(a.d(w, v));
      *out++ = static_cast<char>(a.d(v, w));
    }
    len_ += 3 + 3 * static_cast<std::size_t>(pos);
  }

  bool shadowed(int v) const {
    const std::vector<int>& t = *twin_;
    for (int w = t[v]; w < v; ++w)
      if (!used_[w] && t[w] == t[v]) return true;
    return false;
  }

  // Compares current_[from..] with best_ at the same positions.
  std::strong_ordering versus_best(std::size_t from) const {
    return std::lexicographical_compare_three_way(current_.begin() + static_cast<std::ptrdiff_t>(from),
                                                  current_.begin() + static_cast<std::ptrdiff_t>(len_),
                                                  best_.begin() + static_cast<std::ptrdiff_t>(from),
                                                  best_.begin() + static_cast<std::ptrdiff_t>(len_));
  }

  // tied: the prefix so far equals the prefix of best_. A best found below
  // this node shares its prefix, so the node is tied again afterwards.
  void dfs(int pos, bool tied) {
    if (pos == n_) {
      if (!have_best_ || !tied) {
        best_.assign(current_.begin(), current_.begin() + static_cast<std::ptrdiff_t>(len_));
        optimal_.clear();
        have_best_ = true;
        ++best_version_;
      }
      optimal_.insert(optimal_.end(), placed_.begin(), placed_.end());
      return;
    }
    for (int v = 0; v < n_; ++v) {
      if (used_[v] || colour_[v] != order_[pos]) continue;
      if (twin_ && shadowed(v)) continue;
      const std::size_t mark = len_;
      segment(pos, v);
      bool child_tied = false;
      if (have_best_ && tied) {
        const auto c = versus_best(mark);
        if (c > 0) {
          len_ = mark;
          continue;
        }
        child_tied = c == 0;
      }
      used_[v] = 1;
      placed_[pos] = v;
      const long version = best_version_;
      dfs(pos + 1, child_tied);
      if (best_version_ != version) tied = true;
      used_[v] = 0;
      placed_[pos] = -1;
      len_ = mark;
    }
  }

  const Adjacency* adj_ = nullptr;
  const std::vector<int>* twin_ = nullptr;
  int n_ = 0;
  std::vector<int> colour_;
  std::vector<int> order_;
  std::vector<int> placed_;
  std::vector<char> used_;
  std::string current_;  // only the first len_ bytes are live
  std::size_t len_ = 0;
  std::string best_;
  bool have_best_ = false;
  long best_version_ = 0;
  std::vector<int> optimal_;
};

// Sign of relabeling g by perm; leaves the relabeled edges and hairs sorted in
// the given buffers. Insertion sort: lists are short and the number of moves
// is the inversion count.
int orient_sign(const Graph& g, const int* perm, const ParityProfile& p, std::vector<Edge>& edges,
                std::vector<int>& hairs) {
  bool odd = false;
  if (p.vertex_odd) {
    for (int i = 0; i < g.vertex_count; ++i)
      for (int j = i + 1; j < g.vertex_count; ++j)
        if (perm[j] < perm[i]) odd = !odd;
  }
  edges.clear();
  int flips = 0;
  for (const Edge& e : g.edges) {
    Edge m{perm[e.s], perm[e.t], e.directed};
    if (!m.directed && m.s > m.t) {
      std::swap(m.s, m.t);
      ++flips;
    }
    if (!m.directed && m.s == m.t && p.flip_odd) return 0;  // odd tadpole
    std::size_t k = edges.size();
    edges.push_back(m);
    while (k > 0 && edge_less(m, edges[k - 1])) {
      edges[k] = edges[k - 1];
      --k;
      if (p.edge_odd) odd = !odd;
    }
    edges[k] = m;
  }
  if (p.flip_odd && (flips % 2)) odd = !odd;
  if (p.edge_odd)
    for (std::size_t i = 1; i < edges.size(); ++i)
      if (edges[i] == edges[i - 1]) return 0;
  hairs.clear();
  for (int h : g.hairs) {
    const int x = perm[h];
    std::size_t k = hairs.size();
    hairs.push_back(x);
    while (k > 0 && x < hairs[k - 1]) {
      hairs[k] = hairs[k - 1];
      --k;
      if (p.hair_odd) odd = !odd;
    }
    hairs[k] = x;
  }
  if (p.hair_odd)
    for (std::size_t i = 1; i < hairs.size(); ++i)
      if (hairs[i] == hairs[i - 1]) return 0;
  return odd ? -1 : 1;
}

struct Workspace {
  Adjacency adj;
  Refiner refiner;
  LabelSearch search;
  std::vector<int> perm;
  std::vector<Edge> edges, spare_edges;
  std::vector<int> hairs, spare_hairs;
  std::vector<int> twin;
};

Workspace& workspace() {
  thread_local Workspace w;
  return w;
}

// Runs the search; returns the orientation sign of g relative to the
// canonical representative and leaves that representative's edges and hairs
// in w.edges / w.hairs.
int canonical_sign(const Graph& g, const ParityProfile& p, Workspace& w) {
  g.validate();
  w.adj.load(g);
  const std::vector<int>& colour = w.refiner.run(w.adj);
  const int n = g.vertex_count;
  w.perm.resize(n);
  // Twins share a colour. An odd twin swap kills g; even ones let the search
  // skip twins, and every other automorphism still shows up among the leaves.
  bool any_twin = false, odd_swap = false;
  w.twin.resize(n);
  for (int v = 0; v < n; ++v) {
    w.twin[v] = v;
    for (int u = 0; u < v; ++u)
      if (w.twin[u] == u && colour[u] == colour[v] && twins(w.adj, u, v)) {
        w.twin[v] = u;
        any_twin = true;
        break;
      }
  }
  if (any_twin) {
    std::iota(w.perm.begin(), w.perm.end(), 0);
    const int s0 = orient_sign(g, w.perm.data(), p, w.spare_edges, w.spare_hairs);
    for (int v = 0; v < n && !odd_swap; ++v) {
      if (w.twin[v] == v) continue;
      std::swap(w.perm[v], w.perm[w.twin[v]]);
      odd_swap = s0 == 0 || orient_sign(g, w.perm.data(), p, w.spare_edges, w.spare_hairs) != s0;
      std::swap(w.perm[v], w.perm[w.twin[v]]);
    }
  }
  w.search.run(w.adj, colour, any_twin ? &w.twin : nullptr);
  auto to_perm = [&](int i) {
    const int* placed = w.search.optimal(i);
    for (int pos = 0; pos < n; ++pos) w.perm[placed[pos]] = pos;
  };
  to_perm(0);
  const int sign = orient_sign(g, w.perm.data(), p, w.edges, w.hairs);
  if (sign == 0 || odd_swap) return 0;
  int result = sign;
  const int count = w.search.optimal_count();
  for (int i = 1; i < count; ++i) {
    to_perm(i);
    if (orient_sign(g, w.perm.data(), p, w.spare_edges, w.spare_hairs) != sign) {
      result = 0;
      break;
    }
  }
  return result;
}

void key_from_search(const Workspace& w, int n, GraphKey& key) {
  key.assign(1, kGraphTag);
  key.push_back(static_cast<char>(n));
  key += w.search.best_key();
}

GraphKey encode(const Graph& canonical) {
  GraphKey key;
  if (canonical.is_line) {
    key.push_back(kLineTag);
    return key;
  }
  Adjacency adj;
  adj.load(canonical);
  key.push_back(kGraphTag);
  key.push_back(static_cast<char>(canonical.vertex_count));
  for (int i = 0; i < adj.n; ++i) {
    key.push_back(static_cast<char>(adj.hair[i]));
    key.push_back(static_cast<char>(adj.u(i, i)));
    key.push_back(static_cast<char>(adj.d(i, i)));
    for (int j = 0; j < i; ++j) {
      key.push_back(static_cast<char>(adj.u(j, i)));
      key.push_back(static_cast<char>(adj.d(j, i)));
      key.push_back(static_cast<char>(adj.d(i, j)));
    }
  }
  return key;
}

}  // namespace

int relabel_sign(const Graph& g, const std::vector<int>& perm, const ParityProfile& p,
                 Graph* out) {
  if (g.is_line) {
    if (out) *out = g;
    // The end swap flips the edge and exchanges the two external points.
    return (p.flip_odd != p.point_odd) ? 0 : 1;
  }
  std::vector<Edge> edges;
  std::vector<int> hairs;
  const int sign = orient_sign(g, perm.data(), p, edges, hairs);
  if (out && sign != 0) {
    out->vertex_count = g.vertex_count;
    out->edges = std::move(edges);
    out->hairs = std::move(hairs);
    out->is_line = false;
  }
  return sign;
}

Canonical canonicalize(const Graph& g, const ParityProfile& p) {
  Canonical result;
  if (g.is_line) {
    g.validate();
    result.graph = g;
    result.key = encode(g);
    result.sign = relabel_sign(g, {}, p);
    return result;
  }
  Workspace& w = workspace();
  result.sign = canonical_sign(g, p, w);
  key_from_search(w, g.vertex_count, result.key);
  if (result.sign != 0) {
    result.graph.vertex_count = g.vertex_count;
    result.graph.edges = w.edges;
    result.graph.hairs = w.hairs;
  } else {
    result.graph = decode_key(result.key);
  }
  return result;
}

int canonical_key(const Graph& g, const ParityProfile& p, GraphKey& key) {
  if (g.is_line) {
    const Canonical c = canonicalize(g, p);
    key = c.key;
    return c.sign;
  }
  Workspace& w = workspace();
  const int sign = canonical_sign(g, p, w);
  key_from_search(w, g.vertex_count, key);
  return sign;
}

int vertex_automorphism_count(const Graph& g) {
  if (g.is_line) return 2;
  Workspace& w = workspace();
  w.adj.load(g);
  w.search.run(w.adj, w.refiner.run(w.adj));
  return w.search.optimal_count();
}

Graph decode_key(const GraphKey& key) {
  if (key.empty()) throw StructuralError("empty graph key");
  if (key[0] == kLineTag) return Graph::line();
  Graph g;
  const int n = static_cast<unsigned char>(key[1]);
  g.vertex_count = n;
  std::size_t pos = 2;
  auto next = [&]() { return static_cast<int>(static_cast<unsigned char>(key.at(pos++))); };
  for (int i = 0; i < n; ++i) {
    for (int c = next(); c > 0; --c) g.hairs.push_back(i);
    for (int c = next(); c > 0; --c) g.edges.push_back({i, i, false});
    for (int c = next(); c > 0; --c) g.edges.push_back({i, i, true});
    for (int j = 0; j < i; ++j) {
      for (int c = next(); c > 0; --c) g.edges.push_back({j, i, false});
      for (int c = next(); c > 0; --c) g.edges.push_back({j, i, true});
      for (int c = next(); c > 0; --c) g.edges.push_back({i, j, true});
    }
  }
  std::stable_sort(g.edges.begin(), g.edges.end(), edge_less);
  std::sort(g.hairs.begin(), g.hairs.end());
  return g;
}

}  // namespace hgc
