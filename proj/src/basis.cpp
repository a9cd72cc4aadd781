#include "hgc/basis.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <map>
#include <mutex>
#include <thread>

namespace hgc {

int Basis::index_of(const GraphKey& key) const {
  auto it = std::lower_bound(graphs.begin(), graphs.end(), key,
                             [](const Canonical& c, const GraphKey& k) { return c.key < k; });
  if (it == graphs.end() || it->key != key) return -1;
  return static_cast<int>(it - graphs.begin());
}

int vertex_cap() {
  if (const char* env = std::getenv("HGC_VERTEX_CAP")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v < 64) return static_cast<int>(v);
  }
  return 10;
}

bool matches(const Graph& g, const BasisParams& q) {
  if (g.is_line) return q.vertices == 0 && q.edges == 0 && q.hairs == 2;
  if (g.vertex_count != q.vertices || g.edge_count() != q.edges || g.hair_count() != q.hairs) return false;
  if (q.connected && !g.connected()) return false;
  for (const Edge& e : g.edges) {
    if (e.directed != q.directed) return false;
    if (e.s == e.t && !q.tadpoles) return false;
  }
  if (q.acyclic && g.has_directed_cycle()) return false;
  for (int v = 0; v < g.vertex_count; ++v) {
    if (g.valence(v) < q.min_valence) return false;
    const int in = g.in_degree(v), out = g.out_degree(v);
    if (q.two_in_or_out && in < 2 && out < 2) return false;
    if (q.no_passing && in == 1 && out == 1 && g.valence(v) == 2) return false;
    if (q.oriented_quotient && out == 0 && g.valence(v) == in) return false;
  }
  return true;
}

namespace {

struct Pair {
  int a, b;
  bool directed;
  std::vector<int> done;  // vertices whose incident pairs are all decided after this one
};

class Enumerator {
 public:
  Enumerator(const BasisParams& q, const ParityProfile& p) : q_(q), p_(p) {
    const int v = q.vertices;
    for (int i = 0; i < v; ++i) {
      if (q.tadpoles) pairs_.push_back({i, i, q.directed, {}});
      for (int j = i + 1; j < v; ++j) {
        pairs_.push_back({i, j, q.directed, {}});
        if (q.directed && !q.acyclic) pairs_.push_back({j, i, true, {}});
      }
      if (!pairs_.empty()) pairs_.back().done.push_back(i);
    }
    edge_cap_ = p.edge_odd ? 1 : q.edges;
    // an undirected tadpole is odd under its own flip; parallel odd loops vanish
    loop_cap_ = q.directed ? edge_cap_ : (p.flip_odd ? 0 : edge_cap_);
    hair_cap_ = p.hair_odd ? 1 : q.hairs;
    // Every graph has a labeling with (degree, hairs) non-increasing along
    // the vertices; acyclic enumeration fixes a topological order instead.
    sorted_ = !(q.directed && q.acyclic);
  }

  /// Seeds: multiplicity choices for the first `depth` pairs.
  std::vector<std::vector<int>> seeds(int depth) const {
    std::vector<std::vector<int>> out{{}};
    depth = std::min<int>(depth, static_cast<int>(pairs_.size()));
    for (int d = 0; d < depth; ++d) {
      std::vector<std::vector<int>> next;
      for (const auto& s : out) {
        int used = 0;
        for (int x : s) used += x;
        for (int k = 0; k <= cap(d) && used + k <= q_.edges; ++k) {
          auto t = s;
          t.push_back(k);
          next.push_back(std::move(t));
        }
      }
      out = std::move(next);
    }
    return out;
  }

  void run(const std::vector<int>& seed, std::map<GraphKey, Graph>& found) {
    found_ = &found;
    mult_.assign(pairs_.size(), 0);
    deg_.assign(q_.vertices, 0);
    int used = 0;
    for (std::size_t d = 0; d < seed.size(); ++d) {
      mult_[d] = seed[d];
      deg_[pairs_[d].a] += seed[d];
      deg_[pairs_[d].b] += seed[d];
      used += seed[d];
      if (!vertex_ok(static_cast<int>(d))) return;
    }
    if (used > q_.edges) return;
    edges_rec(static_cast<int>(seed.size()), q_.edges - used);
  }

 private:
  int cap(int d) const { return pairs_[d].a == pairs_[d].b ? loop_cap_ : edge_cap_; }

  bool vertex_ok(int d) const {
    for (int v : pairs_[d].done) {
      if (sorted_ && v > 0 && deg_[v] > deg_[v - 1]) return false;
      if (deg_[v] + std::min(hair_cap_, q_.hairs) < q_.min_valence) return false;
      if (q_.connected && q_.vertices > 1 && deg_[v] == 0) return false;
    }
    return true;
  }

  void edges_rec(int d, int left) {
    if (d == static_cast<int>(pairs_.size())) {
      if (left == 0) {
        hairs_.assign(q_.vertices, 0);
        hairs_rec(0, q_.hairs);
      }
      return;
    }
    const int c = std::min(cap(d), left);
    for (int k = 0; k <= c; ++k) {
      mult_[d] = k;
      deg_[pairs_[d].a] += k;
      deg_[pairs_[d].b] += k;
      if (vertex_ok(d)) edges_rec(d + 1, left - k);
      deg_[pairs_[d].a] -= k;
      deg_[pairs_[d].b] -= k;
    }
    mult_[d] = 0;
  }

  void hairs_rec(int v, int left) {
    if (v == q_.vertices) {
      if (left == 0) emit();
      return;
    }
    const int c = std::min(hair_cap_, left);
    for (int k = 0; k <= c; ++k) {
      if (deg_[v] + k < q_.min_valence) continue;
      if (sorted_ && v > 0 && deg_[v] == deg_[v - 1] && k > hairs_[v - 1]) break;
      hairs_[v] = k;
      hairs_rec(v + 1, left - k);
    }
    hairs_[v] = 0;
  }

  void emit() {
    Graph g;
    g.vertex_count = q_.vertices;
    for (std::size_t d = 0; d < pairs_.size(); ++d)
      for (int k = 0; k < mult_[d]; ++k) g.edges.push_back({pairs_[d].a, pairs_[d].b, pairs_[d].directed});
    for (int v = 0; v < q_.vertices; ++v)
      for (int k = 0; k < hairs_[v]; ++k) g.hairs.push_back(v);
    if (!matches(g, q_)) return;
    Canonical c = canonicalize(g, p_);
    if (c.sign == 0) return;
    found_->emplace(std::move(c.key), std::move(c.graph));
  }

  const BasisParams& q_;
  const ParityProfile& p_;
  std::vector<Pair> pairs_;
  int edge_cap_ = 0, loop_cap_ = 0, hair_cap_ = 0;
  bool sorted_ = true;
  std::vector<int> mult_, deg_, hairs_;
  std::map<GraphKey, Graph>* found_ = nullptr;
};

}  // namespace

Basis enumerate_basis(const BasisParams& q, const ParityProfile& p, int jobs) {
  if (q.vertices < 0 || q.edges < 0 || q.hairs < 0) throw UsageError("negative slice parameter");
  if (q.vertices > vertex_cap())
    throw ResourceError("vertex count " + std::to_string(q.vertices) + " exceeds the cap " +
                        std::to_string(vertex_cap()));
  if (q.edges > 3 * vertex_cap() || q.hairs > 2 * vertex_cap())
    throw ResourceError("slice too large");
  Basis b;
  b.params = q;
  b.parity = p;
  std::map<GraphKey, Graph> found;
  if (q.vertices == 0) {
    if (q.edges == 0 && q.hairs == 2) {
      Canonical c = canonicalize(Graph::line(), p);
      if (c.sign != 0) found.emplace(c.key, c.graph);
    }
  } else {
    Enumerator proto(q, p);
    const auto seeds = proto.seeds(jobs > 1 ? 3 : 0);
    const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(seeds.size())));
    std::atomic<std::size_t> next{0};
    std::mutex mu;
    auto work = [&] {
      Enumerator en(q, p);
      std::map<GraphKey, Graph> local;
      for (std::size_t i = next++; i < seeds.size(); i = next++) en.run(seeds[i], local);
      std::lock_guard<std::mutex> lock(mu);
      found.merge(local);
    };
    if (workers == 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (int i = 0; i < workers; ++i) pool.emplace_back(work);
      for (auto& t : pool) t.join();
    }
  }
  b.graphs.reserve(found.size());
  for (auto& [k, g] : found) b.graphs.push_back({std::move(g), k, 1});
  return b;
}

}  // namespace hgc
