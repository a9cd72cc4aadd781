#include <chrono>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <tuple>

#include "CLI11.hpp"
#include "hgc/canonical.hpp"
#include "hgc/io.hpp"
#include "hgc/structures.hpp"
#include "hgc/verify.hpp"

using nlohmann::json;
using namespace hgc;

namespace {

struct Global {
  int jobs = 1;
  std::uint64_t seed = 20240601;
  std::string format;  // empty: command default
};

class Clock {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

json ctx_json(const Context& c) { return {{"m", c.m}, {"n", c.n}}; }

void print_sum_text(const GraphSum& x) {
  for (const auto& [k, c] : x.sorted()) std::cout << to_string(c) << "  " << graph_to_text(decode_key(k), x.context()) << "\n";
  if (x.empty()) std::cout << "0\n";
}

// Splits a difference into homogeneous (v, e, h) pieces and solves each one
// over the slice one vertex and one edge smaller.
json coboundary_certificate(const GraphSum& diff, const ComplexContext& cc, int jobs, bool* feasible) {
  std::map<std::tuple<int, int, int>, GraphSum> pieces;
  for (const auto& [k, c] : diff.sorted()) {
    const Graph g = decode_key(k);
    auto key = std::make_tuple(g.vertex_count, g.edge_count(), g.hair_count());
    auto it = pieces.try_emplace(key, diff.context()).first;
    it->second.add_key(k, c);
  }
  json slices = json::array();
  *feasible = true;
  for (const auto& [key, piece] : pieces) {
    const auto [v, e, h] = key;
    json s = {{"slice", {v, e, h}}};
    if (v == 0) {
      // nothing maps onto the line graph
      s["source_size"] = 0;
      s["feasible"] = false;
      *feasible = false;
      slices.push_back(s);
      continue;
    }
    const Basis src = enumerate_basis(cc.slice(v - 1, e - 1, h), cc.parity(), jobs);
    const Coboundary cb = solve_coboundary(src, piece, cc, jobs);
    s["source_slice"] = {v - 1, e - 1, h};
    s["source_size"] = src.size();
    s["rank"] = cb.rank_a;
    s["rank_augmented"] = cb.rank_ab;
    s["feasible"] = cb.feasible;
    if (cb.feasible) s["primitive"] = sum_to_json(cb.primitive);
    *feasible = *feasible && cb.feasible;
    slices.push_back(s);
  }
  return {{"feasible", *feasible}, {"valence", cc.min_valence}, {"slices", slices}};
}

void emit(const json& report, const Global& g, const std::string& default_format) {
  const std::string fmt = g.format.empty() ? default_format : g.format;
  if (fmt == "json") std::cout << report.dump(2) << "\n";
}

MCElement build_mc(const Rational& lambda, int trunc, int jobs) {
  MCElement mc = mc_element_2loop(lambda);
  if (trunc >= 4) mc = mc_extend(mc, 4, jobs);
  return mc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hgc: hairy graph complexes, brackets and Maurer-Cartan elements"};
  app.require_subcommand(1);
  app.fallthrough();
  Global glob;
  app.add_option("--jobs", glob.jobs, "worker threads")->check(CLI::Range(1, 256));
  app.add_option("--seed", glob.seed, "seed for randomized checks");
  app.add_option("--format", glob.format, "output format")->check(CLI::IsMember({"text", "json"}));

  // basis
  auto* basis = app.add_subcommand("basis", "list a basis slice");
  int b_m = 1, b_n = 3, b_v = 0, b_h = 0, b_mv = 1;
  std::optional<int> b_e, b_loops;
  bool b_conn = false, b_acyc = false, b_quot = false;
  basis->add_option("--m", b_m);
  basis->add_option("--n", b_n);
  basis->add_option("--vertices", b_v)->required();
  auto* b_edges_opt = basis->add_option("--edges", b_e);
  basis->add_option("--loops", b_loops)->excludes(b_edges_opt);
  basis->add_option("--hairs", b_h);
  basis->add_flag("--connected", b_conn);
  basis->add_option("--min-valence", b_mv)->check(CLI::IsMember({1, 3}));
  basis->add_flag("--acyclic", b_acyc, "directed acyclic graphs");
  basis->add_flag("--oriented-quotient", b_quot, "every vertex needs an outgoing edge or a hair");

  // bracket
  auto* bracket = app.add_subcommand("bracket", "bracket of two graph sums");
  std::string br_model = "std", br_lambda = "1", br_x, br_y, br_target;
  int br_trunc = 2, br_mv = 1;
  bracket->add_option("x", br_x, "first input file")->required();
  bracket->add_option("y", br_y, "second input file")->required();
  bracket->add_option("--model", br_model)->check(CLI::IsMember({"std", "shoikhet"}));
  bracket->add_option("--trunc-loops", br_trunc)->check(CLI::IsMember({2, 4}));
  bracket->add_option("--lambda", br_lambda);
  bracket->add_option("--mod-exact", br_target, "target file; certify result - target is exact");
  bracket->add_option("--min-valence", br_mv, "valence policy of the certificate")->check(CLI::IsMember({1, 3}));

  // homology
  auto* homology = app.add_subcommand("homology", "homology dimension of one slice");
  std::string h_variant = "hairy";
  int h_m = 1, h_n = 3, h_hairs = 0;
  std::optional<int> h_mv, h_loops, h_degree, h_v, h_e;
  homology->add_option("--variant", h_variant)->check(CLI::IsMember({"hairy", "gc", "gcor"}));
  homology->add_option("--m", h_m);
  homology->add_option("--n", h_n);
  homology->add_option("--hairs", h_hairs);
  homology->add_option("--min-valence", h_mv)->check(CLI::IsMember({1, 3}));
  homology->add_option("--loops", h_loops);
  homology->add_option("--degree", h_degree);
  homology->add_option("--vertices", h_v);
  homology->add_option("--edges", h_e);

  // mc
  auto* mc = app.add_subcommand("mc", "Maurer-Cartan element");
  mc->require_subcommand(1);
  auto* mc_check = mc->add_subcommand("check", "closure residuals");
  int mc_loops = 2, mc_to = 4;
  std::string mc_lambda = "1", mc_out;
  mc_check->add_option("--loops", mc_loops)->check(CLI::IsMember({2, 3, 4}));
  mc_check->add_option("--lambda", mc_lambda);
  auto* mc_ext = mc->add_subcommand("extend", "solve for the next loop orders");
  mc_ext->add_option("--to-loops", mc_to)->check(CLI::Range(2, 4));
  mc_ext->add_option("--lambda", mc_lambda);
  mc_ext->add_option("--output", mc_out, "write the extended element as JSON");

  // cup
  auto* cup = app.add_subcommand("cup", "cup product with a one-hair graph sum");
  std::string c_x, c_x1;
  int c_max = 4;
  cup->add_option("x", c_x)->required();
  cup->add_option("x1", c_x1)->required();
  cup->add_option("--max-order", c_max)->check(CLI::Range(0, 16));

  // verify
  auto* verify = app.add_subcommand("verify", "run the invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Clock clock;
    if (*basis) {
      BasisParams q;
      q.vertices = b_v;
      q.hairs = b_h;
      q.connected = b_conn || b_loops.has_value();
      q.min_valence = b_mv;
      if (b_e) q.edges = *b_e;
      else if (b_loops) q.edges = b_v + *b_loops - 1;
      else throw UsageError("give --edges or --loops");
      if (b_acyc) q.directed = q.acyclic = true;
      q.oriented_quotient = b_quot;
      if (b_quot && !b_acyc) throw UsageError("--oriented-quotient needs --acyclic");
      const Context ctx{b_m, b_n};
      const Basis b = enumerate_basis(q, ParityProfile::from(ctx), glob.jobs);
      const std::string fmt = glob.format.empty() ? "text" : glob.format;
      if (fmt == "text") {
        for (const auto& c : b.graphs) std::cout << graph_to_text(c.graph, ctx) << "\n";
        std::cout << "count " << b.size() << "\n";
      } else {
        json list = json::array();
        for (const auto& c : b.graphs) list.push_back(graph_to_text(c.graph, ctx));
        emit({{"command", "basis"},
              {"context", ctx_json(ctx)},
              {"slice", {q.vertices, q.edges, q.hairs}},
              {"count", b.size()},
              {"graphs", list}},
             glob, "json");
      }
      return 0;
    }

    if (*bracket) {
      const GraphSum x = read_sum_file(br_x), y = read_sum_file(br_y);
      if (!(x.context() == y.context())) throw UsageError("inputs have different contexts");
      const Context ctx = x.context();
      const Rational lambda = parse_rational(br_lambda);
      GraphSum result(ctx);
      if (br_model == "std") {
        result = std_bracket(x, y);
      } else {
        if (ctx.m != 1) throw UsageError("the corrected bracket is defined for m = 1");
        result = shoikhet_bracket(x, y, build_mc(lambda, br_trunc, glob.jobs));
      }
      json report = {{"command", "bracket"},
                     {"context", ctx_json(ctx)},
                     {"model", br_model},
                     {"trunc_loops", br_trunc},
                     {"lambda", to_string(lambda)},
                     {"inputs", {sum_to_json(x), sum_to_json(y)}},
                     {"result", sum_to_json(result)}};
      bool feasible = true;
      if (!br_target.empty()) {
        const GraphSum target = read_sum_file(br_target);
        if (!(target.context() == ctx)) throw UsageError("target has a different context");
        const ComplexContext cc{ctx.m, ctx.n, br_mv};
        json cert = coboundary_certificate(result - target, cc, glob.jobs, &feasible);
        cert["target"] = sum_to_json(target);
        report["certificate"] = cert;
      }
      report["wall_time_s"] = clock.seconds();
      if ((glob.format.empty() ? "json" : glob.format) == "text") {
        print_sum_text(result);
        if (!br_target.empty()) std::cout << "modulo exact terms: " << (feasible ? "feasible" : "infeasible") << "\n";
      } else {
        emit(report, glob, "json");
      }
      return feasible ? 0 : 1;
    }

    if (*homology) {
      ComplexContext cc;
      cc.m = h_m;
      cc.n = h_n;
      int h = 0;
      if (h_variant == "hairy") {
        cc.variant = Variant::Hairy;
        cc.min_valence = h_mv.value_or(1);
        h = h_hairs;
      } else if (h_variant == "gc") {
        cc.variant = Variant::PlainUndirected;
        cc.m = 0;
        cc.min_valence = h_mv.value_or(3);
      } else {
        cc = oriented_complex();
        cc.n = h_n;
        if (h_mv) cc.min_valence = *h_mv;
      }
      int v = 0, e = 0;
      if (h_v && h_e) {
        v = *h_v;
        e = *h_e;
      } else if (h_loops && h_degree) {
        // e = v + g - 1, and the degree is affine in v at fixed g and h
        const int g = *h_loops;
        Graph probe;
        auto deg_at = [&](int vv) {
          probe = Graph{};
          probe.vertex_count = vv;
          probe.edges.assign(vv + g - 1, Edge{});
          probe.hairs.assign(h, 0);
          return cc.variant == Variant::Hairy ? hairy_degree(probe, cc.m, cc.n)
                                              : cc.n * (vv - 1) + (1 - cc.n) * (vv + g - 1);
        };
        const int slope = deg_at(2) - deg_at(1);
        const int diff = *h_degree - deg_at(1);
        if (slope == 0 || diff % slope != 0 || 1 + diff / slope < 1)
          throw UsageError("no slice with that loop order and degree");
        v = 1 + diff / slope;
        e = v + g - 1;
      } else {
        throw UsageError("give --vertices and --edges, or --loops and --degree");
      }
      const Basis prev = v >= 2 ? enumerate_basis(cc.slice(v - 1, e - 1, h), cc.parity(), glob.jobs) : Basis{};
      const Basis cur = enumerate_basis(cc.slice(v, e, h), cc.parity(), glob.jobs);
      const Basis next = enumerate_basis(cc.slice(v + 1, e + 1, h), cc.parity(), glob.jobs);
      const SparseMat d_in = v >= 2 ? differential_matrix(prev, cur, cc, Piece::Full, glob.jobs)
                                    : SparseMat(cur.size(), 0, {});
      const SparseMat d_out = differential_matrix(cur, next, cc, Piece::Full, glob.jobs);
      const int dim = homology_dim(d_in, d_out);
      json report = {{"command", "homology"},
                     {"variant", h_variant},
                     {"context", ctx_json(cc.ctx())},
                     {"min_valence", cc.min_valence},
                     {"slice", {v, e, h}},
                     {"sizes", {prev.size(), cur.size(), next.size()}},
                     {"rank_in", rank(d_in)},
                     {"rank_out", rank(d_out)},
                     {"homology", dim},
                     {"wall_time_s", clock.seconds()}};
      if ((glob.format.empty() ? "json" : glob.format) == "text") {
        std::cout << "slice (" << v << "," << e << "," << h << ") dims " << prev.size() << " " << cur.size() << " "
                  << next.size() << " homology " << dim << "\n";
      } else {
        emit(report, glob, "json");
      }
      return 0;
    }

    if (*mc) {
      const Rational lambda = parse_rational(mc_lambda);
      MCElement el = mc_element_2loop(lambda);
      int loops = mc_loops;
      json report = {{"command", *mc_check ? "mc check" : "mc extend"}, {"lambda", to_string(lambda)}};
      if (*mc_ext) {
        loops = mc_to;
        el = mc_extend(el, mc_to, glob.jobs);
      }
      json residuals = json::object(), terms = json::object();
      bool closed = true;
      for (const auto& [g, r] : mc_residuals(el, loops)) {
        residuals[std::to_string(g)] = r.size();
        closed = closed && r.empty();
      }
      for (const auto& [g, x] : el.terms_by_loop) terms[std::to_string(g)] = x.size();
      report["terms"] = terms;
      report["residual_terms"] = residuals;
      report["closed"] = closed;
      if (*mc_ext && !mc_out.empty()) {
        json out = json::object();
        for (const auto& [g, x] : el.terms_by_loop) out[std::to_string(g)] = sum_to_json(x);
        std::ofstream f(mc_out);
        if (!f) throw UsageError("cannot write " + mc_out);
        f << out.dump(2) << "\n";
      }
      report["wall_time_s"] = clock.seconds();
      if ((glob.format.empty() ? "json" : glob.format) == "text") {
        for (const auto& [g, x] : el.terms_by_loop)
          std::cout << "loop " << g << ": " << x.size() << " terms\n";
        std::cout << (closed ? "closed" : "not closed") << "\n";
      } else {
        emit(report, glob, "json");
      }
      return closed ? 0 : 1;
    }

    if (*cup) {
      const GraphSum x = read_sum_file(c_x), x1 = read_sum_file(c_x1);
      if (!(x.context() == x1.context())) throw UsageError("inputs have different contexts");
      const CupResult r = cup_one_hair(x, x1, c_max);
      json pairs = json::array();
      for (const CupTerm& t : r.disjoint)
        pairs.push_back({{"left", graph_to_text(t.left, x.context())},
                         {"right", graph_to_text(t.right, x.context())},
                         {"coeff", to_string(t.coeff)}});
      json report = {{"command", "cup"},
                     {"context", ctx_json(x.context())},
                     {"max_order", c_max},
                     {"disjoint", pairs},
                     {"chains", sum_to_json(r.chains)},
                     {"wall_time_s", clock.seconds()}};
      if ((glob.format.empty() ? "json" : glob.format) == "text") {
        for (const CupTerm& t : r.disjoint)
          std::cout << to_string(t.coeff) << "  (" << graph_to_text(t.left, x.context()) << ") u ("
                    << graph_to_text(t.right, x.context()) << ")\n";
        print_sum_text(r.chains);
      } else {
        emit(report, glob, "json");
      }
      return 0;
    }

    if (*verify) {
      bool ok = false;
      json report = run_verify({glob.jobs, glob.seed}, &ok);
      report["wall_time_s"] = clock.seconds();
      if ((glob.format.empty() ? "json" : glob.format) == "text") {
        for (const auto& c : report["checks"])
          std::cout << (c["pass"].get<bool>() ? "PASS " : "FAIL ") << c["name"].get<std::string>() << ": "
                    << c["detail"].get<std::string>() << "\n";
      } else {
        emit(report, glob, "json");
      }
      return ok ? 0 : 1;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConsistencyError& e) {
    std::cerr << "consistency failure: " << e.what() << "\n";
    return 1;
  } catch (const CompletenessError& e) {
    std::cerr << "consistency failure: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
