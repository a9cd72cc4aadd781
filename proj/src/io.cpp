#include "hgc/io.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "hgc/canonical.hpp"

namespace hgc {

namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view s, const char* what) {
  s = trim(s);
  if (s.empty()) throw UsageError(std::string("missing integer for ") + what);
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(std::string(s), &used);
  } catch (const std::exception&) {
    throw UsageError(std::string("bad integer for ") + what + ": " + std::string(s));
  }
  if (used != s.size()) throw UsageError(std::string("bad integer for ") + what + ": " + std::string(s));
  return v;
}

std::vector<std::string_view> split_list(std::string_view body) {
  std::vector<std::string_view> out;
  body = trim(body);
  if (body.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = body.find(',', start);
    out.push_back(trim(body.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

// Splits "G k=v k=[a, b] LINE" into the tag, key/value fields and flags.
struct Fields {
  std::map<std::string, std::string> kv;
  bool line = false;
};

Fields tokenize(std::string_view text) {
  text = trim(text);
  Fields f;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  if (text.substr(i, 4) == "LINE" && trim(text.substr(i + 4)).empty()) {
    f.line = true;
    return f;
  }
  if (i >= text.size() || text[i] != 'G') throw UsageError("graph text must start with G");
  ++i;
  while (true) {
    skip_ws();
    if (i >= text.size()) break;
    if (text.substr(i, 4) == "LINE") {
      f.line = true;
      i += 4;
      continue;
    }
    const std::size_t eq = text.find('=', i);
    if (eq == std::string_view::npos) throw UsageError("expected key=value in graph text");
    std::string key(trim(text.substr(i, eq - i)));
    i = eq + 1;
    std::string value;
    if (i < text.size() && text[i] == '[') {
      const std::size_t close = text.find(']', i);
      if (close == std::string_view::npos) throw UsageError("unterminated list in graph text");
      value = std::string(text.substr(i + 1, close - i - 1));
      i = close + 1;
    } else {
      const std::size_t end = i;
      while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
      value = std::string(text.substr(end, i - end));
    }
    if (!f.kv.emplace(key, value).second) throw UsageError("duplicate key " + key);
  }
  return f;
}

std::optional<std::string> take(Fields& f, const std::string& key) {
  auto it = f.kv.find(key);
  if (it == f.kv.end()) return std::nullopt;
  std::string v = it->second;
  f.kv.erase(it);
  return v;
}

Edge parse_edge(std::string_view tok) {
  const std::size_t pos = tok.find_first_of("->");
  if (pos == std::string_view::npos) throw UsageError("bad edge: " + std::string(tok));
  Edge e;
  e.directed = tok[pos] == '>';
  e.s = parse_int(tok.substr(0, pos), "edge source");
  e.t = parse_int(tok.substr(pos + 1), "edge target");
  return e;
}

std::string edges_text(const std::vector<Edge>& es) {
  std::string s = "[";
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(es[i].s) + (es[i].directed ? ">" : "-") + std::to_string(es[i].t);
  }
  return s + "]";
}

void check_no_leftovers(const Fields& f) {
  if (!f.kv.empty()) throw UsageError("unknown key in graph text: " + f.kv.begin()->first);
}

}  // namespace

std::string graph_to_text(const Graph& g, const Context& ctx) {
  std::string s = "G m=" + std::to_string(ctx.m) + " n=" + std::to_string(ctx.n);
  if (g.is_line) return s + " LINE";
  s += " v=" + std::to_string(g.vertex_count) + " h=[";
  for (std::size_t i = 0; i < g.hairs.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(g.hairs[i]);
  }
  return s + "] e=" + edges_text(g.edges);
}

ParsedGraph parse_graph_text(std::string_view line) {
  Fields f = tokenize(line);
  ParsedGraph out;
  if (auto m = take(f, "m")) out.ctx.m = parse_int(*m, "m");
  if (auto n = take(f, "n")) out.ctx.n = parse_int(*n, "n");
  if (f.line) {
    check_no_leftovers(f);
    out.graph = Graph::line();
    return out;
  }
  auto v = take(f, "v");
  if (!v) throw UsageError("graph text needs v=");
  out.graph.vertex_count = parse_int(*v, "v");
  if (auto h = take(f, "h"))
    for (auto tok : split_list(*h)) out.graph.hairs.push_back(parse_int(tok, "hair"));
  if (auto e = take(f, "e"))
    for (auto tok : split_list(*e)) out.graph.edges.push_back(parse_edge(tok));
  check_no_leftovers(f);
  try {
    out.graph.validate();
  } catch (const StructuralError& err) {
    throw UsageError(err.what());
  }
  return out;
}

json graph_to_json(const Graph& g, const Context& ctx) {
  json j;
  j["m"] = ctx.m;
  j["n"] = ctx.n;
  j["line"] = g.is_line;
  j["v"] = g.vertex_count;
  j["hairs"] = g.hairs;
  json es = json::array();
  for (const Edge& e : g.edges) es.push_back({{"s", e.s}, {"t", e.t}, {"dir", e.directed}});
  j["edges"] = es;
  return j;
}

ParsedGraph parse_graph_json(const json& j) {
  try {
    ParsedGraph out;
    out.ctx.m = j.value("m", 1);
    out.ctx.n = j.value("n", 3);
    if (j.value("line", false)) {
      out.graph = Graph::line();
      return out;
    }
    out.graph.vertex_count = j.at("v").get<int>();
    if (j.contains("hairs")) out.graph.hairs = j.at("hairs").get<std::vector<int>>();
    if (j.contains("edges"))
      for (const auto& e : j.at("edges"))
        out.graph.edges.push_back({e.at("s").get<int>(), e.at("t").get<int>(), e.value("dir", false)});
    out.graph.validate();
    return out;
  } catch (const json::exception& err) {
    throw UsageError(std::string("bad graph JSON: ") + err.what());
  } catch (const StructuralError& err) {
    throw UsageError(err.what());
  }
}

ParsedGraph parse_graph(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '{') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& err) {
      throw UsageError(std::string("bad JSON: ") + err.what());
    }
    return parse_graph_json(j);
  }
  return parse_graph_text(text);
}

std::string action_to_text(const ActionGraph& a) {
  std::string s = "G v=" + std::to_string(a.vertex_count) + " c=[";
  for (int v = 0; v < a.vertex_count; ++v) {
    if (v) s += ",";
    s += a.is_black(v) ? "b" : "w";
  }
  s += "] e=[";
  for (std::size_t i = 0; i < a.edges.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(a.edges[i].first) + ">" + std::to_string(a.edges[i].second);
  }
  return s + "]";
}

ActionGraph parse_action_text(std::string_view line) {
  Fields f = tokenize(line);
  if (f.line) throw UsageError("an action graph cannot be the line graph");
  ActionGraph a;
  auto v = take(f, "v");
  if (!v) throw UsageError("action graph needs v=");
  a.vertex_count = parse_int(*v, "v");
  if (a.vertex_count < 0) throw UsageError("negative vertex count");
  a.black.assign(a.vertex_count, false);
  if (auto c = take(f, "c")) {
    const auto toks = split_list(*c);
    if (static_cast<int>(toks.size()) != a.vertex_count) throw UsageError("colour list length must equal v");
    for (int i = 0; i < a.vertex_count; ++i) {
      if (toks[i] == "b") a.black[i] = true;
      else if (toks[i] != "w") throw UsageError("colours are w or b");
    }
  }
  if (auto e = take(f, "e")) {
    for (auto tok : split_list(*e)) {
      const Edge ed = parse_edge(tok);
      if (!ed.directed) throw UsageError("action graph edges are directed (s>t)");
      if (ed.s < 0 || ed.t < 0 || ed.s >= a.vertex_count || ed.t >= a.vertex_count || ed.s == ed.t)
        throw UsageError("bad action graph edge: " + std::string(tok));
      a.edges.emplace_back(ed.s, ed.t);
    }
  }
  check_no_leftovers(f);
  return a;
}

json sum_to_json(const GraphSum& x) {
  json terms = json::array();
  for (const auto& [key, c] : x.sorted())
    terms.push_back({{"graph", graph_to_text(decode_key(key), x.context())}, {"coeff", to_string(c)}});
  return {{"context", {{"m", x.context().m}, {"n", x.context().n}}}, {"terms", terms}};
}

GraphSum sum_from_json(const json& j) {
  try {
    Context ctx{j.at("context").at("m").get<int>(), j.at("context").at("n").get<int>()};
    GraphSum out(ctx);
    for (const auto& t : j.at("terms")) {
      ParsedGraph pg = t.at("graph").is_string() ? parse_graph_text(t.at("graph").get<std::string>())
                                                  : parse_graph_json(t.at("graph"));
      if (!(pg.ctx == ctx)) throw UsageError("term context differs from the sum context");
      const json& c = t.at("coeff");
      out.add(pg.graph, c.is_string() ? parse_rational(c.get<std::string>()) : Rational(c.get<long>()));
    }
    return out;
  } catch (const json::exception& err) {
    throw UsageError(std::string("bad GraphSum JSON: ") + err.what());
  }
}

GraphSum parse_sum(std::string_view text) {
  const std::string_view t = trim(text);
  if (!t.empty() && t.front() == '{') {
    json j;
    try {
      j = json::parse(t);
    } catch (const json::exception& err) {
      throw UsageError(std::string("bad JSON: ") + err.what());
    }
    if (j.contains("terms")) return sum_from_json(j);
    const ParsedGraph pg = parse_graph_json(j);
    return GraphSum(pg.ctx, pg.graph);
  }
  std::optional<GraphSum> out;
  std::istringstream in{std::string(t)};
  std::string line;
  while (std::getline(in, line)) {
    std::string_view l = trim(line);
    if (l.empty() || l.front() == '#') continue;
    Rational c = 1;
    const std::size_t g = l.find_first_of("GL");
    if (g == std::string_view::npos) throw UsageError("no graph on line: " + line);
    if (g > 0) c = parse_rational(trim(l.substr(0, g)));
    const ParsedGraph pg = parse_graph_text(l.substr(g));
    if (!out) out.emplace(pg.ctx);
    else if (!(out->context() == pg.ctx)) throw UsageError("mixed contexts in one input");
    out->add(pg.graph, c);
  }
  if (!out) throw UsageError("no graphs in input");
  return *out;
}

GraphSum read_sum_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_sum(ss.str());
}

}  // namespace hgc
