#pragma once

// Sign bookkeeping shared by all graph operations. An operation lays out the
// orientation objects of its inputs as a word of graded tokens, performs
// moves/contractions that are tracked with Koszul signs, and finally reads
// the surviving tokens off as an output graph in block order
// (vertices, edges, hairs).

#include <vector>

#include "hgc/graph.hpp"
#include "hgc/parity.hpp"

namespace hgc::detail {

enum class Tok : unsigned char {
  Vertex,    // id = global vertex
  Edge,      // id = edge record
  HairEdge,  // id = hair record; edge part of a hair
  Point,     // id = hair record; external point of a hair
  LineEdge,  // id = line record
  Op,        // operation-owned token (shift, action edge, slot)
};

struct Token {
  Tok kind;
  int id;
  bool odd;
};

struct EdgeRec {
  int s, t;
  bool directed;
};

struct HairRec {
  int anchor;       // global vertex, or -1 for an end of a line graph
  int attach = -1;  // vertex the external point was glued to
  int line = -1;    // owning line record for line ends
  bool consumed = false;
};

struct LineRec {
  int end0, end1;  // hair records
};

class Assembly {
 public:
  explicit Assembly(const ParityProfile& p) : p_(p) {}

  const ParityProfile& parity() const { return p_; }

  /// Appends the orientation word of g; returns the global id of its vertex 0.
  int append_graph(const Graph& g);
  int first_hair_of_last_graph() const { return last_hair_base_; }
  int first_edge_of_last_graph() const { return last_edge_base_; }

  int new_vertex();
  int new_edge(int s, int t, bool directed);
  void push_token(Token t, int position = -1);  // -1: append
  int push_op(bool odd, int position = -1);

  int find(Tok kind, int id) const;
  /// Moves the token at `from` so that it ends up at index `to` of the
  /// resulting word.
  void move(int from, int to);
  void erase(int index) { word_.erase(word_.begin() + index); }

  /// Moves the hair's external point right after the token at `op_index`,
  /// deletes both and records that the hair is glued to vertex v.
  void contract_hair(int op_index, int hair, int v);
  /// Moves an op token to the front and deletes it.
  void drop_op_to_front(int op_index);

  std::vector<EdgeRec>& edges() { return edges_; }
  std::vector<HairRec>& hairs() { return hairs_; }
  std::vector<LineRec>& lines() { return lines_; }
  int vertex_total() const { return vertex_total_; }

  void negate() { sign_ = -sign_; }
  int sign() const { return sign_; }

  /// Normalizes the surviving tokens into block order and builds the graph.
  /// Returns the sign (0 only if a degenerate word remains).
  int finish(Graph& out, bool undirected_glue = true);

  const std::vector<Token>& word() const { return word_; }

 private:
  ParityProfile p_;
  std::vector<Token> word_;
  std::vector<EdgeRec> edges_;
  std::vector<HairRec> hairs_;
  std::vector<LineRec> lines_;
  int vertex_total_ = 0;
  int op_count_ = 0;
  int last_hair_base_ = 0;
  int last_edge_base_ = 0;
  int sign_ = 1;
};

}  // namespace hgc::detail
