#pragma once

// Text formats. Graph files: a header "n m", then m lines "u v cap". Update
// streams: "I u v cap", "D u v", "S v k h1 ... hk" and the query lines
// "Q ST s t", "Q SC", "Q MWC k t1 ... tk", "Q MC k s1 t1 ... sk tk".
// Vertices are 0-based; edge handles number the graph's edges in file order,
// followed by stream insertions in order. Blank lines and '#' comments are
// skipped. Capacities may be decimals; they are multiplied by an integer
// scale and must come out integral.

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dyncut/graph.hpp"

namespace dyncut::io {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

Cap parse_capacity(std::string_view text, Cap scale);

DynamicMultiGraph read_graph(std::istream& in, Cap scale = 1);
// Writes g in the graph file format; vertex ids are written as they are.
void write_graph(std::ostream& out, const DynamicMultiGraph& g);

enum class QueryKind { MinCut, Sparsest, Multiway, Multicut };

struct Query {
  QueryKind kind = QueryKind::MinCut;
  std::vector<VertexId> vertices;  // multicut: s1 t1 s2 t2 ...
};

struct StreamOp {
  std::size_t line = 0;
  char op = 0;  // 'I', 'D', 'S' or 'Q'
  VertexId u = kNoVertex;
  VertexId v = kNoVertex;
  Cap cap = 0;
  std::vector<EdgeHandle> handles;
  Query query;
};

std::vector<StreamOp> read_stream(std::istream& in, Cap scale = 1);

// The graph update an I/D/S line stands for on the current graph. D removes
// the lowest live handle between u and v. S moves the smaller of the listed
// set and its complement.
GraphUpdate resolve_update(const DynamicMultiGraph& g, const StreamOp& op);
// Checks that the query names live, distinct vertices.
void check_query(const DynamicMultiGraph& g, const StreamOp& op);

const char* query_name(QueryKind k);

}  // namespace dyncut::io
