#include "dyncut/io.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <limits>
#include <ostream>
#include <cctype>

namespace dyncut::io {

namespace {

std::vector<std::string_view> tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i >= s.size() || s[i] == '#') break;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

template <class T>
T number(std::string_view t, std::size_t line, const char* what) {
  T x{};
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), x);
  if (ec != std::errc() || p != t.data() + t.size())
    throw ParseError(line, std::string("bad ") + what + " '" + std::string(t) + "'");
  return x;
}

// Next line with content, or false at end of input.
bool next_line(std::istream& in, std::string& buf, std::size_t& line, std::vector<std::string_view>& tok) {
  while (std::getline(in, buf)) {
    ++line;
    tok = tokens(buf);
    if (!tok.empty()) return true;
  }
  return false;
}

}  // namespace

Cap parse_capacity(std::string_view text, Cap scale) {
  if (scale <= 0) throw std::invalid_argument("capacity scale must be positive");
  std::string_view whole = text, frac;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    whole = text.substr(0, dot);
    frac = text.substr(dot + 1);
  }
  if (whole.empty() && frac.empty()) throw std::invalid_argument("empty capacity");
  auto digits = [](std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  if (!digits(whole) || !digits(frac) || frac.size() > 18)
    throw std::invalid_argument("bad capacity '" + std::string(text) + "'");
  __int128 num = 0, den = 1;
  for (char c : whole) {
    num = num * 10 + (c - '0');
    if (num > std::numeric_limits<Cap>::max()) throw std::invalid_argument("capacity too large");
  }
  for (char c : frac) {
    num = num * 10 + (c - '0');
    den *= 10;
  }
  num *= scale;
  if (num % den != 0)
    throw std::invalid_argument("capacity '" + std::string(text) + "' is not integral at scale " +
                                std::to_string(scale));
  num /= den;
  if (num <= 0) throw std::invalid_argument("capacity must be positive");
  if (num > std::numeric_limits<Cap>::max() / 4) throw std::invalid_argument("capacity too large");
  return static_cast<Cap>(num);
}

DynamicMultiGraph read_graph(std::istream& in, Cap scale) {
  std::string buf;
  std::size_t line = 0;
  std::vector<std::string_view> tok;
  if (!next_line(in, buf, line, tok)) throw ParseError(line, "missing header 'n m'");
  if (tok.size() != 2) throw ParseError(line, "header must be 'n m'");
  auto n = number<std::uint32_t>(tok[0], line, "vertex count");
  auto m = number<std::size_t>(tok[1], line, "edge count");
  DynamicMultiGraph g(n);
  for (std::size_t i = 0; i < m; ++i) {
    if (!next_line(in, buf, line, tok)) throw ParseError(line, "expected " + std::to_string(m) + " edges");
    if (tok.size() != 3) throw ParseError(line, "edge line must be 'u v cap'");
    auto u = number<VertexId>(tok[0], line, "vertex");
    auto v = number<VertexId>(tok[1], line, "vertex");
    if (u >= n || v >= n) throw ParseError(line, "vertex out of range");
    if (u == v) throw ParseError(line, "self-loop");
    try {
      g.insert_edge(u, v, parse_capacity(tok[2], scale));
    } catch (const std::invalid_argument& e) {
      throw ParseError(line, e.what());
    }
  }
  if (next_line(in, buf, line, tok)) throw ParseError(line, "trailing content after the edges");
  g.reset_counters();
  return g;
}

void write_graph(std::ostream& out, const DynamicMultiGraph& g) {
  out << g.vertex_bound() << ' ' << g.num_edges() << '\n';
  for (auto h : g.edges()) out << g.endpoint(h, 0) << ' ' << g.endpoint(h, 1) << ' ' << g.cap(h) << '\n';
}

std::vector<StreamOp> read_stream(std::istream& in, Cap scale) {
  std::vector<StreamOp> out;
  std::string buf;
  std::size_t line = 0;
  std::vector<std::string_view> tok;
  while (next_line(in, buf, line, tok)) {
    StreamOp op;
    op.line = line;
    auto want = [&](std::size_t k, const char* shape) {
      if (tok.size() != k) throw ParseError(line, std::string("expected '") + shape + "'");
    };
    auto vertex = [&](std::size_t i) { return number<VertexId>(tok[i], line, "vertex"); };
    if (tok[0] == "I") {
      want(4, "I u v cap");
      op.op = 'I';
      op.u = vertex(1);
      op.v = vertex(2);
      try {
        op.cap = parse_capacity(tok[3], scale);
      } catch (const std::invalid_argument& e) {
        throw ParseError(line, e.what());
      }
    } else if (tok[0] == "D") {
      want(3, "D u v");
      op.op = 'D';
      op.u = vertex(1);
      op.v = vertex(2);
    } else if (tok[0] == "S") {
      if (tok.size() < 3) throw ParseError(line, "expected 'S v k h1 ... hk'");
      op.op = 'S';
      op.u = vertex(1);
      auto k = number<std::size_t>(tok[2], line, "count");
      want(3 + k, "S v k h1 ... hk");
      for (std::size_t i = 0; i < k; ++i) op.handles.push_back(number<EdgeHandle>(tok[3 + i], line, "handle"));
    } else if (tok[0] == "Q") {
      if (tok.size() < 2) throw ParseError(line, "expected a query kind");
      op.op = 'Q';
      auto& q = op.query;
      if (tok[1] == "ST") {
        want(4, "Q ST s t");
        q.kind = QueryKind::MinCut;
        q.vertices = {vertex(2), vertex(3)};
      } else if (tok[1] == "SC") {
        want(2, "Q SC");
        q.kind = QueryKind::Sparsest;
      } else if (tok[1] == "MWC" || tok[1] == "MC") {
        bool mc = tok[1] == "MC";
        if (tok.size() < 3) throw ParseError(line, "expected a terminal count");
        auto k = number<std::size_t>(tok[2], line, "count");
        if (k == 0 || (!mc && k < 2)) throw ParseError(line, "too few terminals");
        want(3 + (mc ? 2 * k : k), mc ? "Q MC k s1 t1 ... sk tk" : "Q MWC k t1 ... tk");
        q.kind = mc ? QueryKind::Multicut : QueryKind::Multiway;
        for (std::size_t i = 3; i < tok.size(); ++i) q.vertices.push_back(vertex(i));
      } else {
        throw ParseError(line, "unknown query '" + std::string(tok[1]) + "'");
      }
    } else {
      throw ParseError(line, "unknown operation '" + std::string(tok[0]) + "'");
    }
    out.push_back(std::move(op));
  }
  return out;
}

GraphUpdate resolve_update(const DynamicMultiGraph& g, const StreamOp& op) {
  auto live = [&](VertexId v) {
    if (!g.has_vertex(v)) throw ParseError(op.line, "unknown vertex " + std::to_string(v));
  };
  switch (op.op) {
    case 'I':
      live(op.u);
      live(op.v);
      if (op.u == op.v) throw ParseError(op.line, "self-loop");
      return EdgeInsert{op.u, op.v, op.cap};
    case 'D': {
      live(op.u);
      live(op.v);
      EdgeHandle best = kNoEdge;
      for (auto h : g.incident(op.u))
        if (g.other(h, op.u) == op.v) best = std::min(best, h);
      if (best == kNoEdge) throw ParseError(op.line, "no edge between the given vertices");
      return EdgeDelete{best};
    }
    case 'S': {
      live(op.u);
      std::vector<EdgeHandle> moved = op.handles;
      std::sort(moved.begin(), moved.end());
      if (std::adjacent_find(moved.begin(), moved.end()) != moved.end())
        throw ParseError(op.line, "repeated handle in split");
      const auto& inc = g.incident(op.u);
      for (auto h : moved)
        if (std::find(inc.begin(), inc.end(), h) == inc.end())
          throw ParseError(op.line, "handle " + std::to_string(h) + " is not incident to the split vertex");
      if (2 * moved.size() > inc.size()) {
        std::vector<EdgeHandle> rest;
        for (auto h : inc)
          if (!std::binary_search(moved.begin(), moved.end(), h)) rest.push_back(h);
        std::sort(rest.begin(), rest.end());
        moved = std::move(rest);
      }
      return VertexSplit{op.u, kNoVertex, moved};
    }
    default:
      throw ParseError(op.line, "not an update");
  }
}

void check_query(const DynamicMultiGraph& g, const StreamOp& op) {
  auto vs = op.query.vertices;
  for (auto v : vs)
    if (!g.has_vertex(v)) throw ParseError(op.line, "unknown vertex " + std::to_string(v));
  if (op.query.kind == QueryKind::Multicut) {
    for (std::size_t i = 0; i + 1 < vs.size(); i += 2)
      if (vs[i] == vs[i + 1]) throw ParseError(op.line, "pair with equal ends");
    return;
  }
  std::sort(vs.begin(), vs.end());
  if (std::adjacent_find(vs.begin(), vs.end()) != vs.end()) throw ParseError(op.line, "repeated terminal");
  if (op.query.kind == QueryKind::Sparsest && g.num_vertices() < 2)
    throw ParseError(op.line, "sparsest cut needs two vertices");
}

const char* query_name(QueryKind k) {
  switch (k) {
    case QueryKind::MinCut: return "ST";
    case QueryKind::Sparsest: return "SC";
    case QueryKind::Multiway: return "MWC";
    case QueryKind::Multicut: return "MC";
  }
  return "?";
}

}  // namespace dyncut::io
