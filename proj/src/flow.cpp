#include "dyncut/flow.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/push_relabel_max_flow.hpp>
#include <stdexcept>

namespace dyncut {

namespace {

using Traits = boost::adjacency_list_traits<boost::vecS, boost::vecS, boost::directedS>;
using Graph = boost::adjacency_list<
    boost::vecS, boost::vecS, boost::directedS, boost::no_property,
    boost::property<boost::edge_capacity_t, Cap,
                    boost::property<boost::edge_residual_capacity_t, Cap,
                                    boost::property<boost::edge_reverse_t, Traits::edge_descriptor>>>>;

}  // namespace

FlowCut undirected_max_flow(std::size_t n, const std::vector<FlowEdge>& edges,
                            std::uint32_t s, std::uint32_t t) {
  if (s >= n || t >= n || s == t) throw std::invalid_argument("bad flow terminals");
  Graph g(n);
  auto cap = boost::get(boost::edge_capacity, g);
  auto rev = boost::get(boost::edge_reverse, g);
  auto res = boost::get(boost::edge_residual_capacity, g);
  auto arc = [&](std::uint32_t u, std::uint32_t v, Cap c) {
    auto a = boost::add_edge(u, v, g).first;
    auto b = boost::add_edge(v, u, g).first;
    cap[a] = c;
    cap[b] = 0;
    rev[a] = b;
    rev[b] = a;
  };
  for (const auto& e : edges) {
    if (e.u == e.v) continue;
    arc(e.u, e.v, e.cap);
    arc(e.v, e.u, e.cap);
  }
  FlowCut out;
  out.value = boost::push_relabel_max_flow(g, s, t);
  out.source_side.assign(n, 0);
  std::vector<std::uint32_t> stack{s};
  out.source_side[s] = 1;
  while (!stack.empty()) {
    auto x = stack.back();
    stack.pop_back();
    for (auto [it, end] = boost::out_edges(x, g); it != end; ++it) {
      auto y = static_cast<std::uint32_t>(boost::target(*it, g));
      if (res[*it] > 0 && !out.source_side[y]) {
        out.source_side[y] = 1;
        stack.push_back(y);
      }
    }
  }
  return out;
}

}  // namespace dyncut
