#include "dyncut/audit.hpp"

#include <algorithm>
#include <tuple>

namespace dyncut::audit {

OracleView oracle_view(const DynamicMultiGraph& g) {
  OracleView out;
  for (auto v : g.vertices()) {
    out.index[v] = static_cast<int>(out.ids.size());
    out.ids.push_back(v);
  }
  std::vector<oracle::Edge> edges;
  for (auto h : g.edges())
    edges.push_back({out.index[g.endpoint(h, 0)], out.index[g.endpoint(h, 1)], g.cap(h), h});
  out.g = oracle::Graph(static_cast<int>(out.ids.size()), edges);
  return out;
}

std::vector<EdgeHandle> kruskal_forest(const DynamicMultiGraph& g) {
  auto view = oracle_view(g);
  auto ids = oracle::kruskal_msf(view.g.n(), view.g.edges(), [&](const oracle::Edge& e) {
    return std::pair<std::uint64_t, std::uint64_t>(0, g.stamp(static_cast<EdgeHandle>(e.id)));
  });
  std::vector<EdgeHandle> out(ids.begin(), ids.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t bundle_certificate_violations(const SFBundle& b, const oracle::Budget& budget) {
  auto view = oracle_view(b.graph());
  const auto& es = view.g.edges();
  std::size_t bad = 0;
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (b.in_bundle(static_cast<EdgeHandle>(es[i].id))) continue;
    if (oracle::edge_connectivity(view.g, i, budget) < static_cast<oracle::Weight>(b.depth())) ++bad;
  }
  return bad;
}

bool core_matches_contraction(const JTree& t) {
  auto view = oracle_view(t.graph());
  std::vector<oracle::Edge> forest;
  for (const auto& e : view.g.edges())
    if (t.in_forest(static_cast<EdgeHandle>(e.id))) forest.push_back(e);
  std::vector<int> roots;
  for (auto r : t.roots()) roots.push_back(view.index.at(r));
  auto expect = oracle::contract_from_definition(view.g.n(), view.g.edges(), forest, roots);
  std::vector<std::tuple<std::uint64_t, int, int, oracle::Weight>> got;
  const auto& core = t.core();
  for (auto h : core.edges()) {
    int a = view.index.at(t.root_of_core(core.endpoint(h, 0)));
    int b = view.index.at(t.root_of_core(core.endpoint(h, 1)));
    got.emplace_back(h, std::min(a, b), std::max(a, b), core.cap(h));
  }
  std::sort(got.begin(), got.end());
  return got == expect && core.num_vertices() == roots.size();
}

bool canonical_embedding_feasible(const JTree& t) {
  const auto& g = t.graph();
  std::vector<VertexId> up(g.vertex_bound(), kNoVertex);
  std::vector<EdgeHandle> up_edge(g.vertex_bound(), kNoEdge);
  std::vector<std::uint32_t> depth(g.vertex_bound(), 0);
  for (auto r : t.roots()) {
    std::vector<VertexId> order{r};
    for (std::size_t i = 0; i < order.size(); ++i)
      for (auto h : g.incident(order[i])) {
        VertexId y = g.other(h, order[i]);
        if (!t.in_forest(h) || y == up[order[i]]) continue;
        up[y] = order[i];
        up_edge[y] = h;
        depth[y] = depth[order[i]] + 1;
        order.push_back(y);
      }
  }
  std::vector<Cap> load(g.handle_bound(), 0);
  for (auto h : g.edges()) {
    VertexId a = g.endpoint(h, 0), b = g.endpoint(h, 1);
    Cap c = g.cap(h);
    if (t.in_forest(h)) {
      load[h] += c;
      continue;
    }
    if (t.root_of(a) != t.root_of(b)) {
      for (VertexId x = a; up[x] != kNoVertex; x = up[x]) load[up_edge[x]] += c;
      for (VertexId x = b; up[x] != kNoVertex; x = up[x]) load[up_edge[x]] += c;
      continue;
    }
    while (a != b) {
      if (depth[a] < depth[b]) std::swap(a, b);
      load[up_edge[a]] += c;
      a = up[a];
    }
  }
  for (auto h : g.edges())
    if (t.in_forest(h) && load[h] > t.forest_capacity(h)) return false;
  return true;
}

void for_each_cut(const DynamicMultiGraph& g,
                  const std::function<void(const std::vector<std::uint8_t>&, Cap)>& f,
                  const oracle::Budget& budget) {
  auto view = oracle_view(g);
  std::vector<std::uint8_t> side(g.vertex_bound(), 0);
  oracle::enumerate_cuts(
      view.g,
      [&](std::uint64_t mask, oracle::Weight w) {
        for (std::size_t i = 0; i < view.ids.size(); ++i) side[view.ids[i]] = (mask >> i) & 1;
        f(side, w);
      },
      budget);
}

std::size_t lower_bound_violations(const JTree& t, const oracle::Budget& budget) {
  std::size_t bad = 0;
  for_each_cut(
      t.graph(),
      [&](const std::vector<std::uint8_t>& side, Cap w) {
        if (t.cut_value(side) < w) ++bad;
      },
      budget);
  return bad;
}

std::size_t chain_violations(const Hierarchy& h, const oracle::Budget& budget) {
  std::size_t bad = 0;
  auto chains = h.chains();
  for_each_cut(
      h.graph(),
      [&](const std::vector<std::uint8_t>& side, Cap w) {
        for (const auto& c : chains)
          if (c.cut_value(side) < w) ++bad;
      },
      budget);
  return bad;
}

double worst_average_ratio(const std::vector<JTree>& trees, const oracle::Budget& budget) {
  double worst = 0;
  for_each_cut(
      trees.front().graph(),
      [&](const std::vector<std::uint8_t>& side, Cap w) {
        if (w == 0) return;
        double sum = 0;
        for (const auto& t : trees) sum += static_cast<double>(t.cut_value(side));
        worst = std::max(worst, sum / static_cast<double>(trees.size()) / static_cast<double>(w));
      },
      budget);
  return worst;
}

}  // namespace dyncut::audit
