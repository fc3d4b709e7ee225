#include "dyncut/queries.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

#include "dyncut/flow.hpp"
#include "dyncut/jtree.hpp"
#include "dyncut/lsst.hpp"

namespace dyncut {

namespace {

// Stacked forest of a chain, rooted at the chain roots.
struct ChainForest {
  std::vector<VertexId> parent, root;
  std::vector<EdgeHandle> parent_edge;
  std::vector<std::uint32_t> depth;

  explicit ChainForest(const ChainGraph& c) {
    const auto& g = c.graph;
    std::size_t nb = g.vertex_bound();
    parent.assign(nb, kNoVertex);
    root.assign(nb, kNoVertex);
    parent_edge.assign(nb, kNoEdge);
    depth.assign(nb, 0);
    for (auto r : c.roots()) {
      std::vector<VertexId> order{r};
      root[r] = r;
      for (std::size_t i = 0; i < order.size(); ++i) {
        VertexId x = order[i];
        for (auto h : g.incident(x)) {
          if (!c.forest_edge(h) || h == parent_edge[x]) continue;
          VertexId y = g.other(h, x);
          parent[y] = x;
          parent_edge[y] = h;
          depth[y] = depth[x] + 1;
          root[y] = r;
          order.push_back(y);
        }
      }
    }
  }

  // Vertices of the component hanging below v (v included).
  std::vector<VertexId> below(const ChainGraph& c, VertexId v) const {
    std::vector<VertexId> out{v};
    for (std::size_t i = 0; i < out.size(); ++i)
      for (auto h : c.graph.incident(out[i])) {
        if (!c.forest_edge(h) || h == parent_edge[out[i]]) continue;
        out.push_back(c.graph.other(h, out[i]));
      }
    return out;
  }

  std::vector<VertexId> component_of_roots(const ChainGraph& c, const std::vector<VertexId>& roots) const {
    std::vector<VertexId> out;
    for (auto r : roots) {
      auto part = below(c, r);
      out.insert(out.end(), part.begin(), part.end());
    }
    std::sort(out.begin(), out.end());
    return out;
  }
};

bool lighter(const DynamicMultiGraph& g, EdgeHandle a, EdgeHandle b) {
  if (b == kNoEdge) return true;
  return g.cap(a) < g.cap(b) || (g.cap(a) == g.cap(b) && a < b);
}

// Core of a chain as its own graph over the root ids.
DynamicMultiGraph core_graph(const ChainGraph& c) {
  DynamicMultiGraph core;
  for (auto r : c.roots()) core.ensure_vertex(r);
  for (auto h : c.graph.edges())
    if (!c.forest_edge(h))
      core.insert_edge_with_handle(h, c.graph.endpoint(h, 0), c.graph.endpoint(h, 1), c.graph.cap(h));
  return core;
}

// Core edges as a flow network over dense indices.
struct CoreNetwork {
  std::vector<VertexId> ids;
  std::map<VertexId, std::uint32_t> index;
  std::vector<FlowEdge> edges;
  std::vector<EdgeHandle> handles;

  explicit CoreNetwork(const ChainGraph& c) {
    for (auto r : c.roots()) {
      index[r] = static_cast<std::uint32_t>(ids.size());
      ids.push_back(r);
    }
    for (auto h : c.graph.edges()) {
      if (c.forest_edge(h)) continue;
      edges.push_back({index.at(c.graph.endpoint(h, 0)), index.at(c.graph.endpoint(h, 1)), c.graph.cap(h)});
      handles.push_back(h);
    }
  }
};

Fraction sparsity_of(const DynamicMultiGraph& g, const std::vector<VertexId>& side) {
  std::int64_t s = static_cast<std::int64_t>(side.size());
  std::int64_t n = static_cast<std::int64_t>(g.num_vertices());
  return {g.cut_value(side), std::min(s, n - s)};
}

// Labels every G vertex by its component in the chain graph without `removed`.
std::vector<std::uint32_t> labels_without(const ChainGraph& c, const std::vector<std::uint8_t>& removed) {
  const auto& g = c.graph;
  std::vector<std::uint32_t> label(g.vertex_bound(), kNoVertex);
  std::uint32_t next = 0;
  for (auto v : g.vertices()) {
    if (label[v] != kNoVertex) continue;
    std::vector<VertexId> stack{v};
    label[v] = next;
    while (!stack.empty()) {
      VertexId x = stack.back();
      stack.pop_back();
      for (auto h : g.incident(x)) {
        if (h < removed.size() && removed[h]) continue;
        VertexId y = g.other(h, x);
        if (label[y] == kNoVertex) {
          label[y] = next;
          stack.push_back(y);
        }
      }
    }
    ++next;
  }
  return label;
}

Cap partition_cost(const DynamicMultiGraph& g, const std::vector<std::uint32_t>& label) {
  Cap total = 0;
  for (auto h : g.edges())
    if (label[g.endpoint(h, 0)] != label[g.endpoint(h, 1)]) total += g.cap(h);
  return total;
}

std::size_t tree_count(const QueryOptions& opt, std::size_t n) {
  if (opt.trees) return opt.trees;
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::log2(std::max<std::size_t>(n, 2)))));
}

std::vector<TreeSample> core_trees(const DynamicMultiGraph& core, const QueryOptions& opt, std::size_t n) {
  if (core.num_edges() == 0) return {TreeSample{}};
  MwuConfig mc;
  mc.seed = opt.seed;
  mc.min_trees = tree_count(opt, n);
  mc.max_trees = mc.min_trees;
  return mwu_build(core, 1, mc).trees;
}

}  // namespace

ForestCutTracker::ForestCutTracker(const ChainGraph& chain) {
  const auto& g = chain.graph;
  total_ = static_cast<std::int64_t>(g.num_vertices());
  cap_.assign(g.handle_bound(), 0);
  key_.assign(g.handle_bound(), {});
  live_.assign(g.handle_bound(), 0);
  ChainForest f(chain);
  parent_ = f.parent;
  parent_edge_ = f.parent_edge;
  for (auto v : g.vertices()) ett_.ensure_vertex(v);
  std::vector<VertexId> order;
  for (auto r : chain.roots()) {
    order.assign(1, r);
    for (std::size_t i = 0; i < order.size(); ++i)
      for (auto h : g.incident(order[i])) {
        if (!chain.forest_edge(h) || h == parent_edge_[order[i]]) continue;
        VertexId y = g.other(h, order[i]);
        ett_.link(y, order[i], h);
        cap_[h] = g.cap(h);
        live_[h] = 1;
        order.push_back(y);
      }
  }
  for (auto h : g.edges())
    if (live_[h]) {
      key_[h] = compute(h);
      heap_.insert({key_[h], h});
    }
}

Fraction ForestCutTracker::compute(EdgeHandle e) const {
  std::int64_t s = ett_.size_below(e);
  return {cap_[e], std::min(s, total_ - s)};
}

Fraction ForestCutTracker::sparsity(EdgeHandle e) const { return key_.at(e); }

std::vector<VertexId> ForestCutTracker::side(EdgeHandle e) const {
  auto [a, b] = ett_.edge_ends(e);
  VertexId child = parent_edge_[a] == e ? a : b;
  auto out = ett_.vertices_in_subtree(child);
  std::sort(out.begin(), out.end());
  return out;
}

void ForestCutTracker::refresh_path(VertexId x) {
  for (; parent_edge_[x] != kNoEdge && live_[parent_edge_[x]]; x = parent_[x]) {
    EdgeHandle e = parent_edge_[x];
    heap_.erase({key_[e], e});
    key_[e] = compute(e);
    heap_.insert({key_[e], e});
  }
}

void ForestCutTracker::erase(EdgeHandle e) {
  if (e >= live_.size() || !live_[e]) throw std::invalid_argument("not a live forest edge");
  auto [a, b] = ett_.edge_ends(e);
  VertexId child = parent_edge_[a] == e ? a : b;
  VertexId up = parent_[child];
  heap_.erase({key_[e], e});
  ett_.cut(e);
  live_[e] = 0;
  refresh_path(up);
}

std::pair<Fraction, EdgeHandle> ForestCutTracker::recompute() const {
  std::pair<Fraction, EdgeHandle> best{{1, 0}, kNoEdge};
  for (EdgeHandle h = 0; h < live_.size(); ++h) {
    if (!live_[h]) continue;
    std::pair<Fraction, EdgeHandle> x{compute(h), h};
    if (best.second == kNoEdge || x < best) best = x;
  }
  return best;
}

QueryReport min_cut(const Hierarchy& h, VertexId s, VertexId t) {
  const auto& g = h.graph();
  if (s == t || !g.has_vertex(s) || !g.has_vertex(t)) throw std::invalid_argument("bad min-cut endpoints");
  QueryReport rep;
  bool have = false;
  for (std::size_t ci = 0; ci < h.chain_count(); ++ci) {
    auto c = h.chain(ci);
    ChainForest f(c);
    Cap value;
    std::vector<VertexId> side;
    auto path_min = [&](VertexId a, VertexId stop) {
      EdgeHandle best = kNoEdge;
      for (; a != stop; a = f.parent[a])
        if (lighter(c.graph, f.parent_edge[a], best)) best = f.parent_edge[a];
      return best;
    };
    auto below_edge = [&](EdgeHandle e) {
      VertexId a = c.graph.endpoint(e, 0), b = c.graph.endpoint(e, 1);
      auto out = f.below(c, f.parent_edge[a] == e ? a : b);
      std::sort(out.begin(), out.end());
      return out;
    };
    VertexId rs = f.root[s], rt = f.root[t];
    if (rs == rt) {
      // the tree path is the only route between s and t
      EdgeHandle best = kNoEdge;
      VertexId a = s, b = t;
      while (a != b) {
        if (f.depth[a] < f.depth[b]) std::swap(a, b);
        if (lighter(c.graph, f.parent_edge[a], best)) best = f.parent_edge[a];
        a = f.parent[a];
      }
      value = c.graph.cap(best);
      side = below_edge(best);
    } else {
      CoreNetwork net(c);
      auto flow = undirected_max_flow(net.ids.size(), net.edges, net.index.at(rs), net.index.at(rt));
      value = flow.value;
      std::vector<VertexId> roots;
      for (std::size_t i = 0; i < net.ids.size(); ++i)
        if (flow.source_side[i]) roots.push_back(net.ids[i]);
      side = f.component_of_roots(c, roots);
      for (auto [x, stop] : {std::pair{s, rs}, std::pair{t, rt}}) {
        EdgeHandle e = path_min(x, stop);
        if (e != kNoEdge && c.graph.cap(e) < value) {
          value = c.graph.cap(e);
          side = below_edge(e);
        }
      }
    }
    rep.per_chain.push_back(static_cast<double>(value));
    if (!have || value < rep.value) {
      have = true;
      rep.value = value;
      rep.best_chain = ci;
      rep.witness_side = side;
    }
  }
  rep.witness_cost = g.cut_value(rep.witness_side);
  bool in_s = std::binary_search(rep.witness_side.begin(), rep.witness_side.end(), s);
  bool in_t = std::binary_search(rep.witness_side.begin(), rep.witness_side.end(), t);
  rep.feasible = in_s != in_t;
  return rep;
}

QueryReport sparsest_cut(const Hierarchy& h, const QueryOptions& opt) {
  const auto& g = h.graph();
  std::int64_t n = static_cast<std::int64_t>(g.num_vertices());
  if (n < 2) throw std::invalid_argument("sparsest cut needs two vertices");
  QueryReport rep;
  bool have = false;
  for (std::size_t ci = 0; ci < h.chain_count(); ++ci) {
    auto c = h.chain(ci);
    ChainForest f(c);
    Fraction best{1, 0};
    std::vector<VertexId> side;
    bool found = false;
    ForestCutTracker tracker(c);
    if (!tracker.empty()) {
      auto [frac, e] = tracker.best();
      best = frac;
      side = tracker.side(e);
      found = true;
    }
    // core candidates: fundamental cuts of sampled trees on the core, with
    // every root weighted by the size of its component
    auto core = core_graph(c);
    if (core.num_vertices() >= 2) {
      std::vector<std::int64_t> w(core.vertex_bound(), 0);
      for (auto v : g.vertices()) ++w[f.root[v]];
      for (const auto& sample : core_trees(core, opt, static_cast<std::size_t>(n))) {
        auto rf = root_forest(core, sample.tree);
        auto ucap = tree_capacities(core, rf);
        std::vector<std::int64_t> sub(core.vertex_bound(), 0);
        for (auto it = rf.order.rbegin(); it != rf.order.rend(); ++it) {
          sub[*it] += w[*it];
          if (rf.parent[*it] != kNoVertex) sub[rf.parent[*it]] += sub[*it];
        }
        auto consider = [&](Fraction frac, VertexId top) {
          if (found && !(frac < best)) return;
          std::vector<VertexId> roots;
          for (auto v : rf.order)
            for (VertexId x = v;; x = rf.parent[x]) {
              if (x == top) {
                roots.push_back(v);
                break;
              }
              if (rf.parent[x] == kNoVertex) break;
            }
          best = frac;
          side = f.component_of_roots(c, roots);
          found = true;
        };
        bool split = false;
        for (auto v : rf.order)
          if (rf.parent[v] == kNoVertex && sub[v] < n) split = true;
        for (auto v : rf.order) {
          if (rf.parent[v] == kNoVertex) {
            if (split) consider({0, std::min(sub[v], n - sub[v])}, v);
            continue;
          }
          Cap cut = ucap[rf.parent_edge[v]];
          consider({cut, std::min(sub[v], n - sub[v])}, v);
        }
      }
    }
    if (!found) continue;
    // the candidate must be the sparsity of a real cut of the chain graph
    Fraction real = sparsity_of(c.graph, side);
    if (!(real == best)) rep.feasible = false;
    rep.per_chain.push_back(best.value());
    if (!have || best < rep.value_frac) {
      have = true;
      rep.value_frac = best;
      rep.best_chain = ci;
      rep.witness_side = side;
    }
  }
  rep.witness_cost = g.cut_value(rep.witness_side);
  rep.witness_sparsity = sparsity_of(g, rep.witness_side);
  return rep;
}

namespace {

struct PartitionChoice {
  Cap value = 0;
  std::vector<std::uint32_t> label;
};

void finish_partition(const DynamicMultiGraph& g, const std::vector<PartitionChoice>& per,
                      const std::vector<std::pair<VertexId, VertexId>>& must, QueryReport& rep) {
  bool have = false;
  for (std::size_t ci = 0; ci < per.size(); ++ci) {
    rep.per_chain.push_back(static_cast<double>(per[ci].value));
    if (!have || per[ci].value < rep.value) {
      have = true;
      rep.value = per[ci].value;
      rep.best_chain = ci;
      rep.witness_partition = per[ci].label;
    }
  }
  rep.witness_cost = partition_cost(g, rep.witness_partition);
  rep.feasible = true;
  for (auto [a, b] : must)
    if (rep.witness_partition[a] == rep.witness_partition[b]) rep.feasible = false;
}

}  // namespace

QueryReport multiway_cut(const Hierarchy& h, const std::vector<VertexId>& terminals, const QueryOptions& opt) {
  if (terminals.size() < 2) throw std::invalid_argument("multiway cut needs two terminals");
  Hierarchy work = h;
  work.pin_terminals(terminals);
  std::size_t k = terminals.size();
  std::mt19937_64 rng(opt.seed);
  // random bipartitions until every terminal pair is split by one of them
  std::vector<std::vector<std::uint8_t>> parts;
  auto covered = [&] {
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a + 1; b < k; ++b) {
        bool ok = false;
        for (const auto& p : parts) ok |= p[a] != p[b];
        if (!ok) return false;
      }
    return true;
  };
  std::size_t base = static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(k))));
  while (parts.size() < base || !covered()) {
    std::vector<std::uint8_t> p(k);
    for (auto& x : p) x = static_cast<std::uint8_t>(rng() >> 63);
    if (std::count(p.begin(), p.end(), 1) == 0 || std::count(p.begin(), p.end(), 0) == 0) continue;
    parts.push_back(std::move(p));
  }

  std::vector<PartitionChoice> per;
  for (std::size_t ci = 0; ci < work.chain_count(); ++ci) {
    auto c = work.chain(ci);
    CoreNetwork net(c);
    Cap inf = 1;
    for (const auto& e : net.edges) inf += e.cap;
    std::vector<std::uint8_t> removed(c.graph.handle_bound(), 0);
    std::uint32_t src = static_cast<std::uint32_t>(net.ids.size()), snk = src + 1;
    for (const auto& p : parts) {
      auto edges = net.edges;
      for (std::size_t i = 0; i < k; ++i)
        edges.push_back({p[i] ? src : snk, net.index.at(terminals[i]), inf});
      auto flow = undirected_max_flow(net.ids.size() + 2, edges, src, snk);
      for (std::size_t i = 0; i < net.edges.size(); ++i)
        if (flow.source_side[net.edges[i].u] != flow.source_side[net.edges[i].v])
          removed[net.handles[i]] = 1;
    }
    PartitionChoice pc;
    for (std::size_t i = 0; i < net.edges.size(); ++i)
      if (removed[net.handles[i]]) pc.value += net.edges[i].cap;
    pc.label = labels_without(c, removed);
    per.push_back(std::move(pc));
  }
  std::vector<std::pair<VertexId, VertexId>> must;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b) must.push_back({terminals[a], terminals[b]});
  QueryReport rep;
  finish_partition(h.graph(), per, must, rep);
  return rep;
}

QueryReport multicut(const Hierarchy& h, const std::vector<std::pair<VertexId, VertexId>>& pairs,
                     const QueryOptions& opt) {
  if (pairs.empty()) throw std::invalid_argument("multicut needs a pair");
  std::vector<VertexId> terminals;
  for (auto [s, t] : pairs) {
    if (s == t) throw std::invalid_argument("multicut pair with equal ends");
    terminals.push_back(s);
    terminals.push_back(t);
  }
  std::sort(terminals.begin(), terminals.end());
  terminals.erase(std::unique(terminals.begin(), terminals.end()), terminals.end());
  Hierarchy work = h;
  work.pin_terminals(terminals);

  std::vector<PartitionChoice> per;
  for (std::size_t ci = 0; ci < work.chain_count(); ++ci) {
    auto c = work.chain(ci);
    auto core = core_graph(c);
    PartitionChoice best;
    bool have = false;
    for (const auto& sample : core_trees(core, opt, h.graph().num_vertices())) {
      auto rf = root_forest(core, sample.tree);
      auto ucap = tree_capacities(core, rf);
      // greedy weighted set cover: tree edges cover the pairs whose path
      // they lie on
      std::vector<std::vector<EdgeHandle>> paths;
      for (auto [s, t] : pairs)
        if (rf.root[s] == rf.root[t]) paths.push_back(rf.path(s, t));
      std::vector<std::uint8_t> done(paths.size(), 0), chosen(core.handle_bound(), 0);
      std::size_t left = paths.size();
      while (left > 0) {
        std::map<EdgeHandle, std::size_t> gain;
        for (std::size_t i = 0; i < paths.size(); ++i)
          if (!done[i])
            for (auto e : paths[i]) ++gain[e];
        EdgeHandle pick = kNoEdge;
        for (auto [e, cnt] : gain) {
          if (pick == kNoEdge) {
            pick = e;
            continue;
          }
          // weight/gain, smaller is better; ties go to the lower handle
          auto lhs = static_cast<__int128>(ucap[e]) * static_cast<__int128>(gain[pick]);
          auto rhs = static_cast<__int128>(ucap[pick]) * static_cast<__int128>(cnt);
          if (lhs < rhs) pick = e;
        }
        chosen[pick] = 1;
        for (std::size_t i = 0; i < paths.size(); ++i)
          if (!done[i] && std::find(paths[i].begin(), paths[i].end(), pick) != paths[i].end()) {
            done[i] = 1;
            --left;
          }
      }
      // the chosen tree edges split the core; realize it as a cut of the chain
      std::vector<std::uint32_t> core_label(core.vertex_bound(), kNoVertex);
      std::uint32_t next = 0;
      for (auto v : rf.order) {
        if (rf.parent[v] == kNoVertex || chosen[rf.parent_edge[v]])
          core_label[v] = next++;
        else
          core_label[v] = core_label[rf.parent[v]];
      }
      ChainForest f(c);
      PartitionChoice pc;
      pc.label.assign(c.graph.vertex_bound(), kNoVertex);
      for (auto v : c.graph.vertices()) pc.label[v] = core_label[f.root[v]];
      pc.value = partition_cost(c.graph, pc.label);
      if (!have || pc.value < best.value) {
        have = true;
        best = std::move(pc);
      }
    }
    per.push_back(std::move(best));
  }
  QueryReport rep;
  finish_partition(h.graph(), per, pairs, rep);
  return rep;
}

}  // namespace dyncut
