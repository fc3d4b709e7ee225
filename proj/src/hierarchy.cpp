#include "dyncut/hierarchy.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace dyncut {

namespace {

SparsifierConfig core_sparsifier(const HierarchyConfig& cfg, std::size_t n_hint, std::uint64_t seed) {
  SparsifierConfig s;
  s.epsilon = 1.0 / 3.0;
  s.c_xi = cfg.sparsifier_c_xi;
  s.seed = seed;
  s.n_hint = std::max<std::size_t>(n_hint, 2);
  // (1 - 1/3) * 3/2 = 1 keeps every cut of the sparsified core above the core
  s.scale_num = 3;
  s.scale_den = 2;
  return s;
}

bool same_graph(const DynamicMultiGraph& a, const DynamicMultiGraph& b) {
  if (a.num_edges() != b.num_edges() || a.num_vertices() != b.num_vertices()) return false;
  for (auto h : a.edges()) {
    if (!b.has_edge(h) || a.cap(h) != b.cap(h)) return false;
    if (std::minmax(a.endpoint(h, 0), a.endpoint(h, 1)) != std::minmax(b.endpoint(h, 0), b.endpoint(h, 1)))
      return false;
  }
  for (auto v : a.vertices())
    if (!b.has_vertex(v)) return false;
  return true;
}

}  // namespace

void HierarchyReport::add(const HierarchyReport& o) {
  if (levels.size() < o.levels.size()) levels.resize(o.levels.size());
  for (std::size_t i = 0; i < o.levels.size(); ++i) {
    auto& a = levels[i];
    const auto& b = o.levels[i];
    a.sparsifier_recourse += b.sparsifier_recourse;
    a.terminals += b.terminals;
    a.core_splits += b.core_splits;
    a.core_inserts += b.core_inserts;
    a.core_deletes += b.core_deletes;
    a.rebuilds += b.rebuilds;
    a.max_core = std::max(a.max_core, b.max_core);
  }
  rebuilt.insert(rebuilt.end(), o.rebuilt.begin(), o.rebuilt.end());
}

Hierarchy::Hierarchy(const DynamicMultiGraph& g, const HierarchyConfig& cfg)
    : cfg_(cfg), seed_state_(cfg.seed) {
  std::size_t n = g.num_vertices();
  if (cfg.levels < 1) throw std::invalid_argument("hierarchy needs at least one level");
  if (cfg.j < 1 || cfg.j > n) throw std::invalid_argument("j must lie in [1, n]");
  if (cfg.samples < 1) throw std::invalid_argument("at least one sample per node");
  for (std::size_t i = 0; i <= cfg.levels; ++i) {
    double x = static_cast<double>(n) *
               std::pow(static_cast<double>(cfg.j) / static_cast<double>(n),
                        static_cast<double>(i) / static_cast<double>(cfg.levels));
    sizes_.push_back(static_cast<std::size_t>(std::ceil(x - 1e-9)));
  }
  sizes_.back() = cfg.j;
  root_.level = 0;
  root_.sparse.emplace(g, core_sparsifier(cfg_, n, next_seed()));
  build_children(root_);
  totals_.levels.resize(cfg.levels + 1);
}

std::uint64_t Hierarchy::next_seed() {
  // splitmix64
  std::uint64_t z = (seed_state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::size_t Hierarchy::core_limit(std::size_t level) const {
  return static_cast<std::size_t>(std::floor(cfg_.rebuild_c * static_cast<double>(sizes_.at(level))));
}

void Hierarchy::build_children(HierarchyNode& node) {
  node.children.clear();
  if (node.level >= cfg_.levels) return;
  std::size_t level = node.level + 1;
  const auto& parent = node.sparse_core();
  // the root set of a tree roughly doubles its heavy set, so ask for half
  std::size_t want = std::max<std::size_t>(1, sizes_[level] / 2);
  std::vector<TreeSample> pool;
  std::uint64_t seed = next_seed();
  if (parent.num_edges() == 0) {
    pool.emplace_back();
  } else {
    MwuConfig mc;
    mc.gamma_init = cfg_.gamma_init;
    mc.max_trees = cfg_.max_trees;
    mc.seed = seed;
    pool = mwu_build(parent, std::min(want, parent.num_edges()), mc).trees;
  }
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < cfg_.samples; ++k) {
    const auto& pick = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
    HierarchyNode child;
    child.level = level;
    child.tree.emplace(parent, pick, JTreeOptions{next_seed(), cfg_.max_path_length});
    child.sparse.emplace(child.tree->core(), core_sparsifier(cfg_, core_limit(level), next_seed()));
    build_children(child);
    node.children.push_back(std::move(child));
  }
}

HierarchyReport Hierarchy::update(GraphUpdate& u) {
  HierarchyReport rep;
  rep.levels.resize(cfg_.levels + 1);
  auto r0 = root_.sparse->apply(u);
  ++root_.updates;
  ++updates_;
  rep.levels[0].sparsifier_recourse += r0.inserted + r0.deleted + r0.reweighted;
  rep.levels[0].max_core = root_.core().num_vertices();

  std::vector<std::pair<HierarchyNode*, UpdateBatch>> frontier;
  frontier.push_back({&root_, std::move(r0.batch)});
  for (std::size_t level = 1; level <= cfg_.levels; ++level) {
    auto& lr = rep.levels[level];
    std::vector<std::pair<HierarchyNode*, UpdateBatch>> next;
    bool overflow = false;
    for (auto& [parent, batch] : frontier) {
      for (auto& child : parent->children) {
        CoreLog log;
        for (const auto& e : batch) log.append(child.tree->apply(e));
        ++child.updates;
        lr.terminals += log.terminals;
        lr.core_splits += log.splits;
        lr.core_inserts += log.inserts;
        lr.core_deletes += log.deletes;
        UpdateBatch out;
        for (auto& e : log.batch) {
          auto r = child.sparse->apply(e);
          lr.sparsifier_recourse += r.inserted + r.deleted + r.reweighted;
          for (auto& x : r.batch) out.push_back(std::move(x));
        }
        std::size_t size = child.core().num_vertices();
        lr.max_core = std::max(lr.max_core, size);
        if (size > core_limit(level)) overflow = true;
        next.push_back({&child, std::move(out)});
      }
    }
    if (overflow) {
      for (auto& [parent, batch] : frontier) build_children(*parent);
      ++lr.rebuilds;
      rep.rebuilt.push_back(level);
      break;
    }
    frontier = std::move(next);
  }
  totals_.add(rep);
  return rep;
}

void Hierarchy::pin_terminals(const std::vector<VertexId>& terminals) {
  for (auto t : terminals)
    if (!graph().has_vertex(t)) throw std::invalid_argument("unknown terminal");
  pin(root_, terminals, {});
}

// names: the terminals as vertices of node's sparsified core; batch: the
// pending changes of that sparsified core.
void Hierarchy::pin(HierarchyNode& node, const std::vector<VertexId>& names, const UpdateBatch& batch) {
  for (auto& child : node.children) {
    auto& t = *child.tree;
    CoreLog log;
    for (const auto& e : batch) log.append(t.apply(e));
    for (auto v : names) log.append(t.add_terminal(v));
    UpdateBatch out;
    for (auto& e : log.batch) {
      auto r = child.sparse->apply(e);
      for (auto& x : r.batch) out.push_back(std::move(x));
    }
    std::vector<VertexId> next;
    for (auto v : names) next.push_back(t.core_vertex(v));
    pin(child, next, out);
  }
}

std::size_t Hierarchy::chain_count() const {
  std::size_t c = 1;
  for (std::size_t i = 0; i < cfg_.levels; ++i) c *= cfg_.samples;
  return c;
}

ChainGraph Hierarchy::chain(std::size_t index) const {
  if (index >= chain_count()) throw std::out_of_range("chain index");
  std::vector<std::size_t> digits(cfg_.levels);
  for (std::size_t i = cfg_.levels; i-- > 0;) {
    digits[i] = index % cfg_.samples;
    index /= cfg_.samples;
  }
  const auto& g = graph();
  ChainGraph out;
  for (auto v : g.vertices()) out.graph.ensure_vertex(v);
  out.in_forest.assign(g.handle_bound(), 0);
  out.forest_level.assign(g.handle_bound(), 0);
  out.is_root.assign(g.vertex_bound(), 0);
  std::vector<VertexId> name(g.vertex_bound());
  std::iota(name.begin(), name.end(), VertexId{0});
  const HierarchyNode* node = &root_;
  for (std::size_t level = 1; level <= cfg_.levels; ++level) {
    node = &node->children.at(digits[level - 1]);
    const auto& t = *node->tree;
    const auto& tg = t.graph();
    for (auto h : t.forest_edges()) {
      out.graph.insert_edge_with_handle(h, name[tg.endpoint(h, 0)], name[tg.endpoint(h, 1)],
                                        t.forest_capacity(h));
      if (out.in_forest.size() <= h) {
        out.in_forest.resize(h + 1, 0);
        out.forest_level.resize(h + 1, 0);
      }
      out.in_forest[h] = 1;
      out.forest_level[h] = static_cast<std::uint8_t>(level);
    }
    std::vector<VertexId> next(t.core().vertex_bound(), kNoVertex);
    for (auto c : t.core().vertices()) next[c] = name[t.root_of_core(c)];
    name = std::move(next);
  }
  const auto& core = node->sparse_core();
  for (auto c : core.vertices()) out.is_root[name[c]] = 1;
  for (auto h : core.edges())
    out.graph.insert_edge_with_handle(h, name[core.endpoint(h, 0)], name[core.endpoint(h, 1)],
                                      core.cap(h));
  out.in_forest.resize(out.graph.handle_bound(), 0);
  out.forest_level.resize(out.graph.handle_bound(), 0);
  return out;
}

std::vector<ChainGraph> Hierarchy::chains() const {
  std::vector<ChainGraph> out;
  for (std::size_t i = 0; i < chain_count(); ++i) out.push_back(chain(i));
  return out;
}

void Hierarchy::validate() const {
  std::vector<const HierarchyNode*> stack{&root_};
  while (!stack.empty()) {
    const auto* node = stack.back();
    stack.pop_back();
    DYNCUT_CHECK(node->sparse.has_value(), "node without a sparsified core");
    const auto& core = node->core();
    const auto& sc = node->sparse_core();
    for (auto h : sc.edges()) DYNCUT_CHECK(core.has_edge(h), "sparsified core is not a subgraph");
    if (node->tree) {
      node->tree->validate();
      DYNCUT_CHECK(core.num_vertices() <= core_limit(node->level), "core over its limit");
    }
    if (node->level < cfg_.levels)
      DYNCUT_CHECK(node->children.size() == cfg_.samples, "child count");
    for (const auto& c : node->children) {
      DYNCUT_CHECK(c.level == node->level + 1, "child level");
      DYNCUT_CHECK(same_graph(c.tree->graph(), sc), "child is not over the parent's sparsified core");
      stack.push_back(&c);
    }
  }
}

Cap ChainGraph::cut_value(const std::vector<std::uint8_t>& side) const {
  Cap total = 0;
  for (auto h : graph.edges())
    if (side[graph.endpoint(h, 0)] != side[graph.endpoint(h, 1)]) total += graph.cap(h);
  return total;
}

std::vector<VertexId> ChainGraph::roots() const {
  std::vector<VertexId> out;
  for (auto v : graph.vertices())
    if (is_root[v]) out.push_back(v);
  return out;
}

void ChainGraph::validate() const {
  std::vector<VertexId> parent(graph.vertex_bound());
  std::iota(parent.begin(), parent.end(), VertexId{0});
  auto find = [&](VertexId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto h : graph.edges()) {
    if (!forest_edge(h)) continue;
    VertexId a = find(graph.endpoint(h, 0)), b = find(graph.endpoint(h, 1));
    DYNCUT_CHECK(a != b, "stacked forest has a cycle");
    parent[a] = b;
  }
  std::vector<int> per_comp(graph.vertex_bound(), 0);
  for (auto v : graph.vertices())
    if (is_root[v]) ++per_comp[find(v)];
  for (auto v : graph.vertices()) DYNCUT_CHECK(per_comp[find(v)] == 1, "component without exactly one root");
  for (auto h : graph.edges())
    if (!forest_edge(h))
      DYNCUT_CHECK(is_root[graph.endpoint(h, 0)] && is_root[graph.endpoint(h, 1)], "core edge off the roots");
}

}  // namespace dyncut
