#include "dyncut/jtree.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace dyncut {

MwuResult mwu_build(const DynamicMultiGraph& g, std::size_t j, const MwuConfig& cfg) {
  std::size_t m = g.num_edges();
  if (m == 0) throw std::invalid_argument("weight-update loop needs at least one edge");
  if (j < 1 || j > m) throw std::invalid_argument("j must lie in [1, m]");
  auto edges = g.edges();
  double md = static_cast<double>(m), jd = static_cast<double>(j);
  double n = static_cast<double>(std::max<std::size_t>(g.num_vertices(), 2));

  MwuResult res;
  res.gamma = cfg.gamma_init;
  std::vector<double> acc(g.handle_bound(), 0.0);  // sum of non-heavy congestion
  std::vector<double> w(g.handle_bound(), 1.0);
  std::size_t nominal = 0, target = 0;
  auto set_target = [&] {
    double k = std::ceil(10.0 * res.gamma * md / jd);
    nominal = k > 1e15 ? std::size_t{1} << 50 : static_cast<std::size_t>(k);
    target = std::clamp(nominal, cfg.min_trees, std::max(cfg.min_trees, cfg.max_trees));
    res.nominal_trees = nominal;
  };
  if (res.gamma > 0) set_target();

  std::uint64_t attempt = 0;
  while (res.trees.empty() || res.trees.size() < target) {
    double total = 0;
    for (auto h : edges) total += w[h];
    std::vector<double> len(g.handle_bound(), 1.0), weight(g.handle_bound(), 1.0);
    for (auto h : edges) {
      weight[h] = w[h] + total / md;
      len[h] = weight[h] / static_cast<double>(g.cap(h));
    }
    TreeSample s;
    s.tree = low_stretch_tree_weighted(g, len, weight, {cfg.method, cfg.seed + 7919 * attempt++});
    s.tree_cap = tree_capacities(g, s.tree);
    double num = 0;
    for (auto h : s.tree) num += len[h] * static_cast<double>(s.tree_cap[h]);
    s.ratio = num / total;
    if (res.gamma <= 0) {
      res.gamma = 4.0 * std::log(n) * (1.0 + s.ratio);
      set_target();
    }
    double threshold = res.gamma * md / jd;
    auto cong = congestion(g, s.tree, s.tree_cap);
    for (auto h : s.tree)
      if (cong[h] >= threshold) s.heavy.push_back(h);
    if (s.heavy.size() > j) {
      res.gamma *= 2;
      ++res.escalations;
      set_target();
      continue;
    }
    std::vector<std::uint8_t> heavy(g.handle_bound(), 0);
    for (auto h : s.heavy) heavy[h] = 1;
    double top = 0;
    for (auto h : edges) {
      if (!heavy[h]) acc[h] += cong[h];
      top = std::max(top, acc[h]);
    }
    // weights are only used relative to each other; shift the exponent
    double k = static_cast<double>(nominal);
    for (auto h : edges) w[h] = std::exp((acc[h] - top) / k);
    res.trees.push_back(std::move(s));
  }
  return res;
}

double mwu_congestion(const DynamicMultiGraph& g, const MwuResult& r) {
  std::vector<double> acc(g.handle_bound(), 0.0);
  for (const auto& s : r.trees) {
    auto cong = congestion(g, s.tree, s.tree_cap);
    std::vector<std::uint8_t> heavy(g.handle_bound(), 0);
    for (auto h : s.heavy) heavy[h] = 1;
    for (auto h : g.edges())
      if (!heavy[h]) acc[h] += cong[h];
  }
  double best = 0;
  for (auto h : g.edges()) best = std::max(best, acc[h] / static_cast<double>(r.trees.size()));
  return best;
}

void CoreLog::append(CoreLog&& other) {
  for (auto& u : other.batch) batch.push_back(std::move(u));
  terminals += other.terminals;
  splits += other.splits;
  inserts += other.inserts;
  deletes += other.deletes;
  moved += other.moved;
  forest_cuts.insert(forest_cuts.end(), other.forest_cuts.begin(), other.forest_cuts.end());
}

JTree::JTree(const DynamicMultiGraph& g, const TreeSample& t, const JTreeOptions& opt)
    : g_(g), tree_(t.tree), tree_cap_(t.tree_cap), ett_(opt.seed * 0x9e3779b97f4a7c15ULL + 1),
      opt_(opt) {
  tree_cap_.resize(g_.handle_bound(), 0);
  auto verts = g_.vertices();
  std::mt19937_64 rng(opt.seed);
  std::shuffle(verts.begin(), verts.end(), rng);
  t_ = root_forest(g_, tree_, verts);
  grow_arrays();
  for (auto h : tree_) in_forest_[h] = 1;
  for (auto v : g_.vertices())
    if (t_.parent[v] == kNoVertex) {
      is_root_[v] = 1;
      count_root(v);
    }
  for (auto h : t.heavy)
    for (int side = 0; side < 2; ++side)
      for (auto x : closure(g_.endpoint(h, side))) {
        is_root_[x] = 1;
        count_root(x);
      }
  // every root except a tree root loses the lightest edge on its path up to
  // the nearest root above it
  for (auto r : g_.vertices()) {
    if (!is_root_[r] || t_.parent[r] == kNoVertex) continue;
    EdgeHandle best = kNoEdge;
    VertexId x = r;
    do {
      EdgeHandle e = t_.parent_edge[x];
      if (best == kNoEdge || tree_cap_[e] < tree_cap_[best] ||
          (tree_cap_[e] == tree_cap_[best] && e < best))
        best = e;
      x = t_.parent[x];
    } while (!is_root_[x]);
    in_forest_[best] = 0;
  }

  std::vector<VertexId> owner(g_.vertex_bound(), kNoVertex);
  std::vector<VertexId> order;
  for (auto r : g_.vertices()) {
    lct_.ensure_vertex(r);
    ett_.ensure_vertex(r);
  }
  for (auto r : g_.vertices()) {
    if (!is_root_[r]) continue;
    core_of_[r] = static_cast<VertexId>(num_roots_++);
    owner[r] = r;
    order.assign(1, r);
    for (std::size_t i = 0; i < order.size(); ++i) {
      VertexId x = order[i];
      for (auto h : g_.incident(x)) {
        if (!in_forest_[h]) continue;
        VertexId y = g_.other(h, x);
        if (owner[y] != kNoVertex) continue;
        owner[y] = r;
        lct_.link(y, x, h, tree_cap_[h]);
        ett_.link(y, x, h);
        order.push_back(y);
      }
    }
  }
  core_ = DynamicMultiGraph(num_roots_);
  root_of_core_.assign(num_roots_, kNoVertex);
  for (auto r : g_.vertices())
    if (is_root_[r]) root_of_core_[core_of_[r]] = r;
  for (auto h : g_.edges()) {
    VertexId a = owner[g_.endpoint(h, 0)], b = owner[g_.endpoint(h, 1)];
    if (a == b) continue;
    in_core_[h] = 1;
    core_.insert_edge_with_handle(h, core_of_[a], core_of_[b], g_.cap(h));
    ett_.add(g_.endpoint(h, 0), 1);
    ett_.add(g_.endpoint(h, 1), 1);
  }
  if (opt_.max_path_length > 0) cap_paths();
  totals_ = {};
  core_.reset_counters();
}

void JTree::grow_arrays() {
  std::size_t nb = g_.vertex_bound(), hb = g_.handle_bound();
  if (in_forest_.size() < hb) {
    in_forest_.resize(hb, 0);
    in_core_.resize(hb, 0);
    tree_cap_.resize(hb, 0);
  }
  if (is_root_.size() < nb) {
    is_root_.resize(nb, 0);
    roots_below_.resize(nb, 0);
    core_of_.resize(nb, kNoVertex);
    t_.parent.resize(nb, kNoVertex);
    t_.parent_edge.resize(nb, kNoEdge);
    t_.depth.resize(nb, 0);
    t_.root.resize(nb, kNoVertex);
  }
}

void JTree::count_root(VertexId v) {
  for (VertexId x = v; x != kNoVertex; x = t_.parent[x]) ++roots_below_[x];
}

// Vertices to make roots so that u is a root and the set stays closed under
// lowest common ancestors: the point where u's path up meets the subtree of
// an existing root, if that point is not a root yet, then u itself.
std::vector<VertexId> JTree::closure(VertexId u) const {
  if (is_root_[u]) return {};
  VertexId c = u;
  for (VertexId y = t_.parent[u]; y != kNoVertex; c = y, y = t_.parent[y]) {
    if (roots_below_[y] > roots_below_[c]) {
      if (is_root_[y]) break;
      return {y, u};
    }
  }
  return {u};
}

void JTree::core_insert(EdgeHandle h, CoreLog& log) {
  VertexId a = g_.endpoint(h, 0), b = g_.endpoint(h, 1);
  EdgeInsert ins{core_of_[ett_.find_root(a)], core_of_[ett_.find_root(b)], g_.cap(h), h};
  core_.insert_edge_with_handle(h, ins.u, ins.v, ins.cap);
  in_core_[h] = 1;
  ett_.add(a, 1);
  ett_.add(b, 1);
  log.batch.push_back(ins);
  ++log.inserts;
}

void JTree::terminal(VertexId w, CoreLog& log) {
  if (is_root_[w]) return;
  VertexId r = ett_.find_root(w);
  EdgeHandle e = lct_.path_min(w);
  DYNCUT_CHECK(e != kNoEdge, "non-root vertex without a path to its root");
  lct_.cut(e);
  ett_.cut(e);
  in_forest_[e] = 0;
  log.forest_cuts.push_back(e);
  lct_.make_root(w);
  ett_.make_root(w);

  // core edges at the lighter side move to a new core vertex
  VertexId c = core_of_[r];
  bool w_light = ett_.sum(w) <= ett_.sum(r);
  std::vector<EdgeHandle> moved;
  for (auto x : ett_.positive_in_subtree(w_light ? w : r))
    for (auto h : g_.incident(x))
      if (in_core_[h]) moved.push_back(h);
  VertexId fresh = core_.apply_split(c, kNoVertex, moved);
  root_of_core_.resize(std::max<std::size_t>(root_of_core_.size(), fresh + 1), kNoVertex);
  if (w_light) {
    core_of_[w] = fresh;
    root_of_core_[fresh] = w;
  } else {
    core_of_[r] = fresh;
    root_of_core_[fresh] = r;
    core_of_[w] = c;
    root_of_core_[c] = w;
  }
  log.moved += moved.size();
  log.batch.push_back(VertexSplit{c, fresh, std::move(moved)});
  ++log.splits;
  is_root_[w] = 1;
  count_root(w);
  ++num_roots_;
  ++log.terminals;

  // edges between the two halves become core edges; scan the smaller half
  VertexId small = ett_.size(w) <= ett_.size(r) ? w : r;
  VertexId big = small == w ? r : w;
  for (auto x : ett_.vertices_in_subtree(small))
    for (auto h : g_.incident(x))
      if (!in_core_[h] && !in_forest_[h] && ett_.find_root(g_.other(h, x)) == big)
        core_insert(h, log);
}

CoreLog JTree::add_terminal(VertexId w) {
  if (!g_.has_vertex(w)) throw std::invalid_argument("unknown vertex");
  CoreLog log;
  for (auto x : closure(w)) terminal(x, log);
  totals_.append(CoreLog(log));
  return log;
}

CoreLog JTree::add_vertex(VertexId v) {
  if (g_.has_vertex(v)) throw std::invalid_argument("vertex already present");
  CoreLog log;
  g_.ensure_vertex(v);
  grow_arrays();
  t_.root[v] = v;
  is_root_[v] = 1;
  count_root(v);
  ++num_roots_;
  lct_.ensure_vertex(v);
  ett_.ensure_vertex(v);
  VertexId fresh = core_.vertex_bound();
  if (core_.num_vertices() > 0) {
    VertexId any = core_.vertices().front();
    core_.apply_split(any, fresh, {});
    log.batch.push_back(VertexSplit{any, fresh, {}});
  } else {
    core_.ensure_vertex(fresh);
  }
  root_of_core_.resize(std::max<std::size_t>(root_of_core_.size(), fresh + 1), kNoVertex);
  core_of_[v] = fresh;
  root_of_core_[fresh] = v;
  totals_.append(CoreLog(log));
  return log;
}

CoreLog JTree::insert_edge(EdgeInsert e) {
  if (e.u == e.v) throw std::invalid_argument("self-loop");
  CoreLog log;
  for (auto x : {e.u, e.v})
    if (!g_.has_vertex(x)) log.append(add_vertex(x));
  CoreLog own;
  for (auto x : {e.u, e.v})
    for (auto y : closure(x)) terminal(y, own);
  GraphUpdate u = e;
  g_.apply(u);
  grow_arrays();
  core_insert(std::get<EdgeInsert>(u).handle, own);
  totals_.append(CoreLog(own));
  log.append(std::move(own));
  return log;
}

CoreLog JTree::delete_edge(EdgeHandle h) {
  if (!g_.has_edge(h)) throw std::invalid_argument("stale edge handle");
  CoreLog log;
  VertexId a = g_.endpoint(h, 0), b = g_.endpoint(h, 1);
  for (auto x : {a, b})
    for (auto y : closure(x)) terminal(y, log);
  DYNCUT_CHECK(in_core_[h], "edge between two roots is not in the core");
  core_.delete_edge(h);
  in_core_[h] = 0;
  ett_.add(a, -1);
  ett_.add(b, -1);
  g_.delete_edge(h);
  log.batch.push_back(EdgeDelete{h});
  ++log.deletes;
  totals_.append(CoreLog(log));
  return log;
}

CoreLog JTree::apply(const GraphUpdate& u) {
  if (auto* ins = std::get_if<EdgeInsert>(&u)) return insert_edge(*ins);
  if (auto* del = std::get_if<EdgeDelete>(&u)) return delete_edge(del->handle);
  const auto& sp = std::get<VertexSplit>(u);
  if (sp.new_vertex == kNoVertex) throw std::invalid_argument("split record without target");
  CoreLog log = add_vertex(sp.new_vertex);
  for (auto h : sp.moved) {
    VertexId a = g_.endpoint(h, 0), b = g_.endpoint(h, 1);
    Cap c = g_.cap(h);
    if (a != sp.v && b != sp.v) throw std::invalid_argument("moved edge not at split vertex");
    log.append(delete_edge(h));
    EdgeInsert e = a == sp.v ? EdgeInsert{sp.new_vertex, b, c, h} : EdgeInsert{a, sp.new_vertex, c, h};
    log.append(insert_edge(e));
  }
  return log;
}

template <class F>
void JTree::forest_walk(F&& visit) const {
  std::vector<std::uint32_t> depth(g_.vertex_bound(), 0);
  std::vector<VertexId> up(g_.vertex_bound(), kNoVertex), order;
  for (auto r : roots()) {
    std::size_t start = order.size();
    order.push_back(r);
    for (std::size_t i = start; i < order.size(); ++i) {
      VertexId x = order[i];
      visit(x, up[x], depth[x]);
      for (auto h : g_.incident(x)) {
        VertexId y = g_.other(h, x);
        if (!in_forest_[h] || y == up[x]) continue;
        up[y] = x;
        depth[y] = depth[x] + 1;
        order.push_back(y);
      }
    }
  }
}

void JTree::cap_paths() {
  // repeatedly makes the midpoint of the deepest forest path a root
  std::vector<VertexId> up(g_.vertex_bound(), kNoVertex);
  for (;;) {
    VertexId deep = kNoVertex;
    std::uint32_t best = 0;
    forest_walk([&](VertexId x, VertexId parent, std::uint32_t d) {
      up[x] = parent;
      if (d > best) {
        best = d;
        deep = x;
      }
    });
    if (deep == kNoVertex || best <= opt_.max_path_length) return;
    VertexId mid = deep;
    for (std::uint32_t k = 0; k < best / 2; ++k) mid = up[mid];
    CoreLog log;
    for (auto x : closure(mid)) terminal(x, log);
  }
}

std::vector<VertexId> JTree::roots() const {
  std::vector<VertexId> out;
  for (auto v : g_.vertices())
    if (is_root_[v]) out.push_back(v);
  return out;
}

std::vector<EdgeHandle> JTree::forest_edges() const {
  std::vector<EdgeHandle> out;
  for (auto h : g_.edges())
    if (in_forest_[h]) out.push_back(h);
  return out;
}

std::size_t JTree::max_forest_depth() const {
  std::size_t best = 0;
  forest_walk([&](VertexId, VertexId, std::uint32_t d) { best = std::max<std::size_t>(best, d); });
  return best;
}

Cap JTree::cut_value(const std::vector<std::uint8_t>& side) const {
  Cap total = 0;
  for (auto h : g_.edges()) {
    if (in_forest_[h]) {
      if (side[g_.endpoint(h, 0)] != side[g_.endpoint(h, 1)]) total += forest_capacity(h);
    } else if (in_core_[h]) {
      VertexId a = root_of_core_[core_.endpoint(h, 0)], b = root_of_core_[core_.endpoint(h, 1)];
      if (side[a] != side[b]) total += core_.cap(h);
    }
  }
  return total;
}

void JTree::validate() const {
  std::size_t roots_seen = 0, forest = 0, cross = 0;
  auto verts = g_.vertices();
  std::vector<std::int64_t> z(g_.vertex_bound(), 0);
  for (auto v : verts) {
    VertexId r = ett_.find_root(v);
    DYNCUT_CHECK(is_root_[r], "forest component without a root");
    DYNCUT_CHECK(lct_.find_root(v) == r, "path structure disagrees on the root");
    if (is_root_[v]) {
      ++roots_seen;
      DYNCUT_CHECK(r == v, "two roots in one component");
      VertexId c = core_of_[v];
      DYNCUT_CHECK(c < root_of_core_.size() && root_of_core_[c] == v, "core id map");
      DYNCUT_CHECK(core_.has_vertex(c), "core vertex missing");
    }
  }
  DYNCUT_CHECK(roots_seen == num_roots_, "root count");
  DYNCUT_CHECK(core_.num_vertices() == num_roots_, "core vertex count");
  for (auto h : g_.edges()) {
    VertexId a = g_.endpoint(h, 0), b = g_.endpoint(h, 1);
    VertexId ra = ett_.find_root(a), rb = ett_.find_root(b);
    if (in_forest_[h]) {
      ++forest;
      DYNCUT_CHECK(tree_cap_[h] > 0 && ett_.has_edge(h) && lct_.has_edge(h), "forest edge");
      DYNCUT_CHECK(!in_core_[h], "forest edge in the core");
      continue;
    }
    DYNCUT_CHECK((ra != rb) == static_cast<bool>(in_core_[h]), "core holds exactly the cross edges");
    if (ra == rb) continue;
    ++cross;
    ++z[a];
    ++z[b];
    VertexId ca = core_.endpoint(h, 0), cb = core_.endpoint(h, 1);
    DYNCUT_CHECK(core_.cap(h) == g_.cap(h), "core capacity");
    DYNCUT_CHECK((ca == core_of_[ra] && cb == core_of_[rb]) || (ca == core_of_[rb] && cb == core_of_[ra]),
                 "core endpoints");
  }
  DYNCUT_CHECK(core_.num_edges() == cross, "core edge count");
  DYNCUT_CHECK(forest + num_roots_ == verts.size(), "forest is not spanning per component");
  for (auto v : verts) DYNCUT_CHECK(ett_.value(v) == z[v], "cross-edge counter");
  // closed under lowest common ancestors: a non-root never has roots below
  // two different children, and every tree root is a root
  std::vector<std::uint32_t> below(g_.vertex_bound(), 0), busy(g_.vertex_bound(), 0);
  for (auto v : verts) {
    if (t_.parent[v] == kNoVertex) DYNCUT_CHECK(is_root_[v], "tree root outside the root set");
    if (!is_root_[v]) continue;
    for (VertexId x = v; x != kNoVertex; x = t_.parent[x]) ++below[x];
  }
  for (auto v : verts) {
    DYNCUT_CHECK(below[v] == roots_below_[v], "root counts in subtrees");
    VertexId p = t_.parent[v];
    if (p != kNoVertex && below[v] > 0) ++busy[p];
  }
  for (auto v : verts) DYNCUT_CHECK(is_root_[v] || busy[v] <= 1, "root set not closed under LCA");
}

double collection_quality(const std::vector<JTree>& trees) {
  if (trees.empty()) return 0;
  const auto& g = trees.front().graph();
  double best = 1.0;
  double k = static_cast<double>(trees.size());
  for (auto h : g.edges()) {
    double sum = 0;
    for (const auto& t : trees)
      if (t.in_forest(h))
        sum += static_cast<double>(t.tree_capacity(h)) / static_cast<double>(g.cap(h));
    best = std::max(best, 1.0 + 4.0 * sum / k);
  }
  return best;
}

}  // namespace dyncut
