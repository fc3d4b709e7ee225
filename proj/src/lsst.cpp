#include "dyncut/lsst.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>
#include <stdexcept>

namespace dyncut {

VertexId RootedForest::lca(VertexId u, VertexId v) const {
  if (root[u] != root[v]) return kNoVertex;
  if (depth[u] < depth[v]) std::swap(u, v);
  std::uint32_t diff = depth[u] - depth[v];
  for (std::size_t k = 0; diff; ++k, diff >>= 1)
    if (diff & 1) u = up[k][u];
  if (u == v) return u;
  for (std::size_t k = up.size(); k-- > 0;) {
    if (up[k][u] != up[k][v]) {
      u = up[k][u];
      v = up[k][v];
    }
  }
  return parent[u];
}

std::vector<EdgeHandle> RootedForest::path(VertexId u, VertexId v) const {
  VertexId a = lca(u, v);
  if (a == kNoVertex) throw std::invalid_argument("path between different trees");
  std::vector<EdgeHandle> left, right;
  for (; u != a; u = parent[u]) left.push_back(parent_edge[u]);
  for (; v != a; v = parent[v]) right.push_back(parent_edge[v]);
  left.insert(left.end(), right.rbegin(), right.rend());
  return left;
}

RootedForest root_forest(const DynamicMultiGraph& g,
                         const std::vector<EdgeHandle>& tree,
                         const std::vector<VertexId>& preferred_roots) {
  std::size_t nb = g.vertex_bound();
  RootedForest f;
  f.parent.assign(nb, kNoVertex);
  f.parent_edge.assign(nb, kNoEdge);
  f.depth.assign(nb, 0);
  f.root.assign(nb, kNoVertex);
  std::vector<std::vector<std::pair<VertexId, EdgeHandle>>> adj(nb);
  for (auto h : tree) {
    VertexId a = g.endpoint(h, 0), b = g.endpoint(h, 1);
    adj[a].push_back({b, h});
    adj[b].push_back({a, h});
  }
  auto grow = [&](VertexId r) {
    std::size_t start = f.order.size();
    f.root[r] = r;
    f.order.push_back(r);
    for (std::size_t i = start; i < f.order.size(); ++i) {
      VertexId x = f.order[i];
      for (auto [y, h] : adj[x]) {
        if (y == f.parent[x] && h == f.parent_edge[x]) continue;
        if (f.root[y] != kNoVertex) throw std::invalid_argument("tree edges form a cycle");
        f.root[y] = r;
        f.parent[y] = x;
        f.parent_edge[y] = h;
        f.depth[y] = f.depth[x] + 1;
        f.order.push_back(y);
      }
    }
  };
  for (auto r : preferred_roots)
    if (g.has_vertex(r) && f.root[r] == kNoVertex) grow(r);
  for (auto v : g.vertices())
    if (f.root[v] == kNoVertex) grow(v);
  std::size_t levels = 1;
  while ((std::size_t{1} << levels) < nb + 1) ++levels;
  f.up.assign(levels, std::vector<VertexId>(nb, kNoVertex));
  for (auto v : f.order) f.up[0][v] = f.parent[v] == kNoVertex ? v : f.parent[v];
  for (std::size_t k = 1; k < levels; ++k)
    for (auto v : f.order) f.up[k][v] = f.up[k - 1][f.up[k - 1][v]];
  return f;
}

namespace {

class StarBuilder {
 public:
  StarBuilder(const DynamicMultiGraph& g, const std::vector<double>& len,
              const std::vector<std::uint64_t>* mult)
      : g_(g), len_(len), mult_(mult) {
    std::size_t nb = g.vertex_bound();
    piece_.assign(nb, 0);
    dist_.assign(nb, 0);
    pedge_.assign(nb, kNoEdge);
    visit_.assign(nb, 0);
    done_.assign(nb, 0);
  }

  void component(const std::vector<VertexId>& verts, VertexId center) {
    int id = next_piece_++;
    for (auto v : verts) piece_[v] = id;
    stack_.push_back({id, center});
    while (!stack_.empty()) {
      auto [p, c] = stack_.back();
      stack_.pop_back();
      split_piece(p, c);
    }
  }

  std::vector<EdgeHandle> take() { return std::move(out_); }

 private:
  double weight(EdgeHandle h) const {
    return (mult_ ? static_cast<double>((*mult_)[h]) : 1.0) / len_[h];
  }

  // Dijkstra inside piece p from src up to distance limit; returns the
  // settled vertices in order.
  std::vector<VertexId> dijkstra(int p, VertexId src, double limit) {
    std::vector<VertexId> seen;
    using Item = std::pair<double, VertexId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    ++epoch_;
    dist_[src] = 0;
    pedge_[src] = kNoEdge;
    visit_[src] = epoch_;
    pq.push({0, src});
    while (!pq.empty()) {
      auto [d, x] = pq.top();
      pq.pop();
      if (done_[x] == epoch_ || d > dist_[x]) continue;
      done_[x] = epoch_;
      seen.push_back(x);
      for (auto h : g_.incident(x)) {
        VertexId y = g_.other(h, x);
        if (piece_[y] != p || done_[y] == epoch_) continue;
        double nd = d + len_[h];
        if (nd > limit) continue;
        if (visit_[y] != epoch_ || nd < dist_[y] || (nd == dist_[y] && h < pedge_[y])) {
          visit_[y] = epoch_;
          dist_[y] = nd;
          pedge_[y] = h;
          pq.push({nd, y});
        }
      }
    }
    return seen;
  }

  // Among radii in [lo, hi] picks the one whose ball boundary (inside piece p)
  // has the least total mult/length; the ball is returned.
  std::vector<VertexId> best_ball(int p, const std::vector<VertexId>& seen,
                                  double lo, double hi) {
    std::vector<double> radii;
    for (auto v : seen)
      if (dist_[v] >= lo && dist_[v] <= hi) radii.push_back(dist_[v]);
    radii.push_back(hi);
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
    std::vector<double> cost(radii.size() + 1, 0);
    auto reached = [&](VertexId v) { return done_[v] == epoch_; };
    for (auto x : seen) {
      for (auto h : g_.incident(x)) {
        VertexId y = g_.other(h, x);
        if (piece_[y] != p) continue;
        double a = dist_[x];
        double b = reached(y) ? dist_[y] : INFINITY;
        if (!(a < b)) continue;
        // cut for radii r with a <= r < b
        auto i = std::lower_bound(radii.begin(), radii.end(), a) - radii.begin();
        auto j = std::lower_bound(radii.begin(), radii.end(), b) - radii.begin();
        cost[i] += weight(h);
        cost[j] -= weight(h);
      }
    }
    std::size_t best = 0;
    double run = 0, best_cost = INFINITY;
    for (std::size_t i = 0; i < radii.size(); ++i) {
      run += cost[i];
      if (run < best_cost - 1e-12) {
        best_cost = run;
        best = i;
      }
    }
    std::vector<VertexId> ball;
    for (auto v : seen)
      if (dist_[v] <= radii[best]) ball.push_back(v);
    return ball;
  }

  void split_piece(int p, VertexId center) {
    auto seen = dijkstra(p, center, INFINITY);
    if (seen.size() <= 2) {
      for (auto v : seen)
        if (pedge_[v] != kNoEdge) out_.push_back(pedge_[v]);
      return;
    }
    double radius = 0;
    for (auto v : seen) radius = std::max(radius, dist_[v]);
    auto ball = best_ball(p, seen, radius / 4, radius / 2);
    // shortest-path parent of every vertex, used as the bridge into a cone
    std::vector<std::pair<VertexId, EdgeHandle>> by_dist;
    for (auto v : seen) by_dist.push_back({v, pedge_[v]});

    int ball_id = next_piece_++;
    for (auto v : ball) piece_[v] = ball_id;
    std::vector<std::pair<int, VertexId>> parts{{ball_id, center}};
    // `seen` is in Dijkstra order, so the first unassigned vertex always has
    // its parent already assigned.
    for (std::size_t i = 0; i < seen.size(); ++i) {
      VertexId y = by_dist[i].first;
      if (piece_[y] != p) continue;
      out_.push_back(by_dist[i].second);
      auto cone_seen = dijkstra(p, y, radius / 4);
      auto cone = best_ball(p, cone_seen, 0, radius / 4);
      int id = next_piece_++;
      for (auto v : cone) piece_[v] = id;
      parts.push_back({id, y});
    }
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) stack_.push_back(*it);
  }

  const DynamicMultiGraph& g_;
  const std::vector<double>& len_;
  const std::vector<std::uint64_t>* mult_;
  std::vector<int> piece_;
  std::vector<double> dist_;
  std::vector<EdgeHandle> pedge_;
  std::vector<std::size_t> visit_, done_;
  std::size_t epoch_ = 0;
  int next_piece_ = 1;
  std::vector<std::pair<int, VertexId>> stack_;
  std::vector<EdgeHandle> out_;
};

std::vector<std::vector<VertexId>> components(const DynamicMultiGraph& g) {
  std::vector<std::uint8_t> seen(g.vertex_bound(), 0);
  std::vector<std::vector<VertexId>> out;
  for (auto s : g.vertices()) {
    if (seen[s]) continue;
    out.emplace_back();
    auto& comp = out.back();
    seen[s] = 1;
    comp.push_back(s);
    for (std::size_t i = 0; i < comp.size(); ++i)
      for (auto h : g.incident(comp[i])) {
        VertexId y = g.other(h, comp[i]);
        if (!seen[y]) {
          seen[y] = 1;
          comp.push_back(y);
        }
      }
  }
  return out;
}

std::vector<EdgeHandle> shortest_path_tree(const DynamicMultiGraph& g,
                                           const std::vector<double>& len,
                                           VertexId src) {
  std::vector<double> dist(g.vertex_bound(), INFINITY);
  std::vector<EdgeHandle> pe(g.vertex_bound(), kNoEdge);
  std::vector<std::uint8_t> done(g.vertex_bound(), 0);
  using Item = std::pair<double, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[src] = 0;
  pq.push({0, src});
  std::vector<EdgeHandle> out;
  while (!pq.empty()) {
    auto [d, x] = pq.top();
    pq.pop();
    if (done[x]) continue;
    done[x] = 1;
    if (pe[x] != kNoEdge) out.push_back(pe[x]);
    for (auto h : g.incident(x)) {
      VertexId y = g.other(h, x);
      double nd = d + len[h];
      if (!done[y] && (nd < dist[y] || (nd == dist[y] && h < pe[y]))) {
        dist[y] = nd;
        pe[y] = h;
        pq.push({nd, y});
      }
    }
  }
  return out;
}

}  // namespace

std::vector<EdgeHandle> low_stretch_tree(const DynamicMultiGraph& g,
                                         const std::vector<double>& length,
                                         const LsstOptions& opt,
                                         const std::vector<std::uint64_t>* mult) {
  for (auto h : g.edges())
    if (!(h < length.size() && length[h] > 0))
      throw std::invalid_argument("lengths must be positive on every edge");
  std::mt19937_64 rng(opt.seed);
  std::vector<EdgeHandle> out;
  StarBuilder star(g, length, mult);
  for (const auto& comp : components(g)) {
    VertexId center = comp[std::uniform_int_distribution<std::size_t>(0, comp.size() - 1)(rng)];
    if (opt.method == LsstMethod::kShortestPathTree) {
      auto t = shortest_path_tree(g, length, center);
      out.insert(out.end(), t.begin(), t.end());
    } else {
      star.component(comp, center);
    }
  }
  if (opt.method == LsstMethod::kStarDecomposition) out = star.take();
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint64_t> copy_counts(const DynamicMultiGraph& g,
                                       const std::vector<double>& weight) {
  double total = 0;
  for (auto h : g.edges()) {
    if (!(h < weight.size() && weight[h] > 0))
      throw std::invalid_argument("weights must be positive on every edge");
    total += weight[h];
  }
  std::vector<std::uint64_t> out(g.handle_bound(), 0);
  double m = static_cast<double>(g.num_edges());
  for (auto h : g.edges())
    out[h] = std::max<std::uint64_t>(
        1, static_cast<std::uint64_t>(std::ceil(m * weight[h] / total - 1e-9)));
  return out;
}

std::vector<EdgeHandle> low_stretch_tree_weighted(const DynamicMultiGraph& g,
                                                  const std::vector<double>& length,
                                                  const std::vector<double>& weight,
                                                  const LsstOptions& opt) {
  auto mult = copy_counts(g, weight);
  return low_stretch_tree(g, length, opt, &mult);
}

double average_stretch(const DynamicMultiGraph& g, const std::vector<EdgeHandle>& tree,
                       const std::vector<double>& length,
                       const std::vector<double>* weight) {
  auto f = root_forest(g, tree);
  std::vector<double> from_root(g.vertex_bound(), 0);
  for (auto v : f.order)
    if (f.parent[v] != kNoVertex)
      from_root[v] = from_root[f.parent[v]] + length[f.parent_edge[v]];
  double total = 0, norm = 0;
  for (auto h : g.edges()) {
    VertexId u = g.endpoint(h, 0), v = g.endpoint(h, 1);
    VertexId a = f.lca(u, v);
    if (a == kNoVertex) throw std::invalid_argument("tree does not span the graph");
    double d = from_root[u] + from_root[v] - 2 * from_root[a];
    double w = weight ? (*weight)[h] : 1.0;
    total += w * d / length[h];
    norm += w;
  }
  return norm > 0 ? total / norm : 0;
}

std::vector<Cap> tree_capacities(const DynamicMultiGraph& g, const RootedForest& f) {
  std::vector<Cap> acc(g.vertex_bound(), 0);
  for (auto h : g.edges()) {
    VertexId u = g.endpoint(h, 0), v = g.endpoint(h, 1);
    VertexId a = f.lca(u, v);
    if (a == kNoVertex) throw std::invalid_argument("tree does not span the graph");
    Cap c = g.cap(h);
    acc[u] += c;
    acc[v] += c;
    acc[a] -= 2 * c;
  }
  std::vector<Cap> out(g.handle_bound(), 0);
  for (auto it = f.order.rbegin(); it != f.order.rend(); ++it) {
    VertexId v = *it;
    if (f.parent[v] == kNoVertex) continue;
    out[f.parent_edge[v]] = acc[v];
    acc[f.parent[v]] += acc[v];
  }
  return out;
}

std::vector<Cap> tree_capacities(const DynamicMultiGraph& g,
                                 const std::vector<EdgeHandle>& tree) {
  return tree_capacities(g, root_forest(g, tree));
}

std::vector<double> congestion(const DynamicMultiGraph& g,
                               const std::vector<EdgeHandle>& tree,
                               const std::vector<Cap>& tree_cap) {
  std::vector<double> out(g.handle_bound(), 1.0);
  for (auto h : tree)
    out[h] = static_cast<double>(tree_cap[h]) / static_cast<double>(g.cap(h));
  return out;
}

}  // namespace dyncut
