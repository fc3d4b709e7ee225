#include "dyncut/euler_tour.hpp"

#include <algorithm>
#include <stdexcept>

namespace dyncut {

std::uint32_t EulerTourForest::next_pri() {
  rng_ ^= rng_ << 13;
  rng_ ^= rng_ >> 7;
  rng_ ^= rng_ << 17;
  return static_cast<std::uint32_t>(rng_ >> 16);
}

int EulerTourForest::alloc() {
  int x;
  if (!free_.empty()) {
    x = free_.back();
    free_.pop_back();
    t_[x] = Node{};
  } else {
    t_.emplace_back();
    x = static_cast<int>(t_.size()) - 1;
  }
  t_[x].pri = next_pri();
  t_[x].sz = 1;
  return x;
}

void EulerTourForest::release(int x) { free_.push_back(x); }

void EulerTourForest::pull(int x) {
  auto& n = t_[x];
  n.sum = n.val;
  n.cnt = n.vid != kNoVertex ? 1 : 0;
  n.sz = 1;
  for (int c : {n.l, n.r}) {
    if (!c) continue;
    n.sum += t_[c].sum;
    n.cnt += t_[c].cnt;
    n.sz += t_[c].sz;
    t_[c].p = x;
  }
}

int EulerTourForest::merge(int a, int b) {
  if (!a) return b;
  if (!b) return a;
  if (t_[a].pri > t_[b].pri) {
    t_[a].r = merge(t_[a].r, b);
    pull(a);
    t_[a].p = 0;
    return a;
  }
  t_[b].l = merge(a, t_[b].l);
  pull(b);
  t_[b].p = 0;
  return b;
}

// first k nodes go to a
void EulerTourForest::split(int t, int k, int& a, int& b) {
  if (!t) {
    a = b = 0;
    return;
  }
  int ls = t_[t].l ? t_[t_[t].l].sz : 0;
  if (k <= ls) {
    int l1, l2;
    split(t_[t].l, k, l1, l2);
    t_[t].l = l2;
    pull(t);
    t_[t].p = 0;
    if (l1) t_[l1].p = 0;
    a = l1;
    b = t;
  } else {
    int r1, r2;
    split(t_[t].r, k - ls - 1, r1, r2);
    t_[t].r = r1;
    pull(t);
    t_[t].p = 0;
    if (r2) t_[r2].p = 0;
    a = t;
    b = r2;
  }
}

int EulerTourForest::root_of(int x) const {
  while (t_[x].p) x = t_[x].p;
  return x;
}

int EulerTourForest::index_of(int x) const {
  int idx = t_[x].l ? t_[t_[x].l].sz : 0;
  while (t_[x].p) {
    int p = t_[x].p;
    if (t_[p].r == x) idx += 1 + (t_[p].l ? t_[t_[p].l].sz : 0);
    x = p;
  }
  return idx;
}

int EulerTourForest::first_node(int t) const {
  while (t_[t].l) t = t_[t].l;
  return t;
}

int EulerTourForest::predecessor(int x) const {
  if (t_[x].l) {
    x = t_[x].l;
    while (t_[x].r) x = t_[x].r;
    return x;
  }
  while (t_[x].p && t_[t_[x].p].l == x) x = t_[x].p;
  return t_[x].p;
}

int EulerTourForest::vnode(VertexId v) const {
  if (!has_vertex(v)) throw std::invalid_argument("unknown tour vertex");
  return vnode_[v];
}

void EulerTourForest::ensure_vertex(VertexId v) {
  if (v >= vnode_.size()) vnode_.resize(v + 1, 0);
  if (vnode_[v]) return;
  int x = alloc();
  t_[x].vid = v;
  pull(x);
  vnode_[v] = x;
}

VertexId EulerTourForest::find_root(VertexId v) const {
  return t_[first_node(root_of(vnode(v)))].vid;
}

bool EulerTourForest::connected(VertexId u, VertexId v) const {
  return root_of(vnode(u)) == root_of(vnode(v));
}

void EulerTourForest::make_root(VertexId v) {
  int x = vnode(v);
  int r = root_of(x);
  int k = index_of(x);
  if (k == 0) return;
  int a, b;
  split(r, k, a, b);
  merge(b, a);
}

void EulerTourForest::link(VertexId u, VertexId v, EdgeHandle e) {
  if (has_edge(e)) throw std::invalid_argument("edge already in tour");
  if (connected(u, v)) throw std::invalid_argument("link within one tree");
  make_root(u);
  int tu = root_of(vnode(u));
  int xv = vnode(v);
  int tv = root_of(xv);
  int k = index_of(xv);
  int left, right;
  split(tv, k + 1, left, right);
  int down = alloc(), up = alloc();
  t_[down].twin = up;
  t_[up].twin = down;
  pull(down);
  pull(up);
  if (e >= arcs_.size()) arcs_.resize(e + 1, {0, 0});
  arcs_[e] = {down, up};
  if (std::max(u, v) >= inc_.size()) inc_.resize(std::max(u, v) + 1);
  inc_[u].push_back(e);
  inc_[v].push_back(e);
  ends_.resize(std::max<std::size_t>(ends_.size(), e + 1));
  ends_[e] = {u, v};
  merge(merge(merge(merge(left, down), tu), up), right);
}

VertexId EulerTourForest::cut(EdgeHandle e) {
  if (!has_edge(e)) throw std::invalid_argument("cut of absent tour edge");
  auto [a1, a2] = arcs_[e];
  int i1 = index_of(a1), i2 = index_of(a2);
  if (i1 > i2) {
    std::swap(a1, a2);
    std::swap(i1, i2);
  }
  int r = root_of(a1);
  int left, rest, arc1, rest2, mid, rest3, arc2, right;
  split(r, i1, left, rest);
  split(rest, 1, arc1, rest2);
  split(rest2, i2 - i1 - 1, mid, rest3);
  split(rest3, 1, arc2, right);
  merge(left, right);
  release(arc1);
  release(arc2);
  arcs_[e] = {0, 0};
  for (auto x : {ends_[e].first, ends_[e].second}) {
    auto& lst = inc_[x];
    lst.erase(std::find(lst.begin(), lst.end(), e));
  }
  auto [ea, eb] = ends_[e];
  VertexId child = root_of(vnode(ea)) == root_of(mid) ? ea : eb;
  make_root(child);
  return child;
}

// Under rerooting the single vertex node of v need not follow the arc from its
// parent, so the parent edge is found as the one incident edge whose arc
// interval encloses the vertex node.
void EulerTourForest::subtree_range(VertexId v, int& root, int& lo,
                                    int& hi) const {
  int x = vnode(v);
  root = root_of(x);
  int idx = index_of(x);
  if (idx == 0) {
    lo = 0;
    hi = t_[root].sz;
    return;
  }
  for (auto e : inc_[v]) {
    int i1 = index_of(arcs_[e].first), i2 = index_of(arcs_[e].second);
    if (i1 > i2) std::swap(i1, i2);
    if (i1 < idx && idx < i2) {
      lo = i1 + 1;
      hi = i2;
      return;
    }
  }
  throw std::logic_error("euler tour: parent edge not found");
}

std::int64_t EulerTourForest::range_sum(int root, int lo, int hi,
                                        bool count) const {
  auto prefix_to = [&](int k) {
    std::int64_t acc = 0;
    int y = root, off = 0;
    while (y) {
      int ls = t_[y].l ? t_[t_[y].l].sz : 0;
      if (k <= off + ls) {
        y = t_[y].l;
        continue;
      }
      if (t_[y].l) acc += count ? t_[t_[y].l].cnt : t_[t_[y].l].sum;
      acc += count ? (t_[y].vid != kNoVertex ? 1 : 0) : t_[y].val;
      off += ls + 1;
      y = t_[y].r;
    }
    return acc;
  };
  return prefix_to(hi) - prefix_to(lo);
}

std::int64_t EulerTourForest::sum(VertexId v) const {
  int root, lo, hi;
  subtree_range(v, root, lo, hi);
  return range_sum(root, lo, hi, false);
}

std::int64_t EulerTourForest::size(VertexId v) const {
  int root, lo, hi;
  subtree_range(v, root, lo, hi);
  return range_sum(root, lo, hi, true);
}

std::int64_t EulerTourForest::sum_below(EdgeHandle e) const {
  int root, lo, hi;
  edge_range(e, root, lo, hi);
  return range_sum(root, lo, hi, false);
}

std::int64_t EulerTourForest::size_below(EdgeHandle e) const {
  int root, lo, hi;
  edge_range(e, root, lo, hi);
  return range_sum(root, lo, hi, true);
}

void EulerTourForest::edge_range(EdgeHandle e, int& root, int& lo,
                                 int& hi) const {
  if (!has_edge(e)) throw std::invalid_argument("absent tour edge");
  root = root_of(arcs_[e].first);
  int i1 = index_of(arcs_[e].first), i2 = index_of(arcs_[e].second);
  if (i1 > i2) std::swap(i1, i2);
  lo = i1 + 1;
  hi = i2;
}

std::int64_t EulerTourForest::value(VertexId v) const {
  return t_[vnode(v)].val;
}

void EulerTourForest::add(VertexId v, std::int64_t delta) {
  int x = vnode(v);
  t_[x].val += delta;
  for (int y = x; y; y = t_[y].p) t_[y].sum += delta;
}

void EulerTourForest::collect(int x, int offset, int lo, int hi,
                              bool positive_only,
                              std::vector<VertexId>& out) const {
  if (!x) return;
  if (offset >= hi || offset + t_[x].sz <= lo) return;
  if (positive_only ? t_[x].sum <= 0 : t_[x].cnt == 0) return;
  int ls = t_[x].l ? t_[t_[x].l].sz : 0;
  collect(t_[x].l, offset, lo, hi, positive_only, out);
  int idx = offset + ls;
  if (idx >= lo && idx < hi && t_[x].vid != kNoVertex &&
      (!positive_only || t_[x].val > 0))
    out.push_back(t_[x].vid);
  collect(t_[x].r, idx + 1, lo, hi, positive_only, out);
}

std::vector<VertexId> EulerTourForest::positive_in_subtree(VertexId v) const {
  int root, lo, hi;
  subtree_range(v, root, lo, hi);
  std::vector<VertexId> out;
  collect(root, 0, lo, hi, true, out);
  return out;
}

std::vector<VertexId> EulerTourForest::vertices_in_subtree(VertexId v) const {
  int root, lo, hi;
  subtree_range(v, root, lo, hi);
  std::vector<VertexId> out;
  collect(root, 0, lo, hi, false, out);
  return out;
}

}  // namespace dyncut
