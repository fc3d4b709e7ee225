#include "dyncut/link_cut.hpp"

#include <utility>

namespace dyncut {

int LinkCutForest::alloc() {
  if (!free_.empty()) {
    int x = free_.back();
    free_.pop_back();
    t_[x] = Node{};
    return x;
  }
  t_.emplace_back();
  return static_cast<int>(t_.size()) - 1;
}

void LinkCutForest::ensure_vertex(VertexId v) {
  if (v >= vnode_.size()) vnode_.resize(v + 1, 0);
  if (vnode_[v] != 0) return;
  int x = alloc();
  t_[x].vid = v;
  vnode_[v] = x;
}

int LinkCutForest::vnode(VertexId v) const {
  if (!has_vertex(v)) throw std::invalid_argument("unknown forest vertex");
  return vnode_[v];
}

bool LinkCutForest::is_splay_root(int x) const {
  int p = t_[x].p;
  return p == 0 || (t_[p].ch[0] != x && t_[p].ch[1] != x);
}

bool LinkCutForest::better(int a, int b) const {
  if (a == 0) return false;
  if (b == 0) return true;
  if (t_[a].key != t_[b].key) return t_[a].key < t_[b].key;
  return t_[a].eid < t_[b].eid;
}

void LinkCutForest::pull(int x) {
  int b = t_[x].eid == kNoEdge ? 0 : x;
  for (int c : t_[x].ch)
    if (c && better(t_[c].best, b)) b = t_[c].best;
  t_[x].best = b;
}

void LinkCutForest::push(int x) {
  if (!t_[x].rev) return;
  for (int c : t_[x].ch)
    if (c) {
      t_[c].rev = !t_[c].rev;
      std::swap(t_[c].ch[0], t_[c].ch[1]);
    }
  t_[x].rev = false;
}

void LinkCutForest::rotate(int x) {
  int p = t_[x].p, g = t_[p].p;
  int dir = t_[p].ch[1] == x ? 1 : 0;
  int b = t_[x].ch[dir ^ 1];
  if (!is_splay_root(p)) t_[g].ch[t_[g].ch[1] == p ? 1 : 0] = x;
  t_[x].p = g;
  t_[x].ch[dir ^ 1] = p;
  t_[p].p = x;
  t_[p].ch[dir] = b;
  if (b) t_[b].p = p;
  pull(p);
  pull(x);
}

void LinkCutForest::splay(int x) {
  std::vector<int> stack{x};
  for (int y = x; !is_splay_root(y); y = t_[y].p) stack.push_back(t_[y].p);
  for (auto it = stack.rbegin(); it != stack.rend(); ++it) push(*it);
  while (!is_splay_root(x)) {
    int p = t_[x].p;
    if (!is_splay_root(p)) {
      int g = t_[p].p;
      bool zigzig = (t_[g].ch[1] == p) == (t_[p].ch[1] == x);
      rotate(zigzig ? p : x);
    }
    rotate(x);
  }
}

void LinkCutForest::access(int x) {
  int last = 0;
  for (int y = x; y; y = t_[y].p) {
    splay(y);
    t_[y].ch[1] = last;
    pull(y);
    last = y;
  }
  splay(x);
}

void LinkCutForest::make_root_node(int x) {
  access(x);
  t_[x].rev = !t_[x].rev;
  std::swap(t_[x].ch[0], t_[x].ch[1]);
}

int LinkCutForest::find_root_node(int x) {
  access(x);
  int y = x;
  for (;;) {
    push(y);
    if (!t_[y].ch[0]) break;
    y = t_[y].ch[0];
  }
  splay(y);
  return y;
}

VertexId LinkCutForest::find_root(VertexId v) {
  return t_[find_root_node(vnode(v))].vid;
}

void LinkCutForest::make_root(VertexId v) { make_root_node(vnode(v)); }

bool LinkCutForest::connected(VertexId u, VertexId v) {
  return find_root_node(vnode(u)) == find_root_node(vnode(v));
}

void LinkCutForest::link_nodes(int child, int parent) {
  make_root_node(child);
  t_[child].p = parent;
}

void LinkCutForest::link(VertexId u, VertexId v, EdgeHandle e, Cap key) {
  int a = vnode(u), b = vnode(v);
  if (has_edge(e)) throw std::invalid_argument("edge already linked");
  if (find_root_node(a) == find_root_node(b))
    throw std::invalid_argument("link within one tree");
  int w = alloc();
  t_[w].eid = e;
  t_[w].key = key;
  t_[w].ends[0] = u;
  t_[w].ends[1] = v;
  pull(w);
  if (e >= enode_.size()) enode_.resize(e + 1, 0);
  enode_[e] = w;
  link_nodes(a, w);
  // w is now the root of u's tree; hang it below v without rerooting v's tree
  t_[w].p = b;
}

void LinkCutForest::cut(EdgeHandle e) {
  if (!has_edge(e)) throw std::invalid_argument("cut of absent edge");
  int w = enode_[e];
  // detach w from its parent endpoint; w then roots the child side
  access(w);
  int left = t_[w].ch[0];
  if (left) {
    t_[left].p = 0;
    t_[w].ch[0] = 0;
    pull(w);
  }
  int a = vnode(t_[w].ends[0]), b = vnode(t_[w].ends[1]);
  int child = find_root_node(a) == w ? a : b;
  access(child);
  if (t_[child].ch[0] != w || t_[w].ch[0] != 0 || t_[w].ch[1] != 0)
    throw std::logic_error("link-cut structure corrupted");
  t_[child].ch[0] = 0;
  t_[w].p = 0;
  pull(child);
  enode_[e] = 0;
  free_.push_back(w);
}

EdgeHandle LinkCutForest::path_min(VertexId v) {
  int x = vnode(v);
  access(x);
  int b = t_[x].best;
  return b ? t_[b].eid : kNoEdge;
}

Cap LinkCutForest::key(EdgeHandle e) const {
  if (!has_edge(e)) throw std::invalid_argument("absent edge");
  return t_[enode_[e]].key;
}

VertexId LinkCutForest::edge_end(EdgeHandle e, int side) const {
  if (!has_edge(e)) throw std::invalid_argument("absent edge");
  return t_[enode_[e]].ends[side];
}

}  // namespace dyncut
