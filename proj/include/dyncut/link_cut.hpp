#pragma once

#include <vector>

#include "dyncut/types.hpp"

namespace dyncut {

// Rooted dynamic forest with per-edge keys. Edges are represented as nodes so
// that path_min can report the edge itself. Ties on keys go to the smaller
// edge handle.
class LinkCutForest {
 public:
  void ensure_vertex(VertexId v);
  bool has_vertex(VertexId v) const {
    return v < vnode_.size() && vnode_[v] != 0;
  }
  bool has_edge(EdgeHandle e) const {
    return e < enode_.size() && enode_[e] != 0;
  }

  VertexId find_root(VertexId v);
  void make_root(VertexId v);
  bool connected(VertexId u, VertexId v);
  // Hangs u's tree below v. The combined tree keeps v's root.
  void link(VertexId u, VertexId v, EdgeHandle e, Cap key);
  // The part containing the old root keeps it; the detached part is rooted at
  // its endpoint of e.
  void cut(EdgeHandle e);
  // Minimum-key edge on the path from v to its root, kNoEdge if v is a root.
  EdgeHandle path_min(VertexId v);
  Cap key(EdgeHandle e) const;
  VertexId edge_end(EdgeHandle e, int side) const;

 private:
  struct Node {
    int ch[2] = {0, 0};
    int p = 0;
    bool rev = false;
    Cap key = 0;
    EdgeHandle eid = kNoEdge;  // kNoEdge marks a vertex node
    VertexId vid = kNoVertex;
    int best = 0;              // edge node with minimum (key, eid) in splay subtree
    VertexId ends[2] = {kNoVertex, kNoVertex};
  };

  bool is_splay_root(int x) const;
  bool better(int a, int b) const;
  void pull(int x);
  void push(int x);
  void rotate(int x);
  void splay(int x);
  void access(int x);
  void make_root_node(int x);
  int find_root_node(int x);
  void link_nodes(int child, int parent);
  int vnode(VertexId v) const;
  int alloc();

  std::vector<Node> t_{Node{}};
  std::vector<int> free_;
  std::vector<int> vnode_;
  std::vector<int> enode_;
};

}  // namespace dyncut
