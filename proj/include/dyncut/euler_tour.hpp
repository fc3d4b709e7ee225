#pragma once

#include <cstdint>
#include <vector>

#include "dyncut/types.hpp"

namespace dyncut {

// Rooted dynamic forest over an Euler tour kept in treaps. Each vertex carries
// an integer z(v); sum(v) is the total of z over the subtree of v under the
// current rooting and size(v) counts its vertices.
class EulerTourForest {
 public:
  explicit EulerTourForest(std::uint64_t seed = 0x9e3779b97f4a7c15ULL)
      : rng_(seed | 1) {}

  void ensure_vertex(VertexId v);
  // Ends of tree edge e as given to link.
  std::pair<VertexId, VertexId> edge_ends(EdgeHandle e) const {
    return ends_.at(e);
  }
  bool has_vertex(VertexId v) const {
    return v < vnode_.size() && vnode_[v] != 0;
  }
  bool has_edge(EdgeHandle e) const {
    return e < arcs_.size() && arcs_[e].first != 0;
  }

  VertexId find_root(VertexId v) const;
  bool connected(VertexId u, VertexId v) const;
  void make_root(VertexId v);
  // Hangs u's tree below v. The combined tree keeps v's root.
  void link(VertexId u, VertexId v, EdgeHandle e);
  // The part containing the old root keeps it; the other part is rooted at
  // its endpoint of e. Returns that endpoint.
  VertexId cut(EdgeHandle e);

  std::int64_t sum(VertexId v) const;
  std::int64_t size(VertexId v) const;
  std::int64_t tree_sum(VertexId v) const { return sum(find_root(v)); }
  std::int64_t tree_size(VertexId v) const { return size(find_root(v)); }
  // Subtree sum/size of the child side of tree edge e.
  std::int64_t sum_below(EdgeHandle e) const;
  std::int64_t size_below(EdgeHandle e) const;
  std::int64_t value(VertexId v) const;
  void add(VertexId v, std::int64_t delta);
  void set(VertexId v, std::int64_t value) { add(v, value - this->value(v)); }

  // Vertices of v's subtree (under the current rooting) with z > 0, in tour
  // order. Requires z >= 0 everywhere in that tree.
  std::vector<VertexId> positive_in_subtree(VertexId v) const;
  std::vector<VertexId> vertices_in_subtree(VertexId v) const;
  std::vector<VertexId> tree_vertices(VertexId v) const {
    return vertices_in_subtree(find_root(v));
  }

 private:
  struct Node {
    int l = 0, r = 0, p = 0;
    std::uint32_t pri = 0;
    std::int64_t val = 0;
    std::int64_t sum = 0;
    std::int32_t cnt = 0;  // vertex nodes in subtree
    std::int32_t sz = 0;   // all nodes in subtree
    VertexId vid = kNoVertex;  // kNoVertex for arc nodes
    int twin = 0;
  };

  int alloc();
  void release(int x);
  void pull(int x);
  int merge(int a, int b);
  void split(int t, int k, int& a, int& b);
  int root_of(int x) const;
  int index_of(int x) const;
  int first_node(int t) const;
  int predecessor(int x) const;
  void subtree_range(VertexId v, int& root, int& lo, int& hi) const;
  void edge_range(EdgeHandle e, int& root, int& lo, int& hi) const;
  std::int64_t range_sum(int root, int lo, int hi, bool count) const;
  void collect(int x, int offset, int lo, int hi, bool positive_only,
               std::vector<VertexId>& out) const;
  int vnode(VertexId v) const;
  std::uint32_t next_pri();

  std::vector<Node> t_{Node{}};
  std::vector<int> free_;
  std::vector<int> vnode_;
  std::vector<std::pair<int, int>> arcs_;
  std::vector<std::pair<VertexId, VertexId>> ends_;
  std::vector<std::vector<EdgeHandle>> inc_;
  std::uint64_t rng_;
};

}  // namespace dyncut
