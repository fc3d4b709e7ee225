#pragma once

#include <cstdint>
#include <vector>

#include "dyncut/graph.hpp"

namespace dyncut {

// Static rooted spanning forest of a graph, with binary-lifting LCA.
// Per-vertex arrays are indexed by vertex id, per-edge arrays by handle.
struct RootedForest {
  std::vector<VertexId> parent;          // kNoVertex at roots and absent ids
  std::vector<EdgeHandle> parent_edge;   // kNoEdge at roots
  std::vector<std::uint32_t> depth;
  std::vector<VertexId> root;            // root of the vertex's component
  std::vector<VertexId> order;           // parents before children
  std::vector<std::vector<VertexId>> up; // up[k][v]: 2^k-th ancestor

  bool in_forest(VertexId v) const {
    return v < root.size() && root[v] != kNoVertex;
  }
  VertexId lca(VertexId u, VertexId v) const;
  // Tree edges on the path between u and v.
  std::vector<EdgeHandle> path(VertexId u, VertexId v) const;
};

// Roots every component of the forest `tree` (edges of g). preferred_roots
// are used where they fall in a component; other components are rooted at
// their smallest vertex id.
RootedForest root_forest(const DynamicMultiGraph& g,
                         const std::vector<EdgeHandle>& tree,
                         const std::vector<VertexId>& preferred_roots = {});

enum class LsstMethod { kStarDecomposition, kShortestPathTree };

struct LsstOptions {
  LsstMethod method = LsstMethod::kStarDecomposition;
  std::uint64_t seed = 1;
};

// Spanning forest of g with small average stretch under `length`
// (indexed by handle, positive on every edge of g). `mult` optionally gives
// the number of parallel copies each edge stands for.
std::vector<EdgeHandle> low_stretch_tree(const DynamicMultiGraph& g,
                                         const std::vector<double>& length,
                                         const LsstOptions& opt = {},
                                         const std::vector<std::uint64_t>* mult = nullptr);

// Weighted variant: edge e stands for ceil(m * w(e) / |w|_1) copies.
std::vector<EdgeHandle> low_stretch_tree_weighted(const DynamicMultiGraph& g,
                                                  const std::vector<double>& length,
                                                  const std::vector<double>& weight,
                                                  const LsstOptions& opt = {});
std::vector<std::uint64_t> copy_counts(const DynamicMultiGraph& g,
                                       const std::vector<double>& weight);

// Sum over edges of dist_T(u,v)/l(e), weighted by w when given, divided by
// the total weight (or by m).
double average_stretch(const DynamicMultiGraph& g, const std::vector<EdgeHandle>& tree,
                       const std::vector<double>& length,
                       const std::vector<double>* weight = nullptr);

// u^T(e) for every tree edge: total capacity of the graph edges whose tree
// path crosses e. Zero for non-tree handles.
std::vector<Cap> tree_capacities(const DynamicMultiGraph& g,
                                 const std::vector<EdgeHandle>& tree);
std::vector<Cap> tree_capacities(const DynamicMultiGraph& g, const RootedForest& f);

// u^T(e)/u(e) on tree edges, 1 elsewhere.
std::vector<double> congestion(const DynamicMultiGraph& g,
                               const std::vector<EdgeHandle>& tree,
                               const std::vector<Cap>& tree_cap);

}  // namespace dyncut
