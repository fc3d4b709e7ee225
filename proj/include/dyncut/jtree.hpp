#pragma once

#include <cstdint>
#include <vector>

#include "dyncut/euler_tour.hpp"
#include "dyncut/graph.hpp"
#include "dyncut/link_cut.hpp"
#include "dyncut/lsst.hpp"

namespace dyncut {

// One spanning tree from the weight-update loop together with its set of
// heavily congested edges.
struct TreeSample {
  std::vector<EdgeHandle> tree;
  std::vector<EdgeHandle> heavy;  // tree edges with congestion >= gamma m / j
  std::vector<Cap> tree_cap;      // induced capacity, indexed by handle
  double ratio = 0;               // sum_T l(e) u^T(e) / |w|_1 for this tree
};

struct MwuConfig {
  double gamma_init = 0;  // 0: 4 ln n (1 + ratio measured on the first tree)
  std::size_t min_trees = 3;
  std::size_t max_trees = 16;
  std::uint64_t seed = 1;
  LsstMethod method = LsstMethod::kStarDecomposition;
};

struct MwuResult {
  std::vector<TreeSample> trees;
  double gamma = 0;
  std::size_t nominal_trees = 0;  // ceil(10 gamma m / j) before capping
  std::size_t escalations = 0;    // times gamma was doubled
};

MwuResult mwu_build(const DynamicMultiGraph& g, std::size_t j, const MwuConfig& cfg = {});

// max over edges of (1/k) * sum over trees not marking e heavy of cong(e).
double mwu_congestion(const DynamicMultiGraph& g, const MwuResult& r);

struct JTreeOptions {
  std::uint64_t seed = 1;           // picks the root of every tree component
  std::size_t max_path_length = 0;  // 0: no cap on forest depth
};

// Changes of the core caused by one operation, as a batch over core vertex
// ids that a mirror of the core can replay. New isolated core vertices show up
// as splits that move nothing.
struct CoreLog {
  UpdateBatch batch;
  std::size_t terminals = 0;
  std::size_t splits = 0;
  std::size_t inserts = 0;
  std::size_t deletes = 0;
  std::size_t moved = 0;
  std::vector<EdgeHandle> forest_cuts;
  void append(CoreLog&& other);
};

// A j-tree over its own copy of a graph: a rooted forest F (a subforest of the
// spanning tree T, with capacities 2 u^T) plus a core, which is the graph
// contracted along F with one core vertex per root. Core vertices carry their
// own ids so that a split can always hand the smaller side a fresh id.
// Edges keep the graph's handles in the core.
class JTree {
 public:
  JTree(const DynamicMultiGraph& g, const TreeSample& t, const JTreeOptions& opt = {});

  // Makes w a root, together with the branch point needed to keep the root
  // set closed under lowest common ancestors in T.
  CoreLog add_terminal(VertexId w);
  CoreLog insert_edge(EdgeInsert e);
  CoreLog delete_edge(EdgeHandle h);
  // A vertex with no edges; it becomes its own tree and root.
  CoreLog add_vertex(VertexId v);
  // Splits are replayed as a new vertex plus delete/insert of every moved edge.
  CoreLog apply(const GraphUpdate& u);

  const DynamicMultiGraph& graph() const { return g_; }
  const DynamicMultiGraph& core() const { return core_; }
  bool is_root(VertexId v) const { return v < is_root_.size() && is_root_[v]; }
  std::vector<VertexId> roots() const;
  std::size_t num_roots() const { return num_roots_; }
  VertexId root_of(VertexId v) const { return ett_.find_root(v); }
  VertexId core_vertex(VertexId root) const { return core_of_.at(root); }
  VertexId root_of_core(VertexId c) const { return root_of_core_.at(c); }
  bool in_forest(EdgeHandle h) const { return h < in_forest_.size() && in_forest_[h]; }
  std::vector<EdgeHandle> forest_edges() const;
  const std::vector<EdgeHandle>& tree_edges() const { return tree_; }
  Cap tree_capacity(EdgeHandle h) const { return h < tree_cap_.size() ? tree_cap_[h] : 0; }
  Cap forest_capacity(EdgeHandle h) const { return 2 * tree_capacity(h); }
  bool in_core(EdgeHandle h) const { return h < in_core_.size() && in_core_[h]; }
  const RootedForest& reference_tree() const { return t_; }
  // Subtree size of v in its forest component (rooted at its root).
  std::int64_t subtree_size(VertexId v) const { return ett_.size(v); }
  std::size_t max_forest_depth() const;

  // Capacity of the cut (side[v] for vertex ids) in forest plus core.
  Cap cut_value(const std::vector<std::uint8_t>& side) const;

  const CoreLog& totals() const { return totals_; }
  void validate() const;

 private:
  void terminal(VertexId w, CoreLog& log);
  std::vector<VertexId> closure(VertexId u) const;
  void count_root(VertexId v);
  void core_insert(EdgeHandle h, CoreLog& log);
  void grow_arrays();
  void cap_paths();
  // Visits every vertex with its forest parent and depth, roots first.
  template <class F>
  void forest_walk(F&& visit) const;

  DynamicMultiGraph g_;
  DynamicMultiGraph core_;
  RootedForest t_;
  std::vector<EdgeHandle> tree_;
  std::vector<Cap> tree_cap_;
  std::vector<std::uint8_t> in_forest_, in_core_, is_root_;
  std::vector<std::uint32_t> roots_below_;  // roots in the T-subtree
  std::vector<VertexId> core_of_, root_of_core_;
  std::size_t num_roots_ = 0;
  mutable LinkCutForest lct_;
  EulerTourForest ett_;
  JTreeOptions opt_;
  CoreLog totals_;
};

// alpha-hat: max over edges of 1 + (4/k) sum over instances whose forest
// holds e of u^T(e)/u(e).
double collection_quality(const std::vector<JTree>& trees);

}  // namespace dyncut
