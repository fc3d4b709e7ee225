#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dyncut/cut_sparsifier.hpp"
#include "dyncut/graph.hpp"
#include "dyncut/jtree.hpp"

namespace dyncut {

struct HierarchyConfig {
  std::size_t levels = 2;   // L
  std::size_t j = 8;        // size target at the last level
  std::size_t samples = 3;  // children per node
  double rebuild_c = 2.0;   // a level rebuilds once a core exceeds c * j_i
  std::uint64_t seed = 1;
  double gamma_init = 0;         // passed to the weight-update loop
  std::size_t max_trees = 8;     // trees per weight-update run
  double sparsifier_c_xi = 1.0;  // sampling constant of the core sparsifiers
  std::size_t max_path_length = 0;
};

// One j-tree of the hierarchy. The root node is G itself with no forest.
struct HierarchyNode {
  std::size_t level = 0;
  std::optional<JTree> tree;    // over the parent's sparsified core
  std::optional<CutSparsifier> sparse;  // over this node's core
  std::vector<HierarchyNode> children;
  std::size_t updates = 0;      // since this node was built

  const DynamicMultiGraph& core() const { return tree ? tree->core() : sparse->graph(); }
  const DynamicMultiGraph& sparse_core() const { return sparse->sparsifier(); }
};

struct LevelReport {
  std::size_t sparsifier_recourse = 0;  // edges entering/leaving/reweighted in sparsified cores
  std::size_t terminals = 0;
  std::size_t core_splits = 0;
  std::size_t core_inserts = 0;
  std::size_t core_deletes = 0;
  std::size_t rebuilds = 0;
  std::size_t max_core = 0;
};

struct HierarchyReport {
  std::vector<LevelReport> levels;
  std::vector<std::size_t> rebuilt;  // levels recomputed during the update
  void add(const HierarchyReport& o);
};

// A chain H_0, ..., H_L flattened to a j-tree on V(G): the stacked forests
// plus the last sparsified core, with every core vertex named by the graph
// vertex it stands for. Edge handles are the graph's.
struct ChainGraph {
  DynamicMultiGraph graph;
  std::vector<std::uint8_t> in_forest;   // by handle
  std::vector<std::uint8_t> is_root;     // by vertex id
  std::vector<std::uint8_t> forest_level;  // by handle, 1..L for forest edges

  bool forest_edge(EdgeHandle h) const { return h < in_forest.size() && in_forest[h]; }
  Cap cut_value(const std::vector<std::uint8_t>& side) const;
  std::vector<VertexId> roots() const;
  // Forest on V(G) with exactly one root per component; core edges join roots.
  void validate() const;
};

class Hierarchy {
 public:
  Hierarchy(const DynamicMultiGraph& g, const HierarchyConfig& cfg);

  HierarchyReport update(GraphUpdate& u);
  // Makes every listed vertex of G a root of every j-tree along every chain,
  // so it is a core vertex of every chain. No rebuilds are triggered; meant
  // for scratch copies used by queries.
  void pin_terminals(const std::vector<VertexId>& terminals);

  const DynamicMultiGraph& graph() const { return root_.sparse->graph(); }
  const HierarchyConfig& config() const { return cfg_; }
  const std::vector<std::size_t>& level_sizes() const { return sizes_; }
  std::size_t core_limit(std::size_t level) const;
  const HierarchyNode& root() const { return root_; }
  std::size_t chain_count() const;
  std::vector<ChainGraph> chains() const;
  ChainGraph chain(std::size_t index) const;
  const HierarchyReport& totals() const { return totals_; }
  std::size_t updates() const { return updates_; }

  void validate() const;

 private:
  void build_children(HierarchyNode& node);
  static void pin(HierarchyNode& node, const std::vector<VertexId>& names, const UpdateBatch& batch);
  std::uint64_t next_seed();

  HierarchyConfig cfg_;
  std::vector<std::size_t> sizes_;  // j_0 = n, ..., j_L = j
  HierarchyNode root_;
  std::uint64_t seed_state_;
  std::size_t updates_ = 0;
  HierarchyReport totals_;
};

}  // namespace dyncut
