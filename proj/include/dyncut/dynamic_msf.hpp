#pragma once

#include <cstdint>
#include <vector>

#include "dyncut/euler_tour.hpp"
#include "dyncut/graph.hpp"

namespace dyncut {

struct MsfRecourse {
  std::vector<EdgeHandle> inserted;
  std::vector<EdgeHandle> deleted;
  std::size_t splits = 0;
};

// Minimum spanning forest of a subgraph of a DynamicMultiGraph. The subgraph
// is whatever was fed through insert/erase; the graph is passed to every call
// and only used for adjacency scans. Priorities are the graph's insertion
// stamps, so a freshly inserted edge is always the heaviest of any cycle it
// closes and never displaces a forest edge.
class DynamicMsf {
 public:
  DynamicMsf() = default;

  // Edge h (present in g) joins the watched subgraph.
  MsfRecourse insert(const DynamicMultiGraph& g, EdgeHandle h);
  // Edge h leaves the watched subgraph; g may or may not still hold it.
  MsfRecourse erase(const DynamicMultiGraph& g, EdgeHandle h);
  // g has already performed the split.
  MsfRecourse split(const DynamicMultiGraph& g, const VertexSplit& s);
  // Dispatch for a standalone MSF over all of g; g has already applied u.
  MsfRecourse apply(const DynamicMultiGraph& g, const GraphUpdate& u);
  // Feeds every edge of g in priority order.
  void build(const DynamicMultiGraph& g);

  bool contains(EdgeHandle h) const { return h < in_.size() && in_[h]; }
  bool in_forest(EdgeHandle h) const { return h < tree_.size() && tree_[h]; }
  std::uint64_t key(EdgeHandle h) const { return key_.at(h); }
  std::vector<EdgeHandle> forest() const;
  std::size_t forest_size() const { return forest_size_; }
  std::size_t size() const { return size_; }
  bool connected(VertexId u, VertexId v) const;

  // Recounts tallies and connectivity from scratch; throws on mismatch.
  void validate(const DynamicMultiGraph& g) const;

 private:
  void grow(EdgeHandle h);
  void ensure(VertexId v);
  // Links the minimum-priority watched non-forest edge between the trees of
  // a and b, if one exists.
  EdgeHandle reconnect(const DynamicMultiGraph& g, VertexId a, VertexId b);
  void make_tree(EdgeHandle h);

  EulerTourForest ett_;
  std::vector<std::uint8_t> in_;
  std::vector<std::uint8_t> tree_;
  std::vector<std::uint64_t> key_;
  std::vector<std::pair<VertexId, VertexId>> end_;
  std::uint64_t max_key_ = 0;
  std::size_t forest_size_ = 0;
  std::size_t size_ = 0;
};

}  // namespace dyncut
