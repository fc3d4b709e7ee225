#pragma once

#include <cstdint>
#include <vector>

#include "dyncut/dynamic_msf.hpp"
#include "dyncut/graph.hpp"

namespace dyncut {

struct BundleRecourse {
  std::vector<EdgeHandle> inserted;  // net edges that joined B
  std::vector<EdgeHandle> deleted;   // net edges that left B
  std::size_t splits = 0;
  // changes of the complement G \ B
  std::vector<EdgeHandle> outside_entered;
  std::vector<EdgeHandle> outside_left;
};

// Stack of forests F_1..F_l where F_k is the minimum spanning forest of
// G minus F_1..F_{k-1}. Layers are created on first use, so a graph that
// needs few forests never pays for the unused depth. The bundle owns G.
class SFBundle {
 public:
  explicit SFBundle(std::size_t depth = 1) : depth_(depth) {}
  // Takes over g and builds the layers by inserting its edges in stamp order.
  SFBundle(DynamicMultiGraph g, std::size_t depth);

  BundleRecourse apply(GraphUpdate& u);

  const DynamicMultiGraph& graph() const { return g_; }
  DynamicMultiGraph& graph_for_vertices() { return g_; }
  std::size_t depth() const { return depth_; }
  std::size_t active_layers() const { return layers_.size(); }
  const DynamicMsf& layer(std::size_t k) const { return layers_.at(k - 1); }

  // 0 when the edge is outside the bundle, else the index of its forest.
  std::size_t layer_of(EdgeHandle h) const {
    return h < layer_of_.size() ? layer_of_[h] : 0;
  }
  bool in_bundle(EdgeHandle h) const { return layer_of(h) != 0; }
  std::vector<EdgeHandle> bundle_edges() const;
  std::vector<EdgeHandle> non_bundle_edges() const;
  std::size_t bundle_size() const { return bundle_size_; }

  void validate() const;

 private:
  void insert(EdgeHandle h);
  void erase(EdgeHandle h);
  // Removes the pending edges from every layer from `from` down, in order,
  // after first feeding the split (if any) to that layer. Each removal may
  // pull a replacement into the layer's forest; that edge then has to leave
  // all deeper layers as well.
  void drain(std::size_t from, std::vector<EdgeHandle> pending,
             const VertexSplit* split_first);
  void set_layer(EdgeHandle h, std::size_t k);
  std::uint32_t state(EdgeHandle h) const;
  void touch(EdgeHandle h);

  DynamicMultiGraph g_;
  std::size_t depth_;
  std::vector<DynamicMsf> layers_;
  std::vector<std::uint32_t> layer_of_;
  std::vector<std::uint64_t> touch_epoch_;
  std::uint64_t epoch_ = 0;
  std::vector<std::pair<EdgeHandle, std::uint32_t>> before_;
  std::size_t bundle_size_ = 0;
};

}  // namespace dyncut
