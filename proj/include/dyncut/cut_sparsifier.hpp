#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "dyncut/graph.hpp"
#include "dyncut/sf_bundle.hpp"

namespace dyncut {

struct SparsifierConfig {
  double epsilon = 0.5;
  double c = 1.0;     // failure exponent
  double c_xi = 1.0;  // sampling constant
  std::uint64_t seed = 1;
  // Vertex count used for the level count and bundle depth; 0 means the
  // vertex count of the initial graph.
  std::size_t n_hint = 0;
  // Output capacities are multiplied by num/den and rounded up.
  Cap scale_num = 1;
  Cap scale_den = 1;
};

struct SparsifierRecourse {
  std::size_t inserted = 0;    // edges that joined H
  std::size_t deleted = 0;     // edges that left H
  std::size_t reweighted = 0;  // edges of H whose capacity changed
  // Replayable diff of H: the split (if any), then deletions, then
  // insertions. A reweighted edge appears as a delete and a re-insert of the
  // same handle.
  UpdateBatch batch;
};

// Dynamic cut sparsifier of G. The capacities of G are split into binary
// classes; inside class d the graphs G_0 (class edges) ⊇ G_1 ⊇ ... ⊇ G_rho are
// kept so that B_i is an l_s-bundle of G_{i-1} and G_i holds each edge of
// G_{i-1} \ B_i with probability 1/2. The sparsifier is
// H = sum_d 2^d (G_rho + sum_i B_i) with capacity 2^(i-1) on B_i and 2^rho on
// G_rho. All graphs share G's vertex ids and edge handles.
class CutSparsifier {
 public:
  CutSparsifier(const DynamicMultiGraph& g, const SparsifierConfig& cfg);

  // Applies u to G (filling in a fresh handle or vertex if requested) and
  // returns how H changed.
  SparsifierRecourse apply(GraphUpdate& u);

  const DynamicMultiGraph& graph() const { return g_; }
  const DynamicMultiGraph& sparsifier() const { return h_; }
  std::size_t levels() const { return rho_; }
  std::size_t bundle_depth() const { return depth_; }
  std::size_t classes() const { return classes_.size(); }
  // Size budget for H: classes * (levels + 1) * depth * |V|.
  std::size_t edge_budget() const;
  // Upper bound on the ratio of the largest to the smallest H capacity.
  double capacity_ratio() const;

  const SparsifierRecourse& totals() const { return totals_; }
  std::size_t coins_drawn() const { return coins_drawn_; }

  // Recomputes H, the coin ledger and the sampling chain from the layers.
  void validate() const;

 private:
  struct Class {
    std::vector<SFBundle> bundles;  // bundles[i] is B_{i+1} over G_i
    DynamicMultiGraph top;          // G_rho
    // coin[i][h]: -1 none, else the coin of h for entering G_{i+1}
    std::vector<std::vector<std::int8_t>> coin;
  };

  void add_class();
  Cap class_capacity(const Class& c, EdgeHandle h) const;
  Cap raw_capacity(EdgeHandle h) const;
  Cap scaled(Cap raw) const;
  bool in_remainder(const Class& c, std::size_t i, EdgeHandle h) const;
  const DynamicMultiGraph& level_graph(const Class& c, std::size_t i) const;
  void run_class(Class& c, UpdateBatch batch, std::vector<EdgeHandle>& touched);

  SparsifierConfig cfg_;
  std::size_t rho_ = 1;
  std::size_t depth_ = 1;
  DynamicMultiGraph g_;
  DynamicMultiGraph h_;
  std::vector<Class> classes_;
  std::mt19937_64 rng_;
  std::size_t coins_drawn_ = 0;
  SparsifierRecourse totals_;
};

}  // namespace dyncut
