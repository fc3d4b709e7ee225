#pragma once

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "dyncut/euler_tour.hpp"
#include "dyncut/hierarchy.hpp"

namespace dyncut {

// Exact fraction used for sparsity values.
struct Fraction {
  Cap num = 0;
  Cap den = 1;
  double value() const { return den ? static_cast<double>(num) / static_cast<double>(den) : 0; }
  friend bool operator<(const Fraction& a, const Fraction& b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
  }
  friend bool operator==(const Fraction& a, const Fraction& b) {
    return static_cast<__int128>(a.num) * b.den == static_cast<__int128>(b.num) * a.den;
  }
};

// The stacked forest of a chain rooted at its roots, with the sparsity of
// the cut below every forest edge kept in an ordered set.
class ForestCutTracker {
 public:
  explicit ForestCutTracker(const ChainGraph& chain);

  bool empty() const { return heap_.empty(); }
  // Sparsest cut of the form "everything below one forest edge".
  std::pair<Fraction, EdgeHandle> best() const { return *heap_.begin(); }
  Fraction sparsity(EdgeHandle e) const;
  std::vector<VertexId> side(EdgeHandle e) const;  // vertices below e
  // Removes forest edge e; its lower endpoint becomes a root.
  void erase(EdgeHandle e);
  std::int64_t weight_below(VertexId v) const { return ett_.size(v); }
  VertexId root_of(VertexId v) const { return ett_.find_root(v); }
  // Full recomputation for audits.
  std::pair<Fraction, EdgeHandle> recompute() const;

 private:
  Fraction compute(EdgeHandle e) const;
  void refresh_path(VertexId from);

  EulerTourForest ett_;
  std::vector<Cap> cap_;
  std::vector<VertexId> parent_;
  std::vector<EdgeHandle> parent_edge_;
  std::vector<Fraction> key_;
  std::vector<std::uint8_t> live_;
  std::set<std::pair<Fraction, EdgeHandle>> heap_;
  std::int64_t total_ = 0;
};

struct QueryReport {
  // value: the chain estimate (minimum over chains); for the sparsest cut
  // it is value_frac.
  Cap value = 0;
  Fraction value_frac;
  std::vector<double> per_chain;
  std::size_t best_chain = 0;
  std::vector<VertexId> witness_side;          // min cut / sparsest cut, G ids
  std::vector<std::uint32_t> witness_partition;  // multiway / multicut labels by vertex id
  Cap witness_cost = 0;    // capacity in G of the witness
  Fraction witness_sparsity;  // sparsity in G of the witness (sparsest cut)
  bool feasible = true;    // witness separates what it must
};

struct QueryOptions {
  std::uint64_t seed = 1;
  std::size_t trees = 0;  // sampled trees per core; 0 means ceil(log2 n)
};

QueryReport min_cut(const Hierarchy& h, VertexId s, VertexId t);
QueryReport sparsest_cut(const Hierarchy& h, const QueryOptions& opt = {});
QueryReport multiway_cut(const Hierarchy& h, const std::vector<VertexId>& terminals,
                         const QueryOptions& opt = {});
QueryReport multicut(const Hierarchy& h, const std::vector<std::pair<VertexId, VertexId>>& pairs,
                     const QueryOptions& opt = {});

}  // namespace dyncut
