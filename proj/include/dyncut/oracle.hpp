#pragma once

// Brute-force ground truth. Everything here works on plain edge lists over
// vertices 0..n-1 and an adjacency matrix; none of it touches the dynamic
// structures.

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace dyncut::oracle {

using Weight = long long;

struct Budget {
  int max_enum_vertices = 14;
  int max_partition_vertices = 12;
  int max_flow_edges = 4000;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Edge {
  int u = 0;
  int v = 0;
  Weight cap = 1;
  std::uint64_t id = 0;
};

class Graph {
 public:
  Graph() = default;
  Graph(int n, std::vector<Edge> edges);
  int n() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  Weight cap(int u, int v) const { return mat_[u][v]; }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Weight>> mat_;
};

Weight cut_value(const Graph& g, const std::vector<bool>& side);
Weight cut_value_mask(const Graph& g, std::uint64_t mask);

// Calls f(mask, value) for every nonempty S not containing vertex n-1.
void enumerate_cuts(const Graph& g,
                    const std::function<void(std::uint64_t, Weight)>& f,
                    const Budget& b = {});

struct FlowResult {
  Weight value = 0;
  std::vector<bool> source_side;
};
// Shortest augmenting paths on the capacity matrix.
FlowResult max_flow(const Graph& g, int s, int t, const Budget& b = {});
Weight exact_min_cut(const Graph& g, int s, int t, const Budget& b = {});
Weight min_cut_by_enumeration(const Graph& g, int s, int t,
                              const Budget& b = {});
Weight edge_connectivity(const Graph& g, std::size_t edge_index,
                         const Budget& b = {});

struct Ratio {
  Weight num = 0;
  Weight den = 1;
  double value() const { return static_cast<double>(num) / den; }
};
bool less(const Ratio& a, const Ratio& b);

struct SparsestCut {
  Ratio psi;
  std::uint64_t mask = 0;
};
SparsestCut exact_sparsest_cut(const Graph& g, const std::vector<Weight>& w,
                               const Budget& b = {});

struct PartitionCut {
  Weight value = 0;
  std::vector<int> block;  // block index per vertex
};
PartitionCut exact_multiway(const Graph& g, const std::vector<int>& terminals,
                            const Budget& b = {});
PartitionCut exact_multicut(const Graph& g,
                            const std::vector<std::pair<int, int>>& pairs,
                            const Budget& b = {});
Weight partition_cost(const Graph& g, const std::vector<int>& block);

// Minimum spanning forest by Kruskal; key is compared lexicographically and
// must be unique per edge. Returns edge ids.
std::vector<std::uint64_t> kruskal_msf(
    int n, const std::vector<Edge>& edges,
    const std::function<std::pair<std::uint64_t, std::uint64_t>(const Edge&)>&
        key);

// Tree path of (u,v) in the tree given by edges (indices into tree).
std::vector<std::size_t> tree_path(int n, const std::vector<Edge>& tree, int u,
                                   int v);
// Sum over all edges of length(tree path)/length(edge), divided by m.
double naive_average_stretch(int n, const std::vector<Edge>& tree,
                             const std::vector<Edge>& edges,
                             const std::map<std::uint64_t, double>& length);
// Induced capacity of every tree edge, keyed by tree edge id.
std::map<std::uint64_t, Weight> naive_tree_capacities(
    int n, const std::vector<Edge>& tree, const std::vector<Edge>& edges);

// Contraction G/F: every edge whose endpoints lie in different forest
// components becomes (id, root(u), root(v)) with roots given per component.
// Returns sorted tuples (id, min root, max root, cap).
std::vector<std::tuple<std::uint64_t, int, int, Weight>>
contract_from_definition(int n, const std::vector<Edge>& edges,
                         const std::vector<Edge>& forest,
                         const std::vector<int>& roots);

bool connected_without(int n, const std::vector<Edge>& edges,
                       const std::vector<bool>& removed, int s, int t);

}  // namespace dyncut::oracle
