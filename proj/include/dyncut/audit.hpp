#pragma once

// Checks of the dynamic structures against the brute-force oracles. Shared by
// the tests, the verify subcommand and the acceptance run.

#include <functional>
#include <map>
#include <vector>

#include "dyncut/graph.hpp"
#include "dyncut/hierarchy.hpp"
#include "dyncut/jtree.hpp"
#include "dyncut/oracle.hpp"
#include "dyncut/sf_bundle.hpp"

namespace dyncut::audit {

// Dense copy of a graph for the oracles; edge ids are the handles.
struct OracleView {
  oracle::Graph g;
  std::map<VertexId, int> index;
  std::vector<VertexId> ids;
};
OracleView oracle_view(const DynamicMultiGraph& g);

// Kruskal forest under insertion-stamp priorities, sorted by handle.
std::vector<EdgeHandle> kruskal_forest(const DynamicMultiGraph& g);

// Edges outside the bundle whose edge connectivity is below the depth.
std::size_t bundle_certificate_violations(const SFBundle& b, const oracle::Budget& budget = {});

// Core of t against the contraction of (G, F) computed from scratch.
bool core_matches_contraction(const JTree& t);
// Routes every edge canonically through forest and core; true when no forest
// edge carries more than its capacity.
bool canonical_embedding_feasible(const JTree& t);

// Calls f(side, U_G(side)) for every cut of g; side is indexed by vertex id.
void for_each_cut(const DynamicMultiGraph& g,
                  const std::function<void(const std::vector<std::uint8_t>&, Cap)>& f,
                  const oracle::Budget& budget = {});
// Cuts where the j-tree undercuts its graph.
std::size_t lower_bound_violations(const JTree& t, const oracle::Budget& budget = {});
// (cut, chain) pairs where a chain undercuts the graph.
std::size_t chain_violations(const Hierarchy& h, const oracle::Budget& budget = {});
// Largest ratio of the collection-average cut to the graph cut.
double worst_average_ratio(const std::vector<JTree>& trees, const oracle::Budget& budget = {});

}  // namespace dyncut::audit
