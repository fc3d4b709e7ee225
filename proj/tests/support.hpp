#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <vector>

#include "dyncut/audit.hpp"
#include "dyncut/graph.hpp"
#include "dyncut/oracle.hpp"

namespace testsupport {

using dyncut::Cap;
using dyncut::DynamicMultiGraph;
using dyncut::EdgeHandle;
using dyncut::VertexId;

using OracleView = dyncut::audit::OracleView;
inline OracleView to_oracle(const DynamicMultiGraph& g) { return dyncut::audit::oracle_view(g); }

inline DynamicMultiGraph random_graph(int n, double p, std::mt19937_64& rng,
                                      Cap max_cap = 1) {
  DynamicMultiGraph g(static_cast<std::size_t>(n));
  std::bernoulli_distribution coin(p);
  std::uniform_int_distribution<Cap> cap(1, max_cap);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) g.insert_edge(u, v, cap(rng));
  g.reset_counters();
  return g;
}

template <class T>
T pick(const std::vector<T>& v, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> d(0, v.size() - 1);
  return v[d(rng)];
}

inline int uniform(int lo, int hi, std::mt19937_64& rng) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

struct UpdateMix {
  double insert = 0.45;
  double erase = 0.4;  // remainder: splits
  std::size_t max_vertices = 64;
  Cap max_cap = 1;
};

// Draws an update that is valid for g. Splits move the smaller side of a
// random partition of the incident edges to a fresh vertex.
inline dyncut::GraphUpdate random_update(const DynamicMultiGraph& g,
                                         std::mt19937_64& rng,
                                         const UpdateMix& mix = {}) {
  auto vs = g.vertices();
  double r = std::uniform_real_distribution<double>(0, 1)(rng);
  bool can_split = g.num_vertices() < mix.max_vertices;
  if (r >= mix.insert + mix.erase && can_split) {
    std::vector<VertexId> cand;
    for (auto v : vs)
      if (g.degree(v) >= 2) cand.push_back(v);
    if (!cand.empty()) {
      auto v = pick(cand, rng);
      std::vector<EdgeHandle> a, b;
      for (auto h : g.incident(v)) (rng() & 1 ? a : b).push_back(h);
      if (a.empty()) std::swap(a, b);
      if (a.size() > b.size() && !b.empty()) std::swap(a, b);
      return dyncut::VertexSplit{v, dyncut::kNoVertex, a};
    }
  }
  if (r >= mix.insert && g.num_edges() > 0) {
    return dyncut::EdgeDelete{pick(g.edges(), rng)};
  }
  VertexId u = pick(vs, rng), v = pick(vs, rng);
  while (v == u) v = pick(vs, rng);
  std::uniform_int_distribution<Cap> cap(1, mix.max_cap);
  return dyncut::EdgeInsert{u, v, cap(rng)};
}

using dyncut::audit::kruskal_forest;

}  // namespace testsupport
