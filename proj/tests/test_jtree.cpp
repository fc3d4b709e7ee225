#include <cmath>
#include <random>

#include "doctest.h"
#include "dyncut/jtree.hpp"
#include "jtree_checks.hpp"
#include "support.hpp"

using namespace dyncut;
using testsupport::canonical_embedding_feasible;
using testsupport::core_matches_contraction;
using testsupport::lower_bound_violations;

namespace {

TreeSample sample_of(const DynamicMultiGraph& g, std::vector<EdgeHandle> tree,
                     std::vector<EdgeHandle> heavy = {}) {
  TreeSample s;
  s.tree = std::move(tree);
  s.heavy = std::move(heavy);
  s.tree_cap = tree_capacities(g, s.tree);
  return s;
}

std::vector<JTree> collection(const DynamicMultiGraph& g, std::size_t j, std::uint64_t seed,
                              std::size_t max_trees = 6) {
  MwuConfig cfg;
  cfg.seed = seed;
  cfg.max_trees = max_trees;
  auto mwu = mwu_build(g, j, cfg);
  std::vector<JTree> out;
  for (std::size_t i = 0; i < mwu.trees.size(); ++i)
    out.emplace_back(g, mwu.trees[i], JTreeOptions{seed * 31 + i});
  return out;
}

bool same_core(const DynamicMultiGraph& a, const DynamicMultiGraph& b) {
  if (a.num_edges() != b.num_edges() || a.num_vertices() != b.num_vertices()) return false;
  for (auto h : a.edges())
    if (!b.has_edge(h) || a.cap(h) != b.cap(h) ||
        std::minmax(a.endpoint(h, 0), a.endpoint(h, 1)) !=
            std::minmax(b.endpoint(h, 0), b.endpoint(h, 1)))
      return false;
  return true;
}

}  // namespace

TEST_CASE("jtree: a tree with no heavy edges is its own j-tree") {
  DynamicMultiGraph g(9);
  std::mt19937_64 rng(3);
  for (VertexId v = 1; v < 9; ++v) g.insert_edge(testsupport::uniform(0, v - 1, rng), v, 2);
  JTree t(g, sample_of(g, g.edges()));
  t.validate();
  CHECK(t.num_roots() == 1);
  CHECK(t.core().num_edges() == 0);
  CHECK(t.forest_edges() == g.edges());
  for (auto h : g.edges()) CHECK(t.forest_capacity(h) == 4);
  CHECK(core_matches_contraction(t));

  auto mwu = mwu_build(g, 3);
  CHECK(mwu.trees.size() >= 3);
  for (const auto& s : mwu.trees) {
    CHECK(s.tree == g.edges());
    CHECK(s.heavy.empty());
  }
  CHECK(mwu_congestion(g, mwu) == doctest::Approx(1.0));
  std::vector<JTree> trees;
  for (auto& s : mwu.trees) trees.emplace_back(g, s);
  CHECK(collection_quality(trees) == doctest::Approx(5.0));
}

TEST_CASE("jtree: unit 4-cycle with the middle path edge heavy") {
  DynamicMultiGraph g(4);
  auto ab = g.insert_edge(0, 1, 1);
  auto bc = g.insert_edge(1, 2, 1);
  auto cd = g.insert_edge(2, 3, 1);
  auto da = g.insert_edge(3, 0, 1);
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    JTree t(g, sample_of(g, {ab, bc, cd}, {bc}), {seed});
    t.validate();
    CHECK(t.is_root(1));
    CHECK(t.is_root(2));
    CHECK(!t.in_forest(bc));
    CHECK(t.in_core(bc));
    CHECK(t.in_core(da) == (t.root_of(0) != t.root_of(3)));
    CHECK(core_matches_contraction(t));
    CHECK(canonical_embedding_feasible(t));
    CHECK(lower_bound_violations(t) == 0);
  }
}

TEST_CASE("jtree: add_terminal on a path against the contraction oracle") {
  // path a-b-c with extra edge (a,c); T is the path
  DynamicMultiGraph g(3);
  auto ab = g.insert_edge(0, 1, 1);
  auto bc = g.insert_edge(1, 2, 3);
  auto ac = g.insert_edge(0, 2, 1);
  JTree t(g, sample_of(g, {ab, bc}), {5});
  REQUIRE(t.num_roots() == 1);
  DynamicMultiGraph mirror = t.core();
  auto log = t.add_terminal(1);
  t.validate();
  CHECK(log.terminals >= 1);
  CHECK(log.forest_cuts.size() == log.terminals);
  CHECK(core_matches_contraction(t));
  for (auto u : log.batch) mirror.apply(u);
  CHECK(same_core(mirror, t.core()));
  CHECK(t.add_terminal(1).batch.empty());
  // u^T(ab) = 2 < u^T(bc) = 4, so ab is the edge cut when b is not the tree root
  if (log.terminals == 1 && t.root_of(0) != t.root_of(1)) CHECK(!t.in_forest(ab));
  (void)ac;
}

TEST_CASE("jtree: insert between roots adds one core edge and nothing else") {
  DynamicMultiGraph g(4);
  auto ab = g.insert_edge(0, 1, 1);
  auto bc = g.insert_edge(1, 2, 1);
  auto cd = g.insert_edge(2, 3, 1);
  JTree t(g, sample_of(g, {ab, bc, cd}, {ab, cd}), {2});
  for (VertexId v : {0, 1, 2, 3}) REQUIRE(t.is_root(v));
  auto log = t.insert_edge(EdgeInsert{0, 3, 5});
  CHECK(log.terminals == 0);
  CHECK(log.inserts == 1);
  CHECK(log.batch.size() == 1);
  t.validate();
}

TEST_CASE("jtree: random add_terminal sequences keep the core exact") {
  std::mt19937_64 rng(11);
  for (int run = 0; run < 20; ++run) {
    auto g = testsupport::random_graph(24, 0.2, rng, 4);
    MwuConfig cfg;
    cfg.seed = static_cast<std::uint64_t>(run);
    cfg.max_trees = 3;
    auto mwu = mwu_build(g, 4, cfg);
    JTree t(g, mwu.trees.front(), {static_cast<std::uint64_t>(run)});
    DynamicMultiGraph mirror = t.core();
    for (int k = 0; k < 8; ++k) {
      auto log = t.add_terminal(testsupport::pick(g.vertices(), rng));
      CHECK(log.terminals <= 2);
      for (auto u : log.batch) mirror.apply(u);
    }
    t.validate();
    CHECK(core_matches_contraction(t));
    CHECK(same_core(mirror, t.core()));
    CHECK(canonical_embedding_feasible(t));
  }
}

TEST_CASE("jtree: canonical embedding is feasible on n=32") {
  std::mt19937_64 rng(32);
  for (int run = 0; run < 10; ++run) {
    auto g = testsupport::random_graph(32, 0.2, rng, 3);
    for (auto& t : collection(g, 8, static_cast<std::uint64_t>(run), 4)) {
      t.validate();
      CHECK(canonical_embedding_feasible(t));
      CHECK(core_matches_contraction(t));
    }
  }
}

TEST_CASE("jtree: dynamic replay keeps every structural property") {
  std::mt19937_64 rng(5);
  for (int run = 0; run < 8; ++run) {
    auto g = testsupport::random_graph(10, 0.4, rng, 3);
    auto trees = collection(g, 3, static_cast<std::uint64_t>(run), 3);
    std::vector<DynamicMultiGraph> mirrors;
    std::vector<std::size_t> roots0;
    for (auto& t : trees) {
      mirrors.push_back(t.core());
      roots0.push_back(t.num_roots());
    }
    std::size_t edge_updates = 0;
    for (int step = 0; step < 9; ++step) {
      auto u = testsupport::random_update(g, rng, {0.45, 0.45, 12, 3});
      g.apply(u);
      if (!std::holds_alternative<VertexSplit>(u)) ++edge_updates;
      for (std::size_t i = 0; i < trees.size(); ++i) {
        auto& t = trees[i];
        auto log = t.apply(u);
        for (auto e : log.batch) mirrors[i].apply(e);
        REQUIRE_NOTHROW(t.validate());
        CHECK(same_core(mirrors[i], t.core()));
        CHECK(core_matches_contraction(t));
        CHECK(canonical_embedding_feasible(t));
        CHECK(lower_bound_violations(t) == 0);
        if (std::holds_alternative<EdgeInsert>(u) || std::holds_alternative<EdgeDelete>(u))
          CHECK(log.terminals <= 4);
      }
    }
    for (std::size_t i = 0; i < trees.size(); ++i) {
      CHECK(trees[i].totals().deletes <= edge_updates + 4 * g.counters().moved);
      // every graph edge enters the core at most once per instance, apart
      // from re-insertions of edges moved by splits
      CHECK(trees[i].totals().inserts <=
            g.counters().m0 + g.counters().inserts + 2 * g.counters().moved);
    }
  }
}

TEST_CASE("jtree: root growth is at most four per edge update") {
  std::mt19937_64 rng(9);
  auto g = testsupport::random_graph(40, 0.15, rng);
  auto trees = collection(g, 5, 9, 3);
  std::vector<std::size_t> roots0;
  for (auto& t : trees) roots0.push_back(t.num_roots());
  for (int step = 1; step <= 60; ++step) {
    auto u = testsupport::random_update(g, rng, {0.5, 0.5, 40, 1});
    g.apply(u);
    for (std::size_t i = 0; i < trees.size(); ++i) {
      trees[i].apply(u);
      CHECK(trees[i].num_roots() <= roots0[i] + 4 * static_cast<std::size_t>(step));
    }
  }
  for (auto& t : trees) {
    t.validate();
    CHECK(canonical_embedding_feasible(t));
  }
}

TEST_CASE("jtree: collection quality bounds the average cut exactly") {
  std::mt19937_64 rng(14);
  for (int run = 0; run < 6; ++run) {
    int n = testsupport::uniform(6, 12, rng);
    auto g = testsupport::random_graph(n, 0.45, rng, 3);
    if (g.num_edges() < 2) continue;
    auto trees = collection(g, 2, static_cast<std::uint64_t>(run), 5);
    double alpha = collection_quality(trees);
    double worst = testsupport::worst_average_ratio(trees);
    CHECK(worst <= alpha + 1e-9);
    CHECK(worst >= 1.0);
  }
}

TEST_CASE("jtree: weight-update loop congestion is polylogarithmic") {
  std::mt19937_64 rng(48);
  double worst = 0;
  for (int seed = 0; seed < 4; ++seed) {
    auto g = testsupport::random_graph(48, 0.15, rng);
    MwuConfig cfg;
    cfg.seed = static_cast<std::uint64_t>(seed);
    cfg.max_trees = 8;
    auto r = mwu_build(g, 12, cfg);
    for (const auto& s : r.trees) CHECK(s.heavy.size() <= 12);
    worst = std::max(worst, mwu_congestion(g, r));
  }
  double l = std::log2(48.0);
  MESSAGE("worst averaged congestion " << worst << ", fitted constant " << worst / (l * l));
  CHECK(worst <= l * l);
}

TEST_CASE("jtree: forced heavy sets and gamma escalation") {
  std::mt19937_64 rng(2);
  auto g = testsupport::random_graph(20, 0.3, rng);
  MwuConfig cfg;
  cfg.gamma_init = 1e-3;  // every tree edge is heavy at first
  cfg.max_trees = 4;
  auto r = mwu_build(g, 5, cfg);
  CHECK(r.escalations > 0);
  for (const auto& s : r.trees) CHECK(s.heavy.size() <= 5);
  bool some_heavy = false;
  for (const auto& s : r.trees) some_heavy |= !s.heavy.empty();
  CHECK(some_heavy);
  for (std::size_t i = 0; i < r.trees.size(); ++i) {
    JTree t(g, r.trees[i], {i});
    t.validate();
    for (auto h : r.trees[i].heavy) CHECK(!t.in_forest(h));
    CHECK(canonical_embedding_feasible(t));
  }
}

TEST_CASE("jtree: forest depth cap") {
  DynamicMultiGraph g(60);
  for (VertexId v = 1; v < 60; ++v) g.insert_edge(v - 1, v, 1);
  JTreeOptions opt{4, 6};
  JTree t(g, sample_of(g, g.edges()), opt);
  t.validate();
  CHECK(t.max_forest_depth() <= 6);
  CHECK(canonical_embedding_feasible(t));
  CHECK(core_matches_contraction(t));
}
