#include <random>

#include "doctest.h"
#include "dyncut/hierarchy.hpp"
#include "jtree_checks.hpp"
#include "support.hpp"

using namespace dyncut;

namespace {

std::size_t chain_violations(const Hierarchy& h) {
  std::size_t bad = 0;
  auto chains = h.chains();
  testsupport::for_each_cut(h.graph(), [&](const std::vector<std::uint8_t>& side, Cap w) {
    for (const auto& c : chains)
      if (c.cut_value(side) < w) ++bad;
  });
  return bad;
}

}  // namespace

TEST_CASE("hierarchy: level sizes") {
  std::mt19937_64 rng(1);
  auto g = testsupport::random_graph(64, 0.1, rng);
  HierarchyConfig cfg;
  cfg.levels = 2;
  cfg.j = 8;
  Hierarchy h(g, cfg);
  CHECK(h.level_sizes() == std::vector<std::size_t>{64, 23, 8});
  CHECK(h.chain_count() == 9);
  h.validate();
  for (const auto& c : h.chains()) {
    c.validate();
    CHECK(c.roots().size() <= h.core_limit(2));
  }
  CHECK_THROWS(Hierarchy(g, HierarchyConfig{2, 65}));
}

TEST_CASE("hierarchy: one level is the single-level scheme") {
  std::mt19937_64 rng(2);
  auto g = testsupport::random_graph(12, 0.4, rng, 3);
  HierarchyConfig cfg;
  cfg.levels = 1;
  cfg.j = 4;
  Hierarchy h(g, cfg);
  CHECK(h.chain_count() == 3);
  CHECK(h.root().children.size() == 3);
  for (const auto& c : h.chains()) c.validate();
  CHECK(chain_violations(h) == 0);
}

TEST_CASE("hierarchy: updates keep every chain above the graph") {
  std::mt19937_64 rng(3);
  for (int run = 0; run < 4; ++run) {
    auto g = testsupport::random_graph(10, 0.45, rng, 2);
    HierarchyConfig cfg;
    cfg.levels = 2;
    cfg.j = 3;
    cfg.seed = static_cast<std::uint64_t>(run + 1);
    Hierarchy h(g, cfg);
    for (int step = 0; step < 12; ++step) {
      auto u = testsupport::random_update(h.graph(), rng, {0.45, 0.45, 12, 2});
      auto rep = h.update(u);
      REQUIRE_NOTHROW(h.validate());
      for (const auto& c : h.chains()) REQUIRE_NOTHROW(c.validate());
      CHECK(chain_violations(h) == 0);
      CHECK(rep.levels.size() == 3);
    }
    CHECK(h.updates() == 12);
  }
}

TEST_CASE("hierarchy: overflow at the last level rebuilds only that level") {
  std::mt19937_64 rng(4);
  auto g = testsupport::random_graph(40, 0.12, rng);
  HierarchyConfig cfg;
  cfg.levels = 2;
  cfg.j = 4;
  Hierarchy h(g, cfg);
  bool seen = false;
  for (int step = 0; step < 200 && !seen; ++step) {
    std::vector<std::size_t> before;
    for (const auto& c : h.root().children) before.push_back(c.updates);
    GraphUpdate u = testsupport::random_update(h.graph(), rng, {0.5, 0.5, 40, 1});
    auto rep = h.update(u);
    if (rep.rebuilt == std::vector<std::size_t>{2}) {
      seen = true;
      for (std::size_t i = 0; i < before.size(); ++i) {
        const auto& c = h.root().children[i];
        CHECK(c.updates == before[i] + 1);  // parents kept their state
        for (const auto& leaf : c.children) CHECK(leaf.updates == 0);
      }
    }
    h.validate();
  }
  CHECK(seen);
  CHECK(h.totals().levels[2].rebuilds >= 1);
}

TEST_CASE("hierarchy: minimum over chains stays close to the graph") {
  std::mt19937_64 rng(5);
  auto g = testsupport::random_graph(32, 0.2, rng);
  std::vector<std::vector<VertexId>> cuts;
  for (int k = 0; k < 100; ++k) {
    std::vector<VertexId> side;
    for (VertexId v = 0; v < 32; ++v)
      if (rng() & 1) side.push_back(v);
    if (!side.empty() && side.size() < 32) cuts.push_back(side);
  }
  double worst = 0, sum = 0;
  std::size_t count = 0;
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    HierarchyConfig cfg;
    cfg.levels = 2;
    cfg.j = 6;
    cfg.seed = seed;
    Hierarchy h(g, cfg);
    auto chains = h.chains();
    for (const auto& c : cuts) {
      std::vector<std::uint8_t> side(g.vertex_bound(), 0);
      for (auto v : c) side[v] = 1;
      Cap best = -1;
      for (const auto& ch : chains) {
        Cap x = ch.cut_value(side);
        if (best < 0 || x < best) best = x;
      }
      Cap w = g.cut_value(c);
      CHECK(best >= w);
      double r = static_cast<double>(best) / static_cast<double>(w);
      worst = std::max(worst, r);
      sum += r;
      ++count;
    }
  }
  MESSAGE("min-over-chains ratio: mean " << sum / static_cast<double>(count) << ", worst " << worst);
}
