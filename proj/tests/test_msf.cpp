#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "dyncut/dynamic_msf.hpp"
#include "support.hpp"

using namespace dyncut;
using testsupport::kruskal_forest;

namespace {

std::vector<EdgeHandle> sorted_forest(const DynamicMsf& f) {
  auto out = f.forest();
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("msf: insert joining two components") {
  DynamicMultiGraph g(2);
  DynamicMsf f;
  f.build(g);
  auto h = g.insert_edge(0, 1, 1);
  auto r = f.insert(g, h);
  CHECK(r.inserted == std::vector<EdgeHandle>{h});
  CHECK(r.deleted.empty());
  CHECK(f.in_forest(h));
}

TEST_CASE("msf: triangle and empty graph") {
  DynamicMultiGraph g(3);
  DynamicMsf empty;
  empty.build(g);
  CHECK(empty.forest().empty());
  g.insert_edge(0, 1, 1);
  g.insert_edge(1, 2, 1);
  g.insert_edge(0, 2, 1);
  DynamicMsf f;
  f.build(g);
  CHECK(f.forest_size() == 2);
  f.validate(g);
}

TEST_CASE("msf: forest edge deletion in a 4-cycle") {
  DynamicMultiGraph g(4);
  auto a = g.insert_edge(0, 1, 1);
  g.insert_edge(1, 2, 1);
  g.insert_edge(2, 3, 1);
  auto d = g.insert_edge(3, 0, 1);
  DynamicMsf f;
  f.build(g);
  CHECK(!f.in_forest(d));
  auto before = kruskal_forest(g);
  g.delete_edge(a);
  auto r = f.erase(g, a);
  auto after = kruskal_forest(g);
  CHECK(r.deleted == std::vector<EdgeHandle>{a});
  CHECK(r.inserted == std::vector<EdgeHandle>{d});
  CHECK(sorted_forest(f) == after);
  std::vector<EdgeHandle> gone, gained;
  std::set_difference(before.begin(), before.end(), after.begin(), after.end(),
                      std::back_inserter(gone));
  std::set_difference(after.begin(), after.end(), before.begin(), before.end(),
                      std::back_inserter(gained));
  CHECK(gone == r.deleted);
  CHECK(gained == r.inserted);
}

TEST_CASE("msf: non-forest deletion has no recourse") {
  DynamicMultiGraph g(3);
  g.insert_edge(0, 1, 1);
  g.insert_edge(1, 2, 1);
  auto c = g.insert_edge(0, 2, 1);
  DynamicMsf f;
  f.build(g);
  g.delete_edge(c);
  auto r = f.erase(g, c);
  CHECK(r.inserted.empty());
  CHECK(r.deleted.empty());
}

TEST_CASE("msf: split separating a tree but not the graph") {
  // Path 1-0-2 in the forest, chord 1-2 outside it. Splitting 0 so that
  // (0,2) moves leaves the forest in two pieces joined only by the chord.
  DynamicMultiGraph g(3);
  auto a = g.insert_edge(0, 1, 1);
  auto b = g.insert_edge(0, 2, 1);
  auto c = g.insert_edge(1, 2, 1);
  DynamicMsf f;
  f.build(g);
  CHECK(f.in_forest(a));
  CHECK(f.in_forest(b));
  auto old_forest = sorted_forest(f);
  auto res = g.split_vertex(0, {b});
  auto r = f.split(g, res.record);
  CHECK(r.deleted.empty());
  CHECK(r.inserted == std::vector<EdgeHandle>{c});
  CHECK(sorted_forest(f) == kruskal_forest(g));
  for (auto h : old_forest) CHECK(f.in_forest(h));
  f.validate(g);
}

TEST_CASE("msf: rejects stale insertions") {
  DynamicMultiGraph g(2);
  auto a = g.insert_edge(0, 1, 1);
  DynamicMsf f;
  f.insert(g, a);
  CHECK_THROWS_AS(f.insert(g, a), InvariantError);
  CHECK_THROWS_AS(f.erase(g, 7), InvariantError);
}

TEST_CASE("msf: fuzz against Kruskal with exact recourse") {
  std::mt19937_64 rng(11);
  for (int run = 0; run < 20; ++run) {
    auto g = testsupport::random_graph(testsupport::uniform(4, 24, rng), 0.2, rng);
    DynamicMsf f;
    f.build(g);
    REQUIRE(sorted_forest(f) == kruskal_forest(g));
    for (int step = 0; step < 200; ++step) {
      auto u = testsupport::random_update(g, rng, {0.45, 0.4, 40, 1});
      auto old_forest = sorted_forest(f);
      g.apply(u);
      auto r = f.apply(g, u);
      REQUIRE(sorted_forest(f) == kruskal_forest(g));
      if (std::holds_alternative<EdgeInsert>(u)) {
        CHECK(r.inserted.size() <= 1);
        CHECK(r.deleted.empty());
      } else if (auto* d = std::get_if<EdgeDelete>(&u)) {
        CHECK(r.inserted.size() <= 1);
        CHECK(r.deleted.size() <= 1);
        if (!r.deleted.empty()) CHECK(r.deleted[0] == d->handle);
        if (r.deleted.empty()) CHECK(r.inserted.empty());
      } else {
        CHECK(r.inserted.size() <= 1);
        CHECK(r.deleted.empty());
        for (auto h : old_forest) CHECK(f.in_forest(h));
      }
    }
    f.validate(g);
  }
}
