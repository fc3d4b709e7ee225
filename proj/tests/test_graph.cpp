#include <cmath>

#include "doctest.h"
#include "support.hpp"

using namespace dyncut;
using namespace testsupport;

TEST_CASE("insert and parallel edges") {
  DynamicMultiGraph g(2);
  auto h1 = g.insert_edge(0, 1, 1);
  CHECK(g.num_edges() == 1);
  CHECK(g.cut_value(std::vector<VertexId>{0}) == 1);
  g.insert_edge(0, 1, 1);
  CHECK(g.cut_value(std::vector<VertexId>{0}) == 2);
  g.delete_edge(h1);
  CHECK(g.cut_value(std::vector<VertexId>{0}) == 1);
  CHECK_THROWS(g.delete_edge(h1));
}

TEST_CASE("insert rejects bad input") {
  DynamicMultiGraph g(2);
  CHECK_THROWS(g.insert_edge(0, 7, 1));
  CHECK_THROWS(g.insert_edge(0, 1, 0));
  CHECK_THROWS(g.insert_edge(1, 1, 3));
  g.remove_isolated_vertex(1);
  CHECK_THROWS(g.insert_edge(0, 1, 1));
}

TEST_CASE("deleting the only edge") {
  DynamicMultiGraph g(2);
  auto h = g.insert_edge(0, 1, 4);
  g.delete_edge(h);
  CHECK(g.cut_value(std::vector<VertexId>{0}) == 0);
}

TEST_CASE("cut value basics") {
  DynamicMultiGraph g(3);
  g.insert_edge(0, 1, 1);
  g.insert_edge(1, 2, 1);
  g.insert_edge(0, 2, 1);
  CHECK(g.cut_value(std::vector<VertexId>{1}) == 2);
  CHECK(g.cut_value(std::vector<VertexId>{}) == 0);
  CHECK(g.cut_value(std::vector<VertexId>{0, 1, 2}) == 0);
}

TEST_CASE("star split moves two of four edges") {
  DynamicMultiGraph g(5);
  std::vector<EdgeHandle> hs;
  for (VertexId leaf = 1; leaf <= 4; ++leaf) hs.push_back(g.insert_edge(0, leaf, 1));
  auto res = g.split_vertex(0, {hs[0], hs[1]});
  CHECK(g.degree(res.kept) == 2);
  CHECK(g.degree(res.created) == 2);
  CHECK(g.num_edges() == 4);
  CHECK(g.other(hs[0], 1) == res.created);
  CHECK(g.other(hs[2], 3) == res.kept);
  CHECK(g.counters().moved == 2);
}

TEST_CASE("empty split creates an isolated vertex") {
  DynamicMultiGraph g(2);
  g.insert_edge(0, 1, 1);
  auto res = g.split_vertex(0, {});
  CHECK(g.degree(res.created) == 0);
  CHECK(g.degree(0) == 1);
  CHECK(g.counters().moved == 0);
}

TEST_CASE("split of the larger side relabels") {
  DynamicMultiGraph g(5);
  std::vector<EdgeHandle> hs;
  for (VertexId leaf = 1; leaf <= 4; ++leaf) hs.push_back(g.insert_edge(0, leaf, 1));
  auto res = g.split_vertex(0, {hs[0], hs[1], hs[2]});
  CHECK_FALSE(res.created_holds_requested);
  CHECK(g.degree(res.created) == 1);
  CHECK(g.other(hs[3], 4) == res.created);
  CHECK(g.other(hs[0], 1) == res.kept);
  CHECK(g.counters().moved == 1);
  CHECK_THROWS(g.split_vertex(1, {hs[3]}));
}

TEST_CASE("split keeps handles and capacities") {
  std::mt19937_64 rng(7);
  auto g = random_graph(10, 0.5, rng, 9);
  std::map<EdgeHandle, Cap> caps;
  for (auto h : g.edges()) caps[h] = g.cap(h);
  for (int round = 0; round < 30; ++round) {
    auto vs = g.vertices();
    auto v = pick(vs, rng);
    std::vector<EdgeHandle> moved;
    for (auto h : g.incident(v))
      if (uniform(0, 1, rng)) moved.push_back(h);
    auto deg = g.degree(v);
    auto res = g.split_vertex(v, moved);
    CHECK(g.degree(res.kept) + g.degree(res.created) == deg);
    for (auto h : moved) {
      auto holder = res.created_holds_requested ? res.created : res.kept;
      CHECK((g.endpoint(h, 0) == holder || g.endpoint(h, 1) == holder));
    }
  }
  for (auto [h, c] : caps) CHECK(g.cap(h) == c);
  CHECK(g.num_edges() == caps.size());
}

TEST_CASE("cut value matches an edge scan") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = random_graph(8, 0.4, rng, 5);
    auto view = to_oracle(g);
    for (std::uint64_t mask = 0; mask < 256; mask += 7) {
      auto in = [&](VertexId v) { return ((mask >> view.index[v]) & 1) != 0; };
      CHECK(g.cut_value(in) == oracle::cut_value_mask(view.g, mask));
    }
  }
}

TEST_CASE("physical split moves stay within the potential bound") {
  std::mt19937_64 rng(3);
  for (int run = 0; run < 10; ++run) {
    auto g = random_graph(24, 0.3, rng);
    std::size_t updates = 0;
    for (int step = 0; step < 300; ++step) {
      int kind = uniform(0, 2, rng);
      auto vs = g.vertices();
      if (kind == 0) {
        auto u = pick(vs, rng), v = pick(vs, rng);
        if (u == v) continue;
        g.insert_edge(u, v, 1);
      } else if (kind == 1 && g.num_edges() > 0) {
        g.delete_edge(pick(g.edges(), rng));
      } else {
        auto v = pick(vs, rng);
        std::vector<EdgeHandle> moved;
        for (auto h : g.incident(v))
          if (uniform(0, 3, rng) == 0) moved.push_back(h);
        g.split_vertex(v, moved);
      }
      ++updates;
    }
    const auto& c = g.counters();
    double logn = std::log2(static_cast<double>(g.num_vertices()));
    double bound = 4.0 * static_cast<double>(c.m0 + c.inserts) * logn +
                   4.0 * static_cast<double>(updates) * logn;
    CHECK(static_cast<double>(c.moved) <= bound);
  }
}
