#include "dyncut/dynamic_msf.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace dyncut {

void DynamicMsf::grow(EdgeHandle h) {
  if (h >= in_.size()) {
    in_.resize(h + 1, 0);
    tree_.resize(h + 1, 0);
    key_.resize(h + 1, 0);
    end_.resize(h + 1, {kNoVertex, kNoVertex});
  }
}

void DynamicMsf::ensure(VertexId v) { ett_.ensure_vertex(v); }

bool DynamicMsf::connected(VertexId u, VertexId v) const {
  if (!ett_.has_vertex(u) || !ett_.has_vertex(v)) return u == v;
  return ett_.connected(u, v);
}

void DynamicMsf::make_tree(EdgeHandle h) {
  auto [u, v] = end_[h];
  ett_.add(u, -1);
  ett_.add(v, -1);
  ett_.link(u, v, h);
  tree_[h] = 1;
  ++forest_size_;
}

MsfRecourse DynamicMsf::insert(const DynamicMultiGraph& g, EdgeHandle h) {
  grow(h);
  DYNCUT_CHECK(!in_[h], "msf: edge inserted twice");
  VertexId u = g.endpoint(h, 0), v = g.endpoint(h, 1);
  ensure(u);
  ensure(v);
  in_[h] = 1;
  key_[h] = g.stamp(h);
  DYNCUT_CHECK(key_[h] > max_key_, "msf: insertion below the current maximum priority");
  max_key_ = key_[h];
  end_[h] = {u, v};
  ++size_;
  MsfRecourse rec;
  ett_.add(u, 1);
  ett_.add(v, 1);
  if (!ett_.connected(u, v)) {
    make_tree(h);
    rec.inserted.push_back(h);
  }
  return rec;
}

MsfRecourse DynamicMsf::erase(const DynamicMultiGraph& g, EdgeHandle h) {
  DYNCUT_CHECK(contains(h), "msf: erase of an unwatched edge");
  MsfRecourse rec;
  auto [u, v] = end_[h];
  in_[h] = 0;
  --size_;
  if (!tree_[h]) {
    ett_.add(u, -1);
    ett_.add(v, -1);
    return rec;
  }
  ett_.cut(h);
  tree_[h] = 0;
  --forest_size_;
  rec.deleted.push_back(h);
  EdgeHandle r = reconnect(g, u, v);
  if (r != kNoEdge) rec.inserted.push_back(r);
  return rec;
}

MsfRecourse DynamicMsf::split(const DynamicMultiGraph& g, const VertexSplit& s) {
  MsfRecourse rec;
  rec.splits = 1;
  ensure(s.v);
  ensure(s.new_vertex);
  std::vector<EdgeHandle> relink;
  for (auto h : s.moved) {
    if (!contains(h)) continue;
    auto& e = end_[h];
    DYNCUT_CHECK(e.first == s.v || e.second == s.v, "msf: moved edge not at split vertex");
    if (e.first == s.v)
      e.first = s.new_vertex;
    else
      e.second = s.new_vertex;
    if (tree_[h]) {
      ett_.cut(h);
      relink.push_back(h);
    } else {
      ett_.add(s.v, -1);
      ett_.add(s.new_vertex, 1);
    }
  }
  for (auto h : relink) {
    auto [a, b] = end_[h];
    ett_.link(a, b, h);
  }
  EdgeHandle r = reconnect(g, s.v, s.new_vertex);
  if (r != kNoEdge) rec.inserted.push_back(r);
  return rec;
}

EdgeHandle DynamicMsf::reconnect(const DynamicMultiGraph& g, VertexId a,
                                 VertexId b) {
  if (ett_.connected(a, b)) return kNoEdge;
  std::int64_t za = ett_.tree_sum(a), zb = ett_.tree_sum(b);
  VertexId small = za <= zb ? a : b;
  VertexId small_root = ett_.find_root(small);
  EdgeHandle best = kNoEdge;
  for (auto x : ett_.positive_in_subtree(small_root)) {
    if (!g.has_vertex(x)) continue;
    for (auto h : g.incident(x)) {
      if (!contains(h) || tree_[h]) continue;
      auto [p, q] = end_[h];
      VertexId y = p == x ? q : p;
      if (ett_.find_root(y) == small_root) continue;
      if (best == kNoEdge || key_[h] < key_[best]) best = h;
    }
  }
  if (best != kNoEdge) make_tree(best);
  return best;
}

MsfRecourse DynamicMsf::apply(const DynamicMultiGraph& g, const GraphUpdate& u) {
  if (auto* ins = std::get_if<EdgeInsert>(&u)) return insert(g, ins->handle);
  if (auto* del = std::get_if<EdgeDelete>(&u)) return erase(g, del->handle);
  return split(g, std::get<VertexSplit>(u));
}

void DynamicMsf::build(const DynamicMultiGraph& g) {
  auto hs = g.edges();
  std::sort(hs.begin(), hs.end(), [&](EdgeHandle a, EdgeHandle b) {
    return g.stamp(a) < g.stamp(b);
  });
  for (auto v : g.vertices()) ensure(v);
  for (auto h : hs) insert(g, h);
}

std::vector<EdgeHandle> DynamicMsf::forest() const {
  std::vector<EdgeHandle> out;
  for (EdgeHandle h = 0; h < tree_.size(); ++h)
    if (tree_[h]) out.push_back(h);
  return out;
}

void DynamicMsf::validate(const DynamicMultiGraph& g) const {
  std::map<VertexId, std::int64_t> tally;
  std::size_t forest = 0, watched = 0;
  for (EdgeHandle h = 0; h < in_.size(); ++h) {
    if (!in_[h]) {
      DYNCUT_CHECK(!tree_[h], "msf: forest edge outside the subgraph");
      continue;
    }
    ++watched;
    auto [u, v] = end_[h];
    if (g.has_edge(h)) {
      DYNCUT_CHECK((g.endpoint(h, 0) == u && g.endpoint(h, 1) == v) ||
                       (g.endpoint(h, 0) == v && g.endpoint(h, 1) == u),
                   "msf: stale endpoints");
    }
    if (tree_[h]) {
      ++forest;
      DYNCUT_CHECK(ett_.has_edge(h), "msf: forest edge missing from tour");
    } else {
      DYNCUT_CHECK(ett_.connected(u, v), "msf: non-forest edge spans two trees");
      ++tally[u];
      ++tally[v];
    }
  }
  DYNCUT_CHECK(forest == forest_size_ && watched == size_, "msf: counters");
  for (auto [v, c] : tally)
    DYNCUT_CHECK(ett_.value(v) == c, "msf: incident tally mismatch");
}

}  // namespace dyncut
