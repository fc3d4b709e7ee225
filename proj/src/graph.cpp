#include "dyncut/graph.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace dyncut {

namespace {
constexpr std::uint32_t kNoSlot = std::numeric_limits<std::uint32_t>::max();
}

DynamicMultiGraph::DynamicMultiGraph(std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) add_vertex();
  reset_counters();
}

std::uint32_t DynamicMultiGraph::slot_of(VertexId v) const {
  if (v >= id_to_slot_.size() || id_to_slot_[v] == kNoSlot)
    throw std::invalid_argument("unknown vertex " + std::to_string(v));
  return id_to_slot_[v];
}

std::uint32_t DynamicMultiGraph::new_slot(VertexId id) {
  std::uint32_t s;
  if (!free_slots_.empty()) {
    s = free_slots_.back();
    free_slots_.pop_back();
  } else {
    s = static_cast<std::uint32_t>(slots_.size());
    slots_.emplace_back();
  }
  slots_[s].id = id;
  slots_[s].adj.clear();
  if (id >= id_to_slot_.size()) id_to_slot_.resize(id + 1, kNoSlot);
  id_to_slot_[id] = s;
  ++live_vertices_;
  return s;
}

VertexId DynamicMultiGraph::add_vertex() {
  auto id = static_cast<VertexId>(id_to_slot_.size());
  new_slot(id);
  return id;
}

void DynamicMultiGraph::ensure_vertex(VertexId v) {
  if (!has_vertex(v)) new_slot(v);
}

void DynamicMultiGraph::remove_isolated_vertex(VertexId v) {
  auto s = slot_of(v);
  if (!slots_[s].adj.empty())
    throw std::invalid_argument("vertex still has edges");
  id_to_slot_[v] = kNoSlot;
  slots_[s].id = kNoVertex;
  free_slots_.push_back(s);
  --live_vertices_;
}

bool DynamicMultiGraph::has_vertex(VertexId v) const {
  return v < id_to_slot_.size() && id_to_slot_[v] != kNoSlot;
}

void DynamicMultiGraph::attach(EdgeHandle h, int side, std::uint32_t slot) {
  auto& e = edges_[h];
  e.slot[side] = slot;
  e.pos[side] = static_cast<std::uint32_t>(slots_[slot].adj.size());
  slots_[slot].adj.push_back(h);
}

void DynamicMultiGraph::detach(EdgeHandle h, int side) {
  auto& e = edges_[h];
  auto& adj = slots_[e.slot[side]].adj;
  std::uint32_t p = e.pos[side];
  EdgeHandle last = adj.back();
  adj[p] = last;
  adj.pop_back();
  if (last != h) {
    auto& le = edges_[last];
    // a self-loop is impossible, so exactly one side of `last` sits in this slot
    int ls = (le.slot[0] == e.slot[side] && le.pos[0] == adj.size()) ? 0 : 1;
    le.pos[ls] = p;
  }
}

void DynamicMultiGraph::link_edge(EdgeHandle h, VertexId u, VertexId v,
                                  Cap cap) {
  if (u == v) throw std::invalid_argument("self-loops are not supported");
  if (cap <= 0) throw std::invalid_argument("capacity must be positive");
  auto su = slot_of(u), sv = slot_of(v);
  if (h >= edges_.size()) edges_.resize(h + 1);
  if (edges_[h].live) throw std::invalid_argument("handle already live");
  auto& e = edges_[h];
  e.live = true;
  e.cap = cap;
  e.stamp = ++next_stamp_;
  attach(h, 0, su);
  attach(h, 1, sv);
  ++live_edges_;
  ++counters_.inserts;
}

EdgeHandle DynamicMultiGraph::insert_edge(VertexId u, VertexId v, Cap cap) {
  auto h = static_cast<EdgeHandle>(edges_.size());
  link_edge(h, u, v, cap);
  return h;
}

void DynamicMultiGraph::insert_edge_with_handle(EdgeHandle h, VertexId u,
                                                VertexId v, Cap cap) {
  link_edge(h, u, v, cap);
}

void DynamicMultiGraph::delete_edge(EdgeHandle h) {
  if (!has_edge(h))
    throw std::invalid_argument("stale edge handle " + std::to_string(h));
  detach(h, 0);
  detach(h, 1);
  edges_[h].live = false;
  --live_edges_;
  ++counters_.deletes;
}

VertexId DynamicMultiGraph::apply_split(VertexId v, VertexId new_vertex,
                                        const std::vector<EdgeHandle>& moved) {
  auto sv = slot_of(v);
  if (new_vertex == kNoVertex) new_vertex = static_cast<VertexId>(id_to_slot_.size());
  if (has_vertex(new_vertex))
    throw std::invalid_argument("split target already exists");
  for (auto h : moved) {
    if (!has_edge(h) || (edges_[h].slot[0] != sv && edges_[h].slot[1] != sv))
      throw std::invalid_argument("handle not incident to split vertex");
  }
  auto sn = new_slot(new_vertex);
  for (auto h : moved) {
    int side = edges_[h].slot[0] == sv ? 0 : 1;
    detach(h, side);
    attach(h, side, sn);
  }
  ++counters_.splits;
  counters_.moved += moved.size();
  return new_vertex;
}

SplitResult DynamicMultiGraph::split_vertex(
    VertexId v, const std::vector<EdgeHandle>& moved) {
  auto sv = slot_of(v);
  std::unordered_set<EdgeHandle> req(moved.begin(), moved.end());
  if (req.size() != moved.size())
    throw std::invalid_argument("duplicate handle in split");
  for (auto h : moved) {
    if (!has_edge(h) || (edges_[h].slot[0] != sv && edges_[h].slot[1] != sv))
      throw std::invalid_argument("handle not incident to split vertex");
  }
  SplitResult res;
  res.kept = v;
  const auto& adj = slots_[sv].adj;
  if (2 * moved.size() <= adj.size()) {
    res.record.moved = moved;
  } else {
    res.created_holds_requested = false;
    for (auto h : adj)
      if (!req.count(h)) res.record.moved.push_back(h);
  }
  res.record.v = v;
  res.created = apply_split(v, kNoVertex, res.record.moved);
  res.record.new_vertex = res.created;
  return res;
}

void DynamicMultiGraph::apply(GraphUpdate& upd) {
  if (auto* ins = std::get_if<EdgeInsert>(&upd)) {
    if (ins->handle == kNoEdge)
      ins->handle = insert_edge(ins->u, ins->v, ins->cap);
    else
      insert_edge_with_handle(ins->handle, ins->u, ins->v, ins->cap);
  } else if (auto* del = std::get_if<EdgeDelete>(&upd)) {
    delete_edge(del->handle);
  } else {
    auto& sp = std::get<VertexSplit>(upd);
    sp.new_vertex = apply_split(sp.v, sp.new_vertex, sp.moved);
  }
}

VertexId DynamicMultiGraph::endpoint(EdgeHandle h, int side) const {
  if (!has_edge(h)) throw std::invalid_argument("stale edge handle");
  return slots_[edges_[h].slot[side]].id;
}

VertexId DynamicMultiGraph::other(EdgeHandle h, VertexId v) const {
  VertexId a = endpoint(h, 0);
  return a == v ? endpoint(h, 1) : a;
}

Cap DynamicMultiGraph::cap(EdgeHandle h) const {
  if (!has_edge(h)) throw std::invalid_argument("stale edge handle");
  return edges_[h].cap;
}

std::uint64_t DynamicMultiGraph::stamp(EdgeHandle h) const {
  if (!has_edge(h)) throw std::invalid_argument("stale edge handle");
  return edges_[h].stamp;
}

const std::vector<EdgeHandle>& DynamicMultiGraph::incident(VertexId v) const {
  return slots_[slot_of(v)].adj;
}

std::vector<VertexId> DynamicMultiGraph::vertices() const {
  std::vector<VertexId> out;
  out.reserve(live_vertices_);
  for (VertexId v = 0; v < id_to_slot_.size(); ++v)
    if (id_to_slot_[v] != kNoSlot) out.push_back(v);
  return out;
}

std::vector<EdgeHandle> DynamicMultiGraph::edges() const {
  std::vector<EdgeHandle> out;
  out.reserve(live_edges_);
  for (EdgeHandle h = 0; h < edges_.size(); ++h)
    if (edges_[h].live) out.push_back(h);
  return out;
}

Cap DynamicMultiGraph::cut_value(
    const std::function<bool(VertexId)>& in_side) const {
  Cap total = 0;
  for (EdgeHandle h = 0; h < edges_.size(); ++h) {
    if (!edges_[h].live) continue;
    if (in_side(endpoint(h, 0)) != in_side(endpoint(h, 1))) total += edges_[h].cap;
  }
  return total;
}

Cap DynamicMultiGraph::cut_value(const std::vector<VertexId>& side) const {
  std::unordered_set<VertexId> s(side.begin(), side.end());
  return cut_value([&](VertexId v) { return s.count(v) > 0; });
}

Cap DynamicMultiGraph::total_capacity() const {
  Cap total = 0;
  for (const auto& e : edges_)
    if (e.live) total += e.cap;
  return total;
}

void DynamicMultiGraph::reset_counters() {
  counters_ = GraphCounters{};
  counters_.n0 = live_vertices_;
  counters_.m0 = live_edges_;
}

double DynamicMultiGraph::potential() const {
  double phi = 0;
  for (const auto& s : slots_) {
    if (s.id == kNoVertex || s.adj.size() < 2) continue;
    double d = static_cast<double>(s.adj.size());
    phi += d * std::log2(d);
  }
  return phi;
}

}  // namespace dyncut
