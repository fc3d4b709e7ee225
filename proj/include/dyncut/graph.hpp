#pragma once

#include <cstddef>
#include <functional>
#include <variant>
#include <vector>

#include "dyncut/types.hpp"

namespace dyncut {

struct EdgeInsert {
  VertexId u = kNoVertex;
  VertexId v = kNoVertex;
  Cap cap = 1;
  EdgeHandle handle = kNoEdge;  // kNoEdge: the graph allocates one
};

struct EdgeDelete {
  EdgeHandle handle = kNoEdge;
};

// The listed handles leave v for the vertex new_vertex, which must not exist yet.
struct VertexSplit {
  VertexId v = kNoVertex;
  VertexId new_vertex = kNoVertex;  // kNoVertex: the graph allocates one
  std::vector<EdgeHandle> moved;
};

using GraphUpdate = std::variant<EdgeInsert, EdgeDelete, VertexSplit>;
using UpdateBatch = std::vector<GraphUpdate>;

struct SplitResult {
  VertexId kept = kNoVertex;
  VertexId created = kNoVertex;
  // false when the complement of the requested set was moved instead
  bool created_holds_requested = true;
  VertexSplit record;  // what actually happened, replayable on mirrors
};

struct GraphCounters {
  std::size_t n0 = 0;
  std::size_t m0 = 0;
  std::size_t inserts = 0;
  std::size_t deletes = 0;
  std::size_t splits = 0;
  std::size_t moved = 0;
};

class DynamicMultiGraph {
 public:
  DynamicMultiGraph() = default;
  explicit DynamicMultiGraph(std::size_t n);

  VertexId add_vertex();
  // Creates the vertex if absent. Ids above the current bound are allowed.
  void ensure_vertex(VertexId v);
  void remove_isolated_vertex(VertexId v);
  bool has_vertex(VertexId v) const;

  EdgeHandle insert_edge(VertexId u, VertexId v, Cap cap);
  void insert_edge_with_handle(EdgeHandle h, VertexId u, VertexId v, Cap cap);
  void delete_edge(EdgeHandle h);

  // Splits v so that the requested edges end up on one vertex and the rest on
  // the other; physically only the smaller side moves, to a fresh vertex.
  SplitResult split_vertex(VertexId v, const std::vector<EdgeHandle>& moved);
  // Mirror primitive: moves exactly the given handles from v to new_vertex.
  VertexId apply_split(VertexId v, VertexId new_vertex,
                       const std::vector<EdgeHandle>& moved);

  // Applies the update; fills in allocated handles/vertices.
  void apply(GraphUpdate& upd);

  bool has_edge(EdgeHandle h) const {
    return h < edges_.size() && edges_[h].live;
  }
  VertexId endpoint(EdgeHandle h, int side) const;
  VertexId other(EdgeHandle h, VertexId v) const;
  Cap cap(EdgeHandle h) const;
  std::uint64_t stamp(EdgeHandle h) const;
  const std::vector<EdgeHandle>& incident(VertexId v) const;
  std::size_t degree(VertexId v) const { return incident(v).size(); }

  std::size_t num_vertices() const { return live_vertices_; }
  std::size_t num_edges() const { return live_edges_; }
  VertexId vertex_bound() const {
    return static_cast<VertexId>(id_to_slot_.size());
  }
  EdgeHandle handle_bound() const {
    return static_cast<EdgeHandle>(edges_.size());
  }
  std::vector<VertexId> vertices() const;
  std::vector<EdgeHandle> edges() const;

  Cap cut_value(const std::function<bool(VertexId)>& in_side) const;
  Cap cut_value(const std::vector<VertexId>& side) const;
  Cap total_capacity() const;

  const GraphCounters& counters() const { return counters_; }
  // Marks the current state as the start of a run (n0, m0) and zeroes the rest.
  void reset_counters();
  double potential() const;

 private:
  struct Slot {
    VertexId id = kNoVertex;
    std::vector<EdgeHandle> adj;
  };
  struct EdgeRec {
    std::uint32_t slot[2] = {0, 0};
    std::uint32_t pos[2] = {0, 0};
    Cap cap = 0;
    std::uint64_t stamp = 0;
    bool live = false;
  };

  std::uint32_t slot_of(VertexId v) const;
  std::uint32_t new_slot(VertexId id);
  void attach(EdgeHandle h, int side, std::uint32_t slot);
  void detach(EdgeHandle h, int side);
  void link_edge(EdgeHandle h, VertexId u, VertexId v, Cap cap);

  std::vector<Slot> slots_;
  std::vector<std::uint32_t> free_slots_;
  std::vector<std::uint32_t> id_to_slot_;
  std::vector<EdgeRec> edges_;
  std::size_t live_vertices_ = 0;
  std::size_t live_edges_ = 0;
  std::uint64_t next_stamp_ = 0;
  GraphCounters counters_;
};

}  // namespace dyncut
