#pragma once

#include <cstdint>
#include <vector>

#include "dyncut/types.hpp"

namespace dyncut {

struct FlowEdge {
  std::uint32_t u = 0;
  std::uint32_t v = 0;
  Cap cap = 0;
};

struct FlowCut {
  Cap value = 0;
  std::vector<std::uint8_t> source_side;  // by node index
};

// Exact s-t max-flow on an undirected capacitated graph over nodes 0..n-1,
// with the source side of a minimum cut.
FlowCut undirected_max_flow(std::size_t n, const std::vector<FlowEdge>& edges,
                            std::uint32_t s, std::uint32_t t);

}  // namespace dyncut
