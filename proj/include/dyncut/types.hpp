#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace dyncut {

using VertexId = std::uint32_t;
using EdgeHandle = std::uint32_t;
using Cap = std::int64_t;

inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();
inline constexpr EdgeHandle kNoEdge = std::numeric_limits<EdgeHandle>::max();

// Raised when a structural invariant is found broken at runtime.
class InvariantError : public std::runtime_error {
 public:
  explicit InvariantError(const std::string& what) : std::runtime_error(what) {}
};

#define DYNCUT_CHECK(cond, msg)                                               \
  do {                                                                        \
    if (!(cond)) throw ::dyncut::InvariantError(std::string(msg) + " [" #cond \
                                                "]");                         \
  } while (0)

}  // namespace dyncut
