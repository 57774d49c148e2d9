#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "interdict/instances.hpp"

namespace interdict {

/// One entry per edge, nonzero = selected (interdicted / removed).
using BinaryVector = std::vector<std::uint8_t>;

/// Global comparison tolerance for real-valued costs and flows.
inline constexpr double kEps = 1e-9;

inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

struct PathResult {
  double length = kUnreachable;  // +infinity sentinel when the sink is unreachable
  std::vector<int> path;         // source..sink node sequence; empty iff unreachable

  bool reachable() const { return !path.empty(); }
};

struct FlowResult {
  double value = 0.0;
  std::vector<double> edge_flow;  // aligned to instance edge order; zero on removed edges
};

/// Exact shortest source->sink distance under effective costs c + d*x
/// (Dijkstra; ties broken toward smaller node ids). x must have one entry
/// per edge.
PathResult shortest_path(const SpiInstance& inst, const BinaryVector& x);

/// Exact max flow on the subgraph with `removed` edges deleted (Edmonds-Karp).
FlowResult max_flow(const MfiInstance& inst, const BinaryVector& removed);

}  // namespace interdict
