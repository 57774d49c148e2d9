#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace interdict {

struct SpiEdge {
  int tail = 0;
  int head = 0;
  double cost = 0.0;   // base traversal cost c_ij
  double delay = 0.0;  // added cost d_ij when the edge is interdicted

  friend bool operator==(const SpiEdge&, const SpiEdge&) = default;
};

/// Shortest-path interdiction instance: the leader interdicts up to `budget`
/// edges, each interdiction raising the edge cost from c to c + d; the
/// follower then walks the shortest source->sink path.
struct SpiInstance {
  int node_count = 0;
  int source = 0;
  int sink = 0;
  std::vector<SpiEdge> edges;
  int budget = 0;  // gamma, cardinality budget

  /// Throws std::invalid_argument on any violated invariant
  /// (range checks, self-loops, negative costs, unreachable sink).
  void validate() const;

  friend bool operator==(const SpiInstance&, const SpiInstance&) = default;
};

struct MfiEdge {
  int tail = 0;
  int head = 0;
  double capacity = 0.0;
  double removal_cost = 0.0;  // r_ij, cost of removing this edge

  friend bool operator==(const MfiEdge&, const MfiEdge&) = default;
};

/// Max-flow interdiction instance: the leader removes edges subject to
/// sum(r_ij) <= budget; the follower then maximizes source->sink flow.
struct MfiInstance {
  int node_count = 0;
  int source = 0;
  int sink = 0;
  std::vector<MfiEdge> edges;
  double budget = 0.0;  // R, weighted removal budget

  void validate() const;

  friend bool operator==(const MfiInstance&, const MfiInstance&) = default;
};

enum class DelayPolicy {
  equal_cost,  // d_ij = c_ij: an interdiction doubles the edge length
  constant,    // d_ij = delay_value for every edge
};

struct GenConfig {
  int node_count = 0;
  double density = 1.0;  // each ordered pair (i,j), i != j, kept with this probability
  std::pair<double, double> cost_range = {1.0, 10.0};
  std::pair<double, double> capacity_range = {10.0, 60.0};
  DelayPolicy delay_policy = DelayPolicy::equal_cost;
  double delay_value = 1.0;  // only read when delay_policy == constant
  double budget = 15.0;      // gamma for SPI (must be integral), R for MFI
  std::uint64_t seed = 0;

  void validate() const;
};

/// Deterministic in `config` (including seed). Source is node 0, sink is
/// node_count-1. Costs are uniform in cost_range, edge presence is an
/// independent Bernoulli(density) draw per ordered pair; pairs entering the
/// source or leaving the sink are skipped (they cannot lie on an s-t path).
/// Regenerates up to 100 times if the sink is unreachable; throws
/// std::runtime_error after that.
SpiInstance generate_spi(const GenConfig& config);

/// As generate_spi; capacities uniform in capacity_range, removal costs
/// uniform in cost_range.
MfiInstance generate_mfi(const GenConfig& config);

/// The fixed 7-node, 12-edge worked example: gamma = 1, unit delays,
/// source 0, sink 6. Uninterdicted shortest path is 7, the optimal single
/// interdiction raises it to 8.
SpiInstance example_spi_eq9();

// JSON instance schema, format_version 1 (docs/FORMATS.md):
//   {"kind":"spi"|"mfi","nodes":N,"source":s,"sink":t,
//    "edges":[[tail,head,p1,p2],...],"budget":b,"format_version":1}
// For SPI p1=cost, p2=delay; for MFI p1=capacity, p2=removal_cost.
std::string to_json(const SpiInstance& inst);
std::string to_json(const MfiInstance& inst);
SpiInstance spi_from_json(const std::string& text);
MfiInstance mfi_from_json(const std::string& text);

/// Peeks at the "kind" field of a serialized instance ("spi" or "mfi").
std::string instance_kind(const std::string& text);

}  // namespace interdict
