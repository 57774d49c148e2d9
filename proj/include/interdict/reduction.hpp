#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "interdict/inner_solvers.hpp"
#include "interdict/instances.hpp"

namespace interdict {

enum class Sense { minimize, maximize };
enum class Relation { le, eq, ge };
enum class RowTag { dual, budget, other };

struct Variable {
  std::string name;
  double lb = 0.0;
  double ub = 0.0;
  bool is_binary = false;  // binary vs continuous; no general integers needed
  double obj_coeff = 0.0;
};

/// Group 0 is the interdiction group W0 (always binary, ordered like the
/// source instance's edges); groups >= 1 hold the dual variables.
struct VarGroup {
  int group_id = 0;
  std::vector<Variable> vars;
};

struct VarRef {
  int group = 0;
  int index = 0;

  friend bool operator==(const VarRef&, const VarRef&) = default;
};

struct RowEntry {
  VarRef var;
  double coeff = 0.0;
};

struct Row {
  std::vector<RowEntry> coeffs;  // sparse; exact zeros are never stored
  Relation relation = Relation::le;
  double rhs = 0.0;
  RowTag tag = RowTag::other;
};

enum class SourceKind { none, spi, mfi };

struct MilpProvenance {
  SourceKind kind = SourceKind::none;
  std::vector<std::pair<int, int>> edge_order;  // W0 index -> (tail, head)
};

struct MilpInstance {
  Sense sense = Sense::minimize;
  std::vector<VarGroup> groups;  // groups[k].group_id == k
  std::vector<Row> rows;
  MilpProvenance provenance;

  std::size_t var_count() const;
  /// Flat variable order: groups concatenated in id order.
  std::size_t flat_index(VarRef ref) const;
  const VarGroup& interdiction_group() const { return groups.at(0); }

  /// Throws std::invalid_argument on violated invariants (dangling
  /// coefficients, non-binary W0, missing budget row, empty group).
  void validate() const;
};

/// Dualize-and-combine for SPI: one dual row per edge
/// (pi_i - pi_j - d_ij x_ij <= c_ij), one budget row (sum x <= gamma),
/// objective max pi_source - pi_sink with pi_sink fixed to 0.
MilpInstance dualize_spi(const SpiInstance& inst);

/// The MFI single-level MILP: min sum u_ij beta_ij subject to
/// alpha_i - alpha_j + beta_ij + gamma_ij >= 0 per edge, alpha_t - alpha_s >= 1,
/// sum r_ij gamma_ij <= R; all variables binary. Group 0 holds gamma.
MilpInstance build_mfi_milp(const MfiInstance& inst);

/// Copy with the W0 bounds clamped to x (evaluates the follower problem for
/// a fixed leader decision).
MilpInstance fix_interdiction(const MilpInstance& milp, const BinaryVector& x);

/// Extracts the W0 sub-vector from a flat assignment.
std::vector<double> w0_values(const MilpInstance& milp, const std::vector<double>& flat);

/// Rounds the W0 sub-vector of a flat assignment to a binary vector.
BinaryVector w0_binary(const MilpInstance& milp, const std::vector<double>& flat);

/// LP-file-like JSON dump with the explicit group partition, for debugging
/// and cross-solver comparison.
std::string milp_to_json(const MilpInstance& milp);

}  // namespace interdict
