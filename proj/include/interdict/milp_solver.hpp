#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "interdict/reduction.hpp"

namespace interdict {

enum class LpStatus { optimal, infeasible, unbounded, numerical_failure };

struct LpResult {
  LpStatus status = LpStatus::numerical_failure;
  double value = 0.0;
  std::vector<double> assignment;  // flat order, see MilpInstance::flat_index
};

/// Two-phase primal simplex on the bound-shifted standard form (dense
/// tableau; Bland's rule engages after 10*(rows+cols) iterations). All
/// variables need finite bounds, which the reduction module guarantees.
///
/// relaxed = true solves the continuous relaxation. relaxed = false
/// additionally requires every integer variable to be fixed (lb == ub), so
/// the optimum is exact for the MILP; throws std::invalid_argument otherwise.
LpResult solve_lp(const MilpInstance& milp, bool relaxed = true);

struct SolverConfig {
  std::int64_t node_limit = 1'000'000;
  std::int64_t time_limit_ms = -1;  // < 0 = no limit; 0 stops before the first node
  double gap_tol = 1e-6;            // absolute objective gap for pruning / early stop
};

enum class MilpStatus { optimal, infeasible, budget_exceeded };

struct MilpSolution {
  MilpStatus status = MilpStatus::infeasible;
  double value = 0.0;
  std::vector<double> assignment;  // empty when no incumbent was found
  std::int64_t node_count = 0;
  double wall_time_ms = 0.0;
  std::vector<std::pair<double, double>> incumbent_log;  // (time_ms, objective)

  bool has_solution() const { return !assignment.empty(); }
};

/// Exact branch-and-bound. Depth-first dive until the first incumbent, then
/// best-bound node selection; branches on the most fractional integer
/// variable (ties to the lowest index). Every incumbent improvement is
/// recorded with a timestamp.
MilpSolution solve_milp(const MilpInstance& milp, const SolverConfig& cfg = {});

/// Additional variables and constraints layered on top of an instance
/// without mutating it (trust-region style augmentation). The variables are
/// appended as a fresh group; rows may reference it via
/// VarRef{extra_group_id(milp), i} as well as any base group.
struct MilpExtras {
  std::vector<Variable> vars;
  std::vector<Row> rows;
};

int extra_group_id(const MilpInstance& milp);
MilpInstance augment(const MilpInstance& milp, const MilpExtras& extras);

/// Equivalent to solve_milp(augment(milp, extras), cfg).
MilpSolution solve_milp_with_extra(const MilpInstance& milp, const MilpExtras& extras,
                                   const SolverConfig& cfg = {});

/// CSV dump of the incumbent log: header "time_ms,value" then one line per
/// improvement.
std::string incumbent_log_csv(const MilpSolution& solution);

}  // namespace interdict
