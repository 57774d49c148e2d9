#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "interdict/inner_solvers.hpp"
#include "interdict/instances.hpp"
#include "interdict/milp_solver.hpp"

namespace interdict {

/// Thrown when an enumeration would exceed the evaluation guard; callers
/// must fall back to solve_milp for such instances.
class EnumerationGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::int64_t kOracleGuard = 10'000'000;

struct OracleResult {
  BinaryVector best_x;  // lexicographically smallest optimum
  double value = 0.0;
  std::int64_t evaluated_count = 0;
  std::vector<BinaryVector> all_optima;  // every optimum, within 1e-9 of value
};

/// Enumerates every x with sum(x) <= gamma and maximizes the interdicted
/// shortest path. Throws EnumerationGuardError beyond kOracleGuard
/// candidate evaluations.
OracleResult brute_force_spi(const SpiInstance& inst);

/// Enumerates every removal set with sum(r) <= R and minimizes the residual
/// max flow. Same guard.
OracleResult brute_force_mfi(const MfiInstance& inst);

struct CrossCheckReport {
  bool pass = false;
  double oracle_value = 0.0;
  double milp_value = 0.0;
  bool milp_x_budget_feasible = false;
  double milp_x_inner_value = 0.0;  // inner-solver evaluation of the MILP's W0
  std::string message;              // empty on pass, diff on fail
};

/// Asserts |oracle - solve_milp| <= 1e-6 and that the MILP's interdiction
/// assignment is budget-feasible and re-evaluates to the same value through
/// the inner solver. The milp_override lets tests inject a corrupted MILP.
CrossCheckReport cross_check(const SpiInstance& inst, const MilpInstance* milp_override = nullptr);
CrossCheckReport cross_check(const MfiInstance& inst, const MilpInstance* milp_override = nullptr);

}  // namespace interdict
