#include "interdict/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "interdict/reduction.hpp"

namespace interdict {

namespace {

// Visits every binary vector with at most max_ones set bits, by size then
// combination order. Returns false if the visitor aborted.
template <typename Visit>
void for_each_cardinality_subset(std::size_t n, int max_ones, Visit visit) {
  BinaryVector x(n, 0);
  visit(x);
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t)> recurse = [&](std::size_t start) {
    if (static_cast<int>(chosen.size()) >= max_ones) return;
    for (std::size_t e = start; e < n; ++e) {
      x[e] = 1;
      chosen.push_back(e);
      visit(x);
      recurse(e + 1);
      chosen.pop_back();
      x[e] = 0;
    }
  };
  recurse(0);
}

// Visits every removal set with total removal cost within budget.
template <typename Visit>
void for_each_affordable_subset(const std::vector<double>& cost, double budget, Visit visit) {
  const std::size_t n = cost.size();
  BinaryVector x(n, 0);
  visit(x);
  std::function<void(std::size_t, double)> recurse = [&](std::size_t start, double remaining) {
    for (std::size_t e = start; e < n; ++e) {
      if (cost[e] > remaining + 1e-12) continue;
      x[e] = 1;
      visit(x);
      recurse(e + 1, remaining - cost[e]);
      x[e] = 0;
    }
  };
  recurse(0, budget);
}

std::int64_t cardinality_candidate_count(std::size_t n, int max_ones) {
  double total = 0.0;
  double binom = 1.0;
  for (int k = 0;; ++k) {
    total += binom;
    if (total > 2.0 * static_cast<double>(kOracleGuard)) break;
    if (k >= max_ones || static_cast<std::size_t>(k) >= n) break;
    binom = binom * static_cast<double>(n - k) / static_cast<double>(k + 1);
  }
  return static_cast<std::int64_t>(std::min(total, 2.0 * static_cast<double>(kOracleGuard)));
}

void sort_and_dedupe(std::vector<BinaryVector>& optima) {
  std::sort(optima.begin(), optima.end());
  optima.erase(std::unique(optima.begin(), optima.end()), optima.end());
}

}  // namespace

OracleResult brute_force_spi(const SpiInstance& inst) {
  inst.validate();
  if (cardinality_candidate_count(inst.edges.size(), inst.budget) > kOracleGuard)
    throw EnumerationGuardError("brute_force_spi: enumeration exceeds the guard; use solve_milp");

  OracleResult result;
  double best = -kUnreachable;
  for_each_cardinality_subset(inst.edges.size(), inst.budget, [&](const BinaryVector& x) {
    ++result.evaluated_count;
    best = std::max(best, shortest_path(inst, x).length);
  });
  result.value = best;
  for_each_cardinality_subset(inst.edges.size(), inst.budget, [&](const BinaryVector& x) {
    if (std::abs(shortest_path(inst, x).length - best) <= 1e-9) result.all_optima.push_back(x);
  });
  sort_and_dedupe(result.all_optima);
  result.best_x = result.all_optima.front();
  return result;
}

OracleResult brute_force_mfi(const MfiInstance& inst) {
  inst.validate();
  std::vector<double> removal_cost;
  for (const auto& e : inst.edges) removal_cost.push_back(e.removal_cost);

  std::int64_t candidates = 0;
  for_each_affordable_subset(removal_cost, inst.budget, [&](const BinaryVector&) {
    if (++candidates > kOracleGuard)
      throw EnumerationGuardError(
          "brute_force_mfi: enumeration exceeds the guard; use solve_milp");
  });

  OracleResult result;
  double best = kUnreachable;
  for_each_affordable_subset(removal_cost, inst.budget, [&](const BinaryVector& x) {
    ++result.evaluated_count;
    best = std::min(best, max_flow(inst, x).value);
  });
  result.value = best;
  for_each_affordable_subset(removal_cost, inst.budget, [&](const BinaryVector& x) {
    if (std::abs(max_flow(inst, x).value - best) <= 1e-9) result.all_optima.push_back(x);
  });
  sort_and_dedupe(result.all_optima);
  result.best_x = result.all_optima.front();
  return result;
}

namespace {

template <typename Inst, typename OracleFn, typename BudgetFn, typename InnerFn>
CrossCheckReport run_cross_check(const Inst& inst, const MilpInstance& milp, OracleFn oracle_fn,
                                 BudgetFn budget_ok, InnerFn inner_value) {
  CrossCheckReport report;
  OracleResult oracle = oracle_fn(inst);
  report.oracle_value = oracle.value;

  MilpSolution sol = solve_milp(milp);
  std::ostringstream diff;
  if (sol.status != MilpStatus::optimal) {
    diff << "milp status not optimal";
    report.message = diff.str();
    return report;
  }
  report.milp_value = sol.value;
  BinaryVector x = w0_binary(milp, sol.assignment);
  report.milp_x_budget_feasible = budget_ok(x);
  report.milp_x_inner_value = inner_value(x);

  bool values_match = std::abs(report.oracle_value - report.milp_value) <= 1e-6;
  bool certificate_match = std::abs(report.milp_x_inner_value - report.milp_value) <= 1e-6;
  report.pass = values_match && certificate_match && report.milp_x_budget_feasible;
  if (!report.pass) {
    diff << "oracle=" << report.oracle_value << " milp=" << report.milp_value
         << " inner(milp_x)=" << report.milp_x_inner_value
         << " budget_feasible=" << (report.milp_x_budget_feasible ? "yes" : "no");
    report.message = diff.str();
  }
  return report;
}

}  // namespace

CrossCheckReport cross_check(const SpiInstance& inst, const MilpInstance* milp_override) {
  MilpInstance milp = milp_override ? *milp_override : dualize_spi(inst);
  return run_cross_check(
      inst, milp, [](const SpiInstance& i) { return brute_force_spi(i); },
      [&](const BinaryVector& x) {
        return std::accumulate(x.begin(), x.end(), 0) <= inst.budget;
      },
      [&](const BinaryVector& x) { return shortest_path(inst, x).length; });
}

CrossCheckReport cross_check(const MfiInstance& inst, const MilpInstance* milp_override) {
  MilpInstance milp = milp_override ? *milp_override : build_mfi_milp(inst);
  return run_cross_check(
      inst, milp, [](const MfiInstance& i) { return brute_force_mfi(i); },
      [&](const BinaryVector& x) {
        double spent = 0.0;
        for (std::size_t e = 0; e < x.size(); ++e)
          if (x[e]) spent += inst.edges[e].removal_cost;
        return spent <= inst.budget + 1e-6;
      },
      [&](const BinaryVector& x) { return max_flow(inst, x).value; });
}

}  // namespace interdict
