#include "interdict/milp_solver.hpp"

#include <stdexcept>

#include "doctest.h"
#include "interdict/instances.hpp"
#include "interdict/oracle.hpp"
#include "test_oracles.hpp"

using namespace interdict;
using namespace interdict::testing;

namespace {

// Minimal instance satisfying the MilpInstance invariants (binary W0 plus a
// budget row) that generic LP tests can extend with continuous variables.
MilpInstance lp_shell() {
  MilpInstance milp;
  milp.sense = Sense::maximize;
  VarGroup w0{0, {Variable{"w0_dummy", 0.0, 0.0, true, 0.0}}};
  milp.groups.push_back(std::move(w0));
  Row budget;
  budget.tag = RowTag::budget;
  budget.relation = Relation::le;
  budget.rhs = 0.0;
  budget.coeffs.push_back({{0, 0}, 1.0});
  milp.rows.push_back(std::move(budget));
  return milp;
}

}  // namespace

TEST_SUITE("milp_solver") {

TEST_CASE("LP: max x s.t. x <= 5, 0 <= x <= 10 gives 5") {
  MilpInstance milp = lp_shell();
  milp.groups.push_back({1, {Variable{"x", 0.0, 10.0, false, 1.0}}});
  Row cap;
  cap.relation = Relation::le;
  cap.rhs = 5.0;
  cap.coeffs.push_back({{1, 0}, 1.0});
  milp.rows.push_back(std::move(cap));

  LpResult lp = solve_lp(milp);
  REQUIRE(lp.status == LpStatus::optimal);
  CHECK(lp.value == doctest::Approx(5.0));
  CHECK(lp.assignment[milp.flat_index({1, 0})] == doctest::Approx(5.0));
}

TEST_CASE("LP: contradictory rows are infeasible") {
  MilpInstance milp = lp_shell();
  milp.groups.push_back({1, {Variable{"x", 0.0, 10.0, false, 1.0}}});
  Row ge;
  ge.relation = Relation::ge;
  ge.rhs = 1.0;
  ge.coeffs.push_back({{1, 0}, 1.0});
  Row le;
  le.relation = Relation::le;
  le.rhs = 0.0;
  le.coeffs.push_back({{1, 0}, 1.0});
  milp.rows.push_back(std::move(ge));
  milp.rows.push_back(std::move(le));
  CHECK(solve_lp(milp).status == LpStatus::infeasible);
}

TEST_CASE("LP of the fixed eq9 dual equals the Dijkstra length (strong duality)") {
  SpiInstance inst = example_spi_eq9();
  MilpInstance milp = dualize_spi(inst);

  BinaryVector x(12, 0);
  CHECK(enumerate_shortest_path(inst, x) == doctest::Approx(7.0));  // oracle
  LpResult lp = solve_lp(fix_interdiction(milp, x), /*relaxed=*/false);
  REQUIRE(lp.status == LpStatus::optimal);
  CHECK(lp.value == doctest::Approx(7.0));

  x[8] = 1;  // interdict (3,6)
  lp = solve_lp(fix_interdiction(milp, x), false);
  REQUIRE(lp.status == LpStatus::optimal);
  CHECK(lp.value == doctest::Approx(8.0));
}

TEST_CASE("all-ones fixing equals the shortest path under c + d when the budget permits") {
  SpiInstance inst = example_spi_eq9();
  inst.budget = 12;
  BinaryVector ones(12, 1);
  double oracle = enumerate_shortest_path(inst, ones);
  LpResult lp = solve_lp(fix_interdiction(dualize_spi(inst), ones), false);
  REQUIRE(lp.status == LpStatus::optimal);
  CHECK(lp.value == doctest::Approx(oracle));
}

TEST_CASE("all-ones fixing against a budget of 1 is infeasible") {
  MilpInstance milp = dualize_spi(example_spi_eq9());
  CHECK(solve_lp(fix_interdiction(milp, BinaryVector(12, 1)), false).status ==
        LpStatus::infeasible);
}

TEST_CASE("relaxed=false requires fixed integers") {
  MilpInstance milp = dualize_spi(example_spi_eq9());
  CHECK_THROWS_AS(solve_lp(milp, /*relaxed=*/false), std::invalid_argument);
  CHECK_NOTHROW(solve_lp(milp, /*relaxed=*/true));
}

TEST_CASE("eq9 MILP optimum is 8") {
  MilpSolution sol = solve_milp(dualize_spi(example_spi_eq9()));
  REQUIRE(sol.status == MilpStatus::optimal);
  CHECK(sol.value == doctest::Approx(8.0));
  CHECK(sol.node_count >= 1);
}

TEST_CASE("weak duality: the root relaxation bounds the MILP value") {
  MilpInstance milp = dualize_spi(example_spi_eq9());
  LpResult root = solve_lp(milp);
  MilpSolution sol = solve_milp(milp);
  REQUIRE(root.status == LpStatus::optimal);
  REQUIRE(sol.status == MilpStatus::optimal);
  CHECK(root.value >= sol.value - 1e-9);  // max problem
}

TEST_CASE("2-node MFI MILP values") {
  MfiInstance inst;
  inst.node_count = 2;
  inst.source = 0;
  inst.sink = 1;
  inst.edges = {{0, 1, 42.0, 1.0}};
  inst.budget = 0.0;
  MilpSolution sol = solve_milp(build_mfi_milp(inst));
  REQUIRE(sol.status == MilpStatus::optimal);
  CHECK(sol.value == doctest::Approx(42.0));

  inst.budget = 1.0;  // now the single edge is removable
  sol = solve_milp(build_mfi_milp(inst));
  REQUIRE(sol.status == MilpStatus::optimal);
  CHECK(sol.value == doctest::Approx(0.0));
}

TEST_CASE("diamond MFI with zero budget equals the max flow") {
  MfiInstance inst;
  inst.node_count = 4;
  inst.source = 0;
  inst.sink = 3;
  inst.edges = {{0, 1, 3.0, 1.0}, {1, 3, 2.0, 1.0}, {0, 2, 1.0, 1.0}, {2, 3, 4.0, 1.0}};
  inst.budget = 0.0;
  MilpSolution sol = solve_milp(build_mfi_milp(inst));
  REQUIRE(sol.status == MilpStatus::optimal);
  CHECK(sol.value == doctest::Approx(max_flow(inst, BinaryVector(4, 0)).value));
}

TEST_CASE("random SPI MILPs match the brute-force oracle (100 seeds)") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    GenConfig cfg;
    cfg.node_count = 4 + static_cast<int>(seed % 4);  // up to 7 nodes
    cfg.density = seed % 2 ? 1.0 : 0.7;
    cfg.budget = 2;
    cfg.seed = 90000 + seed;
    SpiInstance inst = generate_spi(cfg);
    OracleResult oracle = brute_force_spi(inst);
    MilpSolution sol = solve_milp(dualize_spi(inst));
    REQUIRE(sol.status == MilpStatus::optimal);
    CHECK(sol.value == doctest::Approx(oracle.value).epsilon(1e-9));
  }
}

TEST_CASE("random MFI MILPs match the brute-force oracle (20 seeds)") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GenConfig cfg;
    cfg.node_count = 4 + static_cast<int>(seed % 3);  // up to 6 nodes
    cfg.density = 0.7;
    cfg.budget = 2.0;
    cfg.seed = 91000 + seed;
    MfiInstance inst = generate_mfi(cfg);
    OracleResult oracle = brute_force_mfi(inst);
    MilpSolution sol = solve_milp(build_mfi_milp(inst));
    REQUIRE(sol.status == MilpStatus::optimal);
    CHECK(sol.value == doctest::Approx(oracle.value).epsilon(1e-9));
  }
}

TEST_CASE("determinism: identical instance and config give identical searches") {
  MilpInstance milp = dualize_spi(example_spi_eq9());
  MilpSolution a = solve_milp(milp);
  MilpSolution b = solve_milp(milp);
  CHECK(a.value == b.value);
  CHECK(a.node_count == b.node_count);
  CHECK(a.assignment == b.assignment);
  CHECK(a.incumbent_log.size() == b.incumbent_log.size());
}

TEST_CASE("incumbent log improves monotonically") {
  GenConfig cfg;
  cfg.node_count = 8;
  cfg.budget = 3;
  cfg.seed = 321;
  MilpInstance milp = dualize_spi(generate_spi(cfg));
  MilpSolution sol = solve_milp(milp);
  REQUIRE(sol.status == MilpStatus::optimal);
  REQUIRE(!sol.incumbent_log.empty());
  for (std::size_t i = 1; i < sol.incumbent_log.size(); ++i) {
    CHECK(sol.incumbent_log[i].second > sol.incumbent_log[i - 1].second);  // max problem
    CHECK(sol.incumbent_log[i].first >= sol.incumbent_log[i - 1].first);
  }
  CHECK(sol.incumbent_log.back().second == doctest::Approx(sol.value));
}

TEST_CASE("zero time budget reports budget_exceeded") {
  SolverConfig cfg;
  cfg.time_limit_ms = 0;
  MilpSolution sol = solve_milp(dualize_spi(example_spi_eq9()), cfg);
  CHECK(sol.status == MilpStatus::budget_exceeded);
  CHECK(!sol.has_solution());
}

TEST_CASE("extras: identity augmentation, oracle fixing, and infeasible fixing") {
  SpiInstance inst = example_spi_eq9();
  MilpInstance milp = dualize_spi(inst);
  MilpSolution base = solve_milp(milp);

  MilpSolution same = solve_milp_with_extra(milp, MilpExtras{});
  CHECK(same.value == doctest::Approx(base.value));
  CHECK(same.node_count == base.node_count);

  // Forcing the known optimum x_(0,3) = 1 keeps the optimal value.
  MilpExtras force;
  Row fix;
  fix.relation = Relation::ge;
  fix.rhs = 1.0;
  fix.coeffs.push_back({{0, 2}, 1.0});
  force.rows.push_back(fix);
  MilpSolution forced = solve_milp_with_extra(milp, force);
  REQUIRE(forced.status == MilpStatus::optimal);
  CHECK(forced.value == doctest::Approx(8.0));

  // Forcing two interdictions against the budget of one is infeasible.
  Row fix2 = fix;
  fix2.coeffs[0].var = {0, 8};
  force.rows.push_back(fix2);
  CHECK(solve_milp_with_extra(milp, force).status == MilpStatus::infeasible);
}

TEST_CASE("oversized instances are rejected with a clear error") {
  MilpInstance milp;
  milp.sense = Sense::minimize;
  VarGroup w0{0, {}};
  for (int i = 0; i < 4001; ++i) w0.vars.push_back({"b" + std::to_string(i), 0, 1, true, 1.0});
  milp.groups.push_back(std::move(w0));
  Row budget;
  budget.tag = RowTag::budget;
  budget.relation = Relation::le;
  budget.rhs = 1.0;
  budget.coeffs.push_back({{0, 0}, 1.0});
  milp.rows.push_back(std::move(budget));
  CHECK_THROWS_WITH_AS(solve_milp(milp), doctest::Contains("too large"), std::invalid_argument);
}

}  // TEST_SUITE
