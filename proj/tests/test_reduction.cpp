#include "interdict/reduction.hpp"

#include <stdexcept>

#include "doctest.h"
#include "json.hpp"

using namespace interdict;

TEST_SUITE("reduction") {

TEST_CASE("eq9 dualization: 13 rows, 12 binary x, 7 continuous pi") {
  MilpInstance milp = dualize_spi(example_spi_eq9());
  CHECK(milp.sense == Sense::maximize);
  REQUIRE(milp.groups.size() == 2);
  CHECK(milp.groups[0].vars.size() == 12);
  CHECK(milp.groups[1].vars.size() == 7);
  REQUIRE(milp.rows.size() == 13);

  for (const auto& v : milp.groups[0].vars) {
    CHECK(v.is_binary);
    CHECK(v.obj_coeff == 0.0);
  }
  for (const auto& v : milp.groups[1].vars) CHECK(!v.is_binary);

  // Objective: max pi_source - pi_sink, sink normalized to zero.
  CHECK(milp.groups[1].vars[0].obj_coeff == 1.0);
  CHECK(milp.groups[1].vars[6].obj_coeff == -1.0);
  CHECK(milp.groups[1].vars[6].lb == 0.0);
  CHECK(milp.groups[1].vars[6].ub == 0.0);

  int dual_rows = 0, budget_rows = 0;
  for (const auto& row : milp.rows) {
    if (row.tag == RowTag::dual) {
      ++dual_rows;
      CHECK(row.relation == Relation::le);
      CHECK(row.coeffs.size() == 3);  // pi_i, pi_j, x_e
    } else if (row.tag == RowTag::budget) {
      ++budget_rows;
      CHECK(row.rhs == 1.0);
      CHECK(row.coeffs.size() == 12);
    }
  }
  CHECK(dual_rows == 12);
  CHECK(budget_rows == 1);

  // First dual row is pi_0 - pi_1 - x_0 <= 9.
  const Row& first = milp.rows[0];
  CHECK(first.rhs == 9.0);
  CHECK(first.coeffs[0].var == VarRef{1, 0});
  CHECK(first.coeffs[0].coeff == 1.0);
  CHECK(first.coeffs[1].var == VarRef{1, 1});
  CHECK(first.coeffs[1].coeff == -1.0);
  CHECK(first.coeffs[2].var == VarRef{0, 0});
  CHECK(first.coeffs[2].coeff == -1.0);
}

TEST_CASE("W0 order is a bijection onto the instance edge list") {
  SpiInstance inst = example_spi_eq9();
  MilpInstance milp = dualize_spi(inst);
  REQUIRE(milp.provenance.edge_order.size() == inst.edges.size());
  for (std::size_t e = 0; e < inst.edges.size(); ++e) {
    CHECK(milp.provenance.edge_order[e].first == inst.edges[e].tail);
    CHECK(milp.provenance.edge_order[e].second == inst.edges[e].head);
    CHECK(milp.groups[0].vars[e].name ==
          "x_" + std::to_string(inst.edges[e].tail) + "_" +
              std::to_string(inst.edges[e].head));
  }
}

TEST_CASE("MFI MILP structure follows the single-level form") {
  MfiInstance inst;
  inst.node_count = 2;
  inst.source = 0;
  inst.sink = 1;
  inst.edges = {{0, 1, 42.0, 1.0}};
  inst.budget = 0.0;
  MilpInstance milp = build_mfi_milp(inst);

  CHECK(milp.sense == Sense::minimize);
  REQUIRE(milp.groups.size() == 3);     // gamma, alpha, beta
  CHECK(milp.groups[0].vars.size() == 1);
  CHECK(milp.groups[1].vars.size() == 2);
  CHECK(milp.groups[2].vars.size() == 1);
  CHECK(milp.groups[2].vars[0].obj_coeff == 42.0);
  for (const auto& g : milp.groups)
    for (const auto& v : g.vars) CHECK(v.is_binary);

  REQUIRE(milp.rows.size() == 3);  // dual, cut, budget
  CHECK(milp.rows[0].tag == RowTag::dual);
  CHECK(milp.rows[0].relation == Relation::ge);
  CHECK(milp.rows[0].coeffs.size() == 4);
  CHECK(milp.rows[1].tag == RowTag::other);
  CHECK(milp.rows[1].rhs == 1.0);
  CHECK(milp.rows[2].tag == RowTag::budget);
}

TEST_CASE("fix_interdiction clamps W0 bounds and checks dimensions") {
  MilpInstance milp = dualize_spi(example_spi_eq9());
  BinaryVector x(12, 0);
  x[8] = 1;
  MilpInstance fixed = fix_interdiction(milp, x);
  for (std::size_t j = 0; j < 12; ++j) {
    CHECK(fixed.groups[0].vars[j].lb == (j == 8 ? 1.0 : 0.0));
    CHECK(fixed.groups[0].vars[j].ub == (j == 8 ? 1.0 : 0.0));
  }
  CHECK(milp.groups[0].vars[8].ub == 1.0);  // original untouched
  CHECK_THROWS_AS(fix_interdiction(milp, BinaryVector(5, 0)), std::invalid_argument);
}

TEST_CASE("milp invariants reject malformed instances") {
  MilpInstance milp = dualize_spi(example_spi_eq9());
  MilpInstance bad = milp;
  bad.groups[0].vars[0].is_binary = false;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = milp;
  for (auto& row : bad.rows) row.tag = RowTag::other;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = milp;
  bad.rows[0].coeffs[0].var = {1, 99};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("zero-delay edges produce no x coefficient") {
  SpiInstance inst = example_spi_eq9();
  inst.edges[4].delay = 0.0;
  MilpInstance milp = dualize_spi(inst);
  CHECK(milp.rows[4].coeffs.size() == 2);  // pi terms only
}

TEST_CASE("flat indexing covers the groups in order") {
  MilpInstance milp = dualize_spi(example_spi_eq9());
  CHECK(milp.var_count() == 19);
  CHECK(milp.flat_index({0, 3}) == 3);
  CHECK(milp.flat_index({1, 0}) == 12);
  std::vector<double> flat(19, 0.0);
  flat[5] = 1.0;
  BinaryVector w0 = w0_binary(milp, flat);
  REQUIRE(w0.size() == 12);
  CHECK(w0[5] == 1);
}

TEST_CASE("milp JSON export is parseable and complete") {
  MilpInstance milp = dualize_spi(example_spi_eq9());
  auto j = nlohmann::json::parse(milp_to_json(milp));
  CHECK(j.at("sense") == "max");
  CHECK(j.at("groups").size() == 2);
  CHECK(j.at("rows").size() == 13);
  CHECK(j.at("rows").at(12).at("tag") == "budget");
}

}  // TEST_SUITE
