#include "interdict/reduction.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace interdict {

std::size_t MilpInstance::var_count() const {
  std::size_t n = 0;
  for (const auto& g : groups) n += g.vars.size();
  return n;
}

std::size_t MilpInstance::flat_index(VarRef ref) const {
  std::size_t offset = 0;
  for (int g = 0; g < ref.group; ++g) offset += groups.at(g).vars.size();
  return offset + static_cast<std::size_t>(ref.index);
}

void MilpInstance::validate() const {
  if (groups.empty()) throw std::invalid_argument("milp: no variable groups");
  for (std::size_t k = 0; k < groups.size(); ++k) {
    if (groups[k].group_id != static_cast<int>(k))
      throw std::invalid_argument("milp: group ids must be 0..p in order");
    if (groups[k].vars.empty()) throw std::invalid_argument("milp: empty variable group");
    for (const auto& v : groups[k].vars)
      if (!(v.lb <= v.ub)) throw std::invalid_argument("milp: variable lb > ub");
  }
  for (const auto& v : groups[0].vars)
    if (!v.is_binary) throw std::invalid_argument("milp: W0 variables must be binary");
  bool has_budget = false;
  for (const auto& row : rows) {
    if (row.tag == RowTag::budget) has_budget = true;
    for (const auto& entry : row.coeffs) {
      if (entry.var.group < 0 || entry.var.group >= static_cast<int>(groups.size()) ||
          entry.var.index < 0 ||
          entry.var.index >= static_cast<int>(groups[entry.var.group].vars.size()))
        throw std::invalid_argument("milp: coefficient references a missing variable");
    }
  }
  if (!has_budget) throw std::invalid_argument("milp: no budget-tagged constraint");
}

MilpInstance dualize_spi(const SpiInstance& inst) {
  inst.validate();

  double bound = 0.0;  // |pi_i| <= sum c + sum d keeps the dual LP bounded
  for (const auto& e : inst.edges) bound += e.cost + e.delay;

  MilpInstance milp;
  milp.sense = Sense::maximize;
  milp.provenance.kind = SourceKind::spi;

  VarGroup interdiction{0, {}};
  for (const auto& e : inst.edges) {
    Variable x;
    x.name = "x_" + std::to_string(e.tail) + "_" + std::to_string(e.head);
    x.lb = 0.0;
    x.ub = 1.0;
    x.is_binary = true;
    interdiction.vars.push_back(std::move(x));
    milp.provenance.edge_order.emplace_back(e.tail, e.head);
  }
  milp.groups.push_back(std::move(interdiction));

  VarGroup duals{1, {}};
  for (int i = 0; i < inst.node_count; ++i) {
    Variable pi;
    pi.name = "pi_" + std::to_string(i);
    // The dual is translation invariant; fixing pi_sink = 0 keeps it bounded.
    pi.lb = (i == inst.sink) ? 0.0 : -bound;
    pi.ub = (i == inst.sink) ? 0.0 : bound;
    pi.is_binary = false;
    pi.obj_coeff = (i == inst.source) ? 1.0 : (i == inst.sink ? -1.0 : 0.0);
    duals.vars.push_back(std::move(pi));
  }
  milp.groups.push_back(std::move(duals));

  for (std::size_t e = 0; e < inst.edges.size(); ++e) {
    const auto& edge = inst.edges[e];
    Row row;
    row.tag = RowTag::dual;
    row.relation = Relation::le;
    row.rhs = edge.cost;
    row.coeffs.push_back({{1, edge.tail}, 1.0});
    row.coeffs.push_back({{1, edge.head}, -1.0});
    if (edge.delay != 0.0) row.coeffs.push_back({{0, static_cast<int>(e)}, -edge.delay});
    milp.rows.push_back(std::move(row));
  }

  Row budget;
  budget.tag = RowTag::budget;
  budget.relation = Relation::le;
  budget.rhs = static_cast<double>(inst.budget);
  for (std::size_t e = 0; e < inst.edges.size(); ++e)
    budget.coeffs.push_back({{0, static_cast<int>(e)}, 1.0});
  milp.rows.push_back(std::move(budget));

  milp.validate();
  return milp;
}

MilpInstance build_mfi_milp(const MfiInstance& inst) {
  inst.validate();

  MilpInstance milp;
  milp.sense = Sense::minimize;
  milp.provenance.kind = SourceKind::mfi;

  VarGroup removal{0, {}};
  for (const auto& e : inst.edges) {
    Variable g;
    g.name = "gamma_" + std::to_string(e.tail) + "_" + std::to_string(e.head);
    g.lb = 0.0;
    g.ub = 1.0;
    g.is_binary = true;
    removal.vars.push_back(std::move(g));
    milp.provenance.edge_order.emplace_back(e.tail, e.head);
  }
  milp.groups.push_back(std::move(removal));

  VarGroup cut_side{1, {}};
  for (int i = 0; i < inst.node_count; ++i) {
    Variable a;
    a.name = "alpha_" + std::to_string(i);
    a.lb = 0.0;
    a.ub = 1.0;
    a.is_binary = true;
    cut_side.vars.push_back(std::move(a));
  }
  milp.groups.push_back(std::move(cut_side));

  VarGroup cut_edge{2, {}};
  for (std::size_t e = 0; e < inst.edges.size(); ++e) {
    Variable b;
    b.name = "beta_" + std::to_string(inst.edges[e].tail) + "_" +
             std::to_string(inst.edges[e].head);
    b.lb = 0.0;
    b.ub = 1.0;
    b.is_binary = true;
    b.obj_coeff = inst.edges[e].capacity;
    cut_edge.vars.push_back(std::move(b));
  }
  milp.groups.push_back(std::move(cut_edge));

  for (std::size_t e = 0; e < inst.edges.size(); ++e) {
    const auto& edge = inst.edges[e];
    Row row;
    row.tag = RowTag::dual;
    row.relation = Relation::ge;
    row.rhs = 0.0;
    row.coeffs.push_back({{1, edge.tail}, 1.0});
    row.coeffs.push_back({{1, edge.head}, -1.0});
    row.coeffs.push_back({{2, static_cast<int>(e)}, 1.0});
    row.coeffs.push_back({{0, static_cast<int>(e)}, 1.0});
    milp.rows.push_back(std::move(row));
  }

  Row cut;
  cut.tag = RowTag::other;
  cut.relation = Relation::ge;
  cut.rhs = 1.0;
  cut.coeffs.push_back({{1, inst.sink}, 1.0});
  cut.coeffs.push_back({{1, inst.source}, -1.0});
  milp.rows.push_back(std::move(cut));

  Row budget;
  budget.tag = RowTag::budget;
  budget.relation = Relation::le;
  budget.rhs = inst.budget;
  for (std::size_t e = 0; e < inst.edges.size(); ++e)
    if (inst.edges[e].removal_cost != 0.0)
      budget.coeffs.push_back({{0, static_cast<int>(e)}, inst.edges[e].removal_cost});
  milp.rows.push_back(std::move(budget));

  milp.validate();
  return milp;
}

MilpInstance fix_interdiction(const MilpInstance& milp, const BinaryVector& x) {
  if (x.size() != milp.interdiction_group().vars.size())
    throw std::invalid_argument("fix_interdiction: vector length != |W0|");
  MilpInstance fixed = milp;
  for (std::size_t j = 0; j < x.size(); ++j) {
    double v = x[j] ? 1.0 : 0.0;
    fixed.groups[0].vars[j].lb = v;
    fixed.groups[0].vars[j].ub = v;
  }
  return fixed;
}

std::vector<double> w0_values(const MilpInstance& milp, const std::vector<double>& flat) {
  const std::size_t n0 = milp.interdiction_group().vars.size();
  if (flat.size() != milp.var_count())
    throw std::invalid_argument("w0_values: assignment length mismatch");
  return std::vector<double>(flat.begin(), flat.begin() + static_cast<long>(n0));
}

BinaryVector w0_binary(const MilpInstance& milp, const std::vector<double>& flat) {
  BinaryVector x;
  for (double v : w0_values(milp, flat)) x.push_back(v > 0.5 ? 1 : 0);
  return x;
}

std::string milp_to_json(const MilpInstance& milp) {
  using ordered_json = nlohmann::ordered_json;
  ordered_json j;
  j["sense"] = milp.sense == Sense::maximize ? "max" : "min";
  ordered_json groups = ordered_json::array();
  for (const auto& g : milp.groups) {
    ordered_json vars = ordered_json::array();
    for (const auto& v : g.vars)
      vars.push_back({{"name", v.name},
                      {"lb", v.lb},
                      {"ub", v.ub},
                      {"binary", v.is_binary},
                      {"obj", v.obj_coeff}});
    groups.push_back({{"id", g.group_id}, {"vars", std::move(vars)}});
  }
  j["groups"] = std::move(groups);
  ordered_json rows = ordered_json::array();
  static const char* rel_names[] = {"<=", "=", ">="};
  static const char* tag_names[] = {"dual", "budget", "other"};
  for (const auto& row : milp.rows) {
    ordered_json coeffs = ordered_json::array();
    for (const auto& entry : row.coeffs)
      coeffs.push_back({entry.var.group, entry.var.index, entry.coeff});
    rows.push_back({{"coeffs", std::move(coeffs)},
                    {"rel", rel_names[static_cast<int>(row.relation)]},
                    {"rhs", row.rhs},
                    {"tag", tag_names[static_cast<int>(row.tag)]}});
  }
  j["rows"] = std::move(rows);
  return j.dump();
}

}  // namespace interdict
