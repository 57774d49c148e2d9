#include "interdict/decision_eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "interdict/rng.hpp"
#include "json.hpp"

namespace interdict {

namespace {

// Indices ordered by descending prediction, ties toward the lower index.
std::vector<std::size_t> by_descending_probability(const Prediction& pred) {
  std::vector<std::size_t> order(pred.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return pred[a] != pred[b] ? pred[a] > pred[b] : a < b;
  });
  return order;
}

}  // namespace

InterdictionSolution end_to_end(const Prediction& pred, const SpiInstance& inst) {
  if (pred.size() != inst.edges.size())
    throw std::invalid_argument("end_to_end: prediction not aligned to instance edges");
  InterdictionSolution sol;
  sol.x.assign(pred.size(), 0);
  auto order = by_descending_probability(pred);
  const std::size_t take = std::min<std::size_t>(inst.budget, order.size());
  for (std::size_t i = 0; i < take; ++i) sol.x[order[i]] = 1;
  sol.value = shortest_path(inst, sol.x).length;
  return sol;
}

InterdictionSolution end_to_end(const Prediction& pred, const MfiInstance& inst) {
  if (pred.size() != inst.edges.size())
    throw std::invalid_argument("end_to_end: prediction not aligned to instance edges");
  InterdictionSolution sol;
  sol.x.assign(pred.size(), 0);
  double remaining = inst.budget;
  for (std::size_t idx : by_descending_probability(pred)) {
    if (inst.edges[idx].removal_cost <= remaining + 1e-12) {
      sol.x[idx] = 1;
      remaining -= inst.edges[idx].removal_cost;
    }
  }
  sol.value = max_flow(inst, sol.x).value;
  return sol;
}

MilpSolution predict_and_search(const Prediction& pred, const MilpInstance& milp,
                                const PnsConfig& cfg, const SolverConfig& solver_cfg) {
  const std::size_t n0 = milp.interdiction_group().vars.size();
  if (pred.size() != n0)
    throw std::invalid_argument("predict_and_search: prediction not aligned to W0");
  if (cfg.k0 < 0 || cfg.k1 < 0 || cfg.delta < 0)
    throw std::invalid_argument("predict_and_search: negative PnS parameter");
  if (static_cast<std::size_t>(cfg.k0) + static_cast<std::size_t>(cfg.k1) > n0)
    throw std::invalid_argument("predict_and_search: k0 + k1 exceeds |W0|");

  // Ascending total order (prediction, index): I_0 from the bottom, I_1
  // from the top.
  std::vector<std::size_t> order(n0);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return pred[a] != pred[b] ? pred[a] < pred[b] : a < b;
  });
  std::vector<char> in_i0(n0, 0), in_i1(n0, 0);
  for (int i = 0; i < cfg.k0; ++i) in_i0[order[i]] = 1;
  for (int i = 0; i < cfg.k1; ++i) in_i1[order[n0 - 1 - i]] = 1;

  MilpExtras extras;
  const int delta_group = extra_group_id(milp);
  Row total;
  total.relation = Relation::le;
  total.rhs = static_cast<double>(cfg.delta);
  total.tag = RowTag::other;
  for (std::size_t d = 0; d < n0; ++d) {
    if (!in_i0[d] && !in_i1[d]) continue;
    const int delta_index = static_cast<int>(extras.vars.size());
    Variable delta_var;
    delta_var.name = "delta_" + std::to_string(d);
    delta_var.lb = 0.0;
    delta_var.ub = 1.0;
    delta_var.is_binary = true;
    extras.vars.push_back(std::move(delta_var));

    Row fixing;
    fixing.relation = Relation::le;
    fixing.tag = RowTag::other;
    if (in_i0[d]) {
      // x_d <= delta_d
      fixing.rhs = 0.0;
      fixing.coeffs.push_back({{0, static_cast<int>(d)}, 1.0});
      fixing.coeffs.push_back({{delta_group, delta_index}, -1.0});
    } else {
      // 1 - x_d <= delta_d
      fixing.rhs = -1.0;
      fixing.coeffs.push_back({{0, static_cast<int>(d)}, -1.0});
      fixing.coeffs.push_back({{delta_group, delta_index}, -1.0});
    }
    extras.rows.push_back(std::move(fixing));
    total.coeffs.push_back({{delta_group, delta_index}, 1.0});
  }
  if (!total.coeffs.empty()) extras.rows.push_back(std::move(total));

  return solve_milp_with_extra(milp, extras, solver_cfg);
}

EvalReport evaluate(SourceKind kind, std::span<const double> achieved,
                    std::span<const double> optimal) {
  if (achieved.size() != optimal.size())
    throw std::invalid_argument("evaluate: achieved/optimal length mismatch");
  EvalReport report;
  report.kind = kind;
  for (std::size_t i = 0; i < achieved.size(); ++i) {
    EvalEntry entry;
    entry.achieved = achieved[i];
    entry.optimal = optimal[i];
    entry.gap = std::abs(achieved[i] - optimal[i]);
    if (optimal[i] != 0.0) {
      entry.ratio = achieved[i] / optimal[i];
      entry.has_ratio = true;
    }
    report.entries.push_back(entry);
  }

  auto mean_std = [](const std::vector<double>& xs) {
    if (xs.empty()) return std::pair{0.0, 0.0};
    double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    double sq = 0.0;
    for (double x : xs) sq += (x - mean) * (x - mean);
    double sd = xs.size() > 1 ? std::sqrt(sq / static_cast<double>(xs.size() - 1)) : 0.0;
    return std::pair{mean, sd};
  };

  std::vector<double> ratios, gaps;
  for (const auto& e : report.entries) {
    gaps.push_back(e.gap);
    if (e.has_ratio) ratios.push_back(e.ratio);
  }
  report.ratio_count = ratios.size();
  std::tie(report.mean_ratio, report.std_ratio) = mean_std(ratios);
  std::tie(report.mean_gap, report.std_gap) = mean_std(gaps);
  return report;
}

std::string eval_report_json(const EvalReport& report) {
  using ordered_json = nlohmann::ordered_json;
  ordered_json j;
  j["kind"] = report.kind == SourceKind::spi ? "spi"
              : report.kind == SourceKind::mfi ? "mfi"
                                               : "none";
  j["instances"] = report.entries.size();
  j["ratio_count"] = report.ratio_count;
  j["mean_ratio"] = report.mean_ratio;
  j["std_ratio"] = report.std_ratio;
  j["mean_gap"] = report.mean_gap;
  j["std_gap"] = report.std_gap;
  ordered_json entries = ordered_json::array();
  for (const auto& e : report.entries) {
    ordered_json entry = {{"achieved", e.achieved}, {"optimal", e.optimal}, {"gap", e.gap}};
    if (e.has_ratio) entry["ratio"] = e.ratio;
    entries.push_back(std::move(entry));
  }
  j["entries"] = std::move(entries);
  return j.dump();
}

std::string eval_report_csv(const EvalReport& report) {
  std::ostringstream out;
  out.precision(17);
  out << "achieved,optimal,ratio,gap\n";
  for (const auto& e : report.entries) {
    out << e.achieved << "," << e.optimal << ",";
    if (e.has_ratio) out << e.ratio;
    out << "," << e.gap << "\n";
  }
  return out.str();
}

AnytimeLogs anytime_compare(const MilpInstance& milp, const Prediction& pred,
                            const PnsConfig& cfg, std::int64_t time_budget_ms) {
  SolverConfig solver_cfg;
  solver_cfg.time_limit_ms = std::max<std::int64_t>(0, time_budget_ms);

  AnytimeLogs logs;
  MilpSolution plain = solve_milp(milp, solver_cfg);
  logs.plain_status = plain.status;
  logs.plain_log = plain.incumbent_log;
  MilpSolution pns = predict_and_search(pred, milp, cfg, solver_cfg);
  logs.pns_status = pns.status;
  logs.pns_log = pns.incumbent_log;
  return logs;
}

std::string anytime_csv(const AnytimeLogs& logs) {
  std::ostringstream out;
  out.precision(17);
  out << "method,time_ms,value\n";
  for (const auto& [t, v] : logs.plain_log) out << "plain," << t << "," << v << "\n";
  for (const auto& [t, v] : logs.pns_log) out << "pns," << t << "," << v << "\n";
  return out.str();
}

Prediction random_prediction(std::size_t size, std::uint64_t seed) {
  Rng rng(seed);
  Prediction pred(size);
  for (double& p : pred) p = rng.next_unit();
  return pred;
}

}  // namespace interdict
