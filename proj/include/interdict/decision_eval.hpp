#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "interdict/gnn.hpp"
#include "interdict/milp_solver.hpp"

namespace interdict {

enum class Provenance { oracle, branch_and_bound, model, predict_and_search };

struct InterdictionSolution {
  BinaryVector x;
  double value = 0.0;
  Provenance provenance = Provenance::model;
};

/// SPI: interdicts the gamma highest-probability edges (ties to the lower
/// edge index) and evaluates the interdicted shortest path. Always budget
/// feasible by construction.
InterdictionSolution end_to_end(const Prediction& pred, const SpiInstance& inst);

/// MFI: greedy knapsack by descending probability under the removal budget,
/// evaluated with max_flow.
InterdictionSolution end_to_end(const Prediction& pred, const MfiInstance& inst);

struct PnsConfig {
  int k0 = 0;     // candidate 0-fixings: the k0 smallest predictions
  int k1 = 0;     // candidate 1-fixings: the k1 largest
  int delta = 0;  // trust-region radius: max violated fixings
};

/// Trust-region search (predict-and-search): adds one binary delta_d per
/// candidate with x_d <= delta_d (d in I_0), 1 - x_d <= delta_d (d in I_1)
/// and sum(delta) <= delta, then solves the augmented MILP. Candidate sets
/// are taken from the total order (prediction, index), so they never
/// overlap; an infeasible trust region surfaces as MilpStatus::infeasible.
MilpSolution predict_and_search(const Prediction& pred, const MilpInstance& milp,
                                const PnsConfig& cfg, const SolverConfig& solver_cfg = {});

struct EvalEntry {
  double achieved = 0.0;
  double optimal = 0.0;
  double gap = 0.0;      // |achieved - optimal|
  double ratio = 0.0;    // achieved / optimal; only meaningful when has_ratio
  bool has_ratio = false;
};

/// Aggregate metrics. Ratio orientation: SPI in (0,1], higher is better;
/// MFI >= 1, lower is better. Entries with optimal == 0 contribute gap only.
struct EvalReport {
  SourceKind kind = SourceKind::none;
  std::vector<EvalEntry> entries;
  std::size_t ratio_count = 0;
  double mean_ratio = 0.0;
  double std_ratio = 0.0;  // sample standard deviation
  double mean_gap = 0.0;
  double std_gap = 0.0;
};

EvalReport evaluate(SourceKind kind, std::span<const double> achieved,
                    std::span<const double> optimal);

std::string eval_report_json(const EvalReport& report);
std::string eval_report_csv(const EvalReport& report);

struct AnytimeLogs {
  MilpStatus plain_status = MilpStatus::infeasible;
  MilpStatus pns_status = MilpStatus::infeasible;
  std::vector<std::pair<double, double>> plain_log;  // (time_ms, value)
  std::vector<std::pair<double, double>> pns_log;
};

/// Runs the plain solver and predict-and-search under the same time budget
/// and returns the paired incumbent logs. A non-positive budget makes both
/// report budget_exceeded immediately.
AnytimeLogs anytime_compare(const MilpInstance& milp, const Prediction& pred,
                            const PnsConfig& cfg, std::int64_t time_budget_ms);

/// CSV: method,time_ms,value with method in {plain, pns}.
std::string anytime_csv(const AnytimeLogs& logs);

/// Uniform [0,1) baseline prediction.
Prediction random_prediction(std::size_t size, std::uint64_t seed);

}  // namespace interdict
