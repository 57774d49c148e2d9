#include "interdict/milp_solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <span>
#include <sstream>
#include <stdexcept>

#include "interdict/kernels.hpp"

namespace interdict {

namespace {

constexpr double kPivotEps = 1e-10;  // entries below this never pivot
constexpr double kCostEps = 1e-9;    // reduced-cost optimality threshold
constexpr double kFeasTol = 1e-7;
constexpr double kIntTol = 1e-6;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxVars = 4000;
constexpr std::size_t kMaxRowsAndVars = 16000;

struct SimplexOutcome {
  LpStatus status = LpStatus::numerical_failure;
  double value = 0.0;            // minimize orientation, without constants
  std::vector<double> solution;  // per live column, shifted space
};

// Dense two-phase primal simplex over rows of the form  a.y (rel) b, y >= 0.
class Tableau {
 public:
  struct InputRow {
    std::vector<std::pair<int, double>> coeffs;  // live column -> coefficient
    Relation rel;
    double rhs;
  };

  Tableau(std::size_t cols, const std::vector<double>& cost, std::vector<InputRow> rows)
      : structural_(cols), m_(rows.size()) {
    // Normalize all right-hand sides to b >= 0 so slack columns can form the
    // initial basis wherever possible.
    std::size_t surplus_rows = 0;
    for (auto& row : rows) {
      if (row.rhs < 0.0) {
        row.rhs = -row.rhs;
        for (auto& [col, a] : row.coeffs) a = -a;
        row.rel = row.rel == Relation::le   ? Relation::ge
                  : row.rel == Relation::ge ? Relation::le
                                            : Relation::eq;
      }
      if (row.rel == Relation::ge && row.rhs == 0.0) {
        // -a.y <= 0 admits the slack as a basic variable directly.
        for (auto& [col, a] : row.coeffs) a = -a;
        row.rel = Relation::le;
      }
      if (row.rel != Relation::le) ++surplus_rows;
    }

    slack_start_ = structural_;
    artificial_start_ = slack_start_ + m_;
    width_ = artificial_start_ + surplus_rows + 1;  // + rhs column
    tab_.assign((m_ + 2) * width_, 0.0);
    basis_.assign(m_, 0);

    std::size_t next_artificial = artificial_start_;
    for (std::size_t i = 0; i < m_; ++i) {
      double* t = row(i);
      for (auto [col, a] : rows[i].coeffs) t[col] += a;
      t[width_ - 1] = rows[i].rhs;
      switch (rows[i].rel) {
        case Relation::le:
          t[slack_start_ + i] = 1.0;
          basis_[i] = static_cast<int>(slack_start_ + i);
          break;
        case Relation::ge:
          t[slack_start_ + i] = -1.0;
          [[fallthrough]];
        case Relation::eq:
          t[next_artificial] = 1.0;
          basis_[i] = static_cast<int>(next_artificial);
          ++next_artificial;
          break;
      }
    }

    // Phase-2 cost row: initial basis has zero cost, so reduced costs are
    // just the objective coefficients.
    double* cost_row = row(m_);
    for (std::size_t j = 0; j < structural_; ++j) cost_row[j] = cost[j];

    // Phase-1 cost row: one per artificial, reduced against the basic rows.
    double* p1 = row(m_ + 1);
    for (std::size_t j = artificial_start_; j + 1 < width_; ++j) p1[j] = 1.0;
    for (std::size_t i = 0; i < m_; ++i)
      if (is_artificial(basis_[i]))
        kernels::axpy(-1.0, {row(i), width_}, {p1, width_});

    max_iterations_ = 200 * (m_ + width_) + 10000;
    bland_after_ = 10 * (m_ + width_);
  }

  SimplexOutcome solve() {
    SimplexOutcome out;
    if (!run_phase(m_ + 1)) {
      out.status = LpStatus::numerical_failure;
      return out;
    }
    if (-row(m_ + 1)[width_ - 1] > kFeasTol) {
      out.status = LpStatus::infeasible;
      return out;
    }
    drive_out_artificials();
    if (!run_phase(m_)) {
      out.status = unbounded_ ? LpStatus::unbounded : LpStatus::numerical_failure;
      return out;
    }
    out.status = LpStatus::optimal;
    out.value = -row(m_)[width_ - 1];
    out.solution.assign(structural_, 0.0);
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] >= 0 && static_cast<std::size_t>(basis_[i]) < structural_)
        out.solution[basis_[i]] = std::max(0.0, row(i)[width_ - 1]);
    return out;
  }

 private:
  double* row(std::size_t i) { return tab_.data() + i * width_; }

  bool is_artificial(int col) const {
    return static_cast<std::size_t>(col) >= artificial_start_;
  }

  void pivot(std::size_t r, std::size_t e) {
    double* pr = row(r);
    kernels::scale(1.0 / pr[e], {pr, width_});
    pr[e] = 1.0;
    for (std::size_t i = 0; i < m_ + 2; ++i) {
      if (i == r) continue;
      double* t = row(i);
      if (t[e] != 0.0) {
        kernels::axpy(-t[e], {pr, width_}, {t, width_});
        t[e] = 0.0;
      }
    }
    basis_[r] = static_cast<int>(e);
  }

  // Runs simplex iterations against the given cost row. Returns false on
  // unboundedness or iteration exhaustion.
  bool run_phase(std::size_t cost_row_index) {
    while (true) {
      if (++iterations_ > max_iterations_) return false;
      const bool bland = iterations_ > bland_after_;
      const double* c = row(cost_row_index);

      std::size_t entering = width_;
      double best_cost = -kCostEps;
      for (std::size_t j = 0; j + 1 < width_; ++j) {
        if (is_artificial(static_cast<int>(j))) continue;
        if (c[j] < best_cost) {
          entering = j;
          best_cost = c[j];
          if (bland) break;  // lowest index with a negative reduced cost
        }
      }
      if (entering == width_) return true;  // phase optimal

      std::size_t leaving = m_;
      double best_ratio = kInf;
      for (std::size_t i = 0; i < m_; ++i) {
        double a = row(i)[entering];
        if (a <= kPivotEps) continue;
        double ratio = row(i)[width_ - 1] / a;
        bool better = ratio < best_ratio - 1e-12;
        bool tie = !better && ratio <= best_ratio + 1e-12 && leaving < m_;
        if (tie)
          better = bland ? basis_[i] < basis_[leaving] : false;  // pre-Bland: keep lowest row
        if (leaving == m_ || better) {
          leaving = i;
          best_ratio = std::min(best_ratio, ratio);
        }
      }
      if (leaving == m_) {
        unbounded_ = cost_row_index == m_;
        return false;
      }
      pivot(leaving, entering);
    }
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (!is_artificial(basis_[i])) continue;
      const double* t = row(i);
      std::size_t e = width_;
      for (std::size_t j = 0; j < artificial_start_; ++j)
        if (std::abs(t[j]) > kPivotEps) {
          e = j;
          break;
        }
      if (e < width_) pivot(i, e);
      // Otherwise the row is redundant; the artificial stays basic at zero
      // and can never re-enter the objective (artificials never enter).
    }
  }

  std::size_t structural_;
  std::size_t m_;
  std::size_t slack_start_ = 0;
  std::size_t artificial_start_ = 0;
  std::size_t width_ = 0;
  std::vector<double> tab_;
  std::vector<int> basis_;
  std::size_t iterations_ = 0;
  std::size_t max_iterations_ = 0;
  std::size_t bland_after_ = 0;
  bool unbounded_ = false;
};

struct FlatMilp {
  // Minimize orientation throughout; `flip` records an original max sense.
  bool flip = false;
  std::vector<double> cost;  // flat objective
  std::vector<double> lb, ub;
  std::vector<char> is_integer;
  const MilpInstance* milp = nullptr;
};

FlatMilp flatten(const MilpInstance& milp) {
  milp.validate();
  if (milp.var_count() > kMaxVars || milp.var_count() + milp.rows.size() > kMaxRowsAndVars)
    throw std::invalid_argument(
        "milp too large for the dense simplex (supported: a few thousand variables)");
  FlatMilp flat;
  flat.milp = &milp;
  flat.flip = milp.sense == Sense::maximize;
  for (const auto& g : milp.groups)
    for (const auto& v : g.vars) {
      if (!std::isfinite(v.lb) || !std::isfinite(v.ub))
        throw std::invalid_argument("milp variables must have finite bounds");
      flat.cost.push_back(flat.flip ? -v.obj_coeff : v.obj_coeff);
      flat.lb.push_back(v.lb);
      flat.ub.push_back(v.ub);
      flat.is_integer.push_back(v.is_binary);
    }
  return flat;
}

// Bound-shifted LP solve: substitutes fixed variables, shifts the rest to
// y = x - lb >= 0, and appends y <= ub - lb rows.
LpResult solve_flat_lp(const FlatMilp& flat, const std::vector<double>& lb,
                       const std::vector<double>& ub) {
  const std::size_t n = flat.cost.size();
  LpResult result;

  std::vector<int> live_col(n, -1);
  std::vector<std::size_t> live_to_flat;
  double obj_const = 0.0;
  for (std::size_t f = 0; f < n; ++f) {
    if (lb[f] > ub[f] + 1e-12) {
      result.status = LpStatus::infeasible;
      return result;
    }
    obj_const += flat.cost[f] * lb[f];
    if (ub[f] - lb[f] > 1e-12) {
      live_col[f] = static_cast<int>(live_to_flat.size());
      live_to_flat.push_back(f);
    }
  }

  std::vector<double> cost(live_to_flat.size(), 0.0);
  for (std::size_t j = 0; j < live_to_flat.size(); ++j) cost[j] = flat.cost[live_to_flat[j]];

  std::vector<Tableau::InputRow> rows;
  rows.reserve(flat.milp->rows.size() + live_to_flat.size());
  for (const auto& row : flat.milp->rows) {
    Tableau::InputRow in;
    in.rel = row.relation;
    in.rhs = row.rhs;
    for (const auto& entry : row.coeffs) {
      std::size_t f = flat.milp->flat_index(entry.var);
      in.rhs -= entry.coeff * lb[f];
      if (live_col[f] >= 0) in.coeffs.emplace_back(live_col[f], entry.coeff);
    }
    if (in.coeffs.empty()) {
      bool ok = in.rel == Relation::le   ? in.rhs >= -kFeasTol
                : in.rel == Relation::ge ? in.rhs <= kFeasTol
                                         : std::abs(in.rhs) <= kFeasTol;
      if (!ok) {
        result.status = LpStatus::infeasible;
        return result;
      }
      continue;
    }
    rows.push_back(std::move(in));
  }
  for (std::size_t j = 0; j < live_to_flat.size(); ++j) {
    std::size_t f = live_to_flat[j];
    rows.push_back({{{static_cast<int>(j), 1.0}}, Relation::le, ub[f] - lb[f]});
  }

  Tableau tableau(live_to_flat.size(), cost, std::move(rows));
  SimplexOutcome outcome = tableau.solve();
  result.status = outcome.status;
  if (outcome.status != LpStatus::optimal) return result;

  result.assignment.assign(lb.begin(), lb.end());
  for (std::size_t j = 0; j < live_to_flat.size(); ++j)
    result.assignment[live_to_flat[j]] += outcome.solution[j];
  double value = outcome.value + obj_const;
  result.value = flat.flip ? -value : value;
  return result;
}

double row_activity(const MilpInstance& milp, const Row& row, const std::vector<double>& x) {
  double acc = 0.0;
  for (const auto& entry : row.coeffs) acc += entry.coeff * x[milp.flat_index(entry.var)];
  return acc;
}

bool satisfies_rows(const MilpInstance& milp, const std::vector<double>& x, double tol) {
  for (const auto& row : milp.rows) {
    double activity = row_activity(milp, row, x);
    bool ok = row.relation == Relation::le   ? activity <= row.rhs + tol
              : row.relation == Relation::ge ? activity >= row.rhs - tol
                                             : std::abs(activity - row.rhs) <= tol;
    if (!ok) return false;
  }
  return true;
}

double objective_at(const MilpInstance& milp, const std::vector<double>& x) {
  double acc = 0.0;
  std::size_t f = 0;
  for (const auto& g : milp.groups)
    for (const auto& v : g.vars) acc += v.obj_coeff * x[f++];
  return acc;
}

}  // namespace

LpResult solve_lp(const MilpInstance& milp, bool relaxed) {
  FlatMilp flat = flatten(milp);
  if (!relaxed) {
    for (std::size_t f = 0; f < flat.cost.size(); ++f)
      if (flat.is_integer[f] && flat.ub[f] - flat.lb[f] > 1e-9)
        throw std::invalid_argument("solve_lp(relaxed=false): integer variable not fixed");
  }
  LpResult result = solve_flat_lp(flat, flat.lb, flat.ub);
  if (result.status == LpStatus::optimal) {
    // The optimality contract: feasible within 1e-7 and value consistent
    // with the assignment. Anything else is a numerical failure, not a lie.
    if (!satisfies_rows(milp, result.assignment, kFeasTol) ||
        std::abs(objective_at(milp, result.assignment) - result.value) > kFeasTol)
      result.status = LpStatus::numerical_failure;
  }
  return result;
}

MilpSolution solve_milp(const MilpInstance& milp, const SolverConfig& cfg) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  auto elapsed_ms = [&] {
    return std::chrono::duration<double, std::milli>(clock::now() - start).count();
  };

  FlatMilp flat = flatten(milp);
  const double sign = flat.flip ? -1.0 : 1.0;  // internal minimize -> reported sense
  const double prune_tol = std::max(kIntTol, cfg.gap_tol);

  struct Node {
    std::vector<double> lb, ub;
    double bound;  // parent LP value, minimize orientation
    std::int64_t id;
  };

  MilpSolution best;
  best.status = MilpStatus::infeasible;
  double incumbent = kInf;  // minimize orientation
  bool have_incumbent = false;

  std::vector<Node> active;
  active.push_back({flat.lb, flat.ub, -kInf, 0});
  std::int64_t next_id = 1;
  bool out_of_budget = false;

  while (!active.empty()) {
    if ((cfg.node_limit > 0 && best.node_count >= cfg.node_limit) ||
        (cfg.time_limit_ms >= 0 && elapsed_ms() >= static_cast<double>(cfg.time_limit_ms))) {
      out_of_budget = true;
      break;
    }

    // Depth-first dive until the first incumbent, then best bound.
    std::size_t pick = active.size() - 1;
    if (have_incumbent) {
      pick = 0;
      for (std::size_t i = 1; i < active.size(); ++i)
        if (active[i].bound < active[pick].bound ||
            (active[i].bound == active[pick].bound && active[i].id < active[pick].id))
          pick = i;
    }
    Node node = std::move(active[pick]);
    active.erase(active.begin() + static_cast<long>(pick));

    if (have_incumbent && node.bound >= incumbent - prune_tol) continue;

    LpResult lp = solve_flat_lp(flat, node.lb, node.ub);
    ++best.node_count;
    if (lp.status == LpStatus::infeasible) continue;
    if (lp.status != LpStatus::optimal)
      throw std::runtime_error("branch and bound: LP relaxation failed");

    double bound = sign * lp.value;  // back to minimize orientation
    if (have_incumbent && bound >= incumbent - prune_tol) continue;

    // Most fractional integer variable, ties to the lowest index.
    std::size_t branch_var = flat.cost.size();
    double most_fractional = kIntTol;
    for (std::size_t f = 0; f < flat.cost.size(); ++f) {
      if (!flat.is_integer[f]) continue;
      double v = lp.assignment[f];
      double dist = std::min(v - std::floor(v), std::ceil(v) - v);
      if (dist > most_fractional) {
        most_fractional = dist;
        branch_var = f;
      }
    }

    if (branch_var == flat.cost.size()) {
      // Integral: candidate incumbent.
      if (!have_incumbent || bound < incumbent - 1e-9) {
        incumbent = bound;
        have_incumbent = true;
        best.value = lp.value;
        best.assignment = lp.assignment;
        for (std::size_t f = 0; f < flat.cost.size(); ++f)
          if (flat.is_integer[f]) best.assignment[f] = std::round(best.assignment[f]);
        best.incumbent_log.emplace_back(elapsed_ms(), best.value);
      }
      continue;
    }

    double v = lp.assignment[branch_var];
    Node down{node.lb, node.ub, bound, next_id++};
    down.ub[branch_var] = std::floor(v);
    Node up{std::move(node.lb), std::move(node.ub), bound, next_id++};
    up.lb[branch_var] = std::ceil(v);
    active.push_back(std::move(down));
    active.push_back(std::move(up));  // the dive explores the up branch first
  }

  best.wall_time_ms = elapsed_ms();
  if (out_of_budget)
    best.status = MilpStatus::budget_exceeded;
  else
    best.status = have_incumbent ? MilpStatus::optimal : MilpStatus::infeasible;
  return best;
}

int extra_group_id(const MilpInstance& milp) { return static_cast<int>(milp.groups.size()); }

MilpInstance augment(const MilpInstance& milp, const MilpExtras& extras) {
  MilpInstance augmented = milp;
  if (!extras.vars.empty())
    augmented.groups.push_back({extra_group_id(milp), extras.vars});
  augmented.rows.insert(augmented.rows.end(), extras.rows.begin(), extras.rows.end());
  augmented.validate();
  return augmented;
}

MilpSolution solve_milp_with_extra(const MilpInstance& milp, const MilpExtras& extras,
                                   const SolverConfig& cfg) {
  return solve_milp(augment(milp, extras), cfg);
}

std::string incumbent_log_csv(const MilpSolution& solution) {
  std::ostringstream out;
  out << "time_ms,value\n";
  out.precision(17);
  for (const auto& [t, v] : solution.incumbent_log) out << t << "," << v << "\n";
  return out.str();
}

}  // namespace interdict
