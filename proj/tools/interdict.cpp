// Command-line pipeline: generate -> label -> train -> evaluate, plus the
// anytime comparison and the on-demand diagnostic suites.

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "interdict/decision_eval.hpp"
#include "interdict/oracle.hpp"
#include "interdict/rng.hpp"
#include "json.hpp"

namespace interdict {
namespace {

constexpr int kExitFailure = 1;  // assertion / criterion failure
constexpr int kExitUsage = 2;    // usage or I/O error

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::uint64_t default_seed() {
  if (const char* env = std::getenv("INTERDICT_SEED")) return std::strtoull(env, nullptr, 10);
  return 0;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) lines.push_back(line);
  return lines;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << content;
}

struct Dataset {
  SourceKind kind = SourceKind::none;
  std::vector<SpiInstance> spi;
  std::vector<MfiInstance> mfi;

  std::size_t size() const { return kind == SourceKind::spi ? spi.size() : mfi.size(); }
};

Dataset load_instances(const std::string& path) {
  Dataset data;
  for (const std::string& line : read_lines(path)) {
    std::string kind = instance_kind(line);
    if (data.kind == SourceKind::none)
      data.kind = kind == "spi" ? SourceKind::spi : SourceKind::mfi;
    if (kind == "spi" && data.kind == SourceKind::spi)
      data.spi.push_back(spi_from_json(line));
    else if (kind == "mfi" && data.kind == SourceKind::mfi)
      data.mfi.push_back(mfi_from_json(line));
    else
      throw UsageError(path + ": mixed or unknown instance kinds");
  }
  if (data.kind == SourceKind::none) data.kind = SourceKind::spi;  // empty file
  return data;
}

struct LabelRecord {
  std::size_t instance = 0;
  double optimal_value = 0.0;
  BinaryVector label_x;
  std::int64_t n_optima = 0;
};

std::vector<LabelRecord> load_labels(const std::string& path) {
  std::vector<LabelRecord> labels;
  for (const std::string& line : read_lines(path)) {
    nlohmann::json j = nlohmann::json::parse(line);
    LabelRecord rec;
    rec.instance = j.at("instance").get<std::size_t>();
    rec.optimal_value = j.at("optimal_value").get<double>();
    for (const auto& v : j.at("label_x")) rec.label_x.push_back(v.get<int>() ? 1 : 0);
    rec.n_optima = j.at("n_optima").get<std::int64_t>();
    labels.push_back(std::move(rec));
  }
  return labels;
}

// Stable hash-based 50/25/25 split; appending instances never reshuffles
// earlier ones.
enum class Split { train, val, test };

Split split_of(std::uint64_t split_seed, std::size_t index) {
  std::uint64_t h = mix64(split_seed ^ (static_cast<std::uint64_t>(index) * 0x9e3779b97f4a7c15ULL + 1));
  switch (h % 4) {
    case 0:
    case 1: return Split::train;
    case 2: return Split::val;
    default: return Split::test;
  }
}

std::uint64_t graph_seed(std::uint64_t seed, std::size_t index) {
  return mix64(seed ^ mix64(static_cast<std::uint64_t>(index) + 0x51ed2701ULL));
}

MilpInstance reduce(const Dataset& data, std::size_t i) {
  return data.kind == SourceKind::spi ? dualize_spi(data.spi[i]) : build_mfi_milp(data.mfi[i]);
}

// ---------------------------------------------------------------------------

struct GenerateOptions {
  std::string kind = "spi";
  int count = 10;
  int nodes = 10;
  double density = 1.0;
  double cost_lo = 1.0, cost_hi = 10.0;
  double cap_lo = 10.0, cap_hi = 60.0;
  std::string delay_policy = "equal-cost";
  double delay_value = 1.0;
  double budget = 15.0;
  std::uint64_t seed = default_seed();
  std::string out;
};

int cmd_generate(const GenerateOptions& opt) {
  GenConfig cfg;
  cfg.node_count = opt.nodes;
  cfg.density = opt.density;
  cfg.cost_range = {opt.cost_lo, opt.cost_hi};
  cfg.capacity_range = {opt.cap_lo, opt.cap_hi};
  cfg.delay_policy =
      opt.delay_policy == "constant" ? DelayPolicy::constant : DelayPolicy::equal_cost;
  cfg.delay_value = opt.delay_value;
  cfg.budget = opt.budget;

  std::ostringstream out;
  for (int i = 0; i < opt.count; ++i) {
    cfg.seed = graph_seed(opt.seed, static_cast<std::size_t>(i));
    try {
      if (opt.kind == "spi")
        out << to_json(generate_spi(cfg)) << "\n";
      else
        out << to_json(generate_mfi(cfg)) << "\n";
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("invalid generator config: ") + e.what());
    }
  }
  write_file(opt.out, out.str());
  std::cout << "wrote " << opt.count << " " << opt.kind << " instances (" << opt.nodes
            << " nodes) to " << opt.out << "\n";
  return 0;
}

struct LabelOptions {
  std::string instances;
  std::string method = "oracle";
  std::string out;
  int jobs = 1;
};

int cmd_label(const LabelOptions& opt) {
  Dataset data = load_instances(opt.instances);
  const std::size_t n = data.size();
  std::vector<LabelRecord> records(n);

  auto label_one = [&](std::size_t i) {
    LabelRecord rec;
    rec.instance = i;
    if (opt.method == "oracle") {
      OracleResult oracle = data.kind == SourceKind::spi ? brute_force_spi(data.spi[i])
                                                         : brute_force_mfi(data.mfi[i]);
      rec.optimal_value = oracle.value;
      rec.label_x = oracle.best_x;
      rec.n_optima = static_cast<std::int64_t>(oracle.all_optima.size());
    } else {
      MilpInstance milp = reduce(data, i);
      MilpSolution sol = solve_milp(milp);
      if (sol.status != MilpStatus::optimal)
        throw std::runtime_error("milp labeling did not reach optimality on instance " +
                                 std::to_string(i));
      rec.optimal_value = sol.value;
      rec.label_x = w0_binary(milp, sol.assignment);
      rec.n_optima = 1;
    }
    records[i] = std::move(rec);
  };

  if (opt.jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) label_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    std::atomic<bool> failed{false};
    for (int t = 0; t < opt.jobs; ++t)
      workers.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
          try {
            label_one(i);
          } catch (...) {
            failed = true;
            return;
          }
        }
      });
    for (auto& w : workers) w.join();
    if (failed) throw std::runtime_error("labeling failed in a worker");
  }

  std::ostringstream out;
  for (const auto& rec : records) {
    nlohmann::ordered_json j;
    j["instance"] = rec.instance;
    j["optimal_value"] = rec.optimal_value;
    j["label_x"] = std::vector<int>(rec.label_x.begin(), rec.label_x.end());
    j["n_optima"] = rec.n_optima;
    out << j.dump() << "\n";
  }
  write_file(opt.out, out.str());
  std::cout << "labeled " << n << " instances via " << opt.method << " -> " << opt.out << "\n";
  return 0;
}

struct TrainOptions {
  std::string instances;
  std::string labels;
  std::string out;
  std::string history;
  int layers = 2;
  int dim = 24;
  std::vector<int> hidden = {24};
  int rand_feats = 2;
  int epochs = 150;
  int batch_size = 8;
  double lr = 1e-4;
  std::uint64_t seed = default_seed();
  std::uint64_t split_seed = 17;
  bool separate_messages = false;
};

std::vector<LabeledGraph> build_labeled(const Dataset& data,
                                        const std::vector<LabelRecord>& labels,
                                        const std::vector<std::size_t>& indices, int rand_feats,
                                        std::uint64_t seed) {
  std::vector<LabeledGraph> out;
  for (std::size_t i : indices) {
    MilpInstance milp = reduce(data, i);
    out.push_back({build_graph(milp, FeatureConfig{rand_feats}, graph_seed(seed, i)),
                   labels[i].label_x});
  }
  return out;
}

int cmd_train(const TrainOptions& opt) {
  Dataset data = load_instances(opt.instances);
  std::vector<LabelRecord> labels = load_labels(opt.labels);
  if (labels.size() != data.size())
    throw UsageError("label file does not match the instance file");

  std::vector<std::size_t> train_idx, val_idx;
  for (std::size_t i = 0; i < data.size(); ++i) {
    Split split = split_of(opt.split_seed, i);
    if (split == Split::train) train_idx.push_back(i);
    if (split == Split::val) val_idx.push_back(i);
  }
  if (train_idx.empty()) throw UsageError("empty training split");

  GnnConfig cfg;
  cfg.layers = opt.layers;
  cfg.embedding_dim = opt.dim;
  cfg.mlp_hidden = opt.hidden;
  cfg.random_feature_dim = opt.rand_feats;
  cfg.dual_group_count = data.kind == SourceKind::spi ? 1 : 2;
  cfg.shared_message_mlp = !opt.separate_messages;
  cfg.seed = opt.seed;

  GnnModel model = init_model(cfg);
  TrainConfig tc;
  tc.learning_rate = opt.lr;
  tc.epochs = opt.epochs;
  tc.batch_size = opt.batch_size;

  auto train_set = build_labeled(data, labels, train_idx, opt.rand_feats, opt.seed);
  auto val_set = build_labeled(data, labels, val_idx, opt.rand_feats, opt.seed);
  TrainHistory history = train(model, train_set, val_set, tc);

  write_file(opt.out, save_model(model));
  if (!opt.history.empty()) write_file(opt.history, history_csv(history));
  std::cout << "trained on " << train_idx.size() << " instances (val " << val_idx.size()
            << "), final train loss " << history.train_loss.back();
  if (!history.val_loss.empty()) std::cout << ", val loss " << history.val_loss.back();
  std::cout << " -> " << opt.out << "\n";
  return 0;
}

struct EvaluateOptions {
  std::string instances;
  std::string labels;
  std::string checkpoint;
  std::string strategy = "model";
  std::string split = "test";
  std::string report;
  std::string csv;
  bool use_pns = false;
  int k0 = 0, k1 = 0, delta = 0;
  std::int64_t solver_time_ms = 10'000;
  std::uint64_t seed = default_seed();
  std::uint64_t split_seed = 17;
};

int cmd_evaluate(const EvaluateOptions& opt) {
  Dataset data = load_instances(opt.instances);
  std::vector<LabelRecord> labels = load_labels(opt.labels);
  if (labels.size() != data.size())
    throw UsageError("label file does not match the instance file");

  std::optional<GnnModel> model;
  if (opt.strategy == "model") {
    std::ifstream in(opt.checkpoint);
    if (!in) throw UsageError("cannot open checkpoint " + opt.checkpoint);
    std::stringstream buffer;
    buffer << in.rdbuf();
    model = load_model(buffer.str());
  }

  std::vector<std::size_t> indices;
  for (std::size_t i = 0; i < data.size(); ++i)
    if (opt.split == "all" || split_of(opt.split_seed, i) == Split::test) indices.push_back(i);
  if (indices.empty()) throw UsageError("empty evaluation split");

  std::vector<double> achieved, optimal;
  for (std::size_t i : indices) {
    optimal.push_back(labels[i].optimal_value);
    Prediction pred;
    if (opt.strategy == "model") {
      MilpInstance milp = reduce(data, i);
      pred = forward(*model,
                     build_graph(milp, FeatureConfig{model->config.random_feature_dim},
                                 graph_seed(model->config.seed, i)));
      if (opt.use_pns) {
        SolverConfig scfg;
        scfg.time_limit_ms = opt.solver_time_ms;
        MilpSolution sol =
            predict_and_search(pred, milp, PnsConfig{opt.k0, opt.k1, opt.delta}, scfg);
        if (!sol.has_solution())
          throw std::runtime_error("predict-and-search found no incumbent on instance " +
                                   std::to_string(i));
        achieved.push_back(sol.value);
        continue;
      }
    } else if (opt.strategy == "random") {
      pred = random_prediction(data.kind == SourceKind::spi ? data.spi[i].edges.size()
                                                            : data.mfi[i].edges.size(),
                               graph_seed(opt.seed, i));
    } else {  // oracle: re-evaluate the stored label through the inner solver
      achieved.push_back(data.kind == SourceKind::spi
                             ? shortest_path(data.spi[i], labels[i].label_x).length
                             : max_flow(data.mfi[i], labels[i].label_x).value);
      continue;
    }
    achieved.push_back(data.kind == SourceKind::spi ? end_to_end(pred, data.spi[i]).value
                                                    : end_to_end(pred, data.mfi[i]).value);
  }

  EvalReport report = evaluate(data.kind, achieved, optimal);
  if (!opt.report.empty()) write_file(opt.report, eval_report_json(report));
  if (!opt.csv.empty()) write_file(opt.csv, eval_report_csv(report));
  std::cout << "strategy " << opt.strategy << (opt.use_pns ? "+pns" : "") << " on "
            << indices.size() << " instances: mean ratio " << report.mean_ratio << " +- "
            << report.std_ratio << ", mean gap " << report.mean_gap << " +- " << report.std_gap
            << "\n";
  return 0;
}

struct AnytimeOptions {
  std::string instances;
  std::string checkpoint;
  std::size_t index = 0;
  int k0 = 0, k1 = 0, delta = 0;
  std::int64_t time_ms = 10'000;
  std::string out;
};

int cmd_anytime(const AnytimeOptions& opt) {
  Dataset data = load_instances(opt.instances);
  if (opt.index >= data.size()) throw UsageError("instance index out of range");
  std::ifstream in(opt.checkpoint);
  if (!in) throw UsageError("cannot open checkpoint " + opt.checkpoint);
  std::stringstream buffer;
  buffer << in.rdbuf();
  GnnModel model = load_model(buffer.str());

  MilpInstance milp = reduce(data, opt.index);
  Prediction pred =
      forward(model, build_graph(milp, FeatureConfig{model.config.random_feature_dim},
                                 graph_seed(model.config.seed, opt.index)));
  AnytimeLogs logs =
      anytime_compare(milp, pred, PnsConfig{opt.k0, opt.k1, opt.delta}, opt.time_ms);
  write_file(opt.out, anytime_csv(logs));
  std::cout << "anytime comparison on instance " << opt.index << ": plain "
            << logs.plain_log.size() << " incumbents, pns " << logs.pns_log.size() << " -> "
            << opt.out << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// diagnose: on-demand property suites

bool diagnose_wl(std::uint64_t seed) {
  Rng rng(seed);
  for (int trial = 0; trial < 5; ++trial) {
    GenConfig cfg;
    cfg.node_count = 5 + trial % 3;
    cfg.density = 0.8;
    cfg.budget = 2;
    cfg.seed = rng.next_u64();
    SpiInstance inst = generate_spi(cfg);
    MmilpGraph g = build_graph(dualize_spi(inst), {}, 0);

    for (int p = 0; p < 10; ++p) {
      GroupPermutations perms;
      for (std::size_t k = 0; k < g.group_count(); ++k) {
        std::vector<int> perm(g.var_count(static_cast<int>(k)));
        for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
        for (std::size_t i = perm.size(); i > 1; --i)
          std::swap(perm[i - 1], perm[rng.below(i)]);
        perms.var_perms.push_back(std::move(perm));
      }
      perms.con_perm.resize(g.con_count());
      for (std::size_t i = 0; i < perms.con_perm.size(); ++i)
        perms.con_perm[i] = static_cast<int>(i);
      for (std::size_t i = perms.con_perm.size(); i > 1; --i)
        std::swap(perms.con_perm[i - 1], perms.con_perm[rng.below(i)]);
      if (distinguishable(g, permute_graph(g, perms), 4)) return false;
    }

    SpiInstance bumped = inst;
    bumped.edges[trial % bumped.edges.size()].cost += 1.0;
    if (!distinguishable(g, build_graph(dualize_spi(bumped), {}, 0), 4)) return false;
  }
  return true;
}

bool diagnose_duality(std::uint64_t seed) {
  Rng rng(seed);
  for (int trial = 0; trial < 50; ++trial) {
    GenConfig cfg;
    cfg.node_count = 4 + trial % 5;
    cfg.density = trial % 2 ? 1.0 : 0.7;
    cfg.budget = 2;
    cfg.seed = rng.next_u64();
    SpiInstance inst = generate_spi(cfg);
    MilpInstance milp = dualize_spi(inst);
    for (int f = 0; f < 3; ++f) {
      BinaryVector x(inst.edges.size(), 0);
      for (auto& bit : x) bit = rng.below(4) == 0;
      if (std::accumulate(x.begin(), x.end(), 0) > inst.budget) continue;
      LpResult lp = solve_lp(fix_interdiction(milp, x), false);
      if (lp.status != LpStatus::optimal) return false;
      if (std::abs(lp.value - shortest_path(inst, x).length) > 1e-6) return false;
    }
  }
  return true;
}

bool diagnose_gradcheck(std::uint64_t seed) {
  MmilpGraph g = build_graph(dualize_spi(example_spi_eq9()), {}, 0);
  BinaryVector label(12, 0);
  label[8] = 1;
  Rng rng(seed);
  for (int trial = 0; trial < 2; ++trial) {
    GnnConfig cfg;
    cfg.layers = 1 + trial;
    cfg.embedding_dim = 5;
    cfg.mlp_hidden = {5};
    cfg.seed = rng.next_u64();
    GnnModel model = init_model(cfg);
    GnnGradients grads = backward(model, g, label);
    std::vector<double> params = flatten_parameters(model);
    for (int s = 0; s < 50; ++s) {
      std::size_t idx = rng.below(params.size());
      const double h = 1e-5, original = params[idx];
      params[idx] = original + h;
      set_parameters(model, params);
      double up = loss(forward(model, g), label);
      params[idx] = original - h;
      set_parameters(model, params);
      double down = loss(forward(model, g), label);
      params[idx] = original;
      set_parameters(model, params);
      double fd = (up - down) / (2.0 * h);
      if (std::abs(fd - grads.flat[idx]) /
              std::max({1e-6, std::abs(fd), std::abs(grads.flat[idx])}) >=
          1e-4)
        return false;
    }
  }
  return true;
}

bool diagnose_oracle_vs_milp(std::uint64_t seed) {
  Rng rng(seed);
  for (int trial = 0; trial < 20; ++trial) {
    GenConfig cfg;
    cfg.node_count = 4 + trial % 3;
    cfg.density = 0.8;
    cfg.budget = 2;
    cfg.seed = rng.next_u64();
    if (!cross_check(generate_spi(cfg)).pass) return false;
    if (trial % 4 == 0 && !cross_check(generate_mfi(cfg)).pass) return false;
  }
  return true;
}

int cmd_diagnose(const std::vector<std::string>& checks, std::uint64_t seed) {
  bool all_pass = true;
  for (const std::string& check : checks) {
    bool pass = false;
    if (check == "wl")
      pass = diagnose_wl(seed);
    else if (check == "duality")
      pass = diagnose_duality(seed);
    else if (check == "gradcheck")
      pass = diagnose_gradcheck(seed);
    else if (check == "oracle-vs-milp")
      pass = diagnose_oracle_vs_milp(seed);
    else
      throw UsageError("unknown check: " + check);
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << check << "\n";
    all_pass = all_pass && pass;
  }
  return all_pass ? 0 : kExitFailure;
}

}  // namespace
}  // namespace interdict

int main(int argc, char** argv) {
  using namespace interdict;

  CLI::App app{"network interdiction toolkit (SPI / MFI)"};
  app.require_subcommand(1);
  app.footer("Seeds default to $INTERDICT_SEED (or 0).");

  GenerateOptions gen;
  CLI::App* generate = app.add_subcommand("generate", "write a JSONL instance dataset");
  generate->add_option("--kind", gen.kind)->check(CLI::IsMember({"spi", "mfi"}));
  generate->add_option("--count", gen.count)->check(CLI::PositiveNumber);
  generate->add_option("--nodes", gen.nodes);
  generate->add_option("--density", gen.density);
  generate->add_option("--cost-lo", gen.cost_lo);
  generate->add_option("--cost-hi", gen.cost_hi);
  generate->add_option("--cap-lo", gen.cap_lo);
  generate->add_option("--cap-hi", gen.cap_hi);
  generate->add_option("--delay-policy", gen.delay_policy)
      ->check(CLI::IsMember({"equal-cost", "constant"}));
  generate->add_option("--delay-value", gen.delay_value);
  generate->add_option("--budget", gen.budget);
  generate->add_option("--seed", gen.seed);
  generate->add_option("--out", gen.out)->required();

  LabelOptions lab;
  CLI::App* label = app.add_subcommand("label", "compute optimal labels for a dataset");
  label->add_option("--instances", lab.instances)->required()->check(CLI::ExistingFile);
  label->add_option("--method", lab.method)->check(CLI::IsMember({"oracle", "milp"}));
  label->add_option("--jobs", lab.jobs)->check(CLI::PositiveNumber);
  label->add_option("--out", lab.out)->required();

  TrainOptions tr;
  CLI::App* train_cmd = app.add_subcommand("train", "train the interdiction model");
  train_cmd->add_option("--instances", tr.instances)->required()->check(CLI::ExistingFile);
  train_cmd->add_option("--labels", tr.labels)->required()->check(CLI::ExistingFile);
  train_cmd->add_option("--out", tr.out)->required();
  train_cmd->add_option("--history", tr.history);
  train_cmd->add_option("--layers", tr.layers);
  train_cmd->add_option("--dim", tr.dim);
  train_cmd->add_option("--hidden", tr.hidden);
  train_cmd->add_option("--rand-feats", tr.rand_feats);
  train_cmd->add_option("--epochs", tr.epochs);
  train_cmd->add_option("--batch-size", tr.batch_size);
  train_cmd->add_option("--lr", tr.lr);
  train_cmd->add_option("--seed", tr.seed);
  train_cmd->add_option("--split-seed", tr.split_seed);
  train_cmd->add_flag("--separate-messages", tr.separate_messages,
                      "use direction-specific message MLPs");

  EvaluateOptions ev;
  CLI::App* evaluate_cmd = app.add_subcommand("evaluate", "score a strategy on a test split");
  evaluate_cmd->add_option("--instances", ev.instances)->required()->check(CLI::ExistingFile);
  evaluate_cmd->add_option("--labels", ev.labels)->required()->check(CLI::ExistingFile);
  evaluate_cmd->add_option("--checkpoint", ev.checkpoint);
  evaluate_cmd->add_option("--strategy", ev.strategy)
      ->check(CLI::IsMember({"model", "random", "oracle"}));
  evaluate_cmd->add_option("--split", ev.split)->check(CLI::IsMember({"test", "all"}));
  evaluate_cmd->add_option("--report", ev.report);
  evaluate_cmd->add_option("--csv", ev.csv);
  evaluate_cmd->add_flag("--pns", ev.use_pns, "refine predictions with predict-and-search");
  evaluate_cmd->add_option("--k0", ev.k0);
  evaluate_cmd->add_option("--k1", ev.k1);
  evaluate_cmd->add_option("--delta", ev.delta);
  evaluate_cmd->add_option("--solver-time-ms", ev.solver_time_ms);
  evaluate_cmd->add_option("--seed", ev.seed);
  evaluate_cmd->add_option("--split-seed", ev.split_seed);

  AnytimeOptions any;
  CLI::App* anytime_cmd =
      app.add_subcommand("anytime", "paired incumbent logs: plain solver vs predict-and-search");
  anytime_cmd->add_option("--instances", any.instances)->required()->check(CLI::ExistingFile);
  anytime_cmd->add_option("--checkpoint", any.checkpoint)->required();
  anytime_cmd->add_option("--index", any.index);
  anytime_cmd->add_option("--k0", any.k0);
  anytime_cmd->add_option("--k1", any.k1);
  anytime_cmd->add_option("--delta", any.delta);
  anytime_cmd->add_option("--time-ms", any.time_ms);
  anytime_cmd->add_option("--out", any.out)->required();

  std::vector<std::string> checks;
  std::uint64_t diag_seed = default_seed();
  CLI::App* diagnose_cmd = app.add_subcommand("diagnose", "run property suites on demand");
  diagnose_cmd
      ->add_option("--check", checks,
                   "wl, duality, gradcheck, oracle-vs-milp (repeatable; default all)")
      ->check(CLI::IsMember({"wl", "duality", "gradcheck", "oracle-vs-milp"}));
  diagnose_cmd->add_option("--seed", diag_seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*generate) return cmd_generate(gen);
    if (*label) return cmd_label(lab);
    if (*train_cmd) return cmd_train(tr);
    if (*evaluate_cmd) return cmd_evaluate(ev);
    if (*anytime_cmd) return cmd_anytime(any);
    if (*diagnose_cmd) {
      if (checks.empty()) checks = {"wl", "duality", "gradcheck", "oracle-vs-milp"};
      return cmd_diagnose(checks, diag_seed);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return 0;
}
