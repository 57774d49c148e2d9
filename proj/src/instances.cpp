#include "interdict/instances.hpp"

#include <cmath>
#include <queue>
#include <stdexcept>

#include "interdict/rng.hpp"
#include "json.hpp"

namespace interdict {

namespace {

constexpr int kMaxGenerationAttempts = 100;

void check(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

template <typename Edge>
bool sink_reachable(int node_count, int source, int sink, const std::vector<Edge>& edges) {
  std::vector<std::vector<int>> adj(node_count);
  for (const auto& e : edges) adj[e.tail].push_back(e.head);
  std::vector<char> seen(node_count, 0);
  std::queue<int> frontier;
  frontier.push(source);
  seen[source] = 1;
  while (!frontier.empty()) {
    int u = frontier.front();
    frontier.pop();
    if (u == sink) return true;
    for (int v : adj[u])
      if (!seen[v]) {
        seen[v] = 1;
        frontier.push(v);
      }
  }
  return false;
}

template <typename Edge>
void validate_graph(int node_count, int source, int sink, const std::vector<Edge>& edges) {
  check(node_count >= 2, "instance needs at least 2 nodes");
  check(source >= 0 && source < node_count, "source out of range");
  check(sink >= 0 && sink < node_count, "sink out of range");
  check(source != sink, "source and sink must differ");
  for (const auto& e : edges) {
    check(e.tail >= 0 && e.tail < node_count, "edge tail out of range");
    check(e.head >= 0 && e.head < node_count, "edge head out of range");
    check(e.tail != e.head, "self-loops are not allowed");
  }
  check(sink_reachable(node_count, source, sink, edges), "sink unreachable from source");
}

int integral_budget(double budget) {
  double rounded = std::round(budget);
  check(std::abs(budget - rounded) <= 1e-9, "SPI budget must be an integer");
  return static_cast<int>(rounded);
}

}  // namespace

void SpiInstance::validate() const {
  validate_graph(node_count, source, sink, edges);
  for (const auto& e : edges) {
    check(e.cost >= 0.0, "edge cost must be nonnegative");
    check(e.delay >= 0.0, "edge delay must be nonnegative");
  }
  check(budget >= 0, "budget must be nonnegative");
}

void MfiInstance::validate() const {
  validate_graph(node_count, source, sink, edges);
  for (const auto& e : edges) {
    check(e.capacity >= 0.0, "edge capacity must be nonnegative");
    check(e.removal_cost >= 0.0, "edge removal cost must be nonnegative");
  }
  check(budget >= 0.0, "budget must be nonnegative");
}

void GenConfig::validate() const {
  check(node_count >= 2, "node_count must be at least 2");
  check(density > 0.0 && density <= 1.0, "density must be in (0, 1]");
  check(cost_range.first <= cost_range.second, "cost_range lo > hi");
  check(capacity_range.first <= capacity_range.second, "capacity_range lo > hi");
  check(cost_range.first >= 0.0, "costs must be nonnegative");
  check(capacity_range.first >= 0.0, "capacities must be nonnegative");
  check(delay_value >= 0.0, "delay_value must be nonnegative");
  check(budget >= 0.0, "budget must be nonnegative");
}

SpiInstance generate_spi(const GenConfig& config) {
  config.validate();
  const int n = config.node_count;
  Rng rng(config.seed);
  for (int attempt = 0; attempt < kMaxGenerationAttempts; ++attempt) {
    SpiInstance inst;
    inst.node_count = n;
    inst.source = 0;
    inst.sink = n - 1;
    inst.budget = integral_budget(config.budget);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        // Edges into the source or out of the sink can never lie on an s-t
        // path; generation skips them (the preprocessed complete digraph).
        if (i == j || j == inst.source || i == inst.sink) continue;
        if (rng.next_unit() >= config.density) continue;
        SpiEdge e;
        e.tail = i;
        e.head = j;
        e.cost = rng.uniform(config.cost_range.first, config.cost_range.second);
        e.delay = config.delay_policy == DelayPolicy::equal_cost ? e.cost : config.delay_value;
        inst.edges.push_back(e);
      }
    if (sink_reachable(n, inst.source, inst.sink, inst.edges)) {
      inst.validate();
      return inst;
    }
  }
  throw std::runtime_error("generate_spi: no source->sink path after 100 attempts");
}

MfiInstance generate_mfi(const GenConfig& config) {
  config.validate();
  const int n = config.node_count;
  Rng rng(config.seed);
  for (int attempt = 0; attempt < kMaxGenerationAttempts; ++attempt) {
    MfiInstance inst;
    inst.node_count = n;
    inst.source = 0;
    inst.sink = n - 1;
    inst.budget = config.budget;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j || j == inst.source || i == inst.sink) continue;
        if (rng.next_unit() >= config.density) continue;
        MfiEdge e;
        e.tail = i;
        e.head = j;
        e.capacity = rng.uniform(config.capacity_range.first, config.capacity_range.second);
        e.removal_cost = rng.uniform(config.cost_range.first, config.cost_range.second);
        inst.edges.push_back(e);
      }
    if (sink_reachable(n, inst.source, inst.sink, inst.edges)) {
      inst.validate();
      return inst;
    }
  }
  throw std::runtime_error("generate_mfi: no source->sink path after 100 attempts");
}

SpiInstance example_spi_eq9() {
  SpiInstance inst;
  inst.node_count = 7;
  inst.source = 0;
  inst.sink = 6;
  inst.budget = 1;
  const std::vector<std::pair<std::pair<int, int>, double>> raw = {
      {{0, 1}, 9.0}, {{0, 4}, 3.0}, {{0, 3}, 3.0}, {{1, 2}, 4.0},
      {{1, 3}, 1.0}, {{4, 3}, 2.0}, {{4, 5}, 3.0}, {{3, 2}, 8.0},
      {{3, 6}, 4.0}, {{3, 5}, 6.0}, {{2, 6}, 5.0}, {{5, 6}, 4.0},
  };
  for (const auto& [pair, cost] : raw)
    inst.edges.push_back({pair.first, pair.second, cost, 1.0});
  return inst;
}

namespace {

using ordered_json = nlohmann::ordered_json;

template <typename Inst>
ordered_json instance_to_json(const Inst& inst, const char* kind) {
  ordered_json j;
  j["kind"] = kind;
  j["nodes"] = inst.node_count;
  j["source"] = inst.source;
  j["sink"] = inst.sink;
  ordered_json edges = ordered_json::array();
  for (const auto& e : inst.edges) {
    if constexpr (std::is_same_v<Inst, SpiInstance>)
      edges.push_back({e.tail, e.head, e.cost, e.delay});
    else
      edges.push_back({e.tail, e.head, e.capacity, e.removal_cost});
  }
  j["edges"] = std::move(edges);
  j["budget"] = inst.budget;
  j["format_version"] = 1;
  return j;
}

ordered_json parse_checked(const std::string& text, const char* kind) {
  ordered_json j = ordered_json::parse(text);
  if (j.value("format_version", -1) != 1)
    throw std::invalid_argument("unsupported instance format_version");
  if (j.value("kind", "") != kind)
    throw std::invalid_argument("instance kind mismatch");
  return j;
}

}  // namespace

std::string to_json(const SpiInstance& inst) { return instance_to_json(inst, "spi").dump(); }

std::string to_json(const MfiInstance& inst) { return instance_to_json(inst, "mfi").dump(); }

SpiInstance spi_from_json(const std::string& text) {
  ordered_json j = parse_checked(text, "spi");
  SpiInstance inst;
  inst.node_count = j.at("nodes").get<int>();
  inst.source = j.at("source").get<int>();
  inst.sink = j.at("sink").get<int>();
  inst.budget = j.at("budget").get<int>();
  for (const auto& e : j.at("edges"))
    inst.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<double>(),
                          e.at(3).get<double>()});
  inst.validate();
  return inst;
}

MfiInstance mfi_from_json(const std::string& text) {
  ordered_json j = parse_checked(text, "mfi");
  MfiInstance inst;
  inst.node_count = j.at("nodes").get<int>();
  inst.source = j.at("source").get<int>();
  inst.sink = j.at("sink").get<int>();
  inst.budget = j.at("budget").get<double>();
  for (const auto& e : j.at("edges"))
    inst.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<double>(),
                          e.at(3).get<double>()});
  inst.validate();
  return inst;
}

std::string instance_kind(const std::string& text) {
  return nlohmann::json::parse(text).value("kind", "");
}

}  // namespace interdict
