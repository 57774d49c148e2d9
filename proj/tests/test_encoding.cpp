#include "interdict/encoding.hpp"

#include <stdexcept>

#include "doctest.h"
#include "interdict/instances.hpp"
#include "interdict/rng.hpp"
#include "json.hpp"

using namespace interdict;

namespace {

std::vector<int> random_permutation(std::size_t n, Rng& rng) {
  std::vector<int> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<int>(i);
  for (std::size_t i = n; i > 1; --i)
    std::swap(perm[i - 1], perm[rng.below(i)]);
  return perm;
}

GroupPermutations random_perms(const MmilpGraph& g, std::uint64_t seed) {
  Rng rng(seed);
  GroupPermutations perms;
  for (std::size_t k = 0; k < g.group_count(); ++k)
    perms.var_perms.push_back(random_permutation(g.var_count(static_cast<int>(k)), rng));
  perms.con_perm = random_permutation(g.con_count(), rng);
  return perms;
}

// Two parallel source->sink edges with equal costs: the W0 vertices are
// genuinely interchangeable, unlike source/sink-adjacent edges in larger
// graphs whose dual rows see distinguishable pi features.
SpiInstance parallel_pair() {
  SpiInstance inst;
  inst.node_count = 2;
  inst.source = 0;
  inst.sink = 1;
  inst.edges = {{0, 1, 5.0, 1.0}, {0, 1, 5.0, 1.0}};
  inst.budget = 1;
  return inst;
}

bool partitions_refine(const std::vector<int>& coarse, const std::vector<int>& fine) {
  // Every fine class must sit inside one coarse class.
  std::map<int, int> fine_to_coarse;
  for (std::size_t v = 0; v < fine.size(); ++v) {
    auto [it, inserted] = fine_to_coarse.emplace(fine[v], coarse[v]);
    if (!inserted && it->second != coarse[v]) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("encoding") {

TEST_CASE("eq9 graph: group sizes 12/7/13 and 48 edges") {
  MilpInstance milp = dualize_spi(example_spi_eq9());
  MmilpGraph g = build_graph(milp, {}, 0);
  REQUIRE(g.group_count() == 2);
  CHECK(g.var_count(0) == 12);
  CHECK(g.var_count(1) == 7);
  CHECK(g.con_count() == 13);
  CHECK(g.edges.size() == 48);  // 12 dual rows x 3 entries + 12 budget entries

  // Edge weights are the constraint coefficients.
  for (const auto& e : g.edges) {
    if (e.constraint < 12)
      CHECK((e.weight == 1.0 || e.weight == -1.0));
    else
      CHECK(e.weight == 1.0);  // budget row
  }
}

TEST_CASE("eq9 base features") {
  MilpInstance milp = dualize_spi(example_spi_eq9());
  MmilpGraph g = build_graph(milp, {}, 0);
  CHECK(g.var_features[0].cols == 5);
  CHECK(g.con_features.cols == 4);

  // x_(0,1): obj 0, bounds [0,1], binary, degree 2 (its dual row + budget).
  const double* x0 = g.var_features[0].row(0);
  CHECK(x0[0] == 0.0);
  CHECK(x0[1] == 0.0);
  CHECK(x0[2] == 1.0);
  CHECK(x0[3] == 1.0);
  CHECK(x0[4] == 2.0);

  // pi_0: obj 1, bounds +-64 (sum c + sum d = 52 + 12), degree 3.
  const double* pi0 = g.var_features[1].row(0);
  CHECK(pi0[0] == 1.0);
  CHECK(pi0[1] == -64.0);
  CHECK(pi0[2] == 64.0);
  CHECK(pi0[3] == 0.0);
  CHECK(pi0[4] == 3.0);

  // First dual row: rhs 9, <=, tag dual, degree 3.
  const double* v1 = g.con_features.row(0);
  CHECK(v1[0] == 9.0);
  CHECK(v1[1] == -1.0);
  CHECK(v1[2] == 0.0);
  CHECK(v1[3] == 3.0);

  // Budget row: rhs 1, <=, tag budget, degree 12.
  const double* v13 = g.con_features.row(12);
  CHECK(v13[0] == 1.0);
  CHECK(v13[1] == -1.0);
  CHECK(v13[2] == 1.0);
  CHECK(v13[3] == 12.0);
}

TEST_CASE("r=0 graphs are independent of the seed; r>0 differ only in random columns") {
  MilpInstance milp = dualize_spi(example_spi_eq9());
  CHECK(build_graph(milp, {}, 1) == build_graph(milp, {}, 2));

  FeatureConfig cfg{4};
  MmilpGraph a = build_graph(milp, cfg, 1);
  MmilpGraph b = build_graph(milp, cfg, 2);
  CHECK(a.edges == b.edges);
  CHECK(a != b);
  for (std::size_t k = 0; k < a.group_count(); ++k)
    for (std::size_t v = 0; v < a.var_count(static_cast<int>(k)); ++v)
      for (int q = 0; q < kVarBaseFeatures; ++q)
        CHECK(a.var_features[k].at(v, q) == b.var_features[k].at(v, q));
  // Random columns land in [0,1).
  for (std::size_t v = 0; v < a.con_count(); ++v)
    for (int q = 0; q < 4; ++q) {
      double x = a.con_features.at(v, kConBaseFeatures + q);
      CHECK(x >= 0.0);
      CHECK(x < 1.0);
    }
}

TEST_CASE("permutations: identity, inverse round-trip, and bijection checks") {
  MmilpGraph g = build_graph(dualize_spi(example_spi_eq9()), {}, 0);

  GroupPermutations identity;
  for (std::size_t k = 0; k < g.group_count(); ++k) {
    identity.var_perms.emplace_back(g.var_count(static_cast<int>(k)));
    for (std::size_t i = 0; i < identity.var_perms[k].size(); ++i)
      identity.var_perms[k][i] = static_cast<int>(i);
  }
  identity.con_perm.resize(g.con_count());
  for (std::size_t i = 0; i < identity.con_perm.size(); ++i)
    identity.con_perm[i] = static_cast<int>(i);
  CHECK(permute_graph(g, identity) == g);

  GroupPermutations perms = random_perms(g, 42);
  MmilpGraph permuted = permute_graph(g, perms);
  GroupPermutations inverse;
  for (const auto& p : perms.var_perms) {
    std::vector<int> inv(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) inv[p[i]] = static_cast<int>(i);
    inverse.var_perms.push_back(std::move(inv));
  }
  inverse.con_perm.resize(perms.con_perm.size());
  for (std::size_t i = 0; i < perms.con_perm.size(); ++i)
    inverse.con_perm[perms.con_perm[i]] = static_cast<int>(i);
  MmilpGraph back = permute_graph(permuted, inverse);
  // Edge list order differs after the round trip; compare as multisets.
  auto sorted_edges = [](MmilpGraph graph) {
    std::sort(graph.edges.begin(), graph.edges.end(), [](const auto& a, const auto& b) {
      return std::tie(a.group, a.var, a.constraint, a.weight) <
             std::tie(b.group, b.var, b.constraint, b.weight);
    });
    return graph;
  };
  CHECK(sorted_edges(back) == sorted_edges(g));

  GroupPermutations broken = perms;
  broken.con_perm[0] = broken.con_perm[1];
  CHECK_THROWS_AS(permute_graph(g, broken), std::invalid_argument);
}

TEST_CASE("a graph is never distinguishable from itself or its permutations") {
  MilpInstance milp = dualize_spi(example_spi_eq9());
  MmilpGraph g = build_graph(milp, {}, 0);
  CHECK(!distinguishable(g, g, 3));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    MmilpGraph permuted = permute_graph(g, random_perms(g, 1000 + seed));
    CHECK(!distinguishable(g, permuted, 3));
  }
}

TEST_CASE("a single perturbed cost is detected at round 0") {
  SpiInstance inst = example_spi_eq9();
  MmilpGraph g1 = build_graph(dualize_spi(inst), {}, 0);
  inst.edges[0].cost = 10.0;  // 9 -> 10
  MmilpGraph g2 = build_graph(dualize_spi(inst), {}, 0);
  CHECK(distinguishable(g1, g2, 1));

  auto refinements = refine_jointly({&g1, &g2}, 1);
  auto sizes1 = refinements[0].partition_sizes(0);
  REQUIRE(refinements[0].rounds.size() == 2);  // round 0 + one refinement round
  // Already the round-0 constraint multisets differ (rhs feature).
  std::vector<int> v1 = refinements[0].rounds[0].back();
  std::vector<int> v2 = refinements[1].rounds[0].back();
  std::sort(v1.begin(), v1.end());
  std::sort(v2.begin(), v2.end());
  CHECK(v1 != v2);
}

TEST_CASE("interchangeable parallel edges share one W0 color at every round") {
  MmilpGraph g = build_graph(dualize_spi(parallel_pair()), {}, 0);
  ColorRefinement refinement = refine(g, 4);
  for (const auto& round : refinement.rounds) {
    REQUIRE(round[0].size() == 2);
    CHECK(round[0][0] == round[0][1]);
  }
}

TEST_CASE("random features split structurally identical vertices at round 0") {
  MmilpGraph g = build_graph(dualize_spi(parallel_pair()), FeatureConfig{2}, 7);
  ColorRefinement refinement = refine(g, 1);
  CHECK(refinement.rounds[0][0][0] != refinement.rounds[0][0][1]);
}

TEST_CASE("each round refines the previous partition") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    GenConfig cfg;
    cfg.node_count = 6;
    cfg.density = 0.7;
    cfg.budget = 2;
    cfg.seed = 97000 + seed;
    MmilpGraph g = build_graph(dualize_spi(generate_spi(cfg)), {}, 0);
    ColorRefinement refinement = refine(g, 6);
    for (std::size_t l = 1; l < refinement.rounds.size(); ++l)
      for (std::size_t grp = 0; grp < refinement.rounds[l].size(); ++grp)
        CHECK(partitions_refine(refinement.rounds[l - 1][grp], refinement.rounds[l][grp]));
  }
}

TEST_CASE("refinement stabilizes: longer runs never change distinguishability") {
  SpiInstance a = example_spi_eq9();
  SpiInstance b = example_spi_eq9();
  b.edges[5].cost += 0.5;
  MmilpGraph ga = build_graph(dualize_spi(a), {}, 0);
  MmilpGraph gb = build_graph(dualize_spi(b), {}, 0);
  const bool base = distinguishable(ga, gb, 1);
  for (int rounds : {2, 5, 40}) CHECK(distinguishable(ga, gb, rounds) == base);

  MmilpGraph permuted = permute_graph(ga, random_perms(ga, 5));
  for (int rounds : {1, 5, 40}) CHECK(!distinguishable(ga, permuted, rounds));

  // Partition sizes are weakly increasing and eventually constant.
  ColorRefinement refinement = refine(ga, 35);  // >= total vertex count rounds
  auto last = refinement.partition_sizes(refinement.rounds.size() - 1);
  auto prev = refinement.partition_sizes(refinement.rounds.size() - 2);
  CHECK(last == prev);
}

TEST_CASE("different group signatures are trivially distinguishable") {
  MmilpGraph spi = build_graph(dualize_spi(example_spi_eq9()), {}, 0);
  MfiInstance mfi;
  mfi.node_count = 2;
  mfi.source = 0;
  mfi.sink = 1;
  mfi.edges = {{0, 1, 5.0, 1.0}};
  mfi.budget = 1.0;
  MmilpGraph mfig = build_graph(build_mfi_milp(mfi), {}, 0);
  CHECK(distinguishable(spi, mfig, 1));
}

TEST_CASE("graph dump and WL report are well formed") {
  MmilpGraph g = build_graph(dualize_spi(example_spi_eq9()), {}, 0);
  auto j = nlohmann::json::parse(graph_to_json(g));
  CHECK(j.at("var_groups").size() == 2);
  CHECK(j.at("edges").size() == 48);

  std::string report = wl_report(refine(g, 2));
  CHECK(report.find("round 0:") != std::string::npos);
  CHECK(report.find("W0=") != std::string::npos);
  CHECK(report.find("V=") != std::string::npos);
}

}  // TEST_SUITE
