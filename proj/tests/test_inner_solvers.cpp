#include "interdict/inner_solvers.hpp"

#include <stdexcept>

#include "doctest.h"
#include "interdict/instances.hpp"
#include "test_oracles.hpp"

using namespace interdict;
using namespace interdict::testing;

namespace {

MfiInstance diamond() {
  // s=0 -> a=1 -> t=3 with caps 3,2 and s -> b=2 -> t with caps 1,4.
  MfiInstance inst;
  inst.node_count = 4;
  inst.source = 0;
  inst.sink = 3;
  inst.edges = {{0, 1, 3.0, 1.0}, {1, 3, 2.0, 1.0}, {0, 2, 1.0, 1.0}, {2, 3, 4.0, 1.0}};
  inst.budget = 1.0;
  return inst;
}

}  // namespace

TEST_SUITE("inner_solvers") {

TEST_CASE("eq9 uninterdicted shortest path is 7 via 0-3-6") {
  SpiInstance inst = example_spi_eq9();
  BinaryVector x(inst.edges.size(), 0);
  CHECK(enumerate_shortest_path(inst, x) == doctest::Approx(7.0));  // oracle first
  PathResult result = shortest_path(inst, x);
  CHECK(result.length == doctest::Approx(7.0));
  CHECK(result.path == std::vector<int>{0, 3, 6});
}

TEST_CASE("eq9 with only (3,6) interdicted has length 8") {
  SpiInstance inst = example_spi_eq9();
  BinaryVector x(inst.edges.size(), 0);
  x[8] = 1;  // edge (3,6)
  CHECK(enumerate_shortest_path(inst, x) == doctest::Approx(8.0));
  CHECK(shortest_path(inst, x).length == doctest::Approx(8.0));
}

TEST_CASE("two-node instance returns the single edge cost") {
  GenConfig cfg;
  cfg.node_count = 2;
  cfg.budget = 0;
  cfg.seed = 11;
  SpiInstance inst = generate_spi(cfg);
  BinaryVector x(1, 0);
  CHECK(shortest_path(inst, x).length == doctest::Approx(inst.edges[0].cost));
}

TEST_CASE("unreachable sink yields the infinity sentinel and empty path") {
  SpiInstance inst;  // deliberately not validated: 2 is unreachable
  inst.node_count = 3;
  inst.source = 0;
  inst.sink = 2;
  inst.edges = {{0, 1, 1.0, 1.0}};
  inst.budget = 0;
  PathResult result = shortest_path(inst, {0});
  CHECK(result.length == kUnreachable);
  CHECK(result.path.empty());
  CHECK(!result.reachable());
}

TEST_CASE("interdiction vector length is enforced") {
  SpiInstance inst = example_spi_eq9();
  CHECK_THROWS_AS(shortest_path(inst, BinaryVector(3, 0)), std::invalid_argument);
  MfiInstance mfi = diamond();
  CHECK_THROWS_AS(max_flow(mfi, BinaryVector(1, 0)), std::invalid_argument);
}

TEST_CASE("Dijkstra equals Bellman-Ford on 1000 random instances") {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    GenConfig cfg;
    cfg.node_count = 4 + static_cast<int>(seed % 5);
    cfg.density = seed % 2 ? 1.0 : 0.6;
    cfg.budget = 2;
    cfg.seed = 50000 + seed;
    SpiInstance inst = generate_spi(cfg);
    BinaryVector x(inst.edges.size(), 0);
    for (std::size_t e = 0; e < x.size(); ++e) x[e] = (seed + e) % 3 == 0;
    CHECK(shortest_path(inst, x).length ==
          doctest::Approx(bellman_ford_length(inst, x)).epsilon(1e-9));
  }
}

TEST_CASE("path length equals the sum of effective costs along the path") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    GenConfig cfg;
    cfg.node_count = 6;
    cfg.density = 0.7;
    cfg.budget = 2;
    cfg.seed = 2000 + seed;
    SpiInstance inst = generate_spi(cfg);
    BinaryVector x(inst.edges.size(), 0);
    for (std::size_t e = 0; e < x.size(); ++e) x[e] = e % 2;
    PathResult result = shortest_path(inst, x);
    REQUIRE(result.reachable());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < result.path.size(); ++i) {
      double best_parallel = kUnreachable;
      for (std::size_t e = 0; e < inst.edges.size(); ++e)
        if (inst.edges[e].tail == result.path[i] && inst.edges[e].head == result.path[i + 1])
          best_parallel = std::min(best_parallel,
                                   inst.edges[e].cost + (x[e] ? inst.edges[e].delay : 0.0));
      total += best_parallel;
    }
    CHECK(result.length == doctest::Approx(total));
  }
}

TEST_CASE("max flow on the diamond is 3 (cut enumeration oracle)") {
  MfiInstance inst = diamond();
  BinaryVector removed(4, 0);
  CHECK(enumerate_min_cut(inst, removed) == doctest::Approx(3.0));  // oracle first
  FlowResult flow = max_flow(inst, removed);
  CHECK(flow.value == doctest::Approx(3.0));
}

TEST_CASE("two-node max flow equals the capacity; removing everything gives zero") {
  GenConfig cfg;
  cfg.node_count = 2;
  cfg.seed = 21;
  MfiInstance inst = generate_mfi(cfg);
  CHECK(max_flow(inst, BinaryVector(1, 0)).value == doctest::Approx(inst.edges[0].capacity));
  CHECK(max_flow(inst, BinaryVector(1, 1)).value == doctest::Approx(0.0));

  MfiInstance dia = diamond();
  CHECK(max_flow(dia, BinaryVector(4, 1)).value == doctest::Approx(0.0));
}

TEST_CASE("max-flow value equals min-cut value on instances with <= 8 nodes") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    GenConfig cfg;
    cfg.node_count = 4 + static_cast<int>(seed % 5);
    cfg.density = seed % 2 ? 1.0 : 0.5;
    cfg.seed = 60000 + seed;
    MfiInstance inst = generate_mfi(cfg);
    BinaryVector removed(inst.edges.size(), 0);
    for (std::size_t e = 0; e < removed.size(); ++e) removed[e] = (seed + e) % 5 == 0;
    CHECK(max_flow(inst, removed).value ==
          doctest::Approx(enumerate_min_cut(inst, removed)).epsilon(1e-9));
  }
}

TEST_CASE("flow assignment is feasible and conserving") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    GenConfig cfg;
    cfg.node_count = 7;
    cfg.density = 0.6;
    cfg.seed = 70000 + seed;
    MfiInstance inst = generate_mfi(cfg);
    BinaryVector removed(inst.edges.size(), 0);
    FlowResult flow = max_flow(inst, removed);
    std::vector<double> net(inst.node_count, 0.0);
    for (std::size_t e = 0; e < inst.edges.size(); ++e) {
      CHECK(flow.edge_flow[e] >= -1e-9);
      CHECK(flow.edge_flow[e] <= inst.edges[e].capacity + 1e-9);
      net[inst.edges[e].tail] += flow.edge_flow[e];
      net[inst.edges[e].head] -= flow.edge_flow[e];
    }
    for (int v = 0; v < inst.node_count; ++v) {
      if (v == inst.source)
        CHECK(net[v] == doctest::Approx(flow.value));
      else if (v == inst.sink)
        CHECK(net[v] == doctest::Approx(-flow.value));
      else
        CHECK(net[v] == doctest::Approx(0.0));
    }
  }
}

TEST_CASE("monotonicity: more interdictions never shorten the path, removals never raise flow") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    GenConfig cfg;
    cfg.node_count = 6;
    cfg.density = 0.8;
    cfg.budget = 3;
    cfg.seed = 80000 + seed;
    SpiInstance spi = generate_spi(cfg);
    BinaryVector lo(spi.edges.size(), 0), hi(spi.edges.size(), 0);
    for (std::size_t e = 0; e < lo.size(); ++e) {
      lo[e] = (seed + e) % 4 == 0;
      hi[e] = lo[e] || (seed + e) % 3 == 0;
    }
    CHECK(shortest_path(spi, hi).length >= shortest_path(spi, lo).length - 1e-9);

    MfiInstance mfi = generate_mfi(cfg);
    BinaryVector mlo(mfi.edges.size(), 0), mhi(mfi.edges.size(), 0);
    for (std::size_t e = 0; e < mlo.size(); ++e) {
      mlo[e] = (seed + e) % 4 == 0;
      mhi[e] = mlo[e] || (seed + e) % 3 == 0;
    }
    CHECK(max_flow(mfi, mhi).value <= max_flow(mfi, mlo).value + 1e-9);
  }
}

}  // TEST_SUITE
