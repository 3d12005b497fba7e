#include <doctest.h>

#include <set>

#include "aoisim/env.hpp"
#include "aoisim/errors.hpp"
#include "aoisim/scenarios.hpp"

using namespace aoisim;

TEST_CASE("the catalog holds five full-scale setups and five micros") {
  const std::vector<Scenario> all = builtin_scenarios();
  REQUIRE(all.size() == 10);
  std::set<std::string> names;
  for (const Scenario& s : all) names.insert(s.name);
  for (const char* expected :
       {"scenario1", "scenario2", "scenario3", "scenario4", "scenario5",
        "micro1", "micro2", "micro3", "micro4", "micro5"})
    CHECK(names.count(expected) == 1);
}

TEST_CASE("scenario2 matches the published setup") {
  const Scenario s = find_scenario("scenario2");
  CHECK(s.env.num_nodes() == 2);
  CHECK(s.env.horizon == 16);
  CHECK(s.env.final_cell == Cell{10, 5});
  CHECK(s.env.start_cell == Cell{0, 5});
  CHECK(s.env.nodes[0].cell == Cell{2, 10});
  CHECK(s.env.nodes[1].cell == Cell{8, 10});
  CHECK(s.env.nodes[0].quanta_capacity == 5);
  CHECK(s.env.grid.num_cells_x == 11);
  CHECK(s.env.grid.num_cells_y == 11);
}

TEST_CASE("scenario3 sweeps eleven powers of two") {
  const Scenario s = find_scenario("scenario3");
  REQUIRE(s.sweep == SweepKind::EnergyQuanta);
  REQUIRE(s.sweep_values.size() == 11);
  CHECK(s.sweep_values.front() == 1);
  CHECK(s.sweep_values.back() == 1024);
  for (std::size_t i = 1; i < s.sweep_values.size(); ++i)
    CHECK(s.sweep_values[i] == 2 * s.sweep_values[i - 1]);
}

TEST_CASE("scenario1 puts the first node on the crossing line") {
  const Scenario s = find_scenario("scenario1");
  CHECK(s.env.nodes[0].cell == Cell{5, 5});
  CHECK(s.env.start_cell.iy == s.env.nodes[0].cell.iy);
  CHECK(s.env.final_cell.iy == s.env.nodes[0].cell.iy);
  CHECK(s.env.start_cell.ix < s.env.nodes[0].cell.ix);
  CHECK(s.env.nodes[0].cell.ix < s.env.final_cell.ix);
  CHECK(s.env.horizon == 10);
  CHECK(s.env.nodes[0].quanta_capacity == 26);
}

TEST_CASE("every sweep point of every scenario is a valid spec") {
  for (const Scenario& s : builtin_scenarios()) {
    const int points = s.sweep == SweepKind::None
                           ? 1
                           : static_cast<int>(s.sweep_values.size());
    for (int i = 0; i < points; ++i) {
      const EnvSpec env = apply_sweep(s, i);
      CHECK_NOTHROW(validate(env));
      CHECK(env.initial_quanta.size() == env.nodes.size());
      // Initial conditions track the swept battery size.
      for (std::size_t m = 0; m < env.nodes.size(); ++m)
        CHECK(env.initial_quanta[m] == env.nodes[m].quanta_capacity);
    }
  }
}

TEST_CASE("sweep application changes exactly the declared variable") {
  const Scenario s3 = find_scenario("scenario3");
  const EnvSpec at8 = apply_sweep(s3, 3);
  for (const NodeConfig& node : at8.nodes) {
    CHECK(node.quanta_capacity == 8);
    CHECK(node.battery_capacity_j == doctest::Approx(8e-3));
  }
  CHECK(at8.horizon == s3.env.horizon);

  const Scenario s4 = find_scenario("scenario4");
  CHECK(apply_sweep(s4, 0).horizon == 10);
  CHECK(apply_sweep(s4, 9).horizon == 100);

  const Scenario s1 = find_scenario("scenario1");
  CHECK(apply_sweep(s1, 5).nodes[0].cell == Cell{5, 10});
}

TEST_CASE("density interpolation hits the anchors and the rounded midpoint") {
  const Scenario s5 = find_scenario("scenario5");
  const std::vector<EnvSpec> specs = density_sweep_specs(s5, 3);
  REQUIRE(specs.size() == 3);
  CHECK(specs[0].nodes[0].cell == Cell{4, 4});
  CHECK(specs[0].nodes[1].cell == Cell{5, 6});
  CHECK(specs[0].nodes[2].cell == Cell{6, 4});
  CHECK(specs[1].nodes[0].cell == Cell{2, 2});
  CHECK(specs[1].nodes[1].cell == Cell{5, 8});
  CHECK(specs[1].nodes[2].cell == Cell{3, 7});
  CHECK(specs[2].nodes[0].cell == Cell{0, 0});
  CHECK(specs[2].nodes[1].cell == Cell{5, 10});
  CHECK(specs[2].nodes[2].cell == Cell{0, 10});

  CHECK_THROWS_AS((void)density_sweep_specs(s5, 1), ConfigError);

  // The scenario's own sweep points agree with the helper at its step count.
  const int steps = static_cast<int>(s5.sweep_values.size());
  const std::vector<EnvSpec> native = density_sweep_specs(s5, steps);
  for (int i = 0; i < steps; ++i) {
    const EnvSpec swept = apply_sweep(s5, i);
    for (std::size_t m = 0; m < swept.nodes.size(); ++m)
      CHECK(swept.nodes[m].cell == native[i].nodes[m].cell);
  }
}

TEST_CASE("unknown scenario names list the catalog") {
  CHECK_THROWS_WITH_AS((void)find_scenario("scenario9"),
                       doctest::Contains("micro5"), ConfigError);
  CHECK_THROWS_AS((void)apply_sweep(find_scenario("scenario2"), 1),
                  ConfigError);
  CHECK_THROWS_AS((void)apply_sweep(find_scenario("scenario3"), 11),
                  ConfigError);
}

TEST_CASE("sweep labels render the swept value") {
  CHECK(sweep_label(find_scenario("scenario2"), 0) == "-");
  CHECK(sweep_label(find_scenario("scenario3"), 10) == "1024");
  CHECK(sweep_label(find_scenario("scenario4"), 1) == "20");
  CHECK(sweep_label(find_scenario("micro5"), 0) == "0");
}

TEST_CASE("micro twins stay desk sized") {
  for (const char* name : {"micro1", "micro2", "micro3", "micro4", "micro5"}) {
    const Scenario s = find_scenario(name);
    CHECK(s.env.grid.num_cells_x <= 7);
    CHECK(s.env.horizon <= 12);
    CHECK(s.eval_episodes <= 1000);
    if (s.train_config) CHECK(s.train_config->episodes <= 6000);
  }
}
