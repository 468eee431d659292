#pragma once

#include <string>
#include <vector>

#include "ucds/grid/network.hpp"
#include "ucds/uc/problem.hpp"

namespace ucds::test {

inline std::string dataPath(const std::string& rel) { return std::string(UCDS_DATA_DIR) + "/" + rel; }

/// Triangle 1-2-3 with distinct admittances; bus 1 is the slack.
inline grid::NetworkCase threeBusCase(std::vector<double> voltages = {1.0, 1.0, 1.0}) {
  std::vector<grid::Branch> br = {
      {0, 1, 4.0, 10.0, 100.0},
      {1, 2, 2.5, 8.0, 100.0},
      {0, 2, 1.5, 5.0, 100.0},
  };
  return grid::NetworkCase({1, 2, 3}, std::move(voltages), std::move(br), 0, 100.0);
}

/// A single bus with no branches.
inline grid::NetworkCase singleBus() { return grid::NetworkCase({1}, {1.0}, {}, 0, 100.0); }

inline uc::ScenarioConfig flatScenario(double demand, int hours = 24) {
  uc::ScenarioConfig sc;
  sc.loadProfile.assign(static_cast<std::size_t>(hours), demand);
  sc.busLoads = {{1, demand}};
  return sc;
}

/**
 * Two units on one bus serving 50 MW every hour: A costs 1 $/MWh and is on
 * at 50 MW before the first hour; B costs 5 $/MWh plus 50 $/h and is off.
 * The optimum runs A alone: 24 * 50 = 1200 $.
 */
inline uc::UcProblem toyProblem() {
  uc::UnitSpec a;
  a.id = "A";
  a.lmin = 10;
  a.umax = 100;
  a.rampUp = a.rampDown = 100;
  a.b = 1;
  a.initialStatus = 5;
  a.initialOutput = 50;
  uc::UnitSpec b = a;
  b.id = "B";
  b.b = 5;
  b.c = 50;
  b.startupCost = 20;
  b.initialStatus = -5;
  b.initialOutput = 0;
  return uc::UcProblem(singleBus(), {a, b}, flatScenario(50.0));
}

inline constexpr double kToyOptimum = 1200.0;

}  // namespace ucds::test
