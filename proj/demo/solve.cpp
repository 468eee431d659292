// Solves the bundled IEEE 30-bus day with a small population and prints the
// committed units per hour with the cost P-box at its median.
#include <iostream>

#include "ucds/gwo/solver.hpp"

int main() {
  using namespace ucds;
  const std::string dir = UCDS_DATA_DIR "/ieee30/";
  const auto net = grid::loadCase(dir + "case.txt");
  const auto units = uc::loadUnits(dir + "units.csv", net);
  const uc::UcProblem problem(net, units, uc::loadScenario(dir + "scenario.txt"));

  gwo::OptimizerConfig cfg;
  cfg.populationSize = 20;
  cfg.maxIter = 30;
  cfg.seed = 7;
  const auto result = gwo::solve(problem, cfg);
  const auto& best = result.best;

  for (int t = 0; t < best.schedule.hours(); ++t) {
    std::cout << "hour " << t + 1 << ':';
    for (int i = 0; i < best.schedule.units(); ++i)
      if (best.schedule.on(t, i)) std::cout << ' ' << units[static_cast<std::size_t>(i)].id << '=' << best.schedule.p(t, i);
    std::cout << '\n';
  }
  std::cout << "central cost " << best.centralCost << " $, TCV " << best.tcv << '\n';
  std::cout << "cost at p=0.5 in [" << best.fitnessBox.leftQuantile(0.5) << ", " << best.fitnessBox.rightQuantile(0.5)
            << "] $\n";
}
