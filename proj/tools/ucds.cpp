#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ucds/cli/runner.hpp"

int main(int argc, char** argv) {
  using ucds::cli::RunManifest;
  CLI::App app{"Unit commitment under wind and load uncertainty"};
  std::string manifestPath, caseFile, scenarioFile, unitsFile, outDir, preset;
  std::uint64_t seed = 0;
  int population = 0, iterations = 0, parallel = 0, trials = 0, seeds = 0;
  double penetration = 0.0, deviation = 0.0;

  app.add_option("--manifest", manifestPath, "JSON manifest; flags given alongside override its fields");
  auto* caseOpt = app.add_option("--case", caseFile, "Network case file");
  auto* scenarioOpt = app.add_option("--scenario", scenarioFile, "Scenario file");
  auto* unitsOpt = app.add_option("--units", unitsFile, "Units CSV (default: units.csv beside the case)");
  auto* outOpt = app.add_option("--out", outDir, "Output directory");
  auto* presetOpt = app.add_option("--preset", preset, "single | penetration-sweep | deviation-sweep | ablation | stability")
                        ->check(CLI::IsMember(ucds::cli::presetNames()));
  auto* seedOpt = app.add_option("--seed", seed, "Random seed");
  auto* popOpt = app.add_option("--population", population, "Wolves per population");
  auto* iterOpt = app.add_option("--iterations", iterations, "Iterations");
  auto* penOpt = app.add_option("--penetration", penetration, "Wind penetration level, percent")->check(CLI::IsMember({10.0, 20.0, 30.0}));
  auto* devOpt = app.add_option("--deviation", deviation, "Load deviation level, percent")->check(CLI::IsMember({10.0, 15.0, 20.0}));
  auto* parOpt = app.add_option("--parallel", parallel, "Threads for population evaluation");
  auto* trialsOpt = app.add_option("--trials", trials, "Trials for the stability preset");
  auto* seedsOpt = app.add_option("--seeds", seeds, "Seeds per level or scenario in sweeps and the ablation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ucds::cli::kParseError;
  }

  RunManifest m;
  if (!manifestPath.empty()) {
    try {
      m = ucds::cli::loadManifest(manifestPath);
    } catch (const ucds::Error& e) {
      std::cerr << "error: " << e.what() << '\n';
      return ucds::cli::kParseError;
    }
  }
  if (*caseOpt) m.caseFile = caseFile;
  if (*scenarioOpt) m.scenarioFile = scenarioFile;
  if (*unitsOpt) m.unitsFile = unitsFile;
  if (*presetOpt) m.preset = preset;
  if (*seedOpt) m.seed = seed;
  if (*popOpt) m.population = population;
  if (*iterOpt) m.iterations = iterations;
  if (*penOpt) m.penetration = penetration;
  if (*devOpt) m.deviation = deviation;
  if (*parOpt) m.parallel = parallel;
  if (*trialsOpt) m.trials = trials;
  if (*seedsOpt) m.seeds = seeds;
  if (*outOpt) m.outputDir = outDir;
  if (m.outputDir.empty()) m.outputDir = ucds::cli::defaultOutputRoot() + "/" + m.preset;
  return ucds::cli::run(m, std::cout, std::cerr);
}
