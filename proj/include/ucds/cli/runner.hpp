#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ucds/common.hpp"
#include "ucds/ds/io.hpp"
#include "ucds/grid/network.hpp"
#include "ucds/gwo/solver.hpp"
#include "ucds/uc/problem.hpp"
#include "ucds/uc/scenario.hpp"
#include "ucds/uc/unit.hpp"

namespace ucds::cli {

enum ExitCode : int { kOk = 0, kParseError = 2, kInfeasible = 3, kInternal = 4 };

inline const std::vector<std::string>& presetNames() {
  static const std::vector<std::string> names = {"single", "penetration-sweep", "deviation-sweep", "ablation", "stability"};
  return names;
}

inline constexpr double kPenetrationLevels[] = {10.0, 20.0, 30.0};
inline constexpr double kDeviationLevels[] = {10.0, 15.0, 20.0};

struct RunManifest {
  std::string caseFile;
  std::string scenarioFile;
  /// Empty means units.csv next to the case file.
  std::string unitsFile;
  std::string outputDir;
  std::string preset = "single";
  std::uint64_t seed = 42;
  int population = 100;
  int iterations = 500;
  /// Unset means the scenario file's value.
  std::optional<double> penetration;
  std::optional<double> deviation;
  int parallel = 1;
  int trials = 20;
  /// Seeds per level/scenario in sweeps and the ablation: seed, seed+1, ...
  int seeds = 1;

  std::string resolvedUnitsFile() const {
    if (!unitsFile.empty()) return unitsFile;
    return (std::filesystem::path(caseFile).parent_path() / "units.csv").string();
  }

  void validate() const {
    if (caseFile.empty()) throw InvalidInput("no case file given");
    if (scenarioFile.empty()) throw InvalidInput("no scenario file given");
    if (outputDir.empty()) throw InvalidInput("no output directory given");
    if (std::find(presetNames().begin(), presetNames().end(), preset) == presetNames().end())
      throw InvalidInput("unknown preset '" + preset + "'");
    auto in = [](double v, const auto& set) { return std::find(std::begin(set), std::end(set), v) != std::end(set); };
    if (penetration && !in(*penetration, kPenetrationLevels)) throw InvalidInput("penetration must be 10, 20 or 30");
    if (deviation && !in(*deviation, kDeviationLevels)) throw InvalidInput("deviation must be 10, 15 or 20");
    if (population < 4) throw InvalidInput("population must be at least 4");
    if (iterations < 1) throw InvalidInput("iterations must be at least 1");
    if (parallel < 1 || trials < 1 || seeds < 1) throw InvalidInput("parallel, trials and seeds must be positive");
  }
};

inline nlohmann::json toJson(const RunManifest& m) {
  nlohmann::json j;
  j["case"] = m.caseFile;
  j["scenario"] = m.scenarioFile;
  j["units"] = m.resolvedUnitsFile();
  j["out"] = m.outputDir;
  j["preset"] = m.preset;
  j["seed"] = m.seed;
  j["population"] = m.population;
  j["iterations"] = m.iterations;
  if (m.penetration) j["penetration"] = *m.penetration;
  if (m.deviation) j["deviation"] = *m.deviation;
  j["parallel"] = m.parallel;
  j["trials"] = m.trials;
  j["seeds"] = m.seeds;
  return j;
}

/// Fields absent from `j` keep the values already in `m`.
inline void mergeJson(RunManifest& m, const nlohmann::json& j) {
  try {
    if (j.contains("case")) m.caseFile = j.at("case").get<std::string>();
    if (j.contains("scenario")) m.scenarioFile = j.at("scenario").get<std::string>();
    if (j.contains("units")) m.unitsFile = j.at("units").get<std::string>();
    if (j.contains("out")) m.outputDir = j.at("out").get<std::string>();
    if (j.contains("preset")) m.preset = j.at("preset").get<std::string>();
    if (j.contains("seed")) m.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("population")) m.population = j.at("population").get<int>();
    if (j.contains("iterations")) m.iterations = j.at("iterations").get<int>();
    if (j.contains("penetration")) m.penetration = j.at("penetration").get<double>();
    if (j.contains("deviation")) m.deviation = j.at("deviation").get<double>();
    if (j.contains("parallel")) m.parallel = j.at("parallel").get<int>();
    if (j.contains("trials")) m.trials = j.at("trials").get<int>();
    if (j.contains("seeds")) m.seeds = j.at("seeds").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("manifest: ") + e.what());
  }
}

inline RunManifest loadManifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open manifest");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path, 0, e.what());
  }
  RunManifest m;
  mergeJson(m, j);
  return m;
}

/// Parsed inputs shared by every run of one manifest.
struct Inputs {
  grid::NetworkCase net;
  std::vector<uc::UnitSpec> units;
  uc::ScenarioConfig scenario;
};

inline Inputs loadInputs(const RunManifest& m) {
  auto net = grid::loadCase(m.caseFile);
  auto units = uc::loadUnits(m.resolvedUnitsFile(), net);
  auto sc = uc::loadScenario(m.scenarioFile);
  if (m.penetration) sc.penetration = *m.penetration;
  if (m.deviation) sc.deviation = *m.deviation;
  return {std::move(net), std::move(units), std::move(sc)};
}

inline gwo::OptimizerConfig optimizerConfig(const RunManifest& m, std::uint64_t seed) {
  gwo::OptimizerConfig c;
  c.populationSize = m.population;
  c.maxIter = m.iterations;
  c.seed = seed;
  c.threads = m.parallel;
  return c;
}

inline double median(std::vector<double> v) {
  if (v.empty()) throw InvalidInput("median of an empty set");
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

/// Sample standard deviation (n - 1 in the denominator); 0 for a single value.
inline double sampleStdDev(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

namespace detail {

inline std::ofstream openOut(const std::filesystem::path& p) {
  std::ofstream os(p);
  if (!os) throw Error("cannot write " + p.string());
  return os;
}

}  // namespace detail

inline void writeScheduleCsv(std::ostream& os, const uc::Schedule& s, const std::vector<uc::UnitSpec>& units) {
  os << "hour";
  for (const auto& g : units) os << ',' << g.id << "_u," << g.id << "_p";
  os << '\n';
  for (int t = 0; t < s.hours(); ++t) {
    os << t + 1;
    for (int i = 0; i < s.units(); ++i) os << ',' << (s.on(t, i) ? 1 : 0) << ',' << formatNumber(s.p(t, i));
    os << '\n';
  }
}

inline void writeConvergenceCsv(std::ostream& os, const std::vector<gwo::ConvergenceRow>& rows) {
  os << "iter,alphaCentralCost,alphaTCV\n";
  for (const auto& r : rows) os << r.iter << ',' << formatNumber(r.alphaCentralCost) << ',' << formatNumber(r.alphaTcv) << '\n';
}

inline void writeViolationsCsv(std::ostream& os, const std::vector<uc::ConstraintViolation>& v) {
  os << "hour,constraint,cv\n";
  for (const auto& c : v) os << c.hour << ',' << c.id << ',' << formatNumber(c.cv) << '\n';
}

/// Solves once and writes the per-run artifacts into `dir`.
inline gwo::SolveResult solveAndWrite(const Inputs& in, const uc::ScenarioConfig& sc, const gwo::OptimizerConfig& cfg,
                                      const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const uc::UcProblem prob(in.net, in.units, sc);
  auto r = gwo::solve(prob, cfg);
  {
    auto os = detail::openOut(dir / "schedule.csv");
    writeScheduleCsv(os, r.best.schedule, in.units);
  }
  {
    auto os = detail::openOut(dir / "fitness_pbox.csv");
    ds::writeStructureCsv(os, r.best.fitness);
  }
  {
    auto os = detail::openOut(dir / "fitness_cdf.csv");
    ds::writePBoxCsv(os, r.best.fitnessBox);
  }
  {
    auto os = detail::openOut(dir / "convergence.csv");
    writeConvergenceCsv(os, r.convergence);
  }
  {
    auto os = detail::openOut(dir / "violations.csv");
    writeViolationsCsv(os, r.best.violations);
  }
  {
    auto os = detail::openOut(dir / "timing.csv");
    os << "wallTimeMs\n" << formatNumber(r.wallTimeMs) << '\n';
  }
  return r;
}

inline std::string levelName(double v) { return formatNumber(v); }

/// Median-width sweep over one scenario axis; one subdirectory per level and seed.
inline void runSweep(const RunManifest& m, const Inputs& in, bool penetrationAxis, std::ostream& log) {
  const std::filesystem::path out(m.outputDir);
  std::ofstream summary = detail::openOut(out / "summary.csv");
  summary << (penetrationAxis ? "penetration" : "deviation")
          << ",medianWidth,medianLeftQuantile,medianRightQuantile,medianCentralCost,medianTCV\n";
  for (double level : penetrationAxis ? std::vector<double>(std::begin(kPenetrationLevels), std::end(kPenetrationLevels))
                                      : std::vector<double>(std::begin(kDeviationLevels), std::end(kDeviationLevels))) {
    uc::ScenarioConfig sc = in.scenario;
    (penetrationAxis ? sc.penetration : sc.deviation) = level;
    std::vector<double> width, left, right, cost, tcv;
    std::vector<ds::DSStructure> fitness;
    for (int k = 0; k < m.seeds; ++k) {
      const std::uint64_t seed = m.seed + static_cast<std::uint64_t>(k);
      const auto dir = out / ("level-" + levelName(level)) / ("seed-" + std::to_string(seed));
      const auto r = solveAndWrite(in, sc, optimizerConfig(m, seed), dir);
      width.push_back(r.best.fitnessBox.widthAt(0.5));
      left.push_back(r.best.fitnessBox.leftQuantile(0.5));
      right.push_back(r.best.fitnessBox.rightQuantile(0.5));
      cost.push_back(r.best.centralCost);
      tcv.push_back(r.best.tcv);
      fitness.push_back(r.best.fitness);
      log << "level " << levelName(level) << " seed " << seed << ": width " << formatNumber(width.back()) << '\n';
    }
    // The level's representative P-box is the run of (lower) median width; ties go to the earlier seed.
    std::vector<std::size_t> order(width.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return width[a] < width[b]; });
    {
      auto os = detail::openOut(out / ("fitness_pbox_level-" + levelName(level) + ".csv"));
      ds::writeStructureCsv(os, fitness[order[(order.size() - 1) / 2]]);
    }
    summary << levelName(level) << ',' << formatNumber(median(width)) << ',' << formatNumber(median(left)) << ','
            << formatNumber(median(right)) << ',' << formatNumber(median(cost)) << ',' << formatNumber(median(tcv)) << '\n';
  }
}

/// The three ablation configurations, numbered 1 to 3.
inline gwo::OptimizerConfig ablationConfig(gwo::OptimizerConfig c, int scenario) {
  switch (scenario) {
    case 1:
      c.decay = gwo::Decay::Linear;
      c.enableInitOptimization = false;
      c.enableRepair = false;
      break;
    case 2:
      c.decay = gwo::Decay::Linear;
      c.enableInitOptimization = true;
      c.enableRepair = false;
      break;
    case 3:
      c.decay = gwo::Decay::Exponential;
      c.enableInitOptimization = true;
      c.enableRepair = true;
      break;
    default:
      throw InvalidInput("ablation scenario must be 1, 2 or 3");
  }
  return c;
}

inline void runAblation(const RunManifest& m, const Inputs& in, std::ostream& log) {
  const std::filesystem::path out(m.outputDir);
  std::ofstream runs = detail::openOut(out / "runs.csv");
  std::ofstream summary = detail::openOut(out / "summary.csv");
  runs << "scenario,seed,tcv,centralCost\n";
  summary << "scenario,medianTCV,medianCentralCost\n";
  for (int s = 1; s <= 3; ++s) {
    std::vector<double> tcv, cost;
    for (int k = 0; k < m.seeds; ++k) {
      const std::uint64_t seed = m.seed + static_cast<std::uint64_t>(k);
      const auto dir = out / ("scenario-" + std::to_string(s)) / ("seed-" + std::to_string(seed));
      const auto r = solveAndWrite(in, in.scenario, ablationConfig(optimizerConfig(m, seed), s), dir);
      tcv.push_back(r.best.tcv);
      cost.push_back(r.best.centralCost);
      runs << s << ',' << seed << ',' << formatNumber(r.best.tcv) << ',' << formatNumber(r.best.centralCost) << '\n';
      log << "scenario " << s << " seed " << seed << ": tcv " << formatNumber(r.best.tcv) << '\n';
    }
    summary << s << ',' << formatNumber(median(tcv)) << ',' << formatNumber(median(cost)) << '\n';
  }
}

inline void runStability(const RunManifest& m, const Inputs& in, std::ostream& log) {
  const std::filesystem::path out(m.outputDir);
  std::ofstream trials = detail::openOut(out / "trials.csv");
  trials << "trial,seed,centralCost,tcv\n";
  std::vector<double> cost, tcv;
  for (int k = 0; k < m.trials; ++k) {
    const std::uint64_t seed = m.seed + static_cast<std::uint64_t>(k);
    const auto r = solveAndWrite(in, in.scenario, optimizerConfig(m, seed), out / ("trial-" + std::to_string(k + 1)));
    cost.push_back(r.best.centralCost);
    tcv.push_back(r.best.tcv);
    trials << k + 1 << ',' << seed << ',' << formatNumber(r.best.centralCost) << ',' << formatNumber(r.best.tcv) << '\n';
    log << "trial " << k + 1 << ": cost " << formatNumber(r.best.centralCost) << '\n';
  }
  std::ofstream summary = detail::openOut(out / "summary.csv");
  summary << "trials,meanCentralCost,stdCentralCost,meanTCV,stdTCV\n";
  auto mean = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
  };
  summary << m.trials << ',' << formatNumber(mean(cost)) << ',' << formatNumber(sampleStdDev(cost)) << ','
          << formatNumber(mean(tcv)) << ',' << formatNumber(sampleStdDev(tcv)) << '\n';
}

/**
 * Runs a manifest and maps failures to exit codes: 2 for unreadable or
 * invalid input, 3 for an infeasible case, 4 for anything else. Diagnostics
 * go to `err`, progress to `log`.
 */
inline int run(RunManifest m, std::ostream& log, std::ostream& err) {
  try {
    m.validate();
    const Inputs in = loadInputs(m);
    if (!m.penetration) m.penetration = in.scenario.penetration;
    if (!m.deviation) m.deviation = in.scenario.deviation;
    const std::filesystem::path out(m.outputDir);
    std::filesystem::create_directories(out);
    {
      auto os = detail::openOut(out / "manifest-echo.json");
      os << toJson(m).dump(2) << '\n';
    }
    if (m.preset == "single") {
      const auto r = solveAndWrite(in, in.scenario, optimizerConfig(m, m.seed), out);
      log << "central cost " << formatNumber(r.best.centralCost) << ", TCV " << formatNumber(r.best.tcv) << '\n';
    } else if (m.preset == "penetration-sweep") {
      runSweep(m, in, true, log);
    } else if (m.preset == "deviation-sweep") {
      runSweep(m, in, false, log);
    } else if (m.preset == "ablation") {
      runAblation(m, in, log);
    } else {
      runStability(m, in, log);
    }
    return kOk;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const InfeasibleCase& e) {
    err << "error: " << e.what() << '\n';
    return kInfeasible;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}

/// Output root when --out is not given: $UCDS_OUTPUT_ROOT, else ./ucds-out.
inline std::string defaultOutputRoot() {
  const char* env = std::getenv("UCDS_OUTPUT_ROOT");
  return env && *env ? env : "ucds-out";
}

}  // namespace ucds::cli
