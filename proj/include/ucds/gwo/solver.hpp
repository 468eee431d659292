#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ucds/common.hpp"
#include "ucds/gwo/leaders.hpp"
#include "ucds/gwo/parallel.hpp"
#include "ucds/gwo/priority.hpp"
#include "ucds/gwo/repair.hpp"
#include "ucds/gwo/rng.hpp"
#include "ucds/gwo/update.hpp"
#include "ucds/uc/problem.hpp"

namespace ucds::gwo {

struct OptimizerConfig {
  int populationSize = 100;
  int maxIter = 500;
  std::uint64_t seed = 1;
  Decay decay = Decay::Exponential;
  /// Repair the random initial population.
  bool enableInitOptimization = true;
  /// Repair every wolf after each position update.
  bool enableRepair = true;
  int threads = 1;

  void validate() const {
    if (populationSize < 4) throw InvalidInput("population size must be at least 4");
    if (maxIter < 1) throw InvalidInput("iteration count must be at least 1");
    if (threads < 1) throw InvalidInput("thread count must be at least 1");
  }
};

struct ConvergenceRow {
  int iter;
  double alphaCentralCost;
  double alphaTcv;
};

struct SolveResult {
  uc::EvaluatedSolution best;
  std::vector<ConvergenceRow> convergence;  // iteration 0 is the initial population
  double wallTimeMs = 0.0;
};

/// Commitment then dispatch repair against the problem's requirement and central net demand.
inline void repairSchedule(const uc::UcProblem& prob, const PriorityLists& lists, uc::Schedule& s, Rng& rng) {
  const auto req = prob.commitmentRequirement();
  repairCommitment(s, prob.units(), req, lists);
  std::vector<double> target(static_cast<std::size_t>(prob.hours()));
  for (int t = 0; t < prob.hours(); ++t)
    target[static_cast<std::size_t>(t)] = prob.demand(t) - prob.generationCentral(t) + prob.lossCentral(s, t);
  repairDispatch(s, prob.units(), target, lists, rng);
}

/// Uniform random bits, with outputs uniform in [Lmin, Umax] where committed.
inline uc::Schedule randomSchedule(const uc::UcProblem& prob, Rng& rng) {
  uc::Schedule s(prob.hours(), prob.unitCount());
  for (int t = 0; t < prob.hours(); ++t)
    for (int i = 0; i < prob.unitCount(); ++i) {
      const auto& g = prob.units()[static_cast<std::size_t>(i)];
      const bool on = rng.bit();
      const double p = rng.uniform(g.lmin, g.umax);
      s.setOn(t, i, on);
      s.p(t, i) = on ? p : 0.0;
    }
  return s;
}

/**
 * Binary/continuous grey wolf search over commitment and dispatch. Leaders
 * are kept as copies and compete with the updated population each
 * iteration, so the alpha never gets worse. Wolf w draws from its own stream
 * seeded by (seed, w, iter), which makes results independent of `threads`.
 */
inline SolveResult solve(const uc::UcProblem& prob, const OptimizerConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const auto lists = priorityCoefficients(prob.units());
  const auto n = static_cast<std::size_t>(cfg.populationSize);
  std::vector<uc::EvaluatedSolution> pop(n);

  parallelFor(n, cfg.threads, [&](std::size_t w) {
    Rng rng(streamSeed(cfg.seed, w, 0));
    auto s = randomSchedule(prob, rng);
    if (cfg.enableInitOptimization) repairSchedule(prob, lists, s, rng);
    pop[w] = prob.evaluate(s);
  });
  LeaderSet leaders = selectLeaders(pop);

  SolveResult out;
  out.convergence.push_back({0, leaders.alpha.centralCost, leaders.alpha.tcv});
  std::vector<uc::EvaluatedSolution> pool;
  for (int iter = 1; iter <= cfg.maxIter; ++iter) {
    const double a = decayParameter(iter, cfg.maxIter, cfg.decay);
    const std::array<const uc::Schedule*, 3> lead{&leaders.alpha.schedule, &leaders.beta.schedule,
                                                  &leaders.delta.schedule};
    parallelFor(n, cfg.threads, [&](std::size_t w) {
      Rng rng(streamSeed(cfg.seed, w, static_cast<std::uint64_t>(iter)));
      auto uniform = [&rng] { return rng.uniform(); };
      uc::Schedule s = pop[w].schedule;
      bgwoUpdateBinary(s, lead, a, uniform);
      gwoUpdateContinuous(s, lead, a, std::span<const uc::UnitSpec>(prob.units()), uniform);
      if (cfg.enableRepair) repairSchedule(prob, lists, s, rng);
      pop[w] = prob.evaluate(s);
    });
    pool.clear();
    pool.push_back(leaders.alpha);
    pool.push_back(leaders.beta);
    pool.push_back(leaders.delta);
    pool.insert(pool.end(), pop.begin(), pop.end());
    leaders = selectLeaders(pool);
    out.convergence.push_back({iter, leaders.alpha.centralCost, leaders.alpha.tcv});
  }
  out.best = std::move(leaders.alpha);
  out.wallTimeMs = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

struct ContinuousResult {
  std::vector<double> best;
  double bestValue = 0.0;
  std::vector<double> history;  // best value after each iteration, index 0 = initial
};

/**
 * The continuous update alone on a box-constrained objective, with the same
 * leader retention and per-wolf streams as `solve`. Used as a benchmark
 * harness for the optimizer core.
 */
inline ContinuousResult minimizeContinuous(const std::function<double(std::span<const double>)>& f, int dim, double lo,
                                           double hi, const OptimizerConfig& cfg) {
  cfg.validate();
  if (dim < 1 || !(lo < hi)) throw InvalidInput("need dim >= 1 and lo < hi");
  const auto n = static_cast<std::size_t>(cfg.populationSize);
  const auto d = static_cast<std::size_t>(dim);
  std::vector<std::vector<double>> x(n, std::vector<double>(d));
  std::vector<double> fx(n);
  parallelFor(n, cfg.threads, [&](std::size_t w) {
    Rng rng(streamSeed(cfg.seed, w, 0));
    for (auto& v : x[w]) v = rng.uniform(lo, hi);
    fx[w] = f(x[w]);
  });

  std::vector<std::vector<double>> leadX(3);
  std::vector<double> leadF(3);
  auto select = [&](bool withLeaders) {
    std::vector<std::pair<double, const std::vector<double>*>> cand;
    if (withLeaders)
      for (int k = 0; k < 3; ++k) cand.emplace_back(leadF[static_cast<std::size_t>(k)], &leadX[static_cast<std::size_t>(k)]);
    for (std::size_t w = 0; w < n; ++w) cand.emplace_back(fx[w], &x[w]);
    const auto top = topThree(std::span<const std::pair<double, const std::vector<double>*>>(cand),
                              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::vector<double>> nx;
    std::vector<double> nf;
    for (auto k : top) {
      nx.push_back(*cand[k].second);
      nf.push_back(cand[k].first);
    }
    leadX = std::move(nx);
    leadF = std::move(nf);
  };
  select(false);

  ContinuousResult out;
  out.history.push_back(leadF[0]);
  for (int iter = 1; iter <= cfg.maxIter; ++iter) {
    const double a = decayParameter(iter, cfg.maxIter, cfg.decay);
    parallelFor(n, cfg.threads, [&](std::size_t w) {
      Rng rng(streamSeed(cfg.seed, w, static_cast<std::uint64_t>(iter)));
      auto uniform = [&rng] { return rng.uniform(); };
      for (std::size_t j = 0; j < d; ++j)
        x[w][j] = std::clamp(huntStep(x[w][j], {leadX[0][j], leadX[1][j], leadX[2][j]}, a, uniform), lo, hi);
      fx[w] = f(x[w]);
    });
    select(true);
    out.history.push_back(leadF[0]);
  }
  out.best = leadX[0];
  out.bestValue = leadF[0];
  return out;
}

}  // namespace ucds::gwo
