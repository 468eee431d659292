#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "ucds/ds/encode.hpp"
#include "ucds/ds/structure.hpp"
#include "ucds/eaa/noise.hpp"
#include "ucds/eaa/quadratic_form.hpp"
#include "ucds/eaa/to_ds.hpp"
#include "ucds/grid/loss_model.hpp"
#include "ucds/grid/network.hpp"
#include "ucds/grid/ptdf.hpp"
#include "ucds/uc/constraints.hpp"
#include "ucds/uc/costs.hpp"
#include "ucds/uc/scenario.hpp"
#include "ucds/uc/schedule.hpp"
#include "ucds/uc/unit.hpp"

namespace ucds::uc {

struct ConstraintViolation {
  int hour;  // 1-based
  std::string id;
  double cv;
};

struct EvaluatedSolution {
  Schedule schedule;
  ds::DSStructure fitness;
  ds::PBox fitnessBox = ds::PBox::fromElements(ds::DSStructure().elements());
  /// Central value of the fitness quadratic form, $.
  double centralCost = 0.0;
  double deterministicCost = 0.0;
  std::vector<ConstraintViolation> violations;
  double tcv = 0.0;
};

/// Net injection of all generation at the hour: dispatch plus the bus forms, minus the loss form.
inline eaa::QuadraticForm powerBalanceQF(const Schedule& s, int hour, std::span<const eaa::QuadraticForm> busForms,
                                         const eaa::QuadraticForm& loss) {
  eaa::QuadraticForm out = loss;
  out *= -1.0;
  out += s.hourOutput(hour);
  for (const auto& f : busForms) out += f;
  return out;
}

/**
 * A unit-commitment instance with everything that does not depend on the
 * candidate schedule precomputed per hour: encoded inputs and their noise
 * symbols, the loss and flow sensitivities of the uncertain injections, and
 * the structure of the reserve requirement.
 */
class UcProblem {
 public:
  UcProblem(grid::NetworkCase net, std::vector<UnitSpec> units, ScenarioConfig scenario)
      : net_(std::move(net)), units_(std::move(units)), sc_(std::move(scenario)) {
    sc_.validate();
    if (units_.empty()) throw InvalidInput("no units");
    for (const auto& g : units_) {
      g.validate();
      if (g.bus < 0 || g.bus >= net_.busCount()) throw InvalidInput("unit " + g.id + " sits on an unknown bus");
    }
    inputs_ = resolveInputs(sc_, net_);
    for (const auto& in : inputs_) noise_.add(in.id, ds::encode(in, sc_.resolution));
    loss_ = grid::buildLossModel(net_);
    ptdf_ = grid::buildPtdf(net_, loss_.x);
    precompute();
  }

  int hours() const noexcept { return sc_.hours(); }
  int unitCount() const noexcept { return static_cast<int>(units_.size()); }
  const std::vector<UnitSpec>& units() const noexcept { return units_; }
  const ScenarioConfig& scenario() const noexcept { return sc_; }
  const grid::NetworkCase& network() const noexcept { return net_; }
  const grid::LossModel& lossModel() const noexcept { return loss_; }
  const grid::PtdfTable& ptdf() const noexcept { return ptdf_; }
  const eaa::NoiseVector& noise() const noexcept { return noise_; }
  const std::vector<ds::UncertainInputSpec>& inputs() const noexcept { return inputs_; }

  double demand(int t) const { return sc_.loadProfile.at(static_cast<std::size_t>(t)); }
  /// Central (midpoint) output of the uncertain generation at hour t.
  double generationCentral(int t) const { return hour(t).generationCentral; }
  /// Largest total load the hour's load structure admits.
  double loadUpper(int t) const { return hour(t).loadUpper; }
  double totalCapacity() const noexcept {
    double c = 0.0;
    for (const auto& g : units_) c += g.umax;
    return c;
  }

  /// Committed capacity each hour must reach: demand, raised toward the reserve requirement when possible.
  std::vector<double> commitmentRequirement() const {
    std::vector<double> r;
    for (int t = 0; t < hours(); ++t)
      r.push_back(std::max(demand(t), std::min(totalCapacity(), (1.0 + sc_.reserveMargin) * loadUpper(t))));
    return r;
  }

  /// Non-dispatchable per-bus injections at hour t (uncertain inputs and fixed loads).
  std::vector<eaa::QuadraticForm> busForms(int t) const {
    std::vector<eaa::QuadraticForm> f(static_cast<std::size_t>(net_.busCount()), noise_.constant(0.0));
    const auto& h = hour(t);
    for (int b = 0; b < net_.busCount(); ++b) {
      auto& q = f[static_cast<std::size_t>(b)];
      q.central() = h.cBase(b);
      q.linear() = h.l.row(b).transpose();
    }
    return f;
  }

  /// Per-bus injection forms including the schedule's dispatch.
  std::vector<eaa::QuadraticForm> injectionForms(const Schedule& s, int t) const {
    auto f = busForms(t);
    for (int i = 0; i < unitCount(); ++i) f[static_cast<std::size_t>(units_[static_cast<std::size_t>(i)].bus)] += s.p(t, i);
    return f;
  }

  double lossCentral(const Schedule& s, int t) const { return lossExpansion(s, t).central; }

  eaa::QuadraticForm lossForm(const Schedule& s, int t) const {
    const auto e = lossExpansion(s, t);
    return eaa::QuadraticForm(e.central, e.linear, hour(t).lql);
  }

  eaa::QuadraticForm balanceForm(const Schedule& s, int t) const {
    const auto& h = hour(t);
    const auto e = lossExpansion(s, t);
    return eaa::QuadraticForm(s.hourOutput(t) + h.nonDispatchCentral - e.central, h.balanceLinear - e.linear, -h.lql);
  }

  EvaluatedSolution evaluate(const Schedule& s) const {
    if (s.hours() != hours() || s.units() != unitCount()) throw InvalidInput("schedule shape does not match the problem");
    EvaluatedSolution out;
    out.schedule = s;
    out.deterministicCost = deterministicCost(s, units_);
    const Eigen::Index k = noise_.size();
    double central = out.deterministicCost;
    Eigen::VectorXd linear = Eigen::VectorXd::Zero(k);
    Eigen::MatrixXd quad = Eigen::MatrixXd::Zero(k, k);
    const double xi = sc_.penalty;
    const int n = sc_.resolution;
    const int nb = static_cast<int>(net_.branches().size());

    for (int t = 0; t < hours(); ++t) {
      const auto& h = hour(t);
      const Eigen::VectorXd c = injectionCentral(s, t);
      const Eigen::VectorXd qc = loss_.q * c;
      const double lossC = c.dot(qc) + loss_.voltageLoss;
      const Eigen::VectorXd lossL = 2.0 * h.ql.transpose() * c;
      const eaa::QuadraticForm bal(s.hourOutput(t) + h.nonDispatchCentral - lossC, h.balanceLinear - lossL, -h.lql);

      const double b0 = bal.central();
      central += xi * b0 * b0;
      linear += xi * 2.0 * b0 * bal.linear();
      quad += xi * (2.0 * b0 * bal.quadratic() + bal.linear() * bal.linear().transpose());

      const double tol = sc_.imbalanceTolerance;
      const double balanceCv =
          constraintViolation(eaa::rangeLowerProbability(bal, noise_, -tol, tol, n), sc_.sigmaBalance);
      if (balanceCv > 0.0) out.violations.push_back({t + 1, "balance", balanceCv});

      const double covered = s.hourOutput(t) + spinningReserve(s, t, units_);
      const double reserveCv = constraintViolation(h.reserveBox.lowerCdf(covered), sc_.sigmaReserve);
      if (reserveCv > 0.0) out.violations.push_back({t + 1, "reserve", reserveCv});

      const Eigen::VectorXd flows = ptdf_.factors * c;
      for (int l = 0; l < nb; ++l) {
        const double cap = net_.branches()[static_cast<std::size_t>(l)].capacity;
        const double f0 = flows(l);
        if (std::abs(f0) + h.klAbs(l) <= cap) continue;
        const eaa::QuadraticForm flow(f0, h.kl.row(l).transpose(), Eigen::MatrixXd::Zero(k, k));
        const double cv = constraintViolation(eaa::rangeLowerProbability(flow, noise_, -cap, cap, n), sc_.sigmaLine);
        if (cv > 0.0) out.violations.push_back({t + 1, "line:" + std::to_string(l + 1), cv});
      }
    }

    for (const auto& v : checkDeterministicConstraints(s, units_))
      out.violations.push_back({v.hour, std::string(kindLabel(v.kind)) + ":" + units_[static_cast<std::size_t>(v.unit)].id, 1.0});
    std::stable_sort(out.violations.begin(), out.violations.end(),
                     [](const ConstraintViolation& a, const ConstraintViolation& b) { return a.hour < b.hour; });
    for (const auto& v : out.violations) out.tcv += v.cv;

    const eaa::QuadraticForm fitness(central, linear, quad);
    out.centralCost = fitness.central();
    out.fitness = eaa::qfToDS(fitness, noise_, n);
    out.fitnessBox = ds::toPBox(out.fitness);
    return out;
  }

 private:
  struct HourData {
    double scale = 1.0;
    Eigen::VectorXd cBase;     // non-dispatchable central injection per bus, MW
    Eigen::MatrixXd l;         // per-bus noise coefficients, MW
    Eigen::MatrixXd ql;        // q * l
    Eigen::MatrixXd lql;       // l^T q l
    Eigen::MatrixXd kl;        // ptdf * l
    Eigen::VectorXd klAbs;     // row sums of |kl|
    Eigen::VectorXd balanceLinear;
    double nonDispatchCentral = 0.0;
    double generationCentral = 0.0;
    double loadUpper = 0.0;
    ds::PBox reserveBox = ds::PBox::fromElements(ds::DSStructure().elements());
  };

  struct LossExpansion {
    double central;
    Eigen::VectorXd linear;
  };

  const HourData& hour(int t) const { return hours_.at(static_cast<std::size_t>(t)); }

  Eigen::VectorXd injectionCentral(const Schedule& s, int t) const {
    Eigen::VectorXd c = hour(t).cBase;
    for (int i = 0; i < unitCount(); ++i) c(units_[static_cast<std::size_t>(i)].bus) += s.p(t, i);
    return c;
  }

  LossExpansion lossExpansion(const Schedule& s, int t) const {
    const Eigen::VectorXd c = injectionCentral(s, t);
    return {c.dot(loss_.q * c) + loss_.voltageLoss, 2.0 * hour(t).ql.transpose() * c};
  }

  void precompute() {
    const int nbus = net_.busCount();
    const Eigen::Index k = noise_.size();
    for (int t = 0; t < hours(); ++t) {
      HourData h;
      h.scale = sc_.loadScale(t);
      h.cBase = Eigen::VectorXd::Zero(nbus);
      h.l = Eigen::MatrixXd::Zero(nbus, k);
      eaa::QuadraticForm load = noise_.constant(0.0);
      for (const auto& [busId, mw] : sc_.busLoads) {
        h.cBase(net_.indexOf(busId)) -= h.scale * mw;
        load += h.scale * mw;
      }
      for (std::size_t j = 0; j < inputs_.size(); ++j) {
        const auto& in = inputs_[j];
        const auto& sym = noise_[static_cast<Eigen::Index>(j)];
        const double sc = in.scaleAt(t);
        const double sign = in.role == ds::InputRole::Generation ? 1.0 : -1.0;
        if (in.role == ds::InputRole::Load) {
          // The fixed bus load already counts this input's central value.
          h.cBase(in.bus) += sc * sym.center;
          load += -sc * sym.center;
          load += eaa::qfFromInput(in.id, noise_, sc);
        }
        h.cBase(in.bus) += sign * sc * sym.center;
        h.l(in.bus, static_cast<Eigen::Index>(j)) += sign * sc * sym.radius;
        if (in.role == ds::InputRole::Generation) h.generationCentral += sc * sym.center;
      }
      h.ql = loss_.q * h.l;
      h.lql = h.l.transpose() * h.ql;
      h.lql = 0.5 * (h.lql + h.lql.transpose()).eval();
      h.kl = ptdf_.factors * h.l;
      h.klAbs = h.kl.cwiseAbs().rowwise().sum();
      h.balanceLinear = h.l.colwise().sum().transpose();
      h.nonDispatchCentral = h.cBase.sum();
      const ds::DSStructure loadDs = eaa::qfToDS((1.0 + sc_.reserveMargin) * load, noise_, sc_.resolution);
      h.loadUpper = loadDs.supportMax() / (1.0 + sc_.reserveMargin);
      h.reserveBox = ds::toPBox(loadDs);
      hours_.push_back(std::move(h));
    }
  }

  grid::NetworkCase net_;
  std::vector<UnitSpec> units_;
  ScenarioConfig sc_;
  std::vector<ds::UncertainInputSpec> inputs_;
  eaa::NoiseVector noise_;
  grid::LossModel loss_;
  grid::PtdfTable ptdf_;
  std::vector<HourData> hours_;
};

}  // namespace ucds::uc
