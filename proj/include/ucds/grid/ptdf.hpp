#pragma once

#include <Eigen/Dense>
#include <span>

#include "ucds/common.hpp"
#include "ucds/eaa/quadratic_form.hpp"
#include "ucds/grid/loss_model.hpp"
#include "ucds/grid/network.hpp"

namespace ucds::grid {

/**
 * Branch-by-bus flow sensitivities K(l, b) = (X(from, b) - X(to, b)) * U_from * U_to * B,
 * with X the reduced inverse of B*. Since B* carries a negative diagonal, a
 * positive flow runs from the branch's `to` bus toward its `from` bus. The slack
 * column is zero.
 */
struct PtdfTable {
  Eigen::MatrixXd factors;

  Eigen::VectorXd flows(const Eigen::VectorXd& injections) const { return factors * injections; }
};

inline PtdfTable buildPtdf(const NetworkCase& net, const Eigen::MatrixXd& x) {
  const auto& u = net.voltages();
  PtdfTable t;
  t.factors = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(net.branches().size()), net.busCount());
  for (std::size_t i = 0; i < net.branches().size(); ++i) {
    const auto& br = net.branches()[i];
    const double w = u[static_cast<std::size_t>(br.from)] * u[static_cast<std::size_t>(br.to)] * br.susceptance;
    t.factors.row(static_cast<Eigen::Index>(i)) = w * (x.row(br.from) - x.row(br.to));
  }
  return t;
}

inline PtdfTable buildPtdf(const NetworkCase& net) {
  Eigen::MatrixXd bstar = Eigen::MatrixXd::Zero(net.busCount(), net.busCount());
  for (const auto& br : net.branches()) {
    const double b = net.voltages()[static_cast<std::size_t>(br.from)] *
                     net.voltages()[static_cast<std::size_t>(br.to)] * br.susceptance;
    bstar(br.from, br.from) -= b;
    bstar(br.to, br.to) -= b;
    bstar(br.from, br.to) += b;
    bstar(br.to, br.from) += b;
  }
  return buildPtdf(net, reducedInverse(bstar, net.slack()));
}

inline eaa::QuadraticForm lineFlowQF(const PtdfTable& ptdf, std::span<const eaa::QuadraticForm> busForms,
                                     Eigen::Index branch) {
  if (static_cast<Eigen::Index>(busForms.size()) != ptdf.factors.cols())
    throw InvalidInput("one bus form per PTDF column is required");
  if (branch < 0 || branch >= ptdf.factors.rows()) throw InvalidInput("branch index out of range");
  eaa::QuadraticForm out(busForms.empty() ? 0 : busForms[0].symbols());
  for (Eigen::Index b = 0; b < ptdf.factors.cols(); ++b) {
    const double k = ptdf.factors(branch, b);
    if (k == 0.0) continue;
    out += eaa::qfScale(k, busForms[static_cast<std::size_t>(b)]);
  }
  return out;
}

}  // namespace ucds::grid
