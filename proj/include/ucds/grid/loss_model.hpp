#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "ucds/common.hpp"
#include "ucds/eaa/noise.hpp"
#include "ucds/eaa/quadratic_form.hpp"
#include "ucds/grid/network.hpp"

namespace ucds::grid {

/**
 * B-coefficient loss model on a DC-flow network. Matrices follow the per-unit
 * conventions: G* is the voltage-weighted conductance Laplacian, B* the
 * voltage-weighted susceptance matrix with negative diagonal, and X the
 * inverse of B* with the slack row and column removed (zeros re-embedded).
 * Injections at the interface are in MW.
 */
struct LossModel {
  Eigen::MatrixXd gstar;
  Eigen::MatrixXd bstar;
  Eigen::MatrixXd x;
  /// Loss quadratic in MW: loss = P^T q P + voltageLoss.
  Eigen::MatrixXd q;
  /// Hessian of loss w.r.t. MW injections, q + q^T.
  Eigen::MatrixXd m;
  /// Loss independent of injections, MW.
  double voltageLoss = 0.0;
  double baseMva = 100.0;

  int busCount() const noexcept { return static_cast<int>(q.rows()); }
};

inline Eigen::MatrixXd reducedInverse(const Eigen::MatrixXd& bstar, int slack) {
  const Eigen::Index n = bstar.rows();
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, n);
  if (n == 1) return x;
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < n; ++i)
    if (i != slack) keep.push_back(i);
  const Eigen::Index r = n - 1;
  Eigen::MatrixXd red(r, r);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < r; ++j) red(i, j) = bstar(keep[i], keep[j]);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(red);
  if (!lu.isInvertible()) throw SingularNetwork("reduced susceptance matrix is singular");
  const Eigen::MatrixXd inv = lu.inverse();
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < r; ++j) x(keep[i], keep[j]) = inv(i, j);
  return x;
}

inline LossModel buildLossModel(const NetworkCase& net) {
  const int n = net.busCount();
  const auto& u = net.voltages();
  LossModel lm;
  lm.baseMva = net.baseMva();
  lm.gstar = Eigen::MatrixXd::Zero(n, n);
  lm.bstar = Eigen::MatrixXd::Zero(n, n);
  double plv = 0.0;
  for (const auto& br : net.branches()) {
    const int l = br.from, k = br.to;
    const double uu = u[static_cast<std::size_t>(l)] * u[static_cast<std::size_t>(k)];
    const double g = uu * br.conductance, b = uu * br.susceptance;
    lm.gstar(l, l) += g;
    lm.gstar(k, k) += g;
    lm.gstar(l, k) -= g;
    lm.gstar(k, l) -= g;
    lm.bstar(l, l) -= b;
    lm.bstar(k, k) -= b;
    lm.bstar(l, k) += b;
    lm.bstar(k, l) += b;
    // Both ordered pairs (l,k) and (k,l) of the double sum.
    const double dv = u[static_cast<std::size_t>(l)] - u[static_cast<std::size_t>(k)];
    plv += 2.0 * dv * dv * br.conductance;
  }
  lm.x = reducedInverse(lm.bstar, net.slack());
  const Eigen::MatrixXd qpu = lm.x.transpose() * lm.gstar * lm.x;
  lm.q = 0.5 * (qpu + qpu.transpose()) / lm.baseMva;
  lm.m = 2.0 * lm.q;
  lm.voltageLoss = plv * lm.baseMva;
  return lm;
}

/// System loss in MW for per-bus MW injections.
inline double evalLoss(const LossModel& lm, const Eigen::VectorXd& p) {
  if (p.size() != lm.busCount()) throw InvalidInput("injection vector has the wrong length");
  return p.dot(lm.q * p) + lm.voltageLoss;
}

/// Gradient of the loss w.r.t. MW injections.
inline Eigen::VectorXd lossGradient(const LossModel& lm, const Eigen::VectorXd& p) {
  if (p.size() != lm.busCount()) throw InvalidInput("injection vector has the wrong length");
  return lm.m * p;
}

/**
 * Second-order expansion of the loss over the noise symbols carried by the
 * bus injections. Because the loss is quadratic in the injections, this is
 * exact whenever the injections are affine in the noise.
 */
inline eaa::QuadraticForm lossQF(const LossModel& lm, std::span<const eaa::QuadraticForm> injections,
                                 const eaa::NoiseVector& noise) {
  const int n = lm.busCount();
  if (static_cast<int>(injections.size()) != n) throw InvalidInput("one injection form per bus is required");
  const Eigen::Index k = noise.size();
  Eigen::VectorXd c(n);
  Eigen::MatrixXd l(n, k);
  for (int b = 0; b < n; ++b) {
    const auto& f = injections[static_cast<std::size_t>(b)];
    if (f.symbols() != k) throw InvalidInput("injection form does not match the noise vector");
    c(b) = f.central();
    l.row(b) = f.linear().transpose();
  }
  const Eigen::VectorXd qc = lm.q * c;
  Eigen::MatrixXd quad = l.transpose() * lm.q * l;
  for (int b = 0; b < n; ++b) {
    const auto& f = injections[static_cast<std::size_t>(b)];
    if (qc(b) != 0.0 && !f.quadratic().isZero(0.0)) quad += 2.0 * qc(b) * f.quadratic();
  }
  return eaa::QuadraticForm(c.dot(qc) + lm.voltageLoss, 2.0 * l.transpose() * qc, quad);
}

}  // namespace ucds::grid
