#pragma once

#include <Eigen/Dense>
#include <ostream>
#include <string>

#include "ucds/common.hpp"

namespace ucds::eaa {

/**
 * x0 + X1 * eps + eps^T X2 eps over a fixed set of noise symbols. X2 is kept
 * symmetric; only its symmetric part contributes to the value.
 */
class QuadraticForm {
 public:
  QuadraticForm() = default;

  /// Constant form over `symbols` noise symbols.
  explicit QuadraticForm(Eigen::Index symbols, double central = 0.0)
      : central_(central),
        linear_(Eigen::VectorXd::Zero(symbols)),
        quadratic_(Eigen::MatrixXd::Zero(symbols, symbols)) {}

  QuadraticForm(double central, Eigen::VectorXd linear, const Eigen::MatrixXd& quadratic)
      : central_(central), linear_(std::move(linear)) {
    if (quadratic.rows() != linear_.size() || quadratic.cols() != linear_.size())
      throw InvalidInput("quadratic matrix does not match the linear vector length");
    quadratic_ = 0.5 * (quadratic + quadratic.transpose());
  }

  Eigen::Index symbols() const noexcept { return linear_.size(); }
  double central() const noexcept { return central_; }
  const Eigen::VectorXd& linear() const noexcept { return linear_; }
  const Eigen::MatrixXd& quadratic() const noexcept { return quadratic_; }

  double& central() noexcept { return central_; }
  Eigen::VectorXd& linear() noexcept { return linear_; }
  /// Callers that write through this must keep the matrix symmetric.
  Eigen::MatrixXd& quadratic() noexcept { return quadratic_; }

  bool isConstant() const noexcept {
    return linear_.isZero(0.0) && quadratic_.isZero(0.0);
  }
  bool allFinite() const noexcept {
    return std::isfinite(central_) && linear_.allFinite() && quadratic_.allFinite();
  }

  double evaluate(const Eigen::VectorXd& eps) const {
    if (eps.size() != symbols()) throw InvalidInput("noise point has the wrong dimension");
    return central_ + linear_.dot(eps) + eps.dot(quadratic_ * eps);
  }

  QuadraticForm& operator+=(const QuadraticForm& y) {
    requireSameBasis(y);
    central_ += y.central_;
    linear_ += y.linear_;
    quadratic_ += y.quadratic_;
    return *this;
  }
  QuadraticForm& operator-=(const QuadraticForm& y) {
    requireSameBasis(y);
    central_ -= y.central_;
    linear_ -= y.linear_;
    quadratic_ -= y.quadratic_;
    return *this;
  }
  QuadraticForm& operator*=(double alpha) {
    central_ *= alpha;
    linear_ *= alpha;
    quadratic_ *= alpha;
    return *this;
  }
  QuadraticForm& operator+=(double c) {
    central_ += c;
    return *this;
  }

  void requireSameBasis(const QuadraticForm& y) const {
    if (symbols() != y.symbols()) throw InvalidInput("quadratic forms live on different noise bases");
  }

 private:
  double central_ = 0.0;
  Eigen::VectorXd linear_;
  Eigen::MatrixXd quadratic_;
};

inline QuadraticForm qfAdd(QuadraticForm x, const QuadraticForm& y) { return x += y; }
inline QuadraticForm qfSub(QuadraticForm x, const QuadraticForm& y) { return x -= y; }

inline QuadraticForm qfScale(double alpha, QuadraticForm x) {
  if (!std::isfinite(alpha)) throw InvalidInput("scale factor must be finite");
  return x *= alpha;
}

/**
 * Product truncated at second order:
 * x0*y0 + (y0*X1 + x0*Y1) eps + eps^T (y0*X2 + x0*Y2 + sym(X1^T Y1)) eps.
 */
inline QuadraticForm qfMul(const QuadraticForm& x, const QuadraticForm& y) {
  x.requireSameBasis(y);
  const double x0 = x.central(), y0 = y.central();
  const Eigen::MatrixXd outer = x.linear() * y.linear().transpose();
  return QuadraticForm(x0 * y0, y0 * x.linear() + x0 * y.linear(),
                       y0 * x.quadratic() + x0 * y.quadratic() + outer);
}

inline QuadraticForm operator+(QuadraticForm x, const QuadraticForm& y) { return x += y; }
inline QuadraticForm operator-(QuadraticForm x, const QuadraticForm& y) { return x -= y; }
inline QuadraticForm operator*(double a, QuadraticForm x) { return x *= a; }

/// Debug text: central on the first line, linear on the second, one quadratic row per line.
inline void writeDebug(std::ostream& os, const QuadraticForm& q) {
  os << formatNumber(q.central()) << '\n';
  for (Eigen::Index i = 0; i < q.symbols(); ++i) os << (i ? " " : "") << formatNumber(q.linear()(i));
  os << '\n';
  for (Eigen::Index i = 0; i < q.symbols(); ++i) {
    for (Eigen::Index j = 0; j < q.symbols(); ++j)
      os << (j ? " " : "") << formatNumber(q.quadratic()(i, j));
    os << '\n';
  }
}

}  // namespace ucds::eaa
