#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ucds/ds/arithmetic.hpp"
#include "ucds/ds/encode.hpp"
#include "ucds/eaa/noise.hpp"
#include "ucds/eaa/quadratic_form.hpp"
#include "ucds/eaa/to_ds.hpp"

using namespace ucds;
using namespace ucds::eaa;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

QuadraticForm qf1(double c, double l, double q) {
  return QuadraticForm(c, VectorXd::Constant(1, l), MatrixXd::Constant(1, 1, q));
}

ds::DSStructure uniformOnUnit(int n) {
  std::vector<ds::FocalElement> e;
  for (int i = 0; i < n; ++i) e.push_back({-1.0 + 2.0 * i / n, -1.0 + 2.0 * (i + 1) / n, 1.0 / n});
  return ds::DSStructure(e);
}

}  // namespace

TEST(QuadraticForm, AddExample) {
  const auto z = qfAdd(qf1(1, 2, 3), qf1(4, 5, 6));
  EXPECT_EQ(z.central(), 5);
  EXPECT_EQ(z.linear()(0), 7);
  EXPECT_EQ(z.quadratic()(0, 0), 9);
}

TEST(QuadraticForm, AddZeroIsIdentity) {
  const auto x = qf1(1.5, -2, 0.25);
  const auto z = qfAdd(x, QuadraticForm(1));
  EXPECT_EQ(z.central(), x.central());
  EXPECT_EQ(z.linear(), x.linear());
  EXPECT_EQ(z.quadratic(), x.quadratic());
}

TEST(QuadraticForm, ScaleExamples) {
  const auto x = qf1(1, 2, 3);
  const auto z = qfScale(-2, x);
  EXPECT_EQ(z.central(), -2);
  EXPECT_EQ(z.linear()(0), -4);
  EXPECT_EQ(z.quadratic()(0, 0), -6);
  EXPECT_TRUE(qfScale(0, x).isConstant());
  EXPECT_EQ(qfScale(0, x).central(), 0.0);
  EXPECT_EQ(qfScale(1, x).quadratic(), x.quadratic());
  EXPECT_THROW(qfScale(NAN, x), InvalidInput);
}

TEST(QuadraticForm, MulExample) {
  const auto z = qfMul(qf1(1, 2, 0), qf1(3, 4, 0));
  EXPECT_EQ(z.central(), 3);
  EXPECT_EQ(z.linear()(0), 10);
  EXPECT_EQ(z.quadratic()(0, 0), 8);
}

TEST(QuadraticForm, MulByZeroAndUnit) {
  const auto x = qf1(2, -1, 0.5);
  const auto zero = qfMul(x, QuadraticForm(1));
  EXPECT_EQ(zero.central(), 0.0);
  EXPECT_TRUE(zero.isConstant());
  const auto one = qfMul(x, QuadraticForm(1, 1.0));
  EXPECT_EQ(one.central(), x.central());
  EXPECT_EQ(one.linear(), x.linear());
  EXPECT_EQ(one.quadratic(), x.quadratic());
}

TEST(QuadraticForm, MismatchedBasesRejected) {
  EXPECT_THROW(qfAdd(QuadraticForm(1), QuadraticForm(2)), InvalidInput);
  EXPECT_THROW(QuadraticForm(0.0, VectorXd::Zero(2), MatrixXd::Zero(3, 3)), InvalidInput);
}

TEST(QuadraticForm, RandomIdentities) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 1 + trial % 5;
    auto rnd = [&] {
      MatrixXd q(k, k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) q(i, j) = u(gen);
      VectorXd l(k);
      for (int i = 0; i < k; ++i) l(i) = u(gen);
      return QuadraticForm(u(gen), l, q);
    };
    const auto x = rnd(), y = rnd();
    const auto back = qfSub(qfAdd(x, y), y);
    EXPECT_NEAR(back.central(), x.central(), 1e-12);
    EXPECT_LE((back.linear() - x.linear()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE((back.quadratic() - x.quadratic()).cwiseAbs().maxCoeff(), 1e-12);
    // The quadratic part stays symmetric through every operation.
    const auto m = qfMul(x, y);
    EXPECT_LE((m.quadratic() - m.quadratic().transpose()).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(Noise, IntervalInputLifting) {
  NoiseVector nv;
  nv.add("load12", ds::encode(ds::InputParameters{ds::IntervalInput{8.96, 13.44}}));
  const auto q = qfFromInput("load12", nv);
  EXPECT_NEAR(q.central(), 11.2, 1e-12);
  EXPECT_NEAR(q.linear()(0), 2.24, 1e-12);
  EXPECT_TRUE(q.quadratic().isZero(0.0));
  EXPECT_NEAR(q.evaluate(VectorXd::Constant(1, 1.0)), 13.44, 1e-12);
  EXPECT_THROW(nv.add("load12", ds::DSStructure()), InvalidInput);
  EXPECT_THROW(qfFromInput("nope", nv), InvalidInput);
}

TEST(Noise, DegenerateInputIsConstant) {
  NoiseVector nv;
  nv.add("p", ds::DSStructure::degenerate(4.0, 10));
  const auto q = qfFromInput("p", nv);
  EXPECT_TRUE(q.isConstant());
  EXPECT_EQ(q.central(), 4.0);
}

TEST(Noise, NormalizedSupportWithinUnit) {
  NoiseVector nv;
  nv.add("w", ds::encode(ds::InputParameters{ds::WeibullWindFarm{}}));
  nv.add("t", ds::encode(ds::InputParameters{ds::TriangularInput{14, 17.5, 21}}));
  for (Eigen::Index j = 0; j < nv.size(); ++j) {
    EXPECT_GE(nv[j].normalized.supportMin(), -1.0);
    EXPECT_LE(nv[j].normalized.supportMax(), 1.0);
    EXPECT_GT(nv[j].radius, 0.0);
  }
}

TEST(QfToDS, ConstantIsDegenerate) {
  NoiseVector nv;
  nv.add("a", ds::encode(ds::InputParameters{ds::IntervalInput{0, 1}}));
  const auto d = qfToDS(nv.constant(7.25), nv, 100);
  EXPECT_TRUE(d.isDegenerate());
  EXPECT_EQ(d.supportMin(), 7.25);
}

TEST(QfToDS, LinearFormReproducesInput) {
  const auto in = ds::encode(ds::InputParameters{ds::TriangularInput{14, 17.5, 21}}, 100);
  NoiseVector nv;
  nv.add("t", in);
  const auto d = qfToDS(qfFromInput("t", nv), nv, 100);
  const auto a = ds::toPBox(in), b = ds::toPBox(d);
  for (int g = 0; g <= 400; ++g) {
    const double t = 13.5 + 8.0 * g / 400 + 1e-7;
    EXPECT_NEAR(a.lowerCdf(t), b.lowerCdf(t), 1e-9);
    EXPECT_NEAR(a.upperCdf(t), b.upperCdf(t), 1e-9);
  }
}

TEST(QfToDS, SquareOfUniformEnclosesSqrtCdf) {
  NoiseVector nv;
  nv.add("e", uniformOnUnit(100));
  const QuadraticForm sq = qf1(0, 0, 1);
  const auto box = ds::toPBox(qfToDS(sq, nv, 100));
  for (int g = 0; g <= 500; ++g) {
    const double t = g / 500.0;
    EXPECT_LE(box.lowerCdf(t), std::sqrt(t) + 1e-12) << t;
    EXPECT_GE(box.upperCdf(t), std::sqrt(t) - 1e-12) << t;
  }
}

TEST(QfToDS, EnclosesSampledValuesOfTwoSymbols) {
  NoiseVector nv;
  nv.add("a", uniformOnUnit(50));
  nv.add("b", uniformOnUnit(50));
  MatrixXd q(2, 2);
  q << 0.5, 0.3, 0.3, -0.2;
  const QuadraticForm x(1.0, (VectorXd(2) << 2.0, -1.0).finished(), q);
  const auto box = ds::toPBox(qfToDS(x, nv, 100));
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int s = 0; s < 2000; ++s) {
    const VectorXd e = (VectorXd(2) << u(gen), u(gen)).finished();
    const double v = x.evaluate(e);
    EXPECT_GE(v, box.supportMin() - 1e-12);
    EXPECT_LE(v, box.supportMax() + 1e-12);
  }
}

TEST(RangeLowerProbability, MatchesMaterializedStructure) {
  NoiseVector nv;
  nv.add("a", ds::encode(ds::InputParameters{ds::TriangularInput{-1, 0, 1}}, 100));
  nv.add("b", ds::encode(ds::InputParameters{ds::IntervalInput{-0.01, 0.01}}, 100));
  const QuadraticForm x(0.05, (VectorXd(2) << 0.5, 1.0).finished(), MatrixXd::Zero(2, 2));
  for (double h : {0.05, 0.2, 0.4, 0.7}) {
    const double direct = ds::rangeSatisfactionBounds(qfToDS(x, nv, 100), -h, h).lower;
    EXPECT_NEAR(rangeLowerProbability(x, nv, -h, h, 100), direct, 1e-12) << h;
  }
}
