#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "support.hpp"
#include "ucds/ds/encode.hpp"
#include "ucds/eaa/to_ds.hpp"
#include "ucds/grid/loss_model.hpp"
#include "ucds/grid/network.hpp"
#include "ucds/grid/ptdf.hpp"

using namespace ucds;
using namespace ucds::grid;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using test::branchLoss;

namespace {

VectorXd randomInjection(std::mt19937_64& gen, int n) {
  std::uniform_real_distribution<double> u(-80, 80);
  VectorXd p(n);
  for (int i = 0; i < n; ++i) p(i) = u(gen);
  return p;
}

}  // namespace

TEST(ParseCase, ReadsBundledIeee30) {
  const auto net = loadCase(test::dataPath("ieee30/case.txt"));
  EXPECT_EQ(net.busCount(), 30);
  EXPECT_EQ(net.branches().size(), 41u);
  EXPECT_EQ(net.slack(), 0);
  EXPECT_EQ(net.branches()[0].capacity, 130.0);
}

TEST(ParseCase, ReportsLineNumbers) {
  std::istringstream bad("BASE 100\nSLACK 1\nBUS\n1\n2\nBRANCH impedance\n1 2 0.1 oops 10\n");
  try {
    parseCase(bad, "c.txt");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 7);
  }
}

TEST(ParseCase, RejectsDisconnectedNetwork) {
  std::istringstream s("BASE 100\nSLACK 1\nBUS\n1\n2\n3\nBRANCH admittance\n1 2 1 10 50\n");
  EXPECT_THROW(parseCase(s), ParseError);
}

TEST(NetworkCase, Validation) {
  EXPECT_THROW(NetworkCase({1, 2}, {1.0, 1.0}, {{0, 1, 1, 10, -5}}, 0, 100), InvalidInput);
  EXPECT_THROW(NetworkCase({1, 2}, {1.0, 0.0}, {{0, 1, 1, 10, 5}}, 0, 100), InvalidInput);
  EXPECT_THROW(NetworkCase({1, 2}, {1.0, 1.0}, {{0, 1, 1, 10, 5}}, 3, 100), InvalidInput);
}

TEST(LossModel, MatrixStructure) {
  const auto lm = buildLossModel(test::threeBusCase({1.02, 0.98, 1.0}));
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(lm.gstar.row(i).sum(), 0.0, 1e-12);
    EXPECT_LT(lm.bstar(i, i), 0.0);
  }
  EXPECT_NEAR(lm.gstar(0, 1), -1.02 * 0.98 * 4.0, 1e-12);
  EXPECT_NEAR(lm.bstar(0, 1), 1.02 * 0.98 * 10.0, 1e-12);
  EXPECT_TRUE(lm.x.col(0).isZero(0.0));
  EXPECT_TRUE(lm.m.isApprox(lm.m.transpose(), 1e-14));
}

TEST(LossModel, FlatVoltagesHaveNoVoltageLoss) {
  const NetworkCase two({1, 2}, {1.0, 1.0}, {{0, 1, 2.0, 20.0, 50.0}}, 0, 100);
  EXPECT_EQ(buildLossModel(two).voltageLoss, 0.0);
}

TEST(LossModel, LosslessNetwork) {
  const NetworkCase net({1, 2, 3}, {1.0, 1.03, 0.97}, {{0, 1, 0.0, 10, 50}, {1, 2, 0.0, 8, 50}}, 0, 100);
  const auto lm = buildLossModel(net);
  EXPECT_TRUE(lm.gstar.isZero(0.0));
  std::mt19937_64 gen(1);
  for (int k = 0; k < 10; ++k) EXPECT_EQ(evalLoss(lm, randomInjection(gen, 3)), 0.0);
}

TEST(LossModel, ZeroInjectionGivesVoltageLoss) {
  const auto net = test::threeBusCase({1.02, 0.98, 1.0});
  const auto lm = buildLossModel(net);
  EXPECT_NEAR(evalLoss(lm, VectorXd::Zero(3)), branchLoss(net, VectorXd::Zero(3)), 1e-12);
  EXPECT_GT(lm.voltageLoss, 0.0);
}

TEST(LossModel, MatchesBranchEquations) {
  std::mt19937_64 gen(2);
  for (const auto& net : {test::threeBusCase({1.02, 0.98, 1.0}), loadCase(test::dataPath("ieee30/case.txt"))}) {
    const auto lm = buildLossModel(net);
    for (int k = 0; k < 30; ++k) {
      const VectorXd p = randomInjection(gen, net.busCount());
      EXPECT_NEAR(evalLoss(lm, p), branchLoss(net, p), 1e-10 * std::max(1.0, std::abs(branchLoss(net, p))));
    }
  }
}

TEST(LossModel, HessianMatchesFiniteDifference) {
  const auto net = test::threeBusCase();
  const auto lm = buildLossModel(net);
  std::mt19937_64 gen(3);
  const VectorXd p = randomInjection(gen, 3);
  const double h = 1e-2;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      VectorXd pp = p, pm = p, mp = p, mm = p;
      pp(i) += h, pp(j) += h;
      pm(i) += h, pm(j) -= h;
      mp(i) -= h, mp(j) += h;
      mm(i) -= h, mm(j) -= h;
      const double fd = (branchLoss(net, pp) - branchLoss(net, pm) - branchLoss(net, mp) + branchLoss(net, mm)) / (4 * h * h);
      EXPECT_NEAR(lm.m(i, j), fd, 1e-8);
    }
}

TEST(LossModel, GradientMatchesFiniteDifference) {
  const auto net = test::threeBusCase({1.01, 0.99, 1.0});
  const auto lm = buildLossModel(net);
  std::mt19937_64 gen(4);
  const VectorXd p = randomInjection(gen, 3);
  const VectorXd g = lossGradient(lm, p);
  for (int i = 0; i < 3; ++i) {
    VectorXd a = p, b = p;
    a(i) += 1e-3;
    b(i) -= 1e-3;
    EXPECT_NEAR(g(i), (branchLoss(net, a) - branchLoss(net, b)) / 2e-3, 1e-6);
  }
}

TEST(LossQF, DeterministicInjectionsGiveConstant) {
  const auto lm = buildLossModel(test::threeBusCase());
  eaa::NoiseVector nv;
  nv.add("a", ds::encode(ds::InputParameters{ds::IntervalInput{-1, 1}}));
  std::vector<eaa::QuadraticForm> f = {nv.constant(-60), nv.constant(25), nv.constant(35)};
  const auto q = lossQF(lm, f, nv);
  EXPECT_TRUE(q.isConstant());
  EXPECT_NEAR(q.central(), evalLoss(lm, (VectorXd(3) << -60, 25, 35).finished()), 1e-12);
}

TEST(LossQF, ExactAtVertices) {
  const auto net = test::threeBusCase({1.02, 0.98, 1.0});
  const auto lm = buildLossModel(net);
  eaa::NoiseVector nv;
  nv.add("w", ds::encode(ds::InputParameters{ds::IntervalInput{10, 30}}));
  nv.add("d", ds::encode(ds::InputParameters{ds::TriangularInput{15, 20, 28}}));
  std::vector<eaa::QuadraticForm> f = {nv.constant(-40), eaa::qfFromInput("w", nv),
                                       qfScale(-1.0, eaa::qfFromInput("d", nv))};
  const auto q = lossQF(lm, f, nv);
  for (double e1 : {-1.0, 1.0})
    for (double e2 : {-1.0, 1.0}) {
      const VectorXd eps = (VectorXd(2) << e1, e2).finished();
      // The triangular encoding's outermost cut sits inside [15, 28], so take its center and radius.
      const double w = 20 + 10 * e1, d = nv[1].center + nv[1].radius * e2;
      EXPECT_NEAR(q.evaluate(eps), branchLoss(net, (VectorXd(3) << -40, w, -d).finished()), 1e-9);
    }
}

TEST(LossQF, PBoxEnclosesSweep) {
  const auto net = test::threeBusCase();
  const auto lm = buildLossModel(net);
  eaa::NoiseVector nv;
  nv.add("w", ds::encode(ds::InputParameters{ds::WeibullWindFarm{}}));
  std::vector<eaa::QuadraticForm> f = {nv.constant(-30), eaa::qfFromInput("w", nv), nv.constant(-20)};
  const auto box = ds::toPBox(eaa::qfToDS(lossQF(lm, f, nv), nv, 100));
  for (int k = 0; k < 1000; ++k) {
    const double w = 56.0 * k / 999;
    const double v = branchLoss(net, (VectorXd(3) << -30, w, -20).finished());
    EXPECT_GE(v, box.supportMin() - 1e-9);
    EXPECT_LE(v, box.supportMax() + 1e-9);
  }
}

TEST(Ptdf, TwoBusLine) {
  const NetworkCase two({1, 2}, {1.0, 1.0}, {{0, 1, 1.0, 10.0, 50.0}}, 0, 100);
  const auto t = buildPtdf(two);
  EXPECT_NEAR(t.factors(0, 1), 1.0, 1e-12);
  EXPECT_EQ(t.factors(0, 0), 0.0);
}

TEST(Ptdf, SlackInjectionMovesNothing) {
  const auto t = buildPtdf(loadCase(test::dataPath("ieee30/case.txt")));
  EXPECT_TRUE(t.factors.col(0).isZero(0.0));
}

TEST(Ptdf, EqualTriangle) {
  const NetworkCase tri({1, 2, 3}, {1, 1, 1}, {{0, 1, 0, 10, 50}, {1, 2, 0, 10, 50}, {0, 2, 0, 10, 50}}, 0, 100);
  const auto t = buildPtdf(tri);
  // 1 MW in at bus 2, out at the slack: 2/3 on the direct line, 1/3 around.
  EXPECT_NEAR(t.factors(0, 1), 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(std::abs(t.factors(1, 1)), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(std::abs(t.factors(2, 1)), 1.0 / 3.0, 1e-12);
}

TEST(Ptdf, FlowsBalanceAtEveryBus) {
  const auto net = loadCase(test::dataPath("ieee30/case.txt"));
  const auto t = buildPtdf(net);
  std::mt19937_64 gen(9);
  VectorXd p = randomInjection(gen, net.busCount());
  p(0) = -(p.sum() - p(0));
  const VectorXd f = t.flows(p);
  // Positive flow runs to -> from, so it leaves `to` and enters `from`.
  VectorXd net_in = VectorXd::Zero(net.busCount());
  for (std::size_t l = 0; l < net.branches().size(); ++l) {
    net_in(net.branches()[l].from) += f(static_cast<Eigen::Index>(l));
    net_in(net.branches()[l].to) -= f(static_cast<Eigen::Index>(l));
  }
  for (int b = 0; b < net.busCount(); ++b) EXPECT_NEAR(net_in(b) + p(b), 0.0, 1e-9);
}

TEST(LineFlowQF, Examples) {
  const auto net = test::threeBusCase();
  const auto t = buildPtdf(net);
  eaa::NoiseVector nv;
  nv.add("d", ds::encode(ds::InputParameters{ds::IntervalInput{9, 11}}));
  std::vector<eaa::QuadraticForm> zero(3, nv.constant(0));
  EXPECT_TRUE(lineFlowQF(t, zero, 0).isConstant());
  EXPECT_EQ(lineFlowQF(t, zero, 0).central(), 0.0);

  std::vector<eaa::QuadraticForm> det = {nv.constant(-30), nv.constant(10), nv.constant(20)};
  const VectorXd p = (VectorXd(3) << -30, 10, 20).finished();
  for (int l = 0; l < 3; ++l) {
    const auto q = lineFlowQF(t, det, l);
    EXPECT_TRUE(q.isConstant());
    EXPECT_NEAR(q.central(), t.flows(p)(l), 1e-12);
  }

  std::vector<eaa::QuadraticForm> unc = {nv.constant(10), nv.constant(0), qfScale(-1.0, eaa::qfFromInput("d", nv))};
  for (int l = 0; l < 3; ++l) EXPECT_NEAR(lineFlowQF(t, unc, l).linear()(0), -t.factors(l, 2) * 1.0, 1e-12);
}
