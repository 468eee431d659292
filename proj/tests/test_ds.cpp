#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "ucds/ds/arithmetic.hpp"
#include "ucds/ds/encode.hpp"
#include "ucds/ds/io.hpp"
#include "ucds/ds/structure.hpp"

using namespace ucds;
using namespace ucds::ds;
using test::turbineOutput;

namespace {

DSStructure uniformStructure(double lo, double hi, int n) {
  std::vector<FocalElement> e;
  for (int i = 0; i < n; ++i) e.push_back({lo + (hi - lo) * i / n, lo + (hi - lo) * (i + 1) / n, 1.0 / n});
  return DSStructure(e);
}

}  // namespace

TEST(DSStructure, RejectsBadElements) {
  EXPECT_THROW(DSStructure({{2, 1, 1.0}}), InvalidInput);
  EXPECT_THROW(DSStructure({{0, 1, 0.0}, {0, 1, 1.0}}), InvalidInput);
  EXPECT_THROW(DSStructure({{0, 1, 0.5}}), InvalidInput);
  EXPECT_THROW(DSStructure({{0, NAN, 1.0}}), InvalidInput);
}

TEST(DSStructure, MassSumsToOne) {
  const auto x = encode(InputParameters{TriangularInput{14, 17.5, 21}}, 100);
  EXPECT_NEAR(x.totalMass(), 1.0, 1e-9);
  EXPECT_EQ(x.size(), 100u);
}

TEST(Encode, WeibullCdfOutsideRange) {
  WeibullWindFarm w;
  EXPECT_EQ(w.cdf(-1.0), 0.0);
  EXPECT_EQ(w.cdf(w.farmRating()), 1.0);
  EXPECT_EQ(w.cdf(w.farmRating() + 5.0), 1.0);
}

TEST(Encode, WeibullAtomsMatchSpeedProbabilities) {
  WeibullWindFarm w;
  const double below = 1.0 - std::exp(-std::pow(3.0 / 6.85, 2.49));
  const double above = std::exp(-std::pow(25.0 / 6.85, 2.49));
  EXPECT_NEAR(w.zeroAtom(), below + above, 1e-12);
  const double rated = std::exp(-std::pow(12.0 / 6.85, 2.49)) - above;
  EXPECT_NEAR(w.ratedAtom(), rated, 1e-12);
}

TEST(Encode, IntervalLoadIsRepeatedElement) {
  const auto x = encode(InputParameters{IntervalInput{8.96, 13.44}}, 100);
  ASSERT_EQ(x.size(), 100u);
  for (const auto& e : x.elements()) {
    EXPECT_EQ(e.lo, 8.96);
    EXPECT_EQ(e.hi, 13.44);
    EXPECT_DOUBLE_EQ(e.mass, 0.01);
  }
}

TEST(Encode, TriangularApexIsDegenerate) {
  const auto x = encode(InputParameters{TriangularInput{14.0, 17.5, 21.0}}, 100);
  bool found = false;
  for (const auto& e : x.elements())
    if (e.lo == 17.5 && e.hi == 17.5) found = true;
  EXPECT_TRUE(found);
  EXPECT_EQ(x.supportMin(), 14.0 + 0.01 * 3.5);
}

TEST(Encode, RejectsInvalidParameters) {
  EXPECT_THROW(encode(InputParameters{IntervalInput{2, 1}}), InvalidInput);
  EXPECT_THROW(encode(InputParameters{TriangularInput{1, 0, 2}}), InvalidInput);
  WeibullWindFarm w;
  w.ratedSpeed = 2.0;
  EXPECT_THROW(encode(InputParameters{w}), InvalidInput);
  EXPECT_THROW(encode(InputParameters{PointInput{1.0}}, 1), InvalidInput);
}

TEST(Encode, WeibullBracketsAnalyticCdfAtKnots) {
  WeibullWindFarm w;
  const auto box = toPBox(encode(InputParameters{w}, 100));
  for (int i = 1; i <= 100; ++i) {
    const double x = w.quantile(i / 100.0);
    EXPECT_LE(box.lowerCdf(x), w.cdf(x) + 1e-9) << "knot " << i;
    EXPECT_GE(box.upperCdf(x), w.cdf(x) - 1e-9) << "knot " << i;
  }
}

TEST(CombineIndependent, SingleIntervals) {
  const auto z = combineIndependent(DSStructure({{1, 2, 1.0}}), DSStructure({{3, 4, 1.0}}), BinaryOp::Add, 100);
  EXPECT_EQ(z.supportMin(), 4.0);
  EXPECT_EQ(z.supportMax(), 6.0);
  for (const auto& e : z.elements()) {
    EXPECT_EQ(e.lo, 4.0);
    EXPECT_EQ(e.hi, 6.0);
  }
}

TEST(CombineIndependent, ZeroAnnihilatesProduct) {
  const auto y = encode(InputParameters{TriangularInput{1, 2, 5}}, 50);
  const auto z = combineIndependent(DSStructure::degenerate(0.0, 50), y, BinaryOp::Mul, 50);
  for (const auto& e : z.elements()) {
    EXPECT_EQ(e.lo, 0.0);
    EXPECT_EQ(e.hi, 0.0);
  }
}

TEST(CombineIndependent, CartesianProductBeforeCondensation) {
  const DSStructure x({{0, 1, 0.5}, {2, 3, 0.5}});
  const DSStructure y({{1, 1, 0.5}, {2, 2, 0.5}});
  auto p = cartesianProduct(x, y, BinaryOp::Add);
  std::sort(p.begin(), p.end(), focalLess);
  ASSERT_EQ(p.size(), 4u);
  const double expect[4][2] = {{1, 2}, {2, 3}, {3, 4}, {4, 5}};
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(p[i].lo, expect[i][0]);
    EXPECT_EQ(p[i].hi, expect[i][1]);
    EXPECT_DOUBLE_EQ(p[i].mass, 0.25);
  }
}

TEST(CombineIndependent, MonteCarloInsidePBox) {
  WeibullWindFarm w;
  const auto wind = encode(InputParameters{w}, 100);
  const auto load = encode(InputParameters{IntervalInput{9.52, 12.88}}, 100);
  const auto box = toPBox(combineIndependent(wind, load, BinaryOp::Sub, 100));
  std::mt19937_64 gen(5);
  std::weibull_distribution<double> speed(w.shape, w.scale);
  std::uniform_real_distribution<double> u(9.52, 12.88);
  const int n = 20000;
  std::vector<double> s(n);
  for (auto& v : s) v = turbineOutput(speed(gen), 56.0, 3, 12, 25) - u(gen);
  std::sort(s.begin(), s.end());
  const double slack = 3.0 / std::sqrt(static_cast<double>(n));
  for (int g = 0; g < 100; ++g) {
    const double t = box.supportMin() + (box.supportMax() - box.supportMin()) * (g + 0.5) / 100;
    const double f = static_cast<double>(std::upper_bound(s.begin(), s.end(), t) - s.begin()) / n;
    EXPECT_LE(box.lowerCdf(t) - slack, f);
    EXPECT_GE(box.upperCdf(t) + slack, f);
  }
}

TEST(ConvolveDependent, DegenerateInputsAnyMode) {
  const auto a = toPBox(DSStructure::degenerate(2.0, 100));
  const auto b = toPBox(DSStructure::degenerate(3.0, 100));
  for (auto mode : {Dependence::Perfect, Dependence::Opposite, Dependence::Unknown}) {
    const auto z = convolveDependent(a, b, BinaryOp::Add, mode, 100);
    EXPECT_DOUBLE_EQ(z.supportMin(), 5.0);
    EXPECT_DOUBLE_EQ(z.supportMax(), 5.0);
  }
}

TEST(ConvolveDependent, PerfectSumOfUniforms) {
  const auto u = toPBox(uniformStructure(0, 1, 100));
  const auto z = convolveDependent(u, u, BinaryOp::Add, Dependence::Perfect, 100);
  for (int i = 1; i < 100; ++i) {
    const double p = i / 100.0;
    // Quantiles of 2U at p lie in [2(p - 1/n), 2p].
    EXPECT_NEAR(z.leftQuantile(p), 2.0 * (p - 0.01), 1e-9);
    EXPECT_NEAR(z.rightQuantile(p), 2.0 * p, 1e-9);
  }
}

TEST(ConvolveDependent, UnknownEnclosesPerfectAndIndependent) {
  const auto x = uniformStructure(0, 1, 100);
  const auto y = encode(InputParameters{TriangularInput{0, 0.3, 2}}, 100);
  const auto unk = convolveDependent(toPBox(x), toPBox(y), BinaryOp::Add, Dependence::Unknown, 100);
  const auto per = convolveDependent(toPBox(x), toPBox(y), BinaryOp::Add, Dependence::Perfect, 100);
  const auto ind = toPBox(combineIndependent(x, y, BinaryOp::Add, 100));
  for (int g = 0; g <= 300; ++g) {
    const double t = -0.2 + 3.4 * g / 300;
    EXPECT_LE(unk.lowerCdf(t), per.lowerCdf(t) + 1e-9);
    EXPECT_GE(unk.upperCdf(t), per.upperCdf(t) - 1e-9);
    EXPECT_LE(unk.lowerCdf(t), ind.lowerCdf(t) + 1e-9);
    EXPECT_GE(unk.upperCdf(t), ind.upperCdf(t) - 1e-9);
  }
}

TEST(ConvolveDependent, MulNeedsNonnegativeSupport) {
  const auto a = toPBox(DSStructure({{-1, 1, 1.0}}));
  EXPECT_THROW(convolveDependent(a, a, BinaryOp::Mul, Dependence::Unknown, 10), UnsupportedOperation);
}

TEST(Condense, IdempotentOnEquiprobable) {
  const auto x = encode(InputParameters{TriangularInput{1, 2, 4}}, 100);
  const auto c = condense(x, 100);
  ASSERT_EQ(c.size(), 100u);
  const auto a = toPBox(x), b = toPBox(c);
  for (int g = 0; g <= 400; ++g) {
    const double t = 0.9 + 3.2 * g / 400;
    EXPECT_NEAR(a.lowerCdf(t), b.lowerCdf(t), 1e-12);
    EXPECT_NEAR(a.upperCdf(t), b.upperCdf(t), 1e-12);
  }
}

TEST(Condense, EnclosesProduct) {
  const auto x = encode(InputParameters{TriangularInput{1, 2, 4}}, 100);
  const auto y = uniformStructure(-1, 3, 100);
  const auto prod = cartesianProduct(x, y, BinaryOp::Add);
  ASSERT_EQ(prod.size(), 10000u);
  const auto full = PBox::fromElements(prod);
  const auto c = condense(prod, 100);
  EXPECT_EQ(c.size(), 100u);
  const auto cb = toPBox(c);
  for (int g = 0; g <= 1000; ++g) {
    const double t = -0.1 + 7.2 * g / 1000;
    EXPECT_LE(cb.lowerCdf(t), full.lowerCdf(t) + 1e-12);
    EXPECT_GE(cb.upperCdf(t), full.upperCdf(t) - 1e-12);
  }
}

TEST(Condense, DegenerateStaysDegenerate) {
  const auto c = condense(DSStructure::degenerate(3.5, 7), 100);
  EXPECT_TRUE(c.isDegenerate());
  EXPECT_EQ(c.supportMin(), 3.5);
}

TEST(PBox, SingleElementSteps) {
  const auto b = toPBox(DSStructure({{1, 2, 1.0}}));
  EXPECT_EQ(b.upperCdf(0.999), 0.0);
  EXPECT_EQ(b.upperCdf(1.0), 1.0);
  EXPECT_EQ(b.lowerCdf(1.999), 0.0);
  EXPECT_EQ(b.lowerCdf(2.0), 1.0);
}

TEST(PBox, PreciseProbabilityHasEqualBounds) {
  const auto b = toPBox(DSStructure({{0, 0, 0.5}, {1, 1, 0.5}}));
  for (double t : {-1.0, 0.0, 0.5, 1.0, 2.0}) EXPECT_EQ(b.lowerCdf(t), b.upperCdf(t));
  EXPECT_EQ(b.upperCdf(0.0), 0.5);
  EXPECT_EQ(b.upperCdf(1.0), 1.0);
}

TEST(PBox, BoundsAreOrdered) {
  const auto b = toPBox(combineIndependent(uniformStructure(0, 1, 30), encode(InputParameters{TriangularInput{0, 1, 3}}, 30),
                                           BinaryOp::Mul, 30));
  for (int g = -10; g <= 410; ++g) EXPECT_LE(b.lowerCdf(g / 100.0), b.upperCdf(g / 100.0));
  EXPECT_EQ(b.upperCdf(-1e9), 0.0);
  EXPECT_EQ(b.lowerCdf(1e9), 1.0);
}

TEST(QuantileDominates, Examples) {
  const auto one = toPBox(DSStructure({{1, 1, 1.0}}));
  const auto two = toPBox(DSStructure({{2, 2, 1.0}}));
  EXPECT_TRUE(quantileDominates(one, two));
  EXPECT_FALSE(quantileDominates(two, one));
  EXPECT_FALSE(quantileDominates(one, one));
  const auto a = toPBox(DSStructure({{0, 2, 1.0}}));
  const auto b = toPBox(DSStructure({{1, 3, 1.0}}));
  EXPECT_TRUE(quantileDominates(a, b));
  EXPECT_FALSE(quantileDominates(b, a));
}

TEST(SatisfactionBounds, Examples) {
  auto s = satisfactionBounds(DSStructure::degenerate(5.0, 10), 5.0, Sense::LessEqual);
  EXPECT_EQ(s.lower, 1.0);
  EXPECT_EQ(s.upper, 1.0);
  s = satisfactionBounds(DSStructure({{0, 10, 1.0}}), 5.0, Sense::LessEqual);
  EXPECT_EQ(s.lower, 0.0);
  EXPECT_EQ(s.upper, 1.0);
  s = satisfactionBounds(DSStructure({{0, 1, 0.5}, {2, 3, 0.5}}), 1.5, Sense::LessEqual);
  EXPECT_DOUBLE_EQ(s.lower, 0.5);
  EXPECT_DOUBLE_EQ(s.upper, 0.5);
  s = satisfactionBounds(DSStructure({{0, 1, 0.5}, {2, 3, 0.5}}), 1.5, Sense::GreaterEqual);
  EXPECT_DOUBLE_EQ(s.lower, 0.5);
  EXPECT_DOUBLE_EQ(s.upper, 0.5);
}

TEST(SatisfactionBounds, RangeCountsContainedMass) {
  const DSStructure x({{-2, -1, 0.25}, {-0.5, 0.5, 0.5}, {0.2, 3, 0.25}});
  const auto r = rangeSatisfactionBounds(x, -1.0, 1.0);
  EXPECT_DOUBLE_EQ(r.lower, 0.5);
  EXPECT_DOUBLE_EQ(r.upper, 1.0);
}

TEST(StructureCsv, RoundTrip) {
  const auto x = encode(InputParameters{TriangularInput{14, 17.5, 21}}, 20);
  std::stringstream ss;
  writeStructureCsv(ss, x);
  const auto y = readStructureCsv(ss);
  ASSERT_EQ(x.size(), y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    EXPECT_EQ(x[i].lo, y[i].lo);
    EXPECT_EQ(x[i].hi, y[i].hi);
    EXPECT_EQ(x[i].mass, y[i].mass);
  }
}

TEST(StructureCsv, ReportsLine) {
  std::stringstream ss("lo,hi,mass\n0,1,0.5\n0,x,0.5\n");
  try {
    readStructureCsv(ss, "f.csv");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("f.csv:3"), std::string::npos) << e.what();
  }
}
