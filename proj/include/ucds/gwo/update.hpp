#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <span>

#include "ucds/common.hpp"
#include "ucds/uc/schedule.hpp"
#include "ucds/uc/unit.hpp"

namespace ucds::gwo {

enum class Decay { Exponential, Linear };

/// Exploration coefficient a: 2(1 - iter^2/max^2) or 2 - 2 iter/max.
inline double decayParameter(int iter, int maxIter, Decay mode) {
  if (maxIter < 1 || iter < 0 || iter > maxIter) throw InvalidInput("iteration outside [0, maxIter]");
  const double r = static_cast<double>(iter) / maxIter;
  return mode == Decay::Exponential ? 2.0 * (1.0 - r * r) : 2.0 - 2.0 * r;
}

/**
 * One coordinate of the hunting step: each leader proposes
 * X_k = leader_k - A_k |C_k leader_k - x| with A = 2a r1 - a, C = 2 r2, and
 * the mean of the three proposals is returned. r1 then r2 are drawn per leader.
 */
template <class Uniform>
double huntStep(double x, const std::array<double, 3>& leaders, double a, Uniform&& uniform) {
  double sum = 0.0;
  for (double lead : leaders) {
    const double r1 = uniform(), r2 = uniform();
    const double A = 2.0 * a * r1 - a, C = 2.0 * r2;
    sum += lead - A * std::abs(C * lead - x);
  }
  return sum / 3.0;
}

inline double sigmoidTransfer(double x) noexcept { return 1.0 / (1.0 + std::exp(-10.0 * (x - 0.5))); }

/**
 * Binary update of the commitment matrix: the hunting step runs on the 0/1
 * leader bits, and the bit is set when the transferred value exceeds a fresh
 * uniform draw.
 */
template <class Uniform>
void bgwoUpdateBinary(uc::Schedule& wolf, const std::array<const uc::Schedule*, 3>& leaders, double a,
                      Uniform&& uniform) {
  for (int t = 0; t < wolf.hours(); ++t)
    for (int i = 0; i < wolf.units(); ++i) {
      const std::array<double, 3> l{leaders[0]->on(t, i) ? 1.0 : 0.0, leaders[1]->on(t, i) ? 1.0 : 0.0,
                                    leaders[2]->on(t, i) ? 1.0 : 0.0};
      const double x = huntStep(wolf.on(t, i) ? 1.0 : 0.0, l, a, uniform);
      wolf.setOn(t, i, sigmoidTransfer(x) > uniform());
    }
}

/// Continuous update of the dispatch, clamped to [Lmin, Umax] under the wolf's current commitment (0 when off).
template <class Uniform>
void gwoUpdateContinuous(uc::Schedule& wolf, const std::array<const uc::Schedule*, 3>& leaders, double a,
                         std::span<const uc::UnitSpec> units, Uniform&& uniform) {
  for (int t = 0; t < wolf.hours(); ++t)
    for (int i = 0; i < wolf.units(); ++i) {
      const std::array<double, 3> l{leaders[0]->p(t, i), leaders[1]->p(t, i), leaders[2]->p(t, i)};
      const double x = huntStep(wolf.p(t, i), l, a, uniform);
      const auto& g = units[static_cast<std::size_t>(i)];
      wolf.p(t, i) = wolf.on(t, i) ? std::clamp(x, g.lmin, g.umax) : 0.0;
    }
}

}  // namespace ucds::gwo
