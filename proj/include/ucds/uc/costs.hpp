#pragma once

#include <algorithm>
#include <numeric>
#include <span>
#include <vector>

#include "ucds/common.hpp"
#include "ucds/uc/schedule.hpp"
#include "ucds/uc/unit.hpp"

namespace ucds::uc {

/// Fuel plus start-up and shut-down costs over the horizon. Output bounds are not checked.
inline double deterministicCost(const Schedule& s, std::span<const UnitSpec> units) {
  double cost = 0.0;
  for (int i = 0; i < s.units(); ++i) {
    const auto& g = units[static_cast<std::size_t>(i)];
    bool prev = g.initiallyOn();
    for (int t = 0; t < s.hours(); ++t) {
      const bool cur = s.on(t, i);
      cost += transitionCost(g, prev, cur);
      if (cur) cost += g.fuel(s.p(t, i));
      prev = cur;
    }
  }
  return cost;
}

/// Full-load average cost F(U)/U = a*U + b + c/U.
inline double priorityCoefficient(const UnitSpec& g) noexcept { return g.a * g.umax + g.b + g.c / g.umax; }

/**
 * Equal-incremental-cost dispatch of `demand` over `committed` units, respecting
 * [Lmin, Umax]. Returns outputs aligned with `committed`.
 */
inline std::vector<double> economicDispatch(std::span<const UnitSpec> units, const std::vector<int>& committed,
                                            double demand) {
  double lo = 0.0, hi = 0.0;
  for (int i : committed) {
    lo += units[static_cast<std::size_t>(i)].lmin;
    hi += units[static_cast<std::size_t>(i)].umax;
  }
  if (demand < lo - kMwTolerance || demand > hi + kMwTolerance)
    throw InvalidInput("demand outside the committed units' range");
  auto outputAt = [&](double lambda, std::vector<double>& out) {
    double total = 0.0;
    out.clear();
    for (int i : committed) {
      const auto& g = units[static_cast<std::size_t>(i)];
      double p = g.a > 0.0 ? (lambda - g.b) / (2.0 * g.a) : (lambda >= g.b ? g.umax : g.lmin);
      p = std::clamp(p, g.lmin, g.umax);
      out.push_back(p);
      total += p;
    }
    return total;
  };
  double lmin = -1e6, lmax = 1e6;
  std::vector<double> out;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lmin + lmax);
    if (outputAt(mid, out) < demand)
      lmin = mid;
    else
      lmax = mid;
  }
  outputAt(lmax, out);
  return out;
}

/**
 * Units committed before the first hour: the cheapest units by priority are
 * switched on (for `hoursBefore` hours) until their capacity covers
 * (1 + margin) * demand, then dispatched economically against demand. All
 * other units are off for `hoursBefore` hours.
 */
inline void applyDefaultInitialConditions(std::vector<UnitSpec>& units, double demand, double margin,
                                          int hoursBefore = 24) {
  std::vector<int> order(units.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return priorityCoefficient(units[static_cast<std::size_t>(a)]) < priorityCoefficient(units[static_cast<std::size_t>(b)]);
  });
  std::vector<int> on;
  double cap = 0.0;
  for (int i : order) {
    if (cap >= (1.0 + margin) * demand) break;
    on.push_back(i);
    cap += units[static_cast<std::size_t>(i)].umax;
  }
  std::sort(on.begin(), on.end());
  const auto p = economicDispatch(units, on, demand);
  for (auto& g : units) {
    g.initialStatus = -hoursBefore;
    g.initialOutput = 0.0;
  }
  for (std::size_t k = 0; k < on.size(); ++k) {
    auto& g = units[static_cast<std::size_t>(on[k])];
    g.initialStatus = hoursBefore;
    g.initialOutput = p[k];
  }
}

}  // namespace ucds::uc
