#pragma once

#include <algorithm>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ucds/ds/structure.hpp"
#include "ucds/uc/schedule.hpp"
#include "ucds/uc/unit.hpp"

namespace ucds::uc {

enum class ViolationKind { BelowMin, AboveMax, OutputWhileOff, MinUp, MinDown, RampUp, RampDown, StartupRamp };

inline const char* kindLabel(ViolationKind k) noexcept {
  switch (k) {
    case ViolationKind::BelowMin: return "below-min";
    case ViolationKind::AboveMax: return "above-max";
    case ViolationKind::OutputWhileOff: return "output-while-off";
    case ViolationKind::MinUp: return "min-up";
    case ViolationKind::MinDown: return "min-down";
    case ViolationKind::RampUp: return "ramp-up";
    case ViolationKind::RampDown: return "ramp-down";
    case ViolationKind::StartupRamp: return "startup-ramp";
  }
  return "?";
}

struct DeterministicViolation {
  int hour;  // 1-based
  int unit;
  ViolationKind kind;
  double magnitude;  // MW, or hours for min-up/min-down
};

/// Visits every min-up/min-down breach of one unit's commitment row.
/// `on(t)` gives the bit at 0-based hour t.
template <class OnFn, class Sink>
void scanMinUpDown(const UnitSpec& unit, int hours, OnFn on, Sink sink) {
  bool prev = unit.initiallyOn();
  int run = unit.initiallyOn() ? unit.initialStatus : -unit.initialStatus;
  for (int t = 0; t < hours; ++t) {
    const bool cur = on(t);
    if (cur == prev) {
      ++run;
      continue;
    }
    if (prev && run < unit.minUp) sink(t, ViolationKind::MinUp, unit.minUp - run);
    if (!prev && run < unit.minDown) sink(t, ViolationKind::MinDown, unit.minDown - run);
    prev = cur;
    run = 1;
  }
}

template <class OnFn>
bool minUpDownValid(const UnitSpec& unit, int hours, OnFn on) {
  bool ok = true;
  scanMinUpDown(unit, hours, on, [&](int, ViolationKind, int) { ok = false; });
  return ok;
}

/// Output bounds, min up/down times and ramp limits. Demand-side checks live elsewhere.
inline std::vector<DeterministicViolation> checkDeterministicConstraints(const Schedule& s,
                                                                         std::span<const UnitSpec> units,
                                                                         double tol = kMwTolerance) {
  std::vector<DeterministicViolation> out;
  for (int i = 0; i < s.units(); ++i) {
    const auto& g = units[static_cast<std::size_t>(i)];
    for (int t = 0; t < s.hours(); ++t) {
      const double p = s.p(t, i);
      if (!s.on(t, i)) {
        if (std::abs(p) > tol) out.push_back({t + 1, i, ViolationKind::OutputWhileOff, std::abs(p)});
        continue;
      }
      if (p < g.lmin - tol) out.push_back({t + 1, i, ViolationKind::BelowMin, g.lmin - p});
      if (p > g.umax + tol) out.push_back({t + 1, i, ViolationKind::AboveMax, p - g.umax});
    }
    scanMinUpDown(g, s.hours(), [&](int t) { return s.on(t, i); },
                  [&](int t, ViolationKind k, int m) { out.push_back({t + 1, i, k, static_cast<double>(m)}); });
    for (int t = 0; t < s.hours(); ++t) {
      if (!s.on(t, i)) continue;
      const bool prevOn = t == 0 ? g.initiallyOn() : s.on(t - 1, i);
      const double prevP = t == 0 ? g.initialOutput : s.p(t - 1, i);
      const double p = s.p(t, i);
      if (!prevOn) {
        if (p > g.startupLimit() + tol) out.push_back({t + 1, i, ViolationKind::StartupRamp, p - g.startupLimit()});
      } else if (p - prevP > g.rampUp + tol) {
        out.push_back({t + 1, i, ViolationKind::RampUp, p - prevP - g.rampUp});
      } else if (prevP - p > g.rampDown + tol) {
        out.push_back({t + 1, i, ViolationKind::RampDown, prevP - p - g.rampDown});
      }
    }
  }
  return out;
}

/// Committed capacity at each hour.
inline double committedCapacity(const Schedule& s, std::span<const UnitSpec> units, int t) {
  double cap = 0.0;
  for (int i = 0; i < s.units(); ++i)
    if (s.on(t, i)) cap += units[static_cast<std::size_t>(i)].umax;
  return cap;
}

/// Sum over committed units of min(U - P, UR).
inline double spinningReserve(const Schedule& s, int t, std::span<const UnitSpec> units) {
  double r = 0.0;
  for (int i = 0; i < s.units(); ++i) {
    if (!s.on(t, i)) continue;
    const auto& g = units[static_cast<std::size_t>(i)];
    r += std::max(0.0, std::min(g.umax - s.p(t, i), g.rampUp));
  }
  return r;
}

/// max(sigma - lowerProb, 0).
inline double constraintViolation(double lowerProb, double sigma) noexcept {
  return std::max(sigma - lowerProb, 0.0);
}

inline double constraintViolation(const ds::DSStructure& g, double threshold, ds::Sense sense, double sigma) {
  return constraintViolation(ds::satisfactionBounds(g, threshold, sense).lower, sigma);
}

/// Two-sided form lo <= g <= hi.
inline double rangeConstraintViolation(const ds::DSStructure& g, double lo, double hi, double sigma) {
  return constraintViolation(ds::rangeSatisfactionBounds(g, lo, hi).lower, sigma);
}

}  // namespace ucds::uc
