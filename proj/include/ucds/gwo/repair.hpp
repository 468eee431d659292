#pragma once

#include <algorithm>
#include <array>
#include <span>
#include <vector>

#include "ucds/common.hpp"
#include "ucds/gwo/priority.hpp"
#include "ucds/gwo/rng.hpp"
#include "ucds/uc/constraints.hpp"
#include "ucds/uc/schedule.hpp"
#include "ucds/uc/unit.hpp"

namespace ucds::gwo {

namespace detail {

inline bool rowValid(const uc::UnitSpec& g, const std::vector<std::uint8_t>& row) {
  return uc::minUpDownValid(g, static_cast<int>(row.size()), [&](int t) { return row[static_cast<std::size_t>(t)] != 0; });
}

inline std::vector<std::uint8_t> row(const uc::Schedule& s, int i) {
  std::vector<std::uint8_t> r(static_cast<std::size_t>(s.hours()));
  for (int t = 0; t < s.hours(); ++t) r[static_cast<std::size_t>(t)] = s.on(t, i) ? 1 : 0;
  return r;
}

inline void setRow(uc::Schedule& s, int i, const std::vector<std::uint8_t>& r) {
  for (int t = 0; t < s.hours(); ++t) s.setOn(t, i, r[static_cast<std::size_t>(t)] != 0);
}

/// Forward pass: a unit switches on only after MDT hours off and off only after MUT hours on.
inline void enforceMinUpDown(uc::Schedule& s, int i, const uc::UnitSpec& g) {
  bool prev = g.initiallyOn();
  int run = prev ? g.initialStatus : -g.initialStatus;
  for (int t = 0; t < s.hours(); ++t) {
    bool cur = s.on(t, i);
    if (cur != prev && run < (prev ? g.minUp : g.minDown)) {
      cur = prev;
      s.setOn(t, i, cur);
    }
    run = cur == prev ? run + 1 : 1;
    prev = cur;
  }
}

/**
 * Switches unit i on at hour t (currently off) together with whatever
 * neighbouring hours keep its row MUT/MDT-valid. Candidate runs are tried
 * from the smallest change upward; returns false if none is valid.
 */
inline bool turnOnFeasibly(uc::Schedule& s, int i, const uc::UnitSpec& g, int t) {
  const int T = s.hours();
  const auto base = row(s, i);
  int prevEnd = -2;  // -2: no earlier run; -1: the run before the horizon
  for (int k = t - 1; k >= 0; --k)
    if (base[static_cast<std::size_t>(k)]) {
      prevEnd = k;
      break;
    }
  if (prevEnd == -2 && g.initiallyOn()) prevEnd = -1;
  int nextStart = T;
  for (int k = t + 1; k < T; ++k)
    if (base[static_cast<std::size_t>(k)]) {
      nextStart = k;
      break;
    }
  const int minUpEnd = std::min(T - 1, t + g.minUp - 1);
  std::vector<std::pair<int, int>> runs = {{t, t}, {t, minUpEnd}, {t, std::max(minUpEnd, nextStart - 1)}, {t, T - 1}};
  if (prevEnd >= -1) {
    const int s0 = prevEnd + 1;
    for (int e : {t, minUpEnd, std::max(minUpEnd, nextStart - 1), T - 1}) runs.emplace_back(s0, e);
  }
  for (const auto& [a, b] : runs) {
    auto r = base;
    for (int k = a; k <= b; ++k) r[static_cast<std::size_t>(k)] = 1;
    if (rowValid(g, r)) {
      setRow(s, i, r);
      return true;
    }
  }
  return false;
}

}  // namespace detail

/**
 * Commitment repair. Runs the min up/down forward pass, then brings every
 * hour's committed capacity up to `requirement` by switching on units in
 * priority order, then decommits expensive units where capacity and min
 * up/down times allow. Dispatch of decommitted hours is zeroed.
 */
inline void repairCommitment(uc::Schedule& s, std::span<const uc::UnitSpec> units, std::span<const double> requirement,
                             const PriorityLists& lists) {
  const int T = s.hours();
  if (static_cast<int>(requirement.size()) != T) throw InvalidInput("requirement length does not match the horizon");
  for (int i = 0; i < s.units(); ++i) detail::enforceMinUpDown(s, i, units[static_cast<std::size_t>(i)]);

  for (int t = 0; t < T; ++t) {
    const double need = requirement[static_cast<std::size_t>(t)] - uc::kMwTolerance;
    for (int i : lists.pl) {
      if (uc::committedCapacity(s, units, t) >= need) break;
      if (!s.on(t, i)) detail::turnOnFeasibly(s, i, units[static_cast<std::size_t>(i)], t);
    }
    if (uc::committedCapacity(s, units, t) < need)
      throw InfeasibleCase(t + 1, "committed capacity cannot reach the hourly requirement");
  }

  auto decommit = [&](int t) {
    const double need = requirement[static_cast<std::size_t>(t)] - uc::kMwTolerance;
    for (int i : lists.dpl) {
      const auto& g = units[static_cast<std::size_t>(i)];
      if (!s.on(t, i) || uc::committedCapacity(s, units, t) - g.umax < need) continue;
      s.setOn(t, i, false);
      if (!detail::rowValid(g, detail::row(s, i))) s.setOn(t, i, true);
    }
  };
  for (int t = 0; t < T; ++t) decommit(t);
  for (int t = T - 1; t >= 0; --t) decommit(t);
  s.zeroUncommitted();
}

/// Number of randomized partial-raise passes before the remaining shortfall is placed deterministically.
inline constexpr int kRandomRaisePasses = 4;

/**
 * Dispatch repair toward the hourly `target` totals. Outputs are clamped to
 * [Lmin, Umax]; a shortfall is absorbed in priority order, each unit taking
 * it whole when its headroom allows and a random fraction of its headroom
 * otherwise; a surplus is shed in reverse priority order. A forward pass then
 * clamps every unit to its ramp band and moves the clipped energy onto other
 * units within their bands. Any remainder stays as imbalance.
 */
inline void repairDispatch(uc::Schedule& s, std::span<const uc::UnitSpec> units, std::span<const double> target,
                           const PriorityLists& lists, Rng& rng) {
  const int T = s.hours();
  if (static_cast<int>(target.size()) != T) throw InvalidInput("target length does not match the horizon");
  auto unit = [&](int i) -> const uc::UnitSpec& { return units[static_cast<std::size_t>(i)]; };

  for (int t = 0; t < T; ++t) {
    for (int i = 0; i < s.units(); ++i) s.p(t, i) = s.on(t, i) ? std::clamp(s.p(t, i), unit(i).lmin, unit(i).umax) : 0.0;
    double delta = target[static_cast<std::size_t>(t)] - s.hourOutput(t);
    for (int pass = 0; pass < kRandomRaisePasses && delta > uc::kMwTolerance; ++pass)
      for (int i : lists.pl) {
        if (!s.on(t, i)) continue;
        const double head = unit(i).umax - s.p(t, i);
        if (head >= delta) {
          s.p(t, i) += delta;
          delta = 0.0;
          break;
        }
        const double step = rng.uniform() * head;
        s.p(t, i) += step;
        delta -= step;
      }
    for (int i : lists.pl) {
      if (delta <= 0.0) break;
      if (!s.on(t, i)) continue;
      const double step = std::min(unit(i).umax - s.p(t, i), delta);
      s.p(t, i) += step;
      delta -= step;
    }
    for (int i : lists.dpl) {
      if (delta >= 0.0) break;
      if (!s.on(t, i)) continue;
      const double step = std::min(s.p(t, i) - unit(i).lmin, -delta);
      s.p(t, i) -= step;
      delta += step;
    }
  }

  std::vector<double> lo(static_cast<std::size_t>(s.units())), hi(lo.size());
  for (int t = 0; t < T; ++t) {
    double clipped = 0.0;  // MW to re-place (>0) or shed (<0)
    for (int i = 0; i < s.units(); ++i) {
      if (!s.on(t, i)) continue;
      const auto& g = unit(i);
      const bool prevOn = t == 0 ? g.initiallyOn() : s.on(t - 1, i);
      const double prevP = t == 0 ? g.initialOutput : s.p(t - 1, i);
      const auto k = static_cast<std::size_t>(i);
      if (prevOn) {
        lo[k] = std::max(g.lmin, prevP - g.rampDown);
        hi[k] = std::min(g.umax, prevP + g.rampUp);
      } else {
        lo[k] = g.lmin;
        hi[k] = std::min(g.umax, g.startupLimit());
      }
      const double p = std::clamp(s.p(t, i), lo[k], hi[k]);
      clipped += s.p(t, i) - p;
      s.p(t, i) = p;
    }
    if (clipped > 0.0) {
      for (int i : lists.pl) {
        if (clipped <= 0.0) break;
        if (!s.on(t, i)) continue;
        const double step = std::min(hi[static_cast<std::size_t>(i)] - s.p(t, i), clipped);
        s.p(t, i) += step;
        clipped -= step;
      }
    } else if (clipped < 0.0) {
      for (int i : lists.dpl) {
        if (clipped >= 0.0) break;
        if (!s.on(t, i)) continue;
        const double step = std::min(s.p(t, i) - lo[static_cast<std::size_t>(i)], -clipped);
        s.p(t, i) -= step;
        clipped += step;
      }
    }
  }
}

}  // namespace ucds::gwo
