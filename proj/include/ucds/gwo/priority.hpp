#pragma once

#include <algorithm>
#include <numeric>
#include <span>
#include <vector>

#include "ucds/uc/costs.hpp"
#include "ucds/uc/unit.hpp"

namespace ucds::gwo {

/// Unit indices by full-load average cost: `pl` cheapest first, `dpl` the reverse.
struct PriorityLists {
  std::vector<int> pl;
  std::vector<int> dpl;
};

/// Ties keep input order in `pl` (and therefore reversed input order in `dpl`).
inline PriorityLists priorityCoefficients(std::span<const uc::UnitSpec> units) {
  PriorityLists out;
  out.pl.resize(units.size());
  std::iota(out.pl.begin(), out.pl.end(), 0);
  std::stable_sort(out.pl.begin(), out.pl.end(), [&](int a, int b) {
    return uc::priorityCoefficient(units[static_cast<std::size_t>(a)]) <
           uc::priorityCoefficient(units[static_cast<std::size_t>(b)]);
  });
  out.dpl.assign(out.pl.rbegin(), out.pl.rend());
  return out;
}

}  // namespace ucds::gwo
