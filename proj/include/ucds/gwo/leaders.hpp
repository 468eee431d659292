#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "ucds/common.hpp"
#include "ucds/ds/structure.hpp"
#include "ucds/uc/problem.hpp"

namespace ucds::gwo {

/// TCV values closer than this are treated as equal.
inline constexpr double kTcvTolerance = 1e-9;

/// Strict ordering used for selection: lower TCV, then quantile dominance of the fitness P-box.
inline bool better(double tcvA, const ds::PBox& boxA, double tcvB, const ds::PBox& boxB) {
  if (tcvA < tcvB - kTcvTolerance) return true;
  if (tcvB < tcvA - kTcvTolerance) return false;
  return ds::quantileDominates(boxA, boxB);
}

inline bool better(const uc::EvaluatedSolution& a, const uc::EvaluatedSolution& b) {
  return better(a.tcv, a.fitnessBox, b.tcv, b.fitnessBox);
}

struct LeaderSet {
  uc::EvaluatedSolution alpha, beta, delta;
};

/**
 * Indices of the best three candidates. Candidates are inserted in index
 * order and only displace an incumbent they are strictly better than, so
 * ties and incomparable P-boxes keep the earlier index ahead.
 */
template <class Candidate, class Better>
std::vector<std::size_t> topThree(std::span<const Candidate> pop, Better&& isBetter) {
  if (pop.size() < 3) throw InvalidInput("leader selection needs at least three candidates");
  std::vector<std::size_t> top;
  for (std::size_t w = 0; w < pop.size(); ++w) {
    std::size_t pos = top.size();
    for (std::size_t k = 0; k < top.size(); ++k)
      if (isBetter(pop[w], pop[top[k]])) {
        pos = k;
        break;
      }
    if (pos < 3) {
      top.insert(top.begin() + static_cast<std::ptrdiff_t>(pos), w);
      if (top.size() > 3) top.pop_back();
    }
  }
  return top;
}

inline LeaderSet selectLeaders(std::span<const uc::EvaluatedSolution> pop) {
  const auto top = topThree(pop, [](const uc::EvaluatedSolution& a, const uc::EvaluatedSolution& b) { return better(a, b); });
  return {pop[top[0]], pop[top[1]], pop[top[2]]};
}

}  // namespace ucds::gwo
