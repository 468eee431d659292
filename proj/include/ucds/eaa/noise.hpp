#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "ucds/common.hpp"
#include "ucds/ds/structure.hpp"
#include "ucds/eaa/quadratic_form.hpp"

namespace ucds::eaa {

/// One uncertain input rewritten as kappa = center + radius * eps with eps in [-1, 1].
struct NoiseSymbol {
  std::string inputId;
  double center = 0.0;
  double radius = 0.0;
  /// Structure of eps; support within [-1, 1].
  ds::DSStructure normalized;
  /// `normalized` with identical focal elements merged.
  std::vector<ds::FocalElement> distinct;
  double hullLo = 0.0;
  double hullHi = 0.0;
};

class NoiseVector {
 public:
  /// Registers an input and returns its slot.
  Eigen::Index add(const std::string& inputId, const ds::DSStructure& input) {
    if (find(inputId) >= 0) throw InvalidInput("noise symbol '" + inputId + "' registered twice");
    NoiseSymbol s;
    s.inputId = inputId;
    const double lo = input.supportMin(), hi = input.supportMax();
    s.center = 0.5 * (lo + hi);
    s.radius = 0.5 * (hi - lo);
    if (s.radius > 0.0) {
      std::vector<ds::FocalElement> e;
      e.reserve(input.size());
      for (const auto& f : input.elements())
        e.push_back({std::clamp((f.lo - s.center) / s.radius, -1.0, 1.0),
                     std::clamp((f.hi - s.center) / s.radius, -1.0, 1.0), f.mass});
      s.normalized = ds::DSStructure(std::move(e));
    } else {
      s.normalized = ds::DSStructure();
    }
    for (const auto& f : s.normalized.elements()) {
      if (!s.distinct.empty() && s.distinct.back().lo == f.lo && s.distinct.back().hi == f.hi)
        s.distinct.back().mass += f.mass;
      else
        s.distinct.push_back(f);
    }
    s.hullLo = s.normalized.supportMin();
    s.hullHi = s.normalized.supportMax();
    symbols_.push_back(std::move(s));
    return size() - 1;
  }

  Eigen::Index size() const noexcept { return static_cast<Eigen::Index>(symbols_.size()); }
  const NoiseSymbol& operator[](Eigen::Index i) const { return symbols_.at(static_cast<std::size_t>(i)); }

  Eigen::Index find(const std::string& inputId) const noexcept {
    for (std::size_t i = 0; i < symbols_.size(); ++i)
      if (symbols_[i].inputId == inputId) return static_cast<Eigen::Index>(i);
    return -1;
  }

  Eigen::Index slot(const std::string& inputId) const {
    const Eigen::Index i = find(inputId);
    if (i < 0) throw InvalidInput("unknown uncertain input '" + inputId + "'");
    return i;
  }

  QuadraticForm constant(double value) const { return QuadraticForm(size(), value); }

 private:
  std::vector<NoiseSymbol> symbols_;
};

/// First-order lifting of one registered input, optionally scaled (per-hour profile).
inline QuadraticForm qfFromInput(const std::string& inputId, const NoiseVector& noise,
                                 double scale = 1.0) {
  const Eigen::Index k = noise.slot(inputId);
  QuadraticForm q(noise.size(), scale * noise[k].center);
  q.linear()(k) = scale * noise[k].radius;
  return q;
}

}  // namespace ucds::eaa
