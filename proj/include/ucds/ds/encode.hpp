#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include "ucds/common.hpp"
#include "ucds/ds/structure.hpp"

namespace ucds::ds {

/**
 * Aggregate output of a wind farm whose turbines share one Weibull wind speed
 * and a cubic power curve between cut-in and rated speed. The distribution is
 * mixed: an atom at 0 (calm or storm) and an atom at the farm rating.
 */
struct WeibullWindFarm {
  double shape = 2.49;          // k
  double scale = 6.85;          // lambda, m/s
  int turbines = 1;             // n
  double turbineRating = 56.0;  // MW per turbine
  double cutIn = 3.0;           // m/s
  double ratedSpeed = 12.0;     // m/s
  double cutOut = 25.0;         // m/s

  double farmRating() const noexcept { return turbines * turbineRating; }

  void validate() const {
    if (!allFinite({shape, scale, turbineRating, cutIn, ratedSpeed, cutOut}))
      throw InvalidInput("wind farm parameters must be finite");
    if (!(shape > 0.0) || !(scale > 0.0)) throw InvalidInput("Weibull shape and scale must be positive");
    if (!(0.0 <= cutIn && cutIn < ratedSpeed && ratedSpeed < cutOut))
      throw InvalidInput("turbine speeds must satisfy 0 <= cut-in < rated < cut-out");
    if (!(turbineRating > 0.0)) throw InvalidInput("turbine rating must be positive");
    if (turbines < 1) throw InvalidInput("wind farm needs at least one turbine");
  }

  double cdf(double x) const noexcept {
    const double w = farmRating();
    if (x < 0.0) return 0.0;
    if (x >= w) return 1.0;
    const double s = (x / w) * (cube(ratedSpeed) - cube(cutIn)) + cube(cutIn);
    return 1.0 - std::exp(-std::pow(s, shape / 3.0) / std::pow(scale, shape)) + cutOutTail();
  }

  /// Generalized inverse inf{x : cdf(x) >= p}.
  double quantile(double p) const noexcept {
    const double w = farmRating();
    if (p <= cdf(0.0)) return 0.0;
    if (p > 1.0 - std::exp(-std::pow(ratedSpeed / scale, shape)) + cutOutTail()) return w;
    const double s = std::pow(-std::pow(scale, shape) * std::log(1.0 + cutOutTail() - p), 3.0 / shape);
    const double x = w * (s - cube(cutIn)) / (cube(ratedSpeed) - cube(cutIn));
    return std::clamp(x, 0.0, w);
  }

  /// Probability of zero output.
  double zeroAtom() const noexcept { return cdf(0.0); }
  /// Probability of full output.
  double ratedAtom() const noexcept {
    return std::exp(-std::pow(ratedSpeed / scale, shape)) - cutOutTail();
  }

 private:
  static double cube(double v) noexcept { return v * v * v; }
  double cutOutTail() const noexcept { return std::exp(-std::pow(cutOut / scale, shape)); }
};

struct IntervalInput {
  double lo = 0.0;
  double hi = 0.0;
};

/// Triangular possibility distribution with support [a, b] and apex m.
struct TriangularInput {
  double a = 0.0;
  double m = 0.0;
  double b = 0.0;
};

struct PointInput {
  double value = 0.0;
};

using InputParameters = std::variant<WeibullWindFarm, IntervalInput, TriangularInput, PointInput>;

/// Whether the input adds to (generation) or draws from (load) its bus.
enum class InputRole { Generation, Load };

struct UncertainInputSpec {
  std::string id;
  InputParameters params;
  int bus = 0;
  InputRole role = InputRole::Load;
  /// Per-hour multiplier applied to the encoded structure; empty means 1.
  std::vector<double> hourScale;

  double scaleAt(int hour) const {
    if (hourScale.empty()) return 1.0;
    return hourScale.at(static_cast<std::size_t>(hour));
  }
};

inline std::string kindName(const InputParameters& p) {
  struct V {
    std::string operator()(const WeibullWindFarm&) const { return "weibull-windfarm"; }
    std::string operator()(const IntervalInput&) const { return "interval"; }
    std::string operator()(const TriangularInput&) const { return "triangular-fuzzy"; }
    std::string operator()(const PointInput&) const { return "point"; }
  };
  return std::visit(V{}, p);
}

inline DSStructure encode(const WeibullWindFarm& w, int n) {
  w.validate();
  std::vector<FocalElement> out;
  out.reserve(static_cast<std::size_t>(n));
  double prev = w.quantile(0.0);
  for (int i = 1; i <= n; ++i) {
    const double next = w.quantile(static_cast<double>(i) / n);
    out.push_back({prev, next, 1.0 / n});
    prev = next;
  }
  return DSStructure(std::move(out));
}

inline DSStructure encode(const IntervalInput& v, int n) {
  if (!allFinite({v.lo, v.hi})) throw InvalidInput("interval bounds must be finite");
  if (v.lo > v.hi) throw InvalidInput("interval needs lo <= hi");
  return DSStructure(std::vector<FocalElement>(static_cast<std::size_t>(n), {v.lo, v.hi, 1.0 / n}));
}

/// Nested alpha-cuts at alpha = i/n, each carrying mass 1/n.
inline DSStructure encode(const TriangularInput& v, int n) {
  if (!allFinite({v.a, v.m, v.b})) throw InvalidInput("triangular parameters must be finite");
  if (!(v.a <= v.m && v.m <= v.b)) throw InvalidInput("triangular input needs a <= m <= b");
  std::vector<FocalElement> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    const double alpha = static_cast<double>(i) / n;
    double lo = v.a + alpha * (v.m - v.a);
    double hi = v.b - alpha * (v.b - v.m);
    if (i == n) lo = hi = v.m;
    out.push_back({lo, hi, 1.0 / n});
  }
  return DSStructure(std::move(out));
}

inline DSStructure encode(const PointInput& v, int n) {
  if (!std::isfinite(v.value)) throw InvalidInput("point value must be finite");
  return DSStructure::degenerate(v.value, n);
}

inline DSStructure encode(const InputParameters& params, int resolution = kDefaultResolution) {
  if (resolution < 2) throw InvalidInput("encoding resolution must be at least 2");
  return std::visit([&](const auto& p) { return encode(p, resolution); }, params);
}

inline DSStructure encode(const UncertainInputSpec& spec, int resolution = kDefaultResolution) {
  return encode(spec.params, resolution);
}

}  // namespace ucds::ds
