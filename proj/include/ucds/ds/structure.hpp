#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "ucds/common.hpp"

namespace ucds::ds {

/// Number of equiprobable focal elements every structure is condensed back to.
inline constexpr int kDefaultResolution = 100;

/// Slack used when locating cumulative-mass levels; absorbs summation round-off.
inline constexpr double kLevelTolerance = 1e-9;

struct FocalElement {
  double lo = 0.0;
  double hi = 0.0;
  double mass = 0.0;

  double width() const noexcept { return hi - lo; }
  friend bool operator==(const FocalElement&, const FocalElement&) = default;
};

inline bool focalLess(const FocalElement& a, const FocalElement& b) noexcept {
  return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
}

/**
 * A finite body of evidence over the real line: closed focal intervals with
 * positive masses summing to one. Elements are kept sorted by (lo, hi).
 */
class DSStructure {
 public:
  /// Point mass at zero.
  DSStructure() : elements_{{0.0, 0.0, 1.0}} {}

  explicit DSStructure(std::vector<FocalElement> elements) : elements_(std::move(elements)) {
    if (elements_.empty()) throw InvalidInput("DS structure needs at least one focal element");
    double total = 0.0;
    for (const auto& e : elements_) {
      if (!std::isfinite(e.lo) || !std::isfinite(e.hi) || !std::isfinite(e.mass))
        throw InvalidInput("focal element has a non-finite field");
      if (e.lo > e.hi) throw InvalidInput("focal element has lo > hi");
      if (!(e.mass > 0.0) || e.mass > 1.0 + kMassTolerance)
        throw InvalidInput("focal mass must lie in (0, 1]");
      total += e.mass;
    }
    if (std::abs(total - 1.0) > kMassTolerance)
      throw InvalidInput("focal masses sum to " + formatNumber(total) + ", expected 1");
    std::stable_sort(elements_.begin(), elements_.end(), focalLess);
  }

  /// `resolution` copies of [value, value].
  static DSStructure degenerate(double value, int resolution = kDefaultResolution) {
    if (resolution < 1) throw InvalidInput("resolution must be positive");
    return DSStructure(std::vector<FocalElement>(
        static_cast<std::size_t>(resolution), FocalElement{value, value, 1.0 / resolution}));
  }

  std::span<const FocalElement> elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const FocalElement& operator[](std::size_t i) const { return elements_[i]; }

  double totalMass() const noexcept {
    double total = 0.0;
    for (const auto& e : elements_) total += e.mass;
    return total;
  }
  double supportMin() const noexcept { return elements_.front().lo; }
  double supportMax() const noexcept {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& e : elements_) m = std::max(m, e.hi);
    return m;
  }
  bool isDegenerate() const noexcept {
    return std::all_of(elements_.begin(), elements_.end(), [&](const FocalElement& e) {
      return e.lo == e.hi && e.lo == elements_.front().lo;
    });
  }

 private:
  std::vector<FocalElement> elements_;
};

struct CdfStep {
  double x;
  double cumulative;
};

/**
 * Pair of step CDFs bounding every distribution consistent with a DS structure.
 * upperCdf(x) is the plausibility of (-inf, x] and is driven by the left ends;
 * lowerCdf(x) is the belief of (-inf, x] and is driven by the right ends.
 */
class PBox {
 public:
  static PBox fromElements(std::span<const FocalElement> elements) {
    PBox box;
    box.upper_ = buildSteps(elements, [](const FocalElement& e) { return e.lo; });
    box.lower_ = buildSteps(elements, [](const FocalElement& e) { return e.hi; });
    if (box.upper_.empty()) throw InvalidInput("P-box of an empty structure");
    return box;
  }

  double upperCdf(double x) const noexcept { return evalAt(upper_, x, false); }
  double lowerCdf(double x) const noexcept { return evalAt(lower_, x, false); }
  /// Left limits: mass strictly below x.
  double upperCdfBefore(double x) const noexcept { return evalAt(upper_, x, true); }
  double lowerCdfBefore(double x) const noexcept { return evalAt(lower_, x, true); }

  /// inf{x : upperCdf(x) >= p}; the left bound of the quantile band.
  double leftQuantile(double p) const noexcept { return invert(upper_, p); }
  /// inf{x : lowerCdf(x) >= p}; the right bound of the quantile band.
  double rightQuantile(double p) const noexcept { return invert(lower_, p); }

  double supportMin() const noexcept { return upper_.front().x; }
  double supportMax() const noexcept { return lower_.back().x; }

  std::span<const CdfStep> upperSteps() const noexcept { return upper_; }
  std::span<const CdfStep> lowerSteps() const noexcept { return lower_; }

  /// Width of the quantile band at level p.
  double widthAt(double p) const noexcept { return rightQuantile(p) - leftQuantile(p); }

  /**
   * Outer discretization into `resolution` equiprobable focal elements
   * [inf{x : upper(x) > (i-1)/n}, inf{x : lower(x) >= i/n}]. The result's
   * upper CDF is pointwise >= this one and its lower CDF pointwise <=.
   */
  DSStructure discretize(int resolution) const {
    if (resolution < 1) throw InvalidInput("resolution must be positive");
    const double n = resolution;
    std::vector<FocalElement> out;
    out.reserve(static_cast<std::size_t>(resolution));
    std::size_t ui = 0, li = 0;
    for (int i = 1; i <= resolution; ++i) {
      const double pLo = (i - 1) / n + kLevelTolerance;
      while (ui + 1 < upper_.size() && !(upper_[ui].cumulative > pLo)) ++ui;
      const double pHi = i / n - kLevelTolerance;
      while (li + 1 < lower_.size() && !(lower_[li].cumulative >= pHi)) ++li;
      out.push_back({upper_[ui].x, lower_[li].x, 1.0 / n});
    }
    return DSStructure(std::move(out));
  }

 private:
  template <class Key>
  static std::vector<CdfStep> buildSteps(std::span<const FocalElement> elements, Key key) {
    std::vector<std::pair<double, double>> pts;
    pts.reserve(elements.size());
    for (const auto& e : elements) pts.emplace_back(key(e), e.mass);
    std::sort(pts.begin(), pts.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<CdfStep> steps;
    double cum = 0.0;
    for (const auto& [x, m] : pts) {
      cum += m;
      if (!steps.empty() && steps.back().x == x)
        steps.back().cumulative = cum;
      else
        steps.push_back({x, cum});
    }
    // Masses sum to one by construction; drop the summation round-off at the top step.
    if (!steps.empty()) steps.back().cumulative = 1.0;
    return steps;
  }

  static double evalAt(const std::vector<CdfStep>& steps, double x, bool strict) noexcept {
    auto it = strict ? std::lower_bound(steps.begin(), steps.end(), x,
                                        [](const CdfStep& s, double v) { return s.x < v; })
                     : std::upper_bound(steps.begin(), steps.end(), x,
                                        [](double v, const CdfStep& s) { return v < s.x; });
    if (it == steps.begin()) return 0.0;
    return std::min(1.0, std::prev(it)->cumulative);
  }

  static double invert(const std::vector<CdfStep>& steps, double p) noexcept {
    if (p <= 0.0) return steps.front().x;
    auto it = std::lower_bound(steps.begin(), steps.end(), p - kLevelTolerance,
                               [](const CdfStep& s, double v) { return s.cumulative < v; });
    if (it == steps.end()) return steps.back().x;
    return it->x;
  }

  std::vector<CdfStep> upper_;
  std::vector<CdfStep> lower_;
};

inline PBox toPBox(const DSStructure& x) { return PBox::fromElements(x.elements()); }

inline DSStructure condense(std::span<const FocalElement> elements, int resolution) {
  return PBox::fromElements(elements).discretize(resolution);
}

inline DSStructure condense(const DSStructure& x, int resolution) {
  return condense(x.elements(), resolution);
}

/**
 * CDF bounds of condense(elements, n) computed directly from the uncondensed
 * elements in one linear pass, without sorting or materializing the result.
 */
class CondensedCdf {
 public:
  CondensedCdf(std::span<const FocalElement> elements, int resolution)
      : elements_(elements), n_(resolution) {
    for (const auto& e : elements_) maxHi_ = std::max(maxHi_, e.hi);
  }

  double upperCdf(double x) const noexcept { return upperFrom(massWhere(x, true, false)); }
  double upperCdfBefore(double x) const noexcept { return upperFrom(massWhere(x, true, true)); }
  double lowerCdf(double x) const noexcept {
    if (x >= maxHi_) return 1.0;
    return lowerFrom(massWhere(x, false, false));
  }
  double lowerCdfBefore(double x) const noexcept {
    if (x > maxHi_) return 1.0;
    return lowerFrom(massWhere(x, false, true));
  }

 private:
  double massWhere(double x, bool useLo, bool strict) const noexcept {
    double m = 0.0;
    for (const auto& e : elements_) {
      const double v = useLo ? e.lo : e.hi;
      if (strict ? v < x : v <= x) m += e.mass;
    }
    return m;
  }
  double upperFrom(double mass) const noexcept {
    const double v = n_ * (mass - kLevelTolerance);
    return std::clamp(std::ceil(v), 0.0, static_cast<double>(n_)) / n_;
  }
  double lowerFrom(double mass) const noexcept {
    const double v = n_ * (mass + kLevelTolerance);
    return std::clamp(std::floor(v), 0.0, static_cast<double>(n_)) / n_;
  }

  std::span<const FocalElement> elements_;
  int n_;
  double maxHi_ = -std::numeric_limits<double>::infinity();
};

enum class Sense { LessEqual, GreaterEqual };

struct ProbabilityBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Lower/upper probability that the uncertain quantity satisfies `value sense threshold`.
template <class Cdf>
ProbabilityBounds satisfactionBounds(const Cdf& cdf, double threshold, Sense sense) {
  if (sense == Sense::LessEqual) return {cdf.lowerCdf(threshold), cdf.upperCdf(threshold)};
  return {1.0 - cdf.upperCdfBefore(threshold), 1.0 - cdf.lowerCdfBefore(threshold)};
}

inline ProbabilityBounds satisfactionBounds(const DSStructure& x, double threshold, Sense sense) {
  return satisfactionBounds(toPBox(x), threshold, sense);
}

/// Lower/upper probability of the event lo <= value <= hi.
template <class Cdf>
ProbabilityBounds rangeSatisfactionBounds(const Cdf& cdf, double lo, double hi) {
  return {std::max(0.0, cdf.lowerCdf(hi) - cdf.upperCdfBefore(lo)),
          std::clamp(cdf.upperCdf(hi) - cdf.lowerCdfBefore(lo), 0.0, 1.0)};
}

inline ProbabilityBounds rangeSatisfactionBounds(const DSStructure& x, double lo, double hi) {
  return rangeSatisfactionBounds(toPBox(x), lo, hi);
}

/**
 * True when `a` is better (smaller) than `b`: both quantile bounds of `a` are
 * <= those of `b` everywhere and differ somewhere. Quantile functions are
 * piecewise constant between the cumulative-mass knots of either box, so one
 * probe per knot interval decides the comparison.
 */
inline bool quantileDominates(const PBox& a, const PBox& b) {
  std::vector<double> knots{0.0};
  for (const PBox* box : {&a, &b}) {
    for (const auto& s : box->upperSteps()) knots.push_back(std::min(1.0, s.cumulative));
    for (const auto& s : box->lowerSteps()) knots.push_back(std::min(1.0, s.cumulative));
  }
  knots.push_back(1.0);
  std::sort(knots.begin(), knots.end());
  bool strict = false;
  for (std::size_t k = 1; k < knots.size(); ++k) {
    if (knots[k] - knots[k - 1] <= 4 * kLevelTolerance) continue;
    const double p = 0.5 * (knots[k - 1] + knots[k]);
    const double al = a.leftQuantile(p), bl = b.leftQuantile(p);
    const double ar = a.rightQuantile(p), br = b.rightQuantile(p);
    if (al > bl || ar > br) return false;
    if (al < bl || ar < br) strict = true;
  }
  return strict;
}

}  // namespace ucds::ds
