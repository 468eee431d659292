#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "ucds/common.hpp"
#include "ucds/ds/structure.hpp"

namespace ucds::ds {

enum class BinaryOp { Add, Sub, Mul };

enum class Dependence { Perfect, Opposite, Unknown };

struct Interval {
  double lo;
  double hi;
};

inline Interval applyInterval(BinaryOp op, Interval a, Interval b) noexcept {
  switch (op) {
    case BinaryOp::Add:
      return {a.lo + b.lo, a.hi + b.hi};
    case BinaryOp::Sub:
      return {a.lo - b.hi, a.hi - b.lo};
    case BinaryOp::Mul: {
      const double p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
      return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
    }
  }
  return {0.0, 0.0};
}

/// All n_x * n_y focal elements of x op y under independence, uncondensed.
inline std::vector<FocalElement> cartesianProduct(const DSStructure& x, const DSStructure& y,
                                                  BinaryOp op) {
  std::vector<FocalElement> out;
  out.reserve(x.size() * y.size());
  for (const auto& a : x.elements())
    for (const auto& b : y.elements()) {
      const Interval r = applyInterval(op, {a.lo, a.hi}, {b.lo, b.hi});
      out.push_back({r.lo, r.hi, a.mass * b.mass});
    }
  return out;
}

inline DSStructure combineIndependent(const DSStructure& x, const DSStructure& y, BinaryOp op,
                                      int resolution = kDefaultResolution) {
  return condense(cartesianProduct(x, y, op), resolution);
}

/// Image of x under v -> scale * v + shift.
inline DSStructure affine(const DSStructure& x, double scale, double shift) {
  std::vector<FocalElement> out;
  out.reserve(x.size());
  for (const auto& e : x.elements()) {
    const double a = scale * e.lo + shift, b = scale * e.hi + shift;
    out.push_back({std::min(a, b), std::max(a, b), e.mass});
  }
  return DSStructure(std::move(out));
}

namespace detail {

inline std::vector<FocalElement> negated(std::span<const FocalElement> e) {
  std::vector<FocalElement> out(e.rbegin(), e.rend());
  for (auto& f : out) f = {-f.hi, -f.lo, f.mass};
  return out;
}

}  // namespace detail

/**
 * Combination of two P-boxes under a dependence assumption. Both inputs are
 * discretized to `resolution` equiprobable elements. Perfect dependence pairs
 * equal quantile levels, opposite pairs p with 1-p, and unknown dependence
 * takes the Frechet bounds in their quantile (Williamson-Downs) form.
 * Subtraction is addition of the negated second operand, which swaps perfect
 * and opposite pairing. Multiplication is accepted only on nonnegative
 * supports, where it is monotone.
 */
inline PBox convolveDependent(const PBox& x, const PBox& y, BinaryOp op, Dependence mode,
                              int resolution = kDefaultResolution) {
  const int n = resolution;
  const DSStructure dx = x.discretize(n);
  const DSStructure dy = y.discretize(n);
  std::vector<FocalElement> ey(dy.elements().begin(), dy.elements().end());
  if (op == BinaryOp::Mul && (x.supportMin() < 0.0 || y.supportMin() < 0.0))
    throw UnsupportedOperation("dependent product needs nonnegative supports to stay monotone");
  if (op == BinaryOp::Sub) {
    ey = detail::negated(ey);
    if (mode == Dependence::Perfect)
      mode = Dependence::Opposite;
    else if (mode == Dependence::Opposite)
      mode = Dependence::Perfect;
    op = BinaryOp::Add;
  }
  const auto ex = dx.elements();
  auto f = [op](double a, double b) { return op == BinaryOp::Mul ? a * b : a + b; };

  std::vector<FocalElement> z;
  z.reserve(static_cast<std::size_t>(n));
  const double m = 1.0 / n;
  for (int k = 0; k < n; ++k) {
    switch (mode) {
      case Dependence::Perfect:
        z.push_back({f(ex[k].lo, ey[k].lo), f(ex[k].hi, ey[k].hi), m});
        break;
      case Dependence::Opposite: {
        const auto& b = ey[static_cast<std::size_t>(n - 1 - k)];
        z.push_back({f(ex[k].lo, b.lo), f(ex[k].hi, b.hi), m});
        break;
      }
      case Dependence::Unknown: {
        // 0-based: left uses i + j = k, right uses i + j = n - 1 + k.
        double lo = -std::numeric_limits<double>::infinity();
        for (int i = 0; i <= k; ++i) lo = std::max(lo, f(ex[i].lo, ey[k - i].lo));
        double hi = std::numeric_limits<double>::infinity();
        for (int i = k; i < n; ++i) hi = std::min(hi, f(ex[i].hi, ey[n - 1 + k - i].hi));
        z.push_back({lo, hi, m});
        break;
      }
    }
  }
  return PBox::fromElements(z);
}

}  // namespace ucds::ds
