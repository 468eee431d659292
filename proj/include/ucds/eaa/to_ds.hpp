#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "ucds/ds/arithmetic.hpp"
#include "ucds/ds/structure.hpp"
#include "ucds/eaa/noise.hpp"
#include "ucds/eaa/quadratic_form.hpp"

namespace ucds::eaa {

namespace detail {

/// Exact range of b*e + a*e^2 on [l, h].
inline ds::Interval parabolaRange(double a, double b, double l, double h) noexcept {
  const double vl = b * l + a * l * l, vh = b * h + a * h * h;
  double lo = std::min(vl, vh), hi = std::max(vl, vh);
  if (a != 0.0) {
    const double c = -b / (2.0 * a);
    if (c > l && c < h) {
      const double vc = b * c + a * c * c;
      lo = std::min(lo, vc);
      hi = std::max(hi, vc);
    }
  }
  return {lo, hi};
}

inline ds::Interval scaled(double k, ds::Interval v) noexcept {
  return k >= 0.0 ? ds::Interval{k * v.lo, k * v.hi} : ds::Interval{k * v.hi, k * v.lo};
}

}  // namespace detail

/**
 * Focal elements of the form's value before the final condensation. Active
 * symbols are folded in one at a time, cheapest (fewest distinct elements)
 * first. The first pair is combined element-by-element including its bilinear
 * term; every later symbol's bilinear terms with already folded symbols are
 * bounded over those symbols' hulls. Intermediate results are condensed to
 * `resolution` whenever they grow beyond it.
 */
inline std::vector<ds::FocalElement> qfToProduct(const QuadraticForm& x, const NoiseVector& noise,
                                                 int resolution = ds::kDefaultResolution) {
  if (x.symbols() != noise.size()) throw InvalidInput("quadratic form and noise vector differ in size");
  const Eigen::Index k = x.symbols();
  const auto& X1 = x.linear();
  const auto& X2 = x.quadratic();

  std::vector<Eigen::Index> active;
  for (Eigen::Index j = 0; j < k; ++j) {
    const auto& s = noise[j];
    if (s.hullLo == 0.0 && s.hullHi == 0.0) continue;
    if (X1(j) != 0.0 || !X2.row(j).isZero(0.0)) active.push_back(j);
  }
  std::stable_sort(active.begin(), active.end(), [&](Eigen::Index a, Eigen::Index b) {
    return noise[a].distinct.size() < noise[b].distinct.size();
  });

  if (active.empty()) return {{x.central(), x.central(), 1.0}};

  auto rangeOf = [&](Eigen::Index j, const ds::FocalElement& e) {
    return detail::parabolaRange(X2(j, j), X1(j), e.lo, e.hi);
  };

  std::vector<ds::FocalElement> acc;
  const Eigen::Index first = active[0];
  std::size_t next = 1;
  if (active.size() == 1) {
    for (const auto& e : noise[first].distinct) {
      const auto r = rangeOf(first, e);
      acc.push_back({x.central() + r.lo, x.central() + r.hi, e.mass});
    }
  } else {
    const Eigen::Index second = active[1];
    const double cross = 2.0 * X2(first, second);
    const auto& da = noise[first].distinct;
    const auto& db = noise[second].distinct;
    std::vector<ds::Interval> rb(db.size());
    for (std::size_t j = 0; j < db.size(); ++j) rb[j] = rangeOf(second, db[j]);
    acc.reserve(da.size() * db.size());
    for (const auto& ea : da) {
      const auto ra = rangeOf(first, ea);
      for (std::size_t j = 0; j < db.size(); ++j) {
        double lo = x.central() + ra.lo + rb[j].lo;
        double hi = x.central() + ra.hi + rb[j].hi;
        if (cross != 0.0) {
          const auto c = ds::applyInterval(ds::BinaryOp::Mul, {ea.lo, ea.hi}, {db[j].lo, db[j].hi});
          const auto cs = detail::scaled(cross, c);
          lo += cs.lo;
          hi += cs.hi;
        }
        acc.push_back({lo, hi, ea.mass * db[j].mass});
      }
    }
    next = 2;
  }

  for (; next < active.size(); ++next) {
    if (acc.size() > static_cast<std::size_t>(resolution)) {
      const auto c = ds::condense(acc, resolution);
      acc.assign(c.elements().begin(), c.elements().end());
    }
    const Eigen::Index c = active[next];
    // Sum over folded symbols a of 2*X2(a,c)*eps_a, bounded over the hulls.
    ds::Interval coupling{0.0, 0.0};
    for (std::size_t q = 0; q < next; ++q) {
      const Eigen::Index a = active[q];
      const auto t = detail::scaled(2.0 * X2(a, c), {noise[a].hullLo, noise[a].hullHi});
      coupling.lo += t.lo;
      coupling.hi += t.hi;
    }
    const auto& dc = noise[c].distinct;
    std::vector<ds::FocalElement> add(dc.size());
    for (std::size_t j = 0; j < dc.size(); ++j) {
      auto r = rangeOf(c, dc[j]);
      const auto t = ds::applyInterval(ds::BinaryOp::Mul, coupling, {dc[j].lo, dc[j].hi});
      add[j] = {r.lo + t.lo, r.hi + t.hi, dc[j].mass};
    }
    std::vector<ds::FocalElement> out;
    out.reserve(acc.size() * add.size());
    for (const auto& e : acc)
      for (const auto& f : add) out.push_back({e.lo + f.lo, e.hi + f.hi, e.mass * f.mass});
    acc.swap(out);
  }
  return acc;
}

/**
 * Lower bound on the width of every focal element qfToProduct can emit: each
 * element is a sum of per-symbol ranges, none of which can be narrower than
 * that symbol's narrowest parabola range.
 */
inline double minElementWidth(const QuadraticForm& x, const NoiseVector& noise) {
  double w = 0.0;
  for (Eigen::Index j = 0; j < x.symbols(); ++j) {
    const auto& s = noise[j];
    if (s.hullLo == 0.0 && s.hullHi == 0.0) continue;
    const double a = x.quadratic()(j, j), b = x.linear()(j);
    if (a == 0.0 && b == 0.0) continue;
    double m = std::numeric_limits<double>::infinity();
    for (const auto& e : s.distinct) {
      const auto r = detail::parabolaRange(a, b, e.lo, e.hi);
      m = std::min(m, r.hi - r.lo);
    }
    w += m;
  }
  return w;
}

/**
 * Lower probability of lo <= value <= hi for the condensed structure of the
 * form, evaluated without materializing it.
 */
inline double rangeLowerProbability(const QuadraticForm& x, const NoiseVector& noise, double lo, double hi,
                                    int resolution = ds::kDefaultResolution) {
  if (minElementWidth(x, noise) > hi - lo) return 0.0;
  const auto product = qfToProduct(x, noise, resolution);
  double inside = 0.0;
  for (const auto& e : product)
    if (e.lo >= lo && e.hi <= hi) inside += e.mass;
  if (inside <= 0.0) return 0.0;
  return ds::rangeSatisfactionBounds(ds::CondensedCdf(product, resolution), lo, hi).lower;
}

inline ds::DSStructure qfToDS(const QuadraticForm& x, const NoiseVector& noise,
                              int resolution = ds::kDefaultResolution) {
  return ds::condense(qfToProduct(x, noise, resolution), resolution);
}

}  // namespace ucds::eaa
