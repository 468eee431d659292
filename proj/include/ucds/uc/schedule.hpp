#pragma once

#include <cstdint>
#include <vector>

#include "ucds/common.hpp"

namespace ucds::uc {

/// Commitment bits and MW dispatch, hour-major (hour t, unit i at t * units + i).
class Schedule {
 public:
  Schedule() = default;
  Schedule(int hours, int units)
      : hours_(hours),
        units_(units),
        u_(static_cast<std::size_t>(hours * units), 0),
        p_(static_cast<std::size_t>(hours * units), 0.0) {
    if (hours < 1 || units < 1) throw InvalidInput("schedule needs at least one hour and one unit");
  }

  int hours() const noexcept { return hours_; }
  int units() const noexcept { return units_; }

  bool on(int t, int i) const noexcept { return u_[idx(t, i)] != 0; }
  void setOn(int t, int i, bool v) noexcept { u_[idx(t, i)] = v ? 1 : 0; }
  double p(int t, int i) const noexcept { return p_[idx(t, i)]; }
  double& p(int t, int i) noexcept { return p_[idx(t, i)]; }

  const std::vector<std::uint8_t>& commitment() const noexcept { return u_; }
  std::vector<std::uint8_t>& commitment() noexcept { return u_; }
  const std::vector<double>& dispatch() const noexcept { return p_; }
  std::vector<double>& dispatch() noexcept { return p_; }

  /// Zeroes output wherever the unit is off.
  void zeroUncommitted() noexcept {
    for (std::size_t k = 0; k < u_.size(); ++k)
      if (!u_[k]) p_[k] = 0.0;
  }

  double hourOutput(int t) const noexcept {
    double s = 0.0;
    for (int i = 0; i < units_; ++i) s += p(t, i);
    return s;
  }

  friend bool operator==(const Schedule&, const Schedule&) = default;

 private:
  std::size_t idx(int t, int i) const noexcept { return static_cast<std::size_t>(t * units_ + i); }

  int hours_ = 0;
  int units_ = 0;
  std::vector<std::uint8_t> u_;
  std::vector<double> p_;
};

}  // namespace ucds::uc
