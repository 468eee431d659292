#pragma once

#include <cstdint>
#include <random>

namespace ucds::gwo {

inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of the stream owned by one wolf in one iteration.
inline std::uint64_t streamSeed(std::uint64_t seed, std::uint64_t wolf, std::uint64_t iter) noexcept {
  return splitmix64(splitmix64(splitmix64(seed) ^ wolf) ^ (iter * 0xd1b54a32d192ed03ULL));
}

/**
 * mt19937_64 with a uniform draw built from the top 53 bits, so sequences are
 * identical across standard libraries (std::uniform_real_distribution is not).
 */
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() noexcept { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  bool bit() noexcept { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ucds::gwo
