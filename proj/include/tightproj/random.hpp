#pragma once

#include <cstdint>
#include <random>

namespace tightproj {

inline constexpr std::uint64_t kDefaultProbeSeed = 20240611ULL;

// mt19937_64 output is fixed by the standard; the distributions are not, so
// reproducible reals are taken from the raw bits.
inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * unit_uniform(rng);
}

inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
}

}  // namespace tightproj
