#pragma once

#include <cstdint>
#include <limits>

namespace fairspread {

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += kGoldenGamma;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Key of the `index`-th child stream of `parent`.
///
/// Child keys depend only on (parent, index), never on the order in which
/// they are requested, which is what makes Monte-Carlo loops reproducible
/// under any worker schedule.
constexpr std::uint64_t derive_stream(std::uint64_t parent, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(parent) + index);
}

/// Top 53 bits mapped onto [0, 1).
constexpr double to_unit(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// SplitMix64 sequential generator. Satisfies UniformRandomBitGenerator.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() noexcept {
    const std::uint64_t out = splitmix64(state_);
    state_ += kGoldenGamma;
    return out;
  }

  constexpr double uniform() noexcept { return to_unit((*this)()); }

  /// Uniform integer in [0, bound). Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t bound) noexcept {
    if (bound <= 1) return 0;
    unsigned __int128 m = static_cast<unsigned __int128>((*this)()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<unsigned __int128>((*this)()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  std::uint64_t state_;
};

}  // namespace fairspread
