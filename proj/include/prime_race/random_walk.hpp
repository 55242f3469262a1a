// random_walk.hpp
// Tie model for a k-team race: the (k-1)-dimensional vector of consecutive
// count differences moves by one of k fixed steps per prime,
//   team 1 -> e1,  team i -> -e(i-1) + e(i),  team k -> -e(k-1),
// chosen uniformly. A return to the origin is a k-way tie.
//
// Randomness: SplitMix64. Trial t of a run seeded with s uses the stream
// seeded by splitmix64_mix(s + (t + 1) * 0x9E3779B97F4A7C15).

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace prime_race::races {

inline std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    return splitmix64_mix(state_);
  }

  // Uniform in [0, n), n >= 1, without modulo bias.
  std::uint64_t below(std::uint64_t n) noexcept {
    unsigned __int128 m = static_cast<unsigned __int128>(next()) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(next()) * n;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  std::uint64_t state_;
};

struct WalkConfig {
  std::uint32_t teams = 3;
  std::uint64_t steps = 100000;
  std::uint64_t trials = 200;
  std::uint64_t seed = 0;

  void validate() const;
};

struct WalkTrial {
  bool returned_to_origin = false;
  std::optional<std::uint64_t> first_return_step;

  bool operator==(const WalkTrial&) const = default;
};

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) noexcept;

std::vector<WalkTrial> simulate_tie_walk(const WalkConfig& config);

double return_fraction(std::span<const WalkTrial> trials);

}  // namespace prime_race::races
