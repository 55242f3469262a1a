#include "prime_race/random_walk.hpp"

#include <algorithm>

#include "prime_race/errors.hpp"

namespace prime_race::races {

void WalkConfig::validate() const {
  if (teams < 2) throw DomainError("walk needs at least two teams");
  if (teams > 64) throw CapacityError("walk supports at most 64 teams");
  if (trials < 1) throw DomainError("walk needs at least one trial");
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) noexcept {
  return splitmix64_mix(seed + (trial + 1) * 0x9E3779B97F4A7C15ULL);
}

std::vector<WalkTrial> simulate_tie_walk(const WalkConfig& config) {
  config.validate();
  const std::size_t dim = config.teams - 1;
  std::vector<WalkTrial> out;
  out.reserve(config.trials);
  std::vector<std::int64_t> pos(dim);
  for (std::uint64_t t = 0; t < config.trials; ++t) {
    SplitMix64 rng(trial_seed(config.seed, t));
    std::fill(pos.begin(), pos.end(), 0);
    std::size_t nonzero = 0;
    auto bump = [&](std::size_t i, std::int64_t delta) {
      const bool was_zero = pos[i] == 0;
      pos[i] += delta;
      if (was_zero) {
        ++nonzero;
      } else if (pos[i] == 0) {
        --nonzero;
      }
    };
    WalkTrial trial;
    for (std::uint64_t step = 1; step <= config.steps; ++step) {
      const auto team = static_cast<std::size_t>(rng.below(config.teams));
      if (team > 0) bump(team - 1, -1);
      if (team < dim) bump(team, +1);
      if (nonzero == 0) {
        trial.returned_to_origin = true;
        trial.first_return_step = step;
        break;
      }
    }
    out.push_back(trial);
  }
  return out;
}

double return_fraction(std::span<const WalkTrial> trials) {
  if (trials.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& t : trials) hits += t.returned_to_origin ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(trials.size());
}

}  // namespace prime_race::races
