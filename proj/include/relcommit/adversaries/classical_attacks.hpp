#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

#include "relcommit/adversaries/attacks.hpp"

namespace relcommit {

/// Both agents of the pre-agreed-bit protocol submit the command they are given.
/// With a global command every trial accepts for both bits.
AttackReport classical_global_cheat(std::uint64_t trials, std::uint64_t seed);

/**
 * Finite game for the pre-agreed-bit protocol under a local command.
 *
 * Bob's deterministic strategies are indexed by r, Brian's by s; accept(b, r, s)
 * is the probability Alice accepts when the command is b.
 */
struct LocalCommandGame {
  std::size_t bob_strategies = 0;
  std::size_t brian_strategies = 0;
  std::function<double(int b, std::size_t r, std::size_t s)> accept;
};

inline constexpr std::size_t kMaxGameStrategies = 64;

/// max over shared randomness of p0 + p1. Brian's choice cannot depend on b, so the
/// optimum is max_s sum_b max_r accept(b, r, s). Throws InputError above 64 strategies per side.
double local_command_optimum(const LocalCommandGame& game);

/// Bob: the four maps from command to bit. Brian: the two constant bits.
LocalCommandGame pre_agreed_bit_strategy_space();

struct ComposabilityResult {
  double per_bit_epsilon = 0.0;
  double string_sum = 0.0;
};

/// Verifier that ignores the opening and accepts on a fair coin. Each bit value
/// passes with probability 1/2, yet summed over all n-bit strings the acceptance
/// probabilities reach 2^(n-1). Requires 1 <= n <= 20.
ComposabilityResult composability_counterexample(std::size_t n);

}  // namespace relcommit
