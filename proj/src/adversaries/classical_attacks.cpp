#include "relcommit/adversaries/classical_attacks.hpp"

#include <algorithm>

#include "relcommit/errors.hpp"
#include "relcommit/protocols/classical.hpp"

namespace relcommit {

namespace {

LocalCommandStrategy follow_command_strategy() {
  LocalCommandStrategy s;
  s.share = [](SplitRng&) -> std::uint64_t { return 0; };
  s.bob = [](int command, std::uint64_t, SplitRng&) { return command; };
  s.brian = [](std::optional<int> command, std::uint64_t, SplitRng&) { return command.value_or(0); };
  return s;
}

// Acceptance probability of the fair-coin verifier on one opened string.
double coin_verifier_accepts(std::uint64_t) {
  double p = 0.0;
  for (int coin = 0; coin < 2; ++coin) p += 0.5 * (coin == 1 ? 1.0 : 0.0);
  return p;
}

}  // namespace

AttackReport classical_global_cheat(std::uint64_t trials, std::uint64_t seed) {
  if (trials == 0) throw InputError("classical cheat needs at least one trial");
  const auto strategy = follow_command_strategy();
  const SplitRng root(seed);
  std::array<std::uint64_t, 2> accepted{};
  for (std::uint64_t k = 0; k < trials; ++k) {
    for (int b = 0; b < 2; ++b) {
      const auto run = run_local_command(strategy, b, root.split(k).key() ^ static_cast<std::uint64_t>(b),
                                         CommandModel::Global);
      if (run.transcript.accepted()) ++accepted[static_cast<std::size_t>(b)];
    }
  }
  AttackReport r;
  r.name = "classical-global-cheat";
  r.n = 1;
  r.p0 = static_cast<double>(accepted[0]) / static_cast<double>(trials);
  r.p1 = static_cast<double>(accepted[1]) / static_cast<double>(trials);
  r.alpha = std::min(r.p0, r.p1);
  r.pass_probability = r.p0;
  r.bound = 0.0;
  r.satisfied = r.p0 + r.p1 <= 1.0;
  SampledEstimate s;
  s.trials = trials;
  s.p0 = r.p0;
  s.p1 = r.p1;
  s.alpha = r.alpha;
  r.sampled = s;
  return r;
}

double local_command_optimum(const LocalCommandGame& game) {
  if (game.bob_strategies == 0 || game.brian_strategies == 0) throw InputError("strategy sets must be non-empty");
  if (game.bob_strategies > kMaxGameStrategies || game.brian_strategies > kMaxGameStrategies) {
    throw InputError("strategy space too large");
  }
  if (!game.accept) throw InputError("game has no acceptance predicate");
  double best = 0.0;
  for (std::size_t s = 0; s < game.brian_strategies; ++s) {
    double total = 0.0;
    for (int b = 0; b < 2; ++b) {
      double best_r = 0.0;
      for (std::size_t r = 0; r < game.bob_strategies; ++r) {
        const double a = game.accept(b, r, s);
        if (!(a >= 0.0 && a <= 1.0)) throw InputError("acceptance probability outside [0, 1]");
        best_r = std::max(best_r, a);
      }
      total += best_r;
    }
    best = std::max(best, total);
  }
  return best;
}

LocalCommandGame pre_agreed_bit_strategy_space() {
  LocalCommandGame g;
  g.bob_strategies = 4;
  g.brian_strategies = 2;
  g.accept = [](int b, std::size_t r, std::size_t s) {
    const int bob_bit = static_cast<int>((r >> b) & 1U);
    const int brian_bit = static_cast<int>(s);
    return bob_bit == b && brian_bit == b ? 1.0 : 0.0;
  };
  return g;
}

ComposabilityResult composability_counterexample(std::size_t n) {
  if (n < 1 || n > 20) throw InputError("composability demo needs 1 <= n <= 20");
  ComposabilityResult out;
  const double p0 = coin_verifier_accepts(0);
  const double p1 = coin_verifier_accepts(1);
  out.per_bit_epsilon = std::max(0.0, p0 + p1 - 1.0);
  const std::uint64_t strings = std::uint64_t{1} << n;
  for (std::uint64_t s = 0; s < strings; ++s) out.string_sum += coin_verifier_accepts(s);
  return out;
}

}  // namespace relcommit
