#include "relcommit/adversaries/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "relcommit/bounds/binding.hpp"
#include "relcommit/errors.hpp"

namespace relcommit {

namespace {

using RoundJoint = std::array<std::array<double, 2>, 2>;  // [s][t]

// Joint distribution of Alice's outcome s and Bob's outcome t for one pair.
RoundJoint round_joint(double theta, Basis alice_basis) {
  const QubitId alice{0}, bob{1};
  StateVector state = apply_single_qubit(epr_pair(alice, bob), bob, rotated_basis_unitary(theta));
  if (alice_basis == Basis::Hadamard) state = apply_single_qubit(state, alice, hadamard());
  const std::vector<QubitId> both{alice, bob};
  RoundJoint p{};
  for (int s = 0; s < 2; ++s) {
    for (int t = 0; t < 2; ++t) {
      BitString bits;
      bits.push_back(s);
      bits.push_back(t);
      p[s][t] = outcome_probability(state, both, Basis::Computational, bits);
    }
  }
  return p;
}

// Probability that the agent's reported bit matches s, given Bob's outcome t.
double agreement(StringRule rule, int s, int t) {
  if (rule == StringRule::UniformGuess) return 0.5;
  return s == t ? 1.0 : 0.0;
}

std::optional<int> claim_for(ClaimRule rule, int input) {
  switch (rule) {
    case ClaimRule::FollowCommand:
      return input;
    case ClaimRule::Fixed0:
      return 0;
    case ClaimRule::Fixed1:
      return 1;
  }
  return std::nullopt;
}

// Average over uniform size-n subsets Z of [2n] of prod_{i in Z} rz * prod_{i not in Z} rx,
// built position by position.
double partition_average(std::size_t n, double rz, double rx) {
  std::vector<double> dp(n + 1, 0.0);
  dp[0] = 1.0;
  for (std::size_t i = 0; i < 2 * n; ++i) {
    std::vector<double> next(n + 1, 0.0);
    for (std::size_t j = 0; j <= std::min(i, n); ++j) {
      if (dp[j] == 0.0) continue;
      const std::size_t remaining = 2 * n - i;
      const double to_z = static_cast<double>(n - j) / static_cast<double>(remaining);
      if (j < n) next[j + 1] += dp[j] * to_z * rz;
      if (i - j < n) next[j] += dp[j] * (1.0 - to_z) * rx;
    }
    dp = std::move(next);
  }
  return dp[n];
}

struct Checks {
  bool bob_z = false, bob_x = false, brian_z = false, brian_x = false;
};

// Per-round probability that the checked agents agree with Alice.
double round_event(const RoundJoint& p, bool bob_checks, StringRule bob, bool brian_checks, StringRule brian) {
  double sum = 0.0;
  for (int s = 0; s < 2; ++s) {
    for (int t = 0; t < 2; ++t) {
      double f = p[s][t];
      if (bob_checks) f *= agreement(bob, s, t);
      if (brian_checks) f *= agreement(brian, s, t);
      sum += f;
    }
  }
  return sum;
}

struct CellProbabilities {
  double bob = 0.0, brian = 0.0, both = 0.0;
};

CellProbabilities component_cell(const AttackComponent& c, std::size_t n, int x, int x_prime) {
  const auto kb = claim_for(c.bob.claim, x);
  const auto kr = claim_for(c.brian.claim, x_prime);
  const bool bob_ok = kb && *kb == x;
  const bool brian_ok = kr && *kr == x_prime;
  const RoundJoint pz = round_joint(c.theta, Basis::Computational);
  const RoundJoint px = round_joint(c.theta, Basis::Hadamard);
  const bool bz = x == 0, bx = x == 1, rz = x_prime == 0, rx = x_prime == 1;

  CellProbabilities out;
  if (bob_ok) {
    out.bob = partition_average(n, round_event(pz, bz, c.bob.string, false, c.brian.string),
                                round_event(px, bx, c.bob.string, false, c.brian.string));
  }
  if (brian_ok) {
    out.brian = partition_average(n, round_event(pz, false, c.bob.string, rz, c.brian.string),
                                  round_event(px, false, c.bob.string, rx, c.brian.string));
  }
  if (bob_ok && brian_ok) {
    out.both = partition_average(n, round_event(pz, bz, c.bob.string, rz, c.brian.string),
                                 round_event(px, bx, c.bob.string, rx, c.brian.string));
  }
  return out;
}

RoundJoint condition_on(const RoundJoint& p, StringRule rule) {
  RoundJoint q{};
  double total = 0.0;
  for (int s = 0; s < 2; ++s)
    for (int t = 0; t < 2; ++t) total += p[s][t] * agreement(rule, s, t);
  if (total <= 0.0) return q;
  for (int s = 0; s < 2; ++s)
    for (int t = 0; t < 2; ++t) q[s][t] = p[s][t] * agreement(rule, s, t) / total;
  return q;
}

double binomial_upper_tail(std::size_t n, double p, std::size_t k) {
  double total = 0.0;
  for (std::size_t i = k; i <= n; ++i) {
    const double log_term = std::lgamma(n + 1.0) - std::lgamma(i + 1.0) - std::lgamma(n - i + 1.0) +
                            (i == 0 ? 0.0 : i * std::log(p)) + (n - i == 0 ? 0.0 : (n - i) * std::log1p(-p));
    if (p <= 0.0 && i > 0) continue;
    if (p >= 1.0 && i < n) continue;
    total += std::exp(log_term);
  }
  return std::min(1.0, total);
}

bool passes(const KentInstance& inst, const std::optional<KentOpening>& opening, int input) {
  return opening && opening->bit == input && kent_string_passes(inst, opening->outcomes, input);
}

}  // namespace

void validate_strategy(const AttackStrategy& strategy) {
  if (strategy.components.empty()) throw InputError("attack strategy has no components");
  double total = 0.0;
  for (const auto& c : strategy.components) {
    if (!(c.weight >= 0.0)) throw InputError("attack component weight is negative");
    if (!std::isfinite(c.theta)) throw InputError("attack angle is not finite");
    if (strategy.command == CommandModel::Local && c.brian.claim == ClaimRule::FollowCommand) {
      throw InputError("Brian cannot follow a command he never receives under the local model");
    }
    total += c.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) throw InputError("attack component weights do not sum to 1");
}

AttackStrategy intermediate_basis_strategy(double theta) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi / 4 + 1e-15)) throw InputError("theta must lie in [0, pi/4]");
  return {"intermediate-basis", CommandModel::Global, {{1.0, theta, {}, {}}}};
}

AttackStrategy coin_flip_strategy() {
  const AgentRule zero{ClaimRule::Fixed0, StringRule::CopyOutcomes};
  const AgentRule one{ClaimRule::Fixed1, StringRule::CopyOutcomes};
  return {"coin-flip", CommandModel::Global, {{0.5, basis_angle(0), zero, zero}, {0.5, basis_angle(1), one, one}}};
}

AttackStrategy honest_strategy(int b) {
  if (b != 0 && b != 1) throw InputError("bit value must be 0 or 1");
  const AgentRule rule{b == 0 ? ClaimRule::Fixed0 : ClaimRule::Fixed1, StringRule::CopyOutcomes};
  return {"honest-" + std::to_string(b), CommandModel::Global, {{1.0, basis_angle(b), rule, rule}}};
}

AttackStrategy honest_bob_guessing_brian() {
  return {"honest-bob-guessing-brian",
          CommandModel::Global,
          {{1.0, basis_angle(0), {ClaimRule::FollowCommand, StringRule::CopyOutcomes},
            {ClaimRule::FollowCommand, StringRule::UniformGuess}}}};
}

std::vector<AttackStrategy> standard_attacks() {
  std::vector<AttackStrategy> out;
  for (int k = 0; k <= 8; ++k) {
    auto s = intermediate_basis_strategy(k * std::numbers::pi / 32);
    s.name += "-" + std::to_string(k) + "pi/32";
    out.push_back(s);
  }
  out.push_back(coin_flip_strategy());
  out.push_back(honest_strategy(0));
  out.push_back(honest_strategy(1));
  out.push_back(honest_bob_guessing_brian());
  return out;
}

double round_agreement(double theta, Basis alice_basis) {
  const auto p = round_joint(theta, alice_basis);
  return p[0][0] + p[1][1];
}

JointOutcomeTable analytic_table(const AttackStrategy& strategy, std::size_t n) {
  validate_strategy(strategy);
  if (n == 0) throw InputError("attack needs n >= 1");
  JointOutcomeTable::Entries e{};
  for (int x = 0; x < 2; ++x) {
    for (int xp = 0; xp < 2; ++xp) {
      CellProbabilities cell;
      for (const auto& c : strategy.components) {
        const auto part = component_cell(c, n, x, xp);
        cell.bob += c.weight * part.bob;
        cell.brian += c.weight * part.brian;
        cell.both += c.weight * part.both;
      }
      e[JointOutcomeTable::index(x, xp, Flag::Accept, Flag::Accept)] = cell.both;
      e[JointOutcomeTable::index(x, xp, Flag::Accept, Flag::Reject)] = std::max(0.0, cell.bob - cell.both);
      e[JointOutcomeTable::index(x, xp, Flag::Reject, Flag::Accept)] = std::max(0.0, cell.brian - cell.both);
      e[JointOutcomeTable::index(x, xp, Flag::Reject, Flag::Reject)] =
          std::max(0.0, 1.0 - cell.bob - cell.brian + cell.both);
    }
  }
  return JointOutcomeTable(e);
}

AlphaDecomposition alpha_decomposition_check(const AttackStrategy& strategy, std::size_t n) {
  validate_strategy(strategy);
  if (n == 0) throw InputError("attack needs n >= 1");
  AlphaDecomposition out;
  out.delta = binding_epsilon(n).delta_star;
  const auto far = static_cast<std::size_t>(std::ceil(out.delta * static_cast<double>(n) - 1e-9));

  double joint_from_posterior = 0.0;
  for (const auto& c : strategy.components) {
    out.alpha_direct += c.weight * component_cell(c, n, 0, 1).both;

    // Bob opens 0 (checks Z), Brian opens 1 (checks X).
    const auto kb = claim_for(c.bob.claim, 0);
    const auto kr = claim_for(c.brian.claim, 1);
    if (!kb || *kb != 0) continue;
    RoundJoint pz = round_joint(c.theta, Basis::Computational);
    RoundJoint px = round_joint(c.theta, Basis::Hadamard);
    const double p_c = partition_average(n, round_event(pz, true, c.bob.string, false, c.brian.string), 1.0);
    if (p_c <= 0.0) continue;
    // Conditioned on Bob passing, Z rounds follow the agreement-conditioned law; X rounds are untouched.
    const RoundJoint pz_pass = condition_on(pz, c.bob.string);
    double brian_c = 0.0;
    if (kr && *kr == 1) {
      brian_c = partition_average(n, round_event(pz_pass, false, c.bob.string, false, c.brian.string),
                                  round_event(px, false, c.bob.string, true, c.brian.string));
    }
    out.pass_probability += c.weight * p_c;
    joint_from_posterior += c.weight * p_c * brian_c;

    const double disagree = 1.0 - round_event(px, false, c.bob.string, true, c.brian.string);
    out.far_given_pass += c.weight * p_c * binomial_upper_tail(n, disagree, far);
  }
  if (out.pass_probability > 0.0) {
    out.brian_given_pass = joint_from_posterior / out.pass_probability;
    out.far_given_pass /= out.pass_probability;
  }
  out.alpha_factored = out.pass_probability * out.brian_given_pass;
  return out;
}

void TableCounts::merge(const TableCounts& other) {
  for (std::size_t i = 0; i < cells.size(); ++i) cells[i] += other.cells[i];
  trials += other.trials;
}

JointOutcomeTable TableCounts::table() const {
  if (trials == 0) throw InputError("no trials recorded");
  JointOutcomeTable::Entries e{};
  for (std::size_t i = 0; i < cells.size(); ++i) e[i] = static_cast<double>(cells[i]) / static_cast<double>(trials);
  return JointOutcomeTable(e);
}

StrategyCommitter::StrategyCommitter(AttackStrategy strategy) : strategy_(std::move(strategy)) {
  validate_strategy(strategy_);
}

void StrategyCommitter::commit(EprLab& lab, std::size_t n, SplitRng& rng) {
  double u = rng.uniform();
  chosen_ = strategy_.components.size() - 1;
  for (std::size_t k = 0; k < strategy_.components.size(); ++k) {
    if (u < strategy_.components[k].weight) {
      chosen_ = k;
      break;
    }
    u -= strategy_.components[k].weight;
  }
  const double theta = strategy_.components[chosen_].theta;
  t_ = BitString(2 * n);
  for (std::size_t i = 0; i < 2 * n; ++i) t_.set(i, lab.measure_bob(i, theta));
}

KentOpening StrategyCommitter::open(const AgentRule& rule, std::optional<int> command, SplitRng& rng) const {
  KentOpening o;
  o.bit = claim_for(rule.claim, command.value_or(0)).value_or(0);
  if (rule.string == StringRule::CopyOutcomes) {
    o.outcomes = t_;
  } else {
    o.outcomes = BitString(t_.size());
    for (std::size_t i = 0; i < t_.size(); ++i) o.outcomes.set(i, rng.bit());
  }
  return o;
}

std::optional<KentOpening> StrategyCommitter::open_bob(std::optional<int> command, SplitRng& rng) const {
  return open(strategy_.components[chosen_].bob, command, rng);
}

std::optional<KentOpening> StrategyCommitter::open_brian(std::optional<int> command, SplitRng& rng) const {
  return open(strategy_.components[chosen_].brian, command, rng);
}

TableCounts sample_attack_table(const AttackStrategy& strategy, std::size_t n, std::uint64_t seed,
                                std::uint64_t first, std::uint64_t count, const KentOptions& options) {
  validate_strategy(strategy);
  if (n == 0) throw InputError("attack needs n >= 1");
  const SplitRng root(seed);
  TableCounts counts;
  for (std::uint64_t k = first; k < first + count; ++k) {
    const SplitRng trial = root.split(k);
    SplitRng lab_rng = trial.split(0);
    SplitRng partition_rng = trial.split(3);
    SplitRng commit_rng = trial.split(4);

    KentInstance inst;
    inst.n = n;
    inst.partition = sample_partition(n, partition_rng);
    inst.s = BitString(2 * n);
    EprLab lab = [&] {
      if (options.variant == KentVariant::Purified) return EprLab(2 * n, options.mode, lab_rng);
      std::vector<Basis> bases(2 * n, Basis::Computational);
      for (auto i : inst.partition.x) bases[i] = Basis::Hadamard;
      return EprLab::prepared(bases, options.mode, lab_rng);
    }();
    StrategyCommitter committer(strategy);
    committer.commit(lab, n, commit_rng);
    for (auto i : inst.partition.z) inst.s.set(i, lab.measure_alice(i, Basis::Computational));
    for (auto i : inst.partition.x) inst.s.set(i, lab.measure_alice(i, Basis::Hadamard));

    std::array<bool, 2> bob_pass{}, brian_pass{};
    for (int x = 0; x < 2; ++x) {
      SplitRng bob_rng = trial.split(1);
      SplitRng brian_rng = trial.split(2);
      const std::optional<int> brian_command =
          strategy.command == CommandModel::Global ? std::optional<int>(x) : std::nullopt;
      bob_pass[static_cast<std::size_t>(x)] = passes(inst, committer.open_bob(x, bob_rng), x);
      brian_pass[static_cast<std::size_t>(x)] = passes(inst, committer.open_brian(brian_command, brian_rng), x);
    }
    for (int x = 0; x < 2; ++x) {
      for (int xp = 0; xp < 2; ++xp) {
        const Flag f = bob_pass[static_cast<std::size_t>(x)] ? Flag::Accept : Flag::Reject;
        const Flag g = brian_pass[static_cast<std::size_t>(xp)] ? Flag::Accept : Flag::Reject;
        ++counts.cells[JointOutcomeTable::index(x, xp, f, g)];
      }
    }
    ++counts.trials;
  }
  return counts;
}

SampledEstimate estimate_from(const TableCounts& counts) {
  const auto table = counts.table();
  SampledEstimate s;
  s.trials = counts.trials;
  const double t = static_cast<double>(counts.trials);
  s.p0 = table.p(0);
  s.p1 = table.p(1);
  s.alpha = table.alpha();
  s.se_p0 = std::sqrt(s.p0 * (1 - s.p0) / t);
  s.se_p1 = std::sqrt(s.p1 * (1 - s.p1) / t);
  s.se_alpha = std::sqrt(s.alpha * (1 - s.alpha) / t);
  return s;
}

void attach_sampled(AttackReport& report, const TableCounts& counts) {
  report.sampled = estimate_from(counts);
  const double sigma = std::hypot(report.sampled->se_p0, report.sampled->se_p1);
  report.satisfied =
      report.satisfied && report.sampled->p0 + report.sampled->p1 <= 1.0 + report.bound + 3.0 * sigma + 1e-12;
}

AttackReport evaluate_attack(const AttackStrategy& strategy, std::size_t n, std::uint64_t trials, std::uint64_t seed) {
  const auto table = analytic_table(strategy, n);
  const auto bound = binding_epsilon(n);
  AttackReport r;
  r.name = strategy.name;
  r.n = n;
  r.p0 = table.p(0);
  r.p1 = table.p(1);
  r.alpha = table.alpha();
  r.pass_probability = table.bob_accept(0, 0);
  r.bound = bound.epsilon;
  r.delta_star = bound.delta_star;
  r.satisfied = r.p0 + r.p1 <= 1.0 + r.bound + 1e-12 && r.alpha <= r.bound + 1e-12;
  if (trials > 0) attach_sampled(r, sample_attack_table(strategy, n, seed, 0, trials));
  return r;
}

AttackReport intermediate_basis_attack(std::size_t n, double theta, std::uint64_t trials, std::uint64_t seed) {
  return evaluate_attack(intermediate_basis_strategy(theta), n, trials, seed);
}

AttackReport coin_flip_attack(std::size_t n, std::uint64_t trials, std::uint64_t seed) {
  return evaluate_attack(coin_flip_strategy(), n, trials, seed);
}

}  // namespace relcommit
