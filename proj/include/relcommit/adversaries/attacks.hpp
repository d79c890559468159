#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "relcommit/adversaries/outcome_table.hpp"
#include "relcommit/protocols/kent.hpp"

namespace relcommit {

enum class ClaimRule { FollowCommand, Fixed0, Fixed1 };
enum class StringRule { CopyOutcomes, UniformGuess };

/// What one agent sends at open time, from the data it kept at the split.
struct AgentRule {
  ClaimRule claim = ClaimRule::FollowCommand;
  StringRule string = StringRule::CopyOutcomes;
};

/// Bob measures every half at angle theta before the split; each agent then
/// follows its rule. Components are mixed with shared randomness fixed at commit.
struct AttackComponent {
  double weight = 1.0;
  double theta = 0.0;
  AgentRule bob;
  AgentRule brian;
};

struct AttackStrategy {
  std::string name;
  CommandModel command = CommandModel::Global;
  std::vector<AttackComponent> components;
};

/// Throws InputError on bad weights or a command-dependent Brian under the local model.
void validate_strategy(const AttackStrategy& strategy);

AttackStrategy intermediate_basis_strategy(double theta);
AttackStrategy coin_flip_strategy();
AttackStrategy honest_strategy(int b);
AttackStrategy honest_bob_guessing_brian();

/// Nine intermediate angles k pi/32, coin flip, and the honest baselines.
std::vector<AttackStrategy> standard_attacks();

/// Probability that a copied outcome agrees with Alice's result in one round
/// when Bob measured at theta and Alice in the given basis.
double round_agreement(double theta, Basis alice_basis);

/// Exact table from per-round probabilities and the uniform partition.
JointOutcomeTable analytic_table(const AttackStrategy& strategy, std::size_t n);

struct AlphaDecomposition {
  double alpha_direct = 0.0;      // joint event computed round by round
  double alpha_factored = 0.0;    // p * Pr[Brian passes | Bob passed]
  double pass_probability = 0.0;  // p: Bob passes when opening 0
  double brian_given_pass = 0.0;
  double delta = 0.0;             // delta used for the diagnostic below
  double far_given_pass = 0.0;    // Pr[Brian's X string is delta n far from Alice's | Bob passed]
};

AlphaDecomposition alpha_decomposition_check(const AttackStrategy& strategy, std::size_t n);

/// Counts over the 16 table cells; every trial fills all four input pairs
/// from one commit, each agent reusing its own stream across its inputs.
struct TableCounts {
  std::array<std::uint64_t, 16> cells{};
  std::uint64_t trials = 0;
  void merge(const TableCounts& other);
  JointOutcomeTable table() const;
};

/// Kent-protocol committer driven by a strategy.
class StrategyCommitter final : public KentCommitter {
 public:
  explicit StrategyCommitter(AttackStrategy strategy);
  void commit(EprLab& lab, std::size_t n, SplitRng& rng) override;
  std::optional<KentOpening> open_bob(std::optional<int> command, SplitRng& rng) const override;
  std::optional<KentOpening> open_brian(std::optional<int> command, SplitRng& rng) const override;

  std::size_t chosen_component() const noexcept { return chosen_; }

 private:
  KentOpening open(const AgentRule& rule, std::optional<int> command, SplitRng& rng) const;

  AttackStrategy strategy_;
  std::size_t chosen_ = 0;
  BitString t_;
};

/// Trials [first, first + count) of the experiment seeded with seed.
TableCounts sample_attack_table(const AttackStrategy& strategy, std::size_t n, std::uint64_t seed,
                                std::uint64_t first, std::uint64_t count, const KentOptions& options = {});

struct SampledEstimate {
  std::uint64_t trials = 0;
  double p0 = 0.0, p1 = 0.0, alpha = 0.0;
  double se_p0 = 0.0, se_p1 = 0.0, se_alpha = 0.0;
};

SampledEstimate estimate_from(const TableCounts& counts);

struct AttackReport {
  std::string name;
  std::size_t n = 0;
  double p0 = 0.0;
  double p1 = 0.0;
  double alpha = 0.0;
  double pass_probability = 0.0;
  double bound = 0.0;  // binding parameter at n
  double delta_star = 0.0;
  bool satisfied = false;
  std::optional<SampledEstimate> sampled;
};

/// Adds a sampled estimate and folds its 3-sigma check into satisfied.
void attach_sampled(AttackReport& report, const TableCounts& counts);

/// Analytic report, with a Monte-Carlo cross-check when trials > 0.
AttackReport evaluate_attack(const AttackStrategy& strategy, std::size_t n, std::uint64_t trials, std::uint64_t seed);

AttackReport intermediate_basis_attack(std::size_t n, double theta, std::uint64_t trials, std::uint64_t seed);
AttackReport coin_flip_attack(std::size_t n, std::uint64_t trials, std::uint64_t seed);

}  // namespace relcommit
