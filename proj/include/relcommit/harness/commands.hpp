#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "relcommit/harness/config.hpp"
#include "relcommit/spacetime/validate.hpp"

namespace relcommit {

/// A run produced transcripts that break the split rules (exit code 2).
class ValidationFailure : public std::runtime_error {
 public:
  ValidationFailure(std::string message, std::vector<Violation> violations)
      : std::runtime_error(std::move(message)), violations_(std::move(violations)) {}
  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  std::vector<Violation> violations_;
};

/// Seed handed to the protocol runner for trial k: first output of SplitRng(seed).split(k).
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t k);

// ---------------------------------------------------------------------------

std::vector<BoundReport> cmd_bounds(const std::vector<std::size_t>& n_list);
std::string render_bounds(const std::vector<BoundReport>& reports, OutputFormat format);

struct RunSummary {
  ExperimentConfig config;
  std::uint64_t accept_count = 0;  // honest: accepted trials; attacked: trials opening config.bit successfully
  double accept_rate = 0.0;
  double se_accept_rate = 0.0;
  std::optional<AttackReport> attack;  // analytic values plus the sampled estimate
  double wall_seconds = 0.0;           // not rendered
};

/// Runs config.trials seeded trials, split into fixed chunks across config.threads
/// workers and merged in trial order. Honest transcripts are checked against the
/// split rules; any violation throws ValidationFailure.
RunSummary cmd_simulate(const ExperimentConfig& config);
std::string render_summary(const RunSummary& summary, OutputFormat format);

struct AttackRequest {
  std::string attack = "all";  // a kind accepted by strategy_from_spec, "all", or "classical-global"
  std::size_t n = 16;
  double theta = 0.0;
  int bit = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  CommandModel command = CommandModel::Global;
};

std::vector<AttackReport> cmd_attack(const AttackRequest& request);
std::string render_attacks(const std::vector<AttackReport>& reports, OutputFormat format);

/// True when a protocol-3 attack exceeds its bound; the classical demo is expected to break binding.
bool attack_violates_bound(const AttackReport& report);

struct NosigReport {
  JointOutcomeTable table;
  std::vector<SignallingViolation> violations;
  std::optional<OpeningSumCheck> opening_sum;  // only for no-signalling tables
  bool ok() const { return violations.empty() && opening_sum && opening_sum->holds; }
};

NosigReport cmd_nosig_check_text(const std::string& text);
NosigReport cmd_nosig_check(const std::string& path);
std::string render_nosig(const NosigReport& report, OutputFormat format);

std::string render_composability(const std::vector<std::size_t>& n_list, OutputFormat format);

/// Writes to path, or standard output when path is empty.
void write_output(const std::string& content, const std::string& path);

}  // namespace relcommit
