#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "relcommit/adversaries/attacks.hpp"
#include "relcommit/harness/serialization.hpp"
#include "relcommit/spacetime/split_model.hpp"

namespace relcommit {

enum class ProtocolKind { SecretSharing, LocalCommand, Kent };
enum class OutputFormat { Csv, Json };

std::string_view protocol_name(ProtocolKind p);
ProtocolKind parse_protocol(std::string_view name);
std::string_view format_name(OutputFormat f);
OutputFormat parse_format(std::string_view name);

/// Named attack. kind is one of intermediate-basis, coin-flip, honest,
/// honest-bob-guessing-brian; theta and bit are read only by the kinds that use them.
struct AttackSpec {
  std::string kind = "intermediate-basis";
  double theta = 0.0;
  int bit = 0;
  friend bool operator==(const AttackSpec&, const AttackSpec&) = default;
};

/// Builds the strategy and applies the command model; throws InputError.
AttackStrategy strategy_from_spec(const AttackSpec& spec, CommandModel command);

struct ExperimentConfig {
  ProtocolKind protocol = ProtocolKind::Kent;
  SplitModel split{SplitKind::Beta, CommandModel::Global};
  std::size_t n = 8;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;
  int bit = 0;  // committed bit for honest runs
  std::optional<AttackSpec> attack;
  std::string out;  // empty: standard output
  OutputFormat format = OutputFormat::Json;
  std::string transcript_log;  // empty: no per-trial log
  unsigned threads = 1;
  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// The split each protocol runs under.
SplitKind required_split(ProtocolKind protocol);

/// Throws InputError naming the first bad field.
void validate_config(const ExperimentConfig& config);

/// seed is required; every other field has the default above. Unknown keys are rejected.
ExperimentConfig config_from_json(const Json& j);
Json to_json(const ExperimentConfig& config);

ExperimentConfig load_config(const std::string& path);

}  // namespace relcommit
