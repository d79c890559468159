#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "relcommit/adversaries/attacks.hpp"
#include "relcommit/adversaries/classical_attacks.hpp"
#include "relcommit/adversaries/outcome_table.hpp"
#include "relcommit/bounds/binding.hpp"
#include "relcommit/protocols/transcript.hpp"

namespace relcommit {

using Json = nlohmann::ordered_json;

/// Bumped whenever a column or field name changes.
inline constexpr int kSchemaVersion = 1;

/// Round-trip decimal form of a double (%.17g).
std::string format_double(double value);

/// Parses a double written by format_double; throws InputError.
double parse_double(std::string_view text);

/// Comma-separated rows with a header line; fields never contain commas or quotes.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> row_lines;  // 1-based source line of each row (parsed tables only)
};

std::string write_csv(const CsvTable& table);

/// Blank lines and lines starting with '#' are skipped. Throws InputError with the line number.
CsvTable parse_csv(std::string_view text);

Json to_json(const BoundReport& report);
BoundReport bound_report_from_json(const Json& j);
CsvTable bounds_csv(const std::vector<BoundReport>& reports);
std::vector<BoundReport> bounds_from_csv(const CsvTable& csv);

Json to_json(const JointOutcomeTable& table);
JointOutcomeTable table_from_json(const Json& j);

/// 16 rows: b, b_prime, bob, brian, probability.
CsvTable table_csv(const JointOutcomeTable& table);
JointOutcomeTable table_from_csv(const CsvTable& csv);

/// Detects JSON by a leading '{'; otherwise reads CSV. Throws InputError with line info.
JointOutcomeTable parse_table(std::string_view text);

Json to_json(const SampledEstimate& estimate);
Json to_json(const AttackReport& report);
AttackReport attack_report_from_json(const Json& j);
CsvTable attacks_csv(const std::vector<AttackReport>& reports);

Json to_json(const ComposabilityResult& result, std::size_t n);

Json to_json(const ProtocolTranscript& transcript);

}  // namespace relcommit
