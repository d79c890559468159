#include "relcommit/harness/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "relcommit/errors.hpp"

namespace relcommit {

std::string_view protocol_name(ProtocolKind p) {
  switch (p) {
    case ProtocolKind::SecretSharing:
      return "secret_sharing";
    case ProtocolKind::LocalCommand:
      return "local_command";
    case ProtocolKind::Kent:
      return "kent";
  }
  return "?";
}

ProtocolKind parse_protocol(std::string_view name) {
  for (auto p : {ProtocolKind::SecretSharing, ProtocolKind::LocalCommand, ProtocolKind::Kent})
    if (protocol_name(p) == name) return p;
  throw InputError("unknown protocol '" + std::string(name) + "'");
}

std::string_view format_name(OutputFormat f) { return f == OutputFormat::Csv ? "csv" : "json"; }

OutputFormat parse_format(std::string_view name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw InputError("unknown format '" + std::string(name) + "'");
}

AttackStrategy strategy_from_spec(const AttackSpec& spec, CommandModel command) {
  AttackStrategy s;
  if (spec.kind == "intermediate-basis") {
    s = intermediate_basis_strategy(spec.theta);
  } else if (spec.kind == "coin-flip") {
    s = coin_flip_strategy();
  } else if (spec.kind == "honest") {
    s = honest_strategy(spec.bit);
  } else if (spec.kind == "honest-bob-guessing-brian") {
    s = honest_bob_guessing_brian();
  } else {
    throw InputError("unknown attack '" + spec.kind + "'");
  }
  s.command = command;
  validate_strategy(s);
  return s;
}

SplitKind required_split(ProtocolKind protocol) {
  return protocol == ProtocolKind::SecretSharing ? SplitKind::Alpha : SplitKind::Beta;
}

void validate_config(const ExperimentConfig& c) {
  if (c.n < 1) throw InputError("n must be at least 1");
  if (c.trials < 1) throw InputError("trials must be at least 1");
  if (c.bit != 0 && c.bit != 1) throw InputError("bit must be 0 or 1");
  if (c.threads < 1) throw InputError("threads must be at least 1");
  if (c.split.kind != required_split(c.protocol)) {
    throw InputError(std::string(protocol_name(c.protocol)) + " runs under the " +
                     std::string(split_name(required_split(c.protocol))) + " split");
  }
  if (c.attack) {
    if (c.protocol != ProtocolKind::Kent) throw InputError("attacks are defined for the kent protocol only");
    (void)strategy_from_spec(*c.attack, c.split.command);
  }
}

ExperimentConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("config must be a JSON object");
  static const std::set<std::string> known{"schema_version", "protocol", "split",          "command", "n",
                                           "trials",         "seed",     "bit",            "attack",  "output",
                                           "transcript_log", "threads"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw InputError("unknown config key '" + key + "'");
  }
  if (j.contains("schema_version") && j.at("schema_version").get<int>() != kSchemaVersion) {
    throw InputError("unsupported config schema_version");
  }
  if (!j.contains("seed")) throw InputError("config must set seed explicitly");
  try {
    ExperimentConfig c;
    c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("protocol")) c.protocol = parse_protocol(j.at("protocol").get<std::string>());
    c.split.kind = required_split(c.protocol);
    if (j.contains("split")) c.split.kind = parse_split(j.at("split").get<std::string>());
    if (j.contains("command")) c.split.command = parse_command(j.at("command").get<std::string>());
    if (c.protocol == ProtocolKind::LocalCommand && !j.contains("command")) c.split.command = CommandModel::Local;
    if (j.contains("n")) c.n = j.at("n").get<std::size_t>();
    if (j.contains("trials")) c.trials = j.at("trials").get<std::uint64_t>();
    if (j.contains("bit")) c.bit = j.at("bit").get<int>();
    if (j.contains("threads")) c.threads = j.at("threads").get<unsigned>();
    if (j.contains("transcript_log")) c.transcript_log = j.at("transcript_log").get<std::string>();
    if (j.contains("attack") && !j.at("attack").is_null()) {
      const auto& a = j.at("attack");
      AttackSpec spec;
      spec.kind = a.at("kind").get<std::string>();
      if (a.contains("theta")) spec.theta = a.at("theta").get<double>();
      if (a.contains("bit")) spec.bit = a.at("bit").get<int>();
      c.attack = spec;
    }
    if (j.contains("output")) {
      const auto& o = j.at("output");
      if (o.contains("path")) c.out = o.at("path").get<std::string>();
      if (o.contains("format")) c.format = parse_format(o.at("format").get<std::string>());
    }
    validate_config(c);
    return c;
  } catch (const Json::exception& e) {
    throw InputError(std::string("bad config: ") + e.what());
  }
}

Json to_json(const ExperimentConfig& c) {
  Json j{{"schema_version", kSchemaVersion},
         {"protocol", std::string(protocol_name(c.protocol))},
         {"split", std::string(split_name(c.split.kind))},
         {"command", std::string(command_name(c.split.command))},
         {"n", c.n},
         {"trials", c.trials},
         {"seed", c.seed},
         {"bit", c.bit}};
  j["attack"] = c.attack ? Json{{"kind", c.attack->kind}, {"theta", c.attack->theta}, {"bit", c.attack->bit}}
                         : Json(nullptr);
  return j;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read config '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  Json j;
  try {
    j = Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": malformed JSON: " + e.what());
  }
  return config_from_json(j);
}

}  // namespace relcommit
