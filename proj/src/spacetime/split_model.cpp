#include "relcommit/spacetime/split_model.hpp"

#include <array>
#include <utility>

#include "relcommit/errors.hpp"

namespace relcommit {

namespace {

template <typename T, std::size_t N>
T parse_named(std::string_view name, const std::array<std::pair<std::string_view, T>, N>& table, const char* what) {
  for (const auto& [n, v] : table) {
    if (n == name) return v;
  }
  throw InputError(std::string("unknown ") + what + " '" + std::string(name) + "'");
}

template <typename T, std::size_t N>
std::string_view name_of(T value, const std::array<std::pair<std::string_view, T>, N>& table) {
  for (const auto& [n, v] : table) {
    if (v == value) return n;
  }
  return "?";
}

constexpr std::array<std::pair<std::string_view, Phase>, 4> kPhases{
    {{"commit", Phase::Commit}, {"wait", Phase::Wait}, {"open", Phase::Open}, {"verify", Phase::Verify}}};
constexpr std::array<std::pair<std::string_view, AgentId>, 5> kAgents{
    {{"Alice", kAlice}, {"Amy", kAmy}, {"Bob", kBob}, {"Brian", kBrian}, {"Victor", kVictor}}};
constexpr std::array<std::pair<std::string_view, SplitKind>, 3> kSplits{
    {{"none", SplitKind::None}, {"alpha", SplitKind::Alpha}, {"beta", SplitKind::Beta}}};
constexpr std::array<std::pair<std::string_view, CommandModel>, 2> kCommands{
    {{"local", CommandModel::Local}, {"global", CommandModel::Global}}};

}  // namespace

std::string_view phase_name(Phase phase) { return name_of(phase, kPhases); }
Phase parse_phase(std::string_view name) { return parse_named(name, kPhases, "phase"); }
std::string_view agent_name(AgentId agent) { return name_of(agent, kAgents); }
AgentId parse_agent(std::string_view name) { return parse_named(name, kAgents, "agent"); }
std::string_view split_name(SplitKind kind) { return name_of(kind, kSplits); }
SplitKind parse_split(std::string_view name) { return parse_named(name, kSplits, "split model"); }
std::string_view command_name(CommandModel command) { return name_of(command, kCommands); }
CommandModel parse_command(std::string_view name) { return parse_named(name, kCommands, "command model"); }

std::optional<Party> split_party(SplitModel model, Phase phase) {
  switch (model.kind) {
    case SplitKind::Alpha:
      if (phase == Phase::Commit || phase == Phase::Wait) return Party::Alice;
      break;
    case SplitKind::Beta:
      if (phase == Phase::Wait || phase == Phase::Open) return Party::Bob;
      break;
    case SplitKind::None:
      break;
  }
  return std::nullopt;
}

bool forbidden_edge(SplitModel model, Phase phase, AgentId a, AgentId b) {
  const auto party = split_party(model, phase);
  return party && a.party == *party && b.party == *party && a.role != b.role;
}

}  // namespace relcommit
