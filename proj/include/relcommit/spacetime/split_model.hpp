#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace relcommit {

enum class Phase : std::uint8_t { Commit = 0, Wait = 1, Open = 2, Verify = 3 };

std::string_view phase_name(Phase phase);
Phase parse_phase(std::string_view name);

enum class Party : std::uint8_t { Alice, Bob, Victor };
enum class Role : std::uint8_t { Principal, Agent };

/// Alice/Amy and Bob/Brian are the two agents of each party; Victor issues global commands.
struct AgentId {
  Party party = Party::Alice;
  Role role = Role::Principal;
  friend auto operator<=>(const AgentId&, const AgentId&) = default;
};

inline constexpr AgentId kAlice{Party::Alice, Role::Principal};
inline constexpr AgentId kAmy{Party::Alice, Role::Agent};
inline constexpr AgentId kBob{Party::Bob, Role::Principal};
inline constexpr AgentId kBrian{Party::Bob, Role::Agent};
inline constexpr AgentId kVictor{Party::Victor, Role::Principal};

std::string_view agent_name(AgentId agent);
AgentId parse_agent(std::string_view name);

enum class SplitKind : std::uint8_t { None, Alpha, Beta };
enum class CommandModel : std::uint8_t { Local, Global };

struct SplitModel {
  SplitKind kind = SplitKind::None;
  CommandModel command = CommandModel::Local;  // only meaningful for Beta
  friend bool operator==(const SplitModel&, const SplitModel&) = default;
};

std::string_view split_name(SplitKind kind);
SplitKind parse_split(std::string_view name);
std::string_view command_name(CommandModel command);
CommandModel parse_command(std::string_view name);

/// The party whose agents are separated in this phase, if any.
std::optional<Party> split_party(SplitModel model, Phase phase);

/// True if a message between the two agents is forbidden in the phase.
bool forbidden_edge(SplitModel model, Phase phase, AgentId a, AgentId b);

}  // namespace relcommit
