#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "relcommit/protocols/transcript.hpp"
#include "relcommit/quantum/rng.hpp"
#include "relcommit/quantum/state.hpp"

namespace relcommit {

// ---------------------------------------------------------------------------
// Secret sharing under the alpha split

/// Guess of the committed bit made by Alice or Amy from her own share before reuniting.
using ShareGuess = std::function<int(AgentId agent, int share, SplitRng& rng)>;

struct SecretSharingRun {
  ProtocolTranscript transcript;
  int opened_bit = 0;
  std::optional<int> alice_guess;
  std::optional<int> amy_guess;
};

/// Bob sends b xor r to Alice and r to Amy; they reconstruct b when they reunite.
SecretSharingRun run_secret_sharing(int b, const std::optional<ShareGuess>& adversary, std::uint64_t seed);

/// Committed bit paired with what Alice and Amy jointly hold, one classical qubit each.
CqEnsemble secret_sharing_ensemble();

/// Committed bit paired with what one agent (Alice or Amy) holds.
CqEnsemble secret_sharing_agent_ensemble(AgentId agent);

// ---------------------------------------------------------------------------
// Pre-agreed bit under the beta split

/// Bob and Brian agree on `shared` at commit time and answer independently at open time.
/// Brian sees the command only under the global model.
struct LocalCommandStrategy {
  std::function<std::uint64_t(SplitRng& rng)> share;
  std::function<int(int command, std::uint64_t shared, SplitRng& rng)> bob;
  std::function<int(std::optional<int> command, std::uint64_t shared, SplitRng& rng)> brian;
  std::optional<int> committed_bit;  // set for honest strategies
};

LocalCommandStrategy honest_local_strategy(int b);

struct LocalCommandRun {
  ProtocolTranscript transcript;
  int bob_bit = 0;
  int brian_bit = 0;
};

/// Alice accepts iff both submitted bits equal the command bit.
LocalCommandRun run_local_command(const LocalCommandStrategy& strategy, int command_bit, std::uint64_t seed,
                                  CommandModel command_model = CommandModel::Local);

}  // namespace relcommit
