#include "relcommit/protocols/classical.hpp"

#include "relcommit/errors.hpp"

namespace relcommit {

namespace {

int require_bit(int b) {
  if (b != 0 && b != 1) throw InputError("bit value must be 0 or 1");
  return b;
}

BitString one_bit(int b) { return BitString(std::vector<std::uint8_t>{static_cast<std::uint8_t>(b)}); }

BitString value_bits(std::uint64_t v) {
  BitString out;
  do {
    out.push_back(static_cast<int>(v & 1));
    v >>= 1;
  } while (v != 0);
  return out;
}

DensityOperator classical_pair(int a, int a_prime) {
  BitString bits;
  bits.push_back(a);
  bits.push_back(a_prime);
  return DensityOperator::from_pure(StateVector::basis_state(make_qubit_ids(0, 2), bits));
}

}  // namespace

SecretSharingRun run_secret_sharing(int b, const std::optional<ShareGuess>& adversary, std::uint64_t seed) {
  require_bit(b);
  SplitRng root(seed);
  SplitRng bob_rng = root.split(1);
  const int r = bob_rng.bit();

  SecretSharingRun run{ProtocolTranscript("secret-sharing", SplitModel{SplitKind::Alpha, CommandModel::Local}), 0,
                       std::nullopt, std::nullopt};
  auto& tr = run.transcript;
  tr.set_committed_bit(b);
  tr.append({Phase::Commit, kBob, kAlice, "share", one_bit(b ^ r), std::nullopt, std::nullopt});
  tr.append({Phase::Commit, kBob, kAmy, "share", one_bit(r), std::nullopt, std::nullopt});

  if (adversary) {
    SplitRng alice_rng = root.split(2);
    SplitRng amy_rng = root.split(3);
    run.alice_guess = (*adversary)(kAlice, b ^ r, alice_rng);
    run.amy_guess = (*adversary)(kAmy, r, amy_rng);
  }

  tr.append({Phase::Open, kAmy, kAlice, "share", one_bit(r), std::nullopt, std::nullopt});
  run.opened_bit = (b ^ r) ^ r;
  tr.set_opened_bit(run.opened_bit);
  tr.set_flag(Flag::Accept);
  return run;
}

CqEnsemble secret_sharing_ensemble() {
  std::vector<CqEntry> entries;
  for (int d = 0; d < 2; ++d) {
    Eigen::MatrixXcd rho = 0.5 * classical_pair(0, d).matrix() + 0.5 * classical_pair(1, 1 - d).matrix();
    entries.push_back({std::to_string(d), 0.5, DensityOperator(rho, make_qubit_ids(0, 2))});
  }
  return CqEnsemble(entries);
}

CqEnsemble secret_sharing_agent_ensemble(AgentId agent) {
  if (agent != kAlice && agent != kAmy) throw InputError("only Alice and Amy hold shares");
  const std::vector<QubitId> keep{agent == kAlice ? QubitId{0} : QubitId{1}};
  std::vector<CqEntry> entries;
  const auto joint = secret_sharing_ensemble();
  for (const auto& e : joint.entries()) {
    entries.push_back({e.label, e.probability, partial_trace(e.state, keep)});
  }
  return CqEnsemble(entries);
}

LocalCommandStrategy honest_local_strategy(int b) {
  require_bit(b);
  return {[b](SplitRng&) { return static_cast<std::uint64_t>(b); },
          [](int, std::uint64_t shared, SplitRng&) { return static_cast<int>(shared); },
          [](std::optional<int>, std::uint64_t shared, SplitRng&) { return static_cast<int>(shared); }, b};
}

LocalCommandRun run_local_command(const LocalCommandStrategy& strategy, int command_bit, std::uint64_t seed,
                                  CommandModel command_model) {
  require_bit(command_bit);
  SplitRng root(seed);
  SplitRng commit_rng = root.split(0);
  SplitRng bob_rng = root.split(1);
  SplitRng brian_rng = root.split(2);

  LocalCommandRun run{ProtocolTranscript("local-command", SplitModel{SplitKind::Beta, command_model}), 0, 0};
  auto& tr = run.transcript;

  if (strategy.committed_bit) tr.set_committed_bit(*strategy.committed_bit);
  const std::uint64_t shared = strategy.share(commit_rng);
  tr.append({Phase::Commit, kBob, kBrian, "shared", value_bits(shared), std::nullopt, std::nullopt});

  tr.append({Phase::Open, kVictor, kBob, "command", one_bit(command_bit), std::nullopt, std::nullopt});
  std::optional<int> brian_command;
  if (command_model == CommandModel::Global) {
    tr.append({Phase::Open, kVictor, kBrian, "command", one_bit(command_bit), std::nullopt, std::nullopt});
    brian_command = command_bit;
  }
  run.bob_bit = require_bit(strategy.bob(command_bit, shared, bob_rng));
  run.brian_bit = require_bit(strategy.brian(brian_command, shared, brian_rng));
  tr.append({Phase::Open, kBob, kAlice, "claim", one_bit(run.bob_bit), std::nullopt, std::nullopt});
  tr.append({Phase::Open, kBrian, kAlice, "claim", one_bit(run.brian_bit), std::nullopt, std::nullopt});

  const bool accept = run.bob_bit == command_bit && run.brian_bit == command_bit;
  if (accept) tr.set_opened_bit(command_bit);
  tr.set_flag(accept ? Flag::Accept : Flag::Reject);
  return run;
}

}  // namespace relcommit
