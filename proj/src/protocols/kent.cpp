#include "relcommit/protocols/kent.hpp"

#include <algorithm>

#include "relcommit/errors.hpp"

namespace relcommit {

namespace {

BitString one_bit(int b) { return BitString(std::vector<std::uint8_t>{static_cast<std::uint8_t>(b)}); }

void measure_alice(EprLab& lab, const Partition& partition, BitString& s) {
  for (auto i : partition.z) s.set(i, lab.measure_alice(i, Basis::Computational));
  for (auto i : partition.x) s.set(i, lab.measure_alice(i, Basis::Hadamard));
}

void record_opening(ProtocolTranscript& tr, AgentId agent, const std::optional<KentOpening>& opening) {
  if (!opening) return;
  tr.append({Phase::Open, agent, kAlice, "bit", one_bit(opening->bit), std::nullopt, std::nullopt});
  tr.append({Phase::Open, agent, kAlice, "outcomes", opening->outcomes, std::nullopt, std::nullopt});
}

const std::optional<KentOpening>& opening_of(const KentInstance& instance, AgentId agent) {
  if (agent == kBob) return instance.bob;
  if (agent == kBrian) return instance.brian;
  throw InputError("only Bob and Brian open the commitment");
}

}  // namespace

Partition sample_partition(std::size_t n, SplitRng& rng) {
  if (n == 0) throw InputError("partition needs n >= 1");
  std::vector<std::size_t> idx(2 * n);
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  for (std::size_t i = 0; i < n; ++i) std::swap(idx[i], idx[i + rng.below(idx.size() - i)]);
  Partition p{{idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n)},
              {idx.begin() + static_cast<std::ptrdiff_t>(n), idx.end()}};
  std::sort(p.z.begin(), p.z.end());
  std::sort(p.x.begin(), p.x.end());
  return p;
}

const std::vector<std::size_t>& checked_positions(const Partition& partition, int b) {
  if (b != 0 && b != 1) throw InputError("bit value must be 0 or 1");
  return b == 0 ? partition.z : partition.x;
}

bool kent_string_passes(const KentInstance& instance, const BitString& outcomes, int claimed_bit) {
  if (claimed_bit != 0 && claimed_bit != 1) return false;
  if (outcomes.size() != 2 * instance.n || instance.s.size() != 2 * instance.n) return false;
  for (auto i : checked_positions(instance.partition, claimed_bit)) {
    if (outcomes[i] != instance.s[i]) return false;
  }
  return true;
}

Flag kent_per_agent_test(const KentInstance& instance, AgentId agent, int claimed_bit) {
  const auto& opening = opening_of(instance, agent);
  if (!opening) return Flag::Reject;
  return kent_string_passes(instance, opening->outcomes, claimed_bit) ? Flag::Accept : Flag::Reject;
}

Flag kent_verify(const KentInstance& instance) {
  if (!instance.bob || !instance.brian) return Flag::Reject;
  if (instance.bob->bit != instance.brian->bit) return Flag::Reject;
  if (instance.bob->outcomes != instance.brian->outcomes) return Flag::Reject;
  return kent_string_passes(instance, instance.bob->outcomes, instance.bob->bit) ? Flag::Accept : Flag::Reject;
}

HonestCommitter::HonestCommitter(int b) : b_(b) {
  if (b != 0 && b != 1) throw InputError("bit value must be 0 or 1");
}

void HonestCommitter::commit(EprLab& lab, std::size_t n, SplitRng&) {
  t_ = BitString(2 * n);
  for (std::size_t i = 0; i < 2 * n; ++i) t_.set(i, lab.measure_bob(i, basis_angle(b_)));
}

std::optional<KentOpening> HonestCommitter::open_bob(std::optional<int>, SplitRng&) const {
  return KentOpening{b_, t_};
}

std::optional<KentOpening> HonestCommitter::open_brian(std::optional<int>, SplitRng&) const {
  return KentOpening{b_, t_};
}

KentRun run_kent(std::size_t n, KentCommitter& committer, std::optional<int> command, std::uint64_t seed,
                 const KentOptions& options, CommandModel command_model) {
  if (n == 0) throw InputError("Kent protocol needs n >= 1");
  if (command && *command != 0 && *command != 1) throw InputError("command must be 0 or 1");
  SplitRng root(seed);
  SplitRng lab_rng = root.split(0);
  SplitRng bob_rng = root.split(1);
  SplitRng brian_rng = root.split(2);
  SplitRng partition_rng = root.split(3);
  SplitRng commit_rng = root.split(4);

  KentRun run{ProtocolTranscript("kent", SplitModel{SplitKind::Beta, command_model}), KentInstance{}};
  auto& tr = run.transcript;
  auto& inst = run.instance;
  inst.n = n;
  inst.partition = sample_partition(n, partition_rng);
  inst.s = BitString(2 * n);

  RegisterHandle bob_halves;
  for (std::size_t i = 0; i < 2 * n; ++i) {
    inst.alice_qubits.qubits.push_back(EprLab::alice_qubit(i));
    bob_halves.qubits.push_back(EprLab::bob_qubit(i));
  }

  EprLab lab = [&] {
    if (options.variant == KentVariant::Purified) return EprLab(2 * n, options.mode, lab_rng);
    std::vector<Basis> bases(2 * n, Basis::Computational);
    for (auto i : inst.partition.x) bases[i] = Basis::Hadamard;
    return EprLab::prepared(bases, options.mode, lab_rng);
  }();

  tr.append({Phase::Commit, kAlice, kBob, "halves", bob_halves, std::nullopt, std::nullopt});
  committer.commit(lab, n, commit_rng);
  if (auto b = committer.committed_bit()) tr.set_committed_bit(*b);

  if (options.timing == AliceTiming::BeforeOpen) measure_alice(lab, inst.partition, inst.s);

  std::optional<int> brian_command;
  if (command) {
    tr.append({Phase::Open, kVictor, kBob, "command", one_bit(*command), std::nullopt, std::nullopt});
    if (command_model == CommandModel::Global) {
      tr.append({Phase::Open, kVictor, kBrian, "command", one_bit(*command), std::nullopt, std::nullopt});
      brian_command = command;
    }
  }
  inst.bob = committer.open_bob(command, bob_rng);
  inst.brian = committer.open_brian(brian_command, brian_rng);
  record_opening(tr, kBob, inst.bob);
  record_opening(tr, kBrian, inst.brian);

  if (options.timing == AliceTiming::AfterOpen) measure_alice(lab, inst.partition, inst.s);

  const Flag flag = kent_verify(inst);
  if (inst.bob && (inst.bob->bit == 0 || inst.bob->bit == 1)) {
    tr.set_opened_bit(inst.bob->bit);
    tr.set_proof(inst.bob->outcomes);
  }
  tr.set_flag(flag);
  return run;
}

KentRun run_kent_honest(std::size_t n, int b, std::uint64_t seed, const KentOptions& options) {
  HonestCommitter committer(b);
  return run_kent(n, committer, std::nullopt, seed, options, CommandModel::Global);
}

HidingReport hiding_check_kent(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw InputError("hiding check needs n >= 1");
  const std::size_t pairs = 2 * n;
  SplitRng rng(seed);

  // Bob's measurement outcome never reaches Alice, so her state is the trace
  // over his halves after his basis change; dephasing on his side commutes with that trace.
  auto alice_state = [](StateVector state, const std::vector<QubitId>& bob, const std::vector<QubitId>& keep, int b) {
    if (b == 1) {
      for (auto q : bob) state = apply_single_qubit(state, q, hadamard());
    }
    return partial_trace(state, keep);
  };

  HidingReport report;
  if (n <= 4) {
    std::vector<std::uint32_t> ids(2 * pairs);
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<std::uint32_t>(i);
    for (std::size_t i = ids.size(); i > 1; --i) std::swap(ids[i - 1], ids[rng.below(i)]);
    std::vector<QubitId> alice, bob;
    StateVector state = epr_pair(QubitId{ids[0]}, QubitId{ids[1]});
    alice.push_back(QubitId{ids[0]});
    bob.push_back(QubitId{ids[1]});
    for (std::size_t i = 1; i < pairs; ++i) {
      state = tensor(state, epr_pair(QubitId{ids[2 * i]}, QubitId{ids[2 * i + 1]}));
      alice.push_back(QubitId{ids[2 * i]});
      bob.push_back(QubitId{ids[2 * i + 1]});
    }
    std::vector<QubitId> keep = alice;
    for (std::size_t i = keep.size(); i > 1; --i) std::swap(keep[i - 1], keep[rng.below(i)]);
    const auto rho0 = alice_state(state, bob, keep, 0);
    const auto rho1 = alice_state(state, bob, keep, 1);
    report.distance = trace_distance(rho0, rho1);
    report.guess_probability = guess_probability(CqEnsemble({{"0", 0.5, rho0}, {"1", 0.5, rho1}}));
    report.exact = true;
    return report;
  }

  // Product states: D(x rho_i, x sigma_i) <= sum_i D(rho_i, sigma_i).
  for (std::size_t i = 0; i < pairs; ++i) {
    const bool alice_first = rng.bit() == 1;
    const QubitId a{alice_first ? 0u : 1u};
    const QubitId b{alice_first ? 1u : 0u};
    const auto pair = epr_pair(QubitId{0}, QubitId{1});
    const std::vector<QubitId> keep{a};
    const std::vector<QubitId> bob{b};
    report.distance += trace_distance(alice_state(pair, bob, keep, 0), alice_state(pair, bob, keep, 1));
  }
  report.guess_probability = 0.5 + report.distance / 2.0;
  report.exact = false;
  return report;
}

}  // namespace relcommit
