#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "relcommit/protocols/epr_lab.hpp"
#include "relcommit/protocols/transcript.hpp"
#include "relcommit/quantum/bitstring.hpp"
#include "relcommit/quantum/rng.hpp"

namespace relcommit {

enum class KentVariant { Purified, PrepareAndMeasure };

/// When Alice measures her halves: after both openings, or right after Bob's commit.
enum class AliceTiming { AfterOpen, BeforeOpen };

struct KentOptions {
  KentVariant variant = KentVariant::Purified;
  SimulationMode mode = SimulationMode::Factored;
  AliceTiming timing = AliceTiming::AfterOpen;
};

/// Z (measured in B0) and its complement X (measured in B1), both sorted.
struct Partition {
  std::vector<std::size_t> z;
  std::vector<std::size_t> x;
};

/// Uniform size-n subset of [2n] via a Fisher-Yates prefix.
Partition sample_partition(std::size_t n, SplitRng& rng);

/// Positions Alice measured in B_b.
const std::vector<std::size_t>& checked_positions(const Partition& partition, int b);

struct KentOpening {
  int bit = 0;
  BitString outcomes;
};

struct KentInstance {
  std::size_t n = 0;
  RegisterHandle alice_qubits;
  Partition partition;
  BitString s;
  std::optional<KentOpening> bob;
  std::optional<KentOpening> brian;
};

/// Checks b = b', T = T' and agreement of T with S on the positions measured in B_b.
/// A missing opening is a rejection.
Flag kent_verify(const KentInstance& instance);

/// Agreement of one agent's string with S on Z (claimed 0) or X (claimed 1).
Flag kent_per_agent_test(const KentInstance& instance, AgentId agent, int claimed_bit);

/// Same test for an arbitrary string.
bool kent_string_passes(const KentInstance& instance, const BitString& outcomes, int claimed_bit);

/**
 * Bob's side of the protocol. commit() runs before the split and may touch
 * the lab; the open methods run after it, are const and get their own
 * random streams, so neither agent can learn what the other does.
 */
class KentCommitter {
 public:
  virtual ~KentCommitter() = default;
  virtual void commit(EprLab& lab, std::size_t n, SplitRng& rng) = 0;
  virtual std::optional<KentOpening> open_bob(std::optional<int> command, SplitRng& rng) const = 0;
  virtual std::optional<KentOpening> open_brian(std::optional<int> command, SplitRng& rng) const = 0;
  virtual std::optional<int> committed_bit() const { return std::nullopt; }
};

/// Measures every half in B_b and opens (b, T) from both agents.
class HonestCommitter final : public KentCommitter {
 public:
  explicit HonestCommitter(int b);
  void commit(EprLab& lab, std::size_t n, SplitRng& rng) override;
  std::optional<KentOpening> open_bob(std::optional<int> command, SplitRng& rng) const override;
  std::optional<KentOpening> open_brian(std::optional<int> command, SplitRng& rng) const override;
  std::optional<int> committed_bit() const override { return b_; }

 private:
  int b_;
  BitString t_;
};

struct KentRun {
  ProtocolTranscript transcript;
  KentInstance instance;
};

/// One execution against an arbitrary committer. The command, if any, reaches
/// Bob only (local) or both agents (global).
KentRun run_kent(std::size_t n, KentCommitter& committer, std::optional<int> command, std::uint64_t seed,
                 const KentOptions& options = {}, CommandModel command_model = CommandModel::Global);

KentRun run_kent_honest(std::size_t n, int b, std::uint64_t seed, const KentOptions& options = {});

struct HidingReport {
  double distance = 0.0;          // trace distance of Alice's states for b = 0 and b = 1
  double guess_probability = 0.0;  // 1/2 + distance/2
  bool exact = false;              // false when the per-pair subadditivity bound was used
};

/// Alice's view after the commit phase for b = 0 versus b = 1. The seed
/// permutes the register layout. Exact up to 4 rounds, a bound above.
HidingReport hiding_check_kent(std::size_t n, std::uint64_t seed);

}  // namespace relcommit
