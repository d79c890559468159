#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "relcommit/errors.hpp"
#include "relcommit/quantum/bitstring.hpp"
#include "relcommit/quantum/state.hpp"
#include "relcommit/spacetime/geometry.hpp"
#include "relcommit/spacetime/split_model.hpp"

namespace relcommit {

/// Names qubits that changed hands; the state itself stays with the simulator.
struct RegisterHandle {
  std::vector<QubitId> qubits;
  friend bool operator==(const RegisterHandle&, const RegisterHandle&) = default;
};

using Payload = std::variant<BitString, RegisterHandle>;

struct Message {
  Phase phase = Phase::Commit;
  AgentId sender;
  AgentId receiver;
  std::string label;
  Payload payload;
  std::optional<SpacetimePoint> emitted;
  std::optional<SpacetimePoint> delivered;
};

enum class Flag { Accept, Reject };

inline std::string_view flag_name(Flag f) { return f == Flag::Accept ? "accept" : "reject"; }

/// Ordered record of one protocol run.
class ProtocolTranscript {
 public:
  ProtocolTranscript(std::string protocol, SplitModel model) : protocol_(std::move(protocol)), model_(model) {}

  /// Throws InputError if the phase goes backwards, the message is a self-send, or the run is finished.
  void append(Message message) {
    if (flag_) throw InputError("transcript already has a verdict");
    if (!messages_.empty() && message.phase < messages_.back().phase) {
      throw InputError("message phase precedes the previous message");
    }
    if (message.sender == message.receiver) throw InputError("message sender and receiver coincide");
    messages_.push_back(std::move(message));
  }

  /// Records Alice's verdict; this closes the verify phase.
  void set_flag(Flag flag) {
    if (flag_) throw InputError("transcript already has a verdict");
    flag_ = flag;
  }

  void set_committed_bit(int b) { committed_bit_ = check_bit(b); }
  void set_opened_bit(int b) { opened_bit_ = check_bit(b); }
  void set_proof(Payload proof) { proof_ = std::move(proof); }

  const std::string& protocol() const noexcept { return protocol_; }
  SplitModel model() const noexcept { return model_; }
  const std::vector<Message>& messages() const noexcept { return messages_; }
  const std::optional<Flag>& flag() const noexcept { return flag_; }
  const std::optional<int>& committed_bit() const noexcept { return committed_bit_; }
  const std::optional<int>& opened_bit() const noexcept { return opened_bit_; }
  const std::optional<Payload>& proof() const noexcept { return proof_; }

  bool accepted() const noexcept { return flag_ == Flag::Accept; }

 private:
  static int check_bit(int b) {
    if (b != 0 && b != 1) throw InputError("bit value must be 0 or 1");
    return b;
  }

  std::string protocol_;
  SplitModel model_;
  std::vector<Message> messages_;
  std::optional<Flag> flag_;
  std::optional<int> committed_bit_;
  std::optional<int> opened_bit_;
  std::optional<Payload> proof_;
};

}  // namespace relcommit
