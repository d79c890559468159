#include "relcommit/spacetime/validate.hpp"

#include "relcommit/errors.hpp"
#include "relcommit/spacetime/geometry.hpp"

namespace relcommit {

namespace {

void check_well_formed(const ProtocolTranscript& transcript) {
  const auto& messages = transcript.messages();
  for (std::size_t i = 0; i < messages.size(); ++i) {
    const auto& m = messages[i];
    if (m.phase > Phase::Verify) throw InputError("message " + std::to_string(i) + " has an unknown phase");
    if (m.sender == m.receiver) throw InputError("message " + std::to_string(i) + " is sent to its own sender");
    if (i > 0 && m.phase < messages[i - 1].phase) {
      throw InputError("message " + std::to_string(i) + " goes back to an earlier phase");
    }
  }
}

std::string describe(const Message& m) {
  return std::string(agent_name(m.sender)) + " -> " + std::string(agent_name(m.receiver)) + " (" + m.label +
         ") during " + std::string(phase_name(m.phase));
}

}  // namespace

std::vector<Violation> validate_transcript(const ProtocolTranscript& transcript, SplitModel model) {
  check_well_formed(transcript);
  std::vector<Violation> out;
  const auto& messages = transcript.messages();
  for (std::size_t i = 0; i < messages.size(); ++i) {
    const auto& m = messages[i];
    if (forbidden_edge(model, m.phase, m.sender, m.receiver)) {
      out.push_back({i, "split agents communicate: " + describe(m)});
    }
  }
  return out;
}

std::vector<Violation> validate_transcript_geometry(const ProtocolTranscript& transcript) {
  check_well_formed(transcript);
  std::vector<Violation> out;
  const auto& messages = transcript.messages();
  for (std::size_t i = 0; i < messages.size(); ++i) {
    const auto& m = messages[i];
    if (!m.emitted || !m.delivered) continue;
    if (!can_signal(*m.emitted, *m.delivered)) out.push_back({i, "faster-than-light delivery: " + describe(m)});
  }
  return out;
}

}  // namespace relcommit
