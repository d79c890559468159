#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "relcommit/protocols/transcript.hpp"
#include "relcommit/spacetime/split_model.hpp"

namespace relcommit {

struct Violation {
  std::size_t message_index = 0;
  std::string reason;
};

/// Messages that cross a forbidden agent pair during a split phase. Empty means valid.
/// Throws InputError on malformed transcripts.
std::vector<Violation> validate_transcript(const ProtocolTranscript& transcript, SplitModel model);

/// Stricter check on messages carrying emission and delivery events: each must
/// be deliverable without exceeding light speed. Messages without events are skipped.
std::vector<Violation> validate_transcript_geometry(const ProtocolTranscript& transcript);

}  // namespace relcommit
