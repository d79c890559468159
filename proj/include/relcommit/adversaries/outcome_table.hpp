#pragma once

#include <array>
#include <string>
#include <vector>

#include "relcommit/protocols/transcript.hpp"

namespace relcommit {

/**
 * Joint distribution of the two per-agent verdicts, given the bit b Bob is
 * asked to open and the bit b' Brian is asked to open.
 *
 * Each (b, b') quarter sums to 1. p_d = Pr[accept, accept | d, d] and
 * alpha = Pr[accept, accept | b = 0, b' = 1].
 */
class JointOutcomeTable {
 public:
  /// Index layout: b, b', Bob's flag, Brian's flag (accept = 0, reject = 1), most significant first.
  using Entries = std::array<double, 16>;

  JointOutcomeTable();  // always reject
  explicit JointOutcomeTable(const Entries& entries);

  static std::size_t index(int b, int b_prime, Flag bob, Flag brian);

  double operator()(int b, int b_prime, Flag bob, Flag brian) const { return entries_[index(b, b_prime, bob, brian)]; }
  const Entries& entries() const noexcept { return entries_; }

  double p(int d) const { return (*this)(d, d, Flag::Accept, Flag::Accept); }
  double alpha() const { return (*this)(0, 1, Flag::Accept, Flag::Accept); }

  /// Pr[Bob accepts | b, b'] and Pr[Brian accepts | b, b'].
  double bob_accept(int b, int b_prime) const;
  double brian_accept(int b, int b_prime) const;

 private:
  Entries entries_{};
};

/// Table whose Bob verdict depends only on b and Brian's only on b' (local deterministic).
JointOutcomeTable deterministic_table(const std::array<bool, 2>& bob_accepts, const std::array<bool, 2>& brian_accepts);

JointOutcomeTable mix(const std::vector<std::pair<double, JointOutcomeTable>>& parts);

struct SignallingViolation {
  std::string side;  // "Bob" or "Brian"
  int input = 0;     // the agent's own input whose marginal moves
  double gap = 0.0;
};

/// Bob's marginal must not depend on b', Brian's not on b.
std::vector<SignallingViolation> check_no_signalling(const JointOutcomeTable& table, double tolerance = 1e-9);

struct OpeningSumCheck {
  double lhs = 0.0;  // p0 + p1
  double rhs = 0.0;  // 1 + alpha
  bool holds = false;
};

/// p0 + p1 <= 1 + alpha; throws PreconditionError on signalling tables.
OpeningSumCheck check_opening_sum_bound(const JointOutcomeTable& table, double tolerance = 1e-9);

}  // namespace relcommit
