#include "relcommit/adversaries/outcome_table.hpp"

#include <cmath>

#include "relcommit/errors.hpp"

namespace relcommit {

namespace {

constexpr double kQuarterTolerance = 1e-9;

int flag_bit(Flag f) { return f == Flag::Accept ? 0 : 1; }

}  // namespace

JointOutcomeTable::JointOutcomeTable() {
  for (int b = 0; b < 2; ++b)
    for (int bp = 0; bp < 2; ++bp) entries_[index(b, bp, Flag::Reject, Flag::Reject)] = 1.0;
}

JointOutcomeTable::JointOutcomeTable(const Entries& entries) : entries_(entries) {
  for (double e : entries_) {
    if (!std::isfinite(e) || e < -kQuarterTolerance) throw InputError("outcome table entry is negative or not finite");
  }
  for (int b = 0; b < 2; ++b) {
    for (int bp = 0; bp < 2; ++bp) {
      double sum = 0.0;
      for (Flag f : {Flag::Accept, Flag::Reject})
        for (Flag g : {Flag::Accept, Flag::Reject}) sum += (*this)(b, bp, f, g);
      if (std::abs(sum - 1.0) > kQuarterTolerance) {
        throw InputError("outcome table quarter (" + std::to_string(b) + ", " + std::to_string(bp) +
                         ") sums to " + std::to_string(sum));
      }
    }
  }
}

std::size_t JointOutcomeTable::index(int b, int b_prime, Flag bob, Flag brian) {
  if ((b != 0 && b != 1) || (b_prime != 0 && b_prime != 1)) throw InputError("table inputs must be bits");
  return static_cast<std::size_t>((b << 3) | (b_prime << 2) | (flag_bit(bob) << 1) | flag_bit(brian));
}

double JointOutcomeTable::bob_accept(int b, int b_prime) const {
  return (*this)(b, b_prime, Flag::Accept, Flag::Accept) + (*this)(b, b_prime, Flag::Accept, Flag::Reject);
}

double JointOutcomeTable::brian_accept(int b, int b_prime) const {
  return (*this)(b, b_prime, Flag::Accept, Flag::Accept) + (*this)(b, b_prime, Flag::Reject, Flag::Accept);
}

JointOutcomeTable deterministic_table(const std::array<bool, 2>& bob_accepts, const std::array<bool, 2>& brian_accepts) {
  JointOutcomeTable::Entries e{};
  for (int b = 0; b < 2; ++b) {
    for (int bp = 0; bp < 2; ++bp) {
      const Flag f = bob_accepts[static_cast<std::size_t>(b)] ? Flag::Accept : Flag::Reject;
      const Flag g = brian_accepts[static_cast<std::size_t>(bp)] ? Flag::Accept : Flag::Reject;
      e[JointOutcomeTable::index(b, bp, f, g)] = 1.0;
    }
  }
  return JointOutcomeTable(e);
}

JointOutcomeTable mix(const std::vector<std::pair<double, JointOutcomeTable>>& parts) {
  JointOutcomeTable::Entries e{};
  double total = 0.0;
  for (const auto& [w, t] : parts) {
    if (w < 0.0) throw InputError("mixture weight is negative");
    total += w;
    for (std::size_t i = 0; i < e.size(); ++i) e[i] += w * t.entries()[i];
  }
  if (std::abs(total - 1.0) > kQuarterTolerance) throw InputError("mixture weights do not sum to 1");
  return JointOutcomeTable(e);
}

std::vector<SignallingViolation> check_no_signalling(const JointOutcomeTable& table, double tolerance) {
  std::vector<SignallingViolation> out;
  for (int b = 0; b < 2; ++b) {
    const double gap = std::abs(table.bob_accept(b, 0) - table.bob_accept(b, 1));
    if (gap > tolerance) out.push_back({"Bob", b, gap});
  }
  for (int bp = 0; bp < 2; ++bp) {
    const double gap = std::abs(table.brian_accept(0, bp) - table.brian_accept(1, bp));
    if (gap > tolerance) out.push_back({"Brian", bp, gap});
  }
  return out;
}

OpeningSumCheck check_opening_sum_bound(const JointOutcomeTable& table, double tolerance) {
  if (!check_no_signalling(table, tolerance).empty()) {
    throw PreconditionError("opening-sum bound needs a no-signalling table");
  }
  OpeningSumCheck c;
  c.lhs = table.p(0) + table.p(1);
  c.rhs = 1.0 + table.alpha();
  c.holds = c.lhs <= c.rhs + tolerance;
  return c;
}

}  // namespace relcommit
