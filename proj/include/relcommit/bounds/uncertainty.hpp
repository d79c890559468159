#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "relcommit/quantum/state.hpp"

namespace relcommit {

/// max over outcome pairs of |<z|x>|^2 for n-qubit product-basis measurements.
double overlap_constant(Basis first, Basis second, std::size_t n);

/// One classical branch (b, c) of a state with quantum A and classical B, C.
struct CcqBranch {
  std::uint64_t b = 0;
  std::uint64_t c = 0;
  double probability = 0.0;
  DensityOperator a_state;
};

class CcqState {
 public:
  explicit CcqState(std::vector<CcqBranch> branches);

  /// Extracts the branches from a full operator; throws UnsupportedError if B or C is not classical.
  static CcqState from_density(const DensityOperator& rho, std::span<const QubitId> a, std::span<const QubitId> b,
                               std::span<const QubitId> c);

  const std::vector<CcqBranch>& branches() const noexcept { return branches_; }
  std::size_t a_qubits() const noexcept { return branches_.front().a_state.qubit_count(); }

 private:
  std::vector<CcqBranch> branches_;
};

struct UncertaintyCheck {
  double lhs = 0.0;  // H_max(Z|B) + H_min(X|C)
  double rhs = 0.0;  // log2(1/c)
  bool holds = false;
};

/// Z is A measured in the first basis, X is A measured in the second.
UncertaintyCheck check_uncertainty_relation(const CcqState& state, Basis first, Basis second);
UncertaintyCheck check_uncertainty_relation(const DensityOperator& rho, std::span<const QubitId> a,
                                            std::span<const QubitId> b, std::span<const QubitId> c, Basis first,
                                            Basis second);

}  // namespace relcommit
