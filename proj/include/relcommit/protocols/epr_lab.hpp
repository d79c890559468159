#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "relcommit/quantum/rng.hpp"
#include "relcommit/quantum/state.hpp"

namespace relcommit {

/// Factored keeps one two-qubit vector per pair; FullState keeps a single
/// vector over every qubit and is limited to kMaxQubits.
enum class SimulationMode { Factored, FullState };

/// Angle of the measurement basis cos t|0> + sin t|1>, -sin t|0> + cos t|1>
/// that reproduces outcomes of B0 (b = 0) or B1 (b = 1).
double basis_angle(int b);

/**
 * Pairs shared between Alice (qubit 2i) and Bob (qubit 2i+1).
 *
 * Pairs start as (|00> + |11>)/sqrt(2). In prepared mode Alice instead draws
 * a bit s_i and both qubits hold |s_i> in her basis for that pair, which
 * reproduces the prepare-and-measure variant.
 */
class EprLab {
 public:
  EprLab(std::size_t pairs, SimulationMode mode, SplitRng rng);

  static EprLab prepared(const std::vector<Basis>& alice_bases, SimulationMode mode, SplitRng rng);

  std::size_t pairs() const noexcept { return pairs_; }
  SimulationMode mode() const noexcept { return mode_; }

  static QubitId alice_qubit(std::size_t i) { return QubitId{static_cast<std::uint32_t>(2 * i)}; }
  static QubitId bob_qubit(std::size_t i) { return QubitId{static_cast<std::uint32_t>(2 * i + 1)}; }

  /// Measures Bob's half of pair i in the basis at angle theta.
  int measure_bob(std::size_t i, double theta);

  /// Measures Alice's half of pair i.
  int measure_alice(std::size_t i, Basis basis);

 private:
  EprLab(std::size_t pairs, SimulationMode mode, SplitRng rng, std::vector<StateVector> factors);

  int measure(std::size_t pair, QubitId qubit, const Eigen::Matrix2cd& to_computational);

  std::size_t pairs_;
  SimulationMode mode_;
  SplitRng rng_;
  std::vector<StateVector> factors_;  // one per pair, or a single full vector
};

}  // namespace relcommit
