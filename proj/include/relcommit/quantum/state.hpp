#pragma once

#include <complex>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "relcommit/quantum/bitstring.hpp"
#include "relcommit/quantum/rng.hpp"

namespace relcommit {

using Complex = std::complex<double>;

/// Full-state simulation limit.
inline constexpr std::size_t kMaxQubits = 24;

inline constexpr double kAlgebraicTolerance = 1e-12;
inline constexpr double kSpectralTolerance = 1e-9;
inline constexpr double kPsdTolerance = 1e-10;

/// Stable identifier of a qubit; survives reordering of registers.
struct QubitId {
  std::uint32_t value = 0;
  friend auto operator<=>(const QubitId&, const QubitId&) = default;
};

/// B0 is the computational basis {|0>,|1>}; B1 the Hadamard basis {|+>,|->}.
enum class Basis { Computational = 0, Hadamard = 1 };

inline Basis basis_for_bit(int b) { return b == 0 ? Basis::Computational : Basis::Hadamard; }

std::vector<QubitId> make_qubit_ids(std::uint32_t first, std::size_t count);

/**
 * Normalized pure state over labelled qubits.
 *
 * Amplitude index bit (m-1-p) holds the value of the qubit at label position p,
 * so the first label is the most significant bit.
 */
class StateVector {
 public:
  StateVector(Eigen::VectorXcd amplitudes, std::vector<QubitId> labels);

  static StateVector basis_state(std::vector<QubitId> labels, const BitString& bits);

  const Eigen::VectorXcd& amplitudes() const noexcept { return amplitudes_; }
  const std::vector<QubitId>& labels() const noexcept { return labels_; }
  std::size_t qubit_count() const noexcept { return labels_.size(); }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }

  /// Position of a qubit in the label list; throws InputError if absent.
  std::size_t position_of(QubitId id) const;
  bool contains(QubitId id) const noexcept;

 private:
  struct Trusted {};
  StateVector(Trusted, Eigen::VectorXcd amplitudes, std::vector<QubitId> labels)
      : amplitudes_(std::move(amplitudes)), labels_(std::move(labels)) {}

  friend struct StateAccess;

  Eigen::VectorXcd amplitudes_;
  std::vector<QubitId> labels_;
};

/// Hermitian, positive semi-definite, unit-trace operator over labelled qubits.
class DensityOperator {
 public:
  DensityOperator(Eigen::MatrixXcd matrix, std::vector<QubitId> labels);

  static DensityOperator from_pure(const StateVector& state);
  static DensityOperator maximally_mixed(std::vector<QubitId> labels);

  const Eigen::MatrixXcd& matrix() const noexcept { return matrix_; }
  const std::vector<QubitId>& labels() const noexcept { return labels_; }
  std::size_t qubit_count() const noexcept { return labels_.size(); }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }

  std::size_t position_of(QubitId id) const;

  /// Smallest eigenvalue (Hermitian solver).
  double min_eigenvalue() const;

 private:
  struct Trusted {};
  DensityOperator(Trusted, Eigen::MatrixXcd matrix, std::vector<QubitId> labels)
      : matrix_(std::move(matrix)), labels_(std::move(labels)) {}

  friend struct StateAccess;

  Eigen::MatrixXcd matrix_;
  std::vector<QubitId> labels_;
};

struct CqEntry {
  std::string label;
  double probability = 0.0;
  DensityOperator state;
};

/// Classical label paired with a conditional quantum state.
class CqEnsemble {
 public:
  explicit CqEnsemble(std::vector<CqEntry> entries);

  const std::vector<CqEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::vector<CqEntry> entries_;
};

// ---------------------------------------------------------------------------
// Constructors and elementary operations

/// (|00> + |11>)/sqrt(2) on the two given qubits.
StateVector epr_pair(QubitId first = QubitId{0}, QubitId second = QubitId{1});

/// Single-qubit |0>, |1> (B0) or |+>, |-> (B1).
StateVector single_qubit_state(QubitId id, Basis basis, int bit);

StateVector tensor(const StateVector& a, const StateVector& b);
DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);

/// Applies a 2x2 unitary to one qubit.
StateVector apply_single_qubit(const StateVector& state, QubitId target, const Eigen::Matrix2cd& unitary);

const Eigen::Matrix2cd& hadamard();

/// Unitary whose rows are the rotated basis vectors cos t|0> + sin t|1> and
/// -sin t|0> + cos t|1>; measuring after applying it measures in that basis.
/// t = 0 gives B0 and t = pi/4 gives B1 (up to a sign on the second vector).
Eigen::Matrix2cd rotated_basis_unitary(double theta);

// ---------------------------------------------------------------------------
// Measurement and reduction

struct MeasurementResult {
  BitString outcomes;  // one bit per target, in target order
  StateVector post_state;
};

/// Projective measurement of the targets in the given basis, sampled by the Born rule.
MeasurementResult measure_qubits(const StateVector& state, std::span<const QubitId> targets, Basis basis,
                                 SplitRng& rng);

/// Born-rule probability of a specific outcome string on the targets.
double outcome_probability(const StateVector& state, std::span<const QubitId> targets, Basis basis,
                           const BitString& outcome);

/// Born distribution of measuring every qubit of rho in the basis, indexed by outcome string (first label MSB).
std::vector<double> outcome_distribution(const DensityOperator& rho, Basis basis);

/// Non-selective measurement (outcome forgotten).
DensityOperator measurement_channel(const DensityOperator& rho, std::span<const QubitId> targets, Basis basis);

/// Reduced operator on the kept qubits, labelled in the order given by keep.
DensityOperator partial_trace(const StateVector& state, std::span<const QubitId> keep);
DensityOperator partial_trace(const DensityOperator& rho, std::span<const QubitId> keep);

double trace_norm(const Eigen::MatrixXcd& hermitian);

/// (1/2) || rho - sigma ||_1; operators must share labels.
double trace_distance(const DensityOperator& rho, const DensityOperator& sigma);

// ---------------------------------------------------------------------------
// Discrimination

/**
 * Optimal probability of guessing the label from the quantum system.
 *
 * Two labels: Helstrom, 1/2 + 1/2 ||P(0) rho_0 - P(1) rho_1||_1.
 * Otherwise the conditional states must commute (be diagonal in a common
 * basis) and the classical value sum_y max_x P(x, y) is returned; anything
 * else throws UnsupportedError.
 */
double guess_probability(const CqEnsemble& ensemble);

/// Product of per-round guessing probabilities for independent rounds.
double product_guess_probability(std::span<const CqEnsemble> per_round);

/// Joint ensemble of two independent rounds; labels are concatenated.
CqEnsemble tensor_ensemble(const CqEnsemble& first, const CqEnsemble& second);

}  // namespace relcommit
