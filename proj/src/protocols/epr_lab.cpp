#include "relcommit/protocols/epr_lab.hpp"

#include <cmath>
#include <numbers>

#include "relcommit/errors.hpp"

namespace relcommit {

namespace {

std::vector<StateVector> combine(std::vector<StateVector> pairs, SimulationMode mode) {
  if (mode == SimulationMode::Factored || pairs.empty()) return pairs;
  if (2 * pairs.size() > kMaxQubits) {
    throw UnsupportedError("full-state simulation is limited to " + std::to_string(kMaxQubits / 2) + " pairs");
  }
  StateVector full = pairs.front();
  for (std::size_t i = 1; i < pairs.size(); ++i) full = tensor(full, pairs[i]);
  return {full};
}

}  // namespace

double basis_angle(int b) { return b == 0 ? 0.0 : std::numbers::pi / 4.0; }

EprLab::EprLab(std::size_t pairs, SimulationMode mode, SplitRng rng, std::vector<StateVector> factors)
    : pairs_(pairs), mode_(mode), rng_(rng), factors_(combine(std::move(factors), mode)) {}

EprLab::EprLab(std::size_t pairs, SimulationMode mode, SplitRng rng)
    : EprLab(pairs, mode, rng, [pairs] {
        std::vector<StateVector> f;
        f.reserve(pairs);
        for (std::size_t i = 0; i < pairs; ++i) f.push_back(epr_pair(alice_qubit(i), bob_qubit(i)));
        return f;
      }()) {}

EprLab EprLab::prepared(const std::vector<Basis>& alice_bases, SimulationMode mode, SplitRng rng) {
  std::vector<StateVector> f;
  f.reserve(alice_bases.size());
  for (std::size_t i = 0; i < alice_bases.size(); ++i) {
    const int s = rng.bit();
    f.push_back(tensor(single_qubit_state(alice_qubit(i), alice_bases[i], s),
                       single_qubit_state(bob_qubit(i), alice_bases[i], s)));
  }
  return EprLab(alice_bases.size(), mode, rng, std::move(f));
}

int EprLab::measure(std::size_t pair, QubitId qubit, const Eigen::Matrix2cd& to_computational) {
  if (pair >= pairs_) throw InputError("pair index out of range");
  StateVector& state = mode_ == SimulationMode::Factored ? factors_[pair] : factors_.front();
  const std::vector<QubitId> target{qubit};
  auto result = measure_qubits(apply_single_qubit(state, qubit, to_computational), target, Basis::Computational, rng_);
  state = apply_single_qubit(result.post_state, qubit, to_computational.adjoint());
  return result.outcomes[0];
}

int EprLab::measure_bob(std::size_t i, double theta) { return measure(i, bob_qubit(i), rotated_basis_unitary(theta)); }

int EprLab::measure_alice(std::size_t i, Basis basis) {
  return measure(i, alice_qubit(i), basis == Basis::Hadamard ? hadamard() : Eigen::Matrix2cd::Identity());
}

}  // namespace relcommit
