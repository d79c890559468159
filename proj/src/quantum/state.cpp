#include "relcommit/quantum/state.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "relcommit/errors.hpp"
#include "relcommit/quantum/register_index.hpp"

namespace relcommit {

struct StateAccess {
  static StateVector make(Eigen::VectorXcd amplitudes, std::vector<QubitId> labels) {
    return StateVector(StateVector::Trusted{}, std::move(amplitudes), std::move(labels));
  }
  static DensityOperator make(Eigen::MatrixXcd matrix, std::vector<QubitId> labels) {
    return DensityOperator(DensityOperator::Trusted{}, std::move(matrix), std::move(labels));
  }
};

namespace {

void check_labels(const std::vector<QubitId>& labels, std::size_t dimension, const char* what) {
  if (labels.size() > kMaxQubits) {
    throw InputError(std::string(what) + ": more than " + std::to_string(kMaxQubits) + " qubits");
  }
  if (dimension != (std::size_t{1} << labels.size())) {
    throw InputError(std::string(what) + ": dimension is not 2^(label count)");
  }
  std::set<QubitId> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size()) throw InputError(std::string(what) + ": duplicate qubit label");
}

std::size_t find_label(const std::vector<QubitId>& labels, QubitId id) {
  auto it = std::find(labels.begin(), labels.end(), id);
  if (it == labels.end()) throw InputError("unknown qubit identifier " + std::to_string(id.value));
  return static_cast<std::size_t>(it - labels.begin());
}

std::vector<std::size_t> positions_of(const std::vector<QubitId>& labels, std::span<const QubitId> targets) {
  std::vector<std::size_t> positions;
  positions.reserve(targets.size());
  std::set<QubitId> seen;
  for (auto id : targets) {
    if (!seen.insert(id).second) throw InputError("duplicate target qubit " + std::to_string(id.value));
    positions.push_back(find_label(labels, id));
  }
  return positions;
}

// Applies U to label position p of an m-qubit vector in place.
void apply_in_place(Eigen::VectorXcd& v, std::size_t p, std::size_t m, const Eigen::Matrix2cd& u) {
  const std::size_t mask = bit_mask(p, m);
  const auto dim = static_cast<std::size_t>(v.size());
  for (std::size_t i = 0; i < dim; ++i) {
    if (i & mask) continue;
    const Complex a0 = v[static_cast<Eigen::Index>(i)];
    const Complex a1 = v[static_cast<Eigen::Index>(i | mask)];
    v[static_cast<Eigen::Index>(i)] = u(0, 0) * a0 + u(0, 1) * a1;
    v[static_cast<Eigen::Index>(i | mask)] = u(1, 0) * a0 + u(1, 1) * a1;
  }
}

// rho <- U_p rho U_p^dagger for a single-qubit unitary on position p.
void conjugate_in_place(Eigen::MatrixXcd& rho, std::size_t p, std::size_t m, const Eigen::Matrix2cd& u) {
  const std::size_t mask = bit_mask(p, m);
  const auto dim = static_cast<std::size_t>(rho.rows());
  for (std::size_t i = 0; i < dim; ++i) {
    if (i & mask) continue;
    const auto r0 = static_cast<Eigen::Index>(i);
    const auto r1 = static_cast<Eigen::Index>(i | mask);
    Eigen::RowVectorXcd row0 = rho.row(r0);
    Eigen::RowVectorXcd row1 = rho.row(r1);
    rho.row(r0) = u(0, 0) * row0 + u(0, 1) * row1;
    rho.row(r1) = u(1, 0) * row0 + u(1, 1) * row1;
  }
  const Eigen::Matrix2cd ud = u.adjoint();
  for (std::size_t j = 0; j < dim; ++j) {
    if (j & mask) continue;
    const auto c0 = static_cast<Eigen::Index>(j);
    const auto c1 = static_cast<Eigen::Index>(j | mask);
    Eigen::VectorXcd col0 = rho.col(c0);
    Eigen::VectorXcd col1 = rho.col(c1);
    rho.col(c0) = col0 * ud(0, 0) + col1 * ud(1, 0);
    rho.col(c1) = col0 * ud(0, 1) + col1 * ud(1, 1);
  }
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

std::vector<QubitId> concat_labels(const std::vector<QubitId>& a, const std::vector<QubitId>& b) {
  std::vector<QubitId> labels = a;
  labels.insert(labels.end(), b.begin(), b.end());
  return labels;
}

}  // namespace

std::vector<QubitId> make_qubit_ids(std::uint32_t first, std::size_t count) {
  std::vector<QubitId> ids;
  ids.reserve(count);
  for (std::size_t k = 0; k < count; ++k) ids.push_back(QubitId{first + static_cast<std::uint32_t>(k)});
  return ids;
}

// ---------------------------------------------------------------------------

StateVector::StateVector(Eigen::VectorXcd amplitudes, std::vector<QubitId> labels)
    : amplitudes_(std::move(amplitudes)), labels_(std::move(labels)) {
  check_labels(labels_, dimension(), "StateVector");
  const double norm2 = amplitudes_.squaredNorm();
  if (std::abs(norm2 - 1.0) > kAlgebraicTolerance) {
    throw InputError("StateVector: squared norm " + std::to_string(norm2) + " is not 1");
  }
}

StateVector StateVector::basis_state(std::vector<QubitId> labels, const BitString& bits) {
  if (bits.size() != labels.size()) throw InputError("basis_state: bit count does not match labels");
  std::size_t index = 0;
  for (std::size_t p = 0; p < bits.size(); ++p) {
    if (bits[p]) index |= bit_mask(p, bits.size());
  }
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(std::size_t{1} << labels.size()));
  v[static_cast<Eigen::Index>(index)] = 1.0;
  return StateVector(std::move(v), std::move(labels));
}

std::size_t StateVector::position_of(QubitId id) const { return find_label(labels_, id); }

bool StateVector::contains(QubitId id) const noexcept {
  return std::find(labels_.begin(), labels_.end(), id) != labels_.end();
}

DensityOperator::DensityOperator(Eigen::MatrixXcd matrix, std::vector<QubitId> labels)
    : matrix_(std::move(matrix)), labels_(std::move(labels)) {
  if (matrix_.rows() != matrix_.cols()) throw InputError("DensityOperator: matrix is not square");
  check_labels(labels_, dimension(), "DensityOperator");
  const double asym = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kAlgebraicTolerance) throw InputError("DensityOperator: matrix is not Hermitian");
  const Complex tr = matrix_.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > kAlgebraicTolerance) {
    throw InputError("DensityOperator: trace " + std::to_string(tr.real()) + " is not 1");
  }
  if (min_eigenvalue() < -kPsdTolerance) throw InputError("DensityOperator: matrix is not positive semi-definite");
}

DensityOperator DensityOperator::from_pure(const StateVector& state) {
  Eigen::MatrixXcd rho = state.amplitudes() * state.amplitudes().adjoint();
  return StateAccess::make(std::move(rho), state.labels());
}

DensityOperator DensityOperator::maximally_mixed(std::vector<QubitId> labels) {
  if (labels.size() > kMaxQubits) throw InputError("maximally_mixed: too many qubits");
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << labels.size());
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Identity(dim, dim) / static_cast<double>(dim);
  return DensityOperator(std::move(rho), std::move(labels));
}

std::size_t DensityOperator::position_of(QubitId id) const { return find_label(labels_, id); }

double DensityOperator::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

CqEnsemble::CqEnsemble(std::vector<CqEntry> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw InputError("CqEnsemble: no entries");
  double total = 0.0;
  std::set<std::string> names;
  for (const auto& e : entries_) {
    if (!(e.probability >= 0.0)) throw InputError("CqEnsemble: negative probability");
    if (!names.insert(e.label).second) throw InputError("CqEnsemble: duplicate label '" + e.label + "'");
    if (e.state.labels() != entries_.front().state.labels()) {
      throw InputError("CqEnsemble: conditional states act on different registers");
    }
    total += e.probability;
  }
  if (std::abs(total - 1.0) > kAlgebraicTolerance) throw InputError("CqEnsemble: probabilities do not sum to 1");
}

// ---------------------------------------------------------------------------

StateVector epr_pair(QubitId first, QubitId second) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
  v[0] = v[3] = 1.0 / std::sqrt(2.0);
  return StateVector(std::move(v), {first, second});
}

StateVector single_qubit_state(QubitId id, Basis basis, int bit) {
  if (bit != 0 && bit != 1) throw InputError("single_qubit_state: bit must be 0 or 1");
  Eigen::VectorXcd v(2);
  if (basis == Basis::Computational) {
    v << (bit == 0 ? 1.0 : 0.0), (bit == 0 ? 0.0 : 1.0);
  } else {
    const double r = 1.0 / std::sqrt(2.0);
    v << r, (bit == 0 ? r : -r);
  }
  return StateVector(std::move(v), {id});
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  auto labels = concat_labels(a.labels(), b.labels());
  check_labels(labels, a.dimension() * b.dimension(), "tensor");
  Eigen::VectorXcd v(static_cast<Eigen::Index>(a.dimension() * b.dimension()));
  for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i) {
    v.segment(i * b.amplitudes().size(), b.amplitudes().size()) = a.amplitudes()[i] * b.amplitudes();
  }
  return StateAccess::make(std::move(v), std::move(labels));
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  auto labels = concat_labels(a.labels(), b.labels());
  check_labels(labels, a.dimension() * b.dimension(), "tensor");
  return StateAccess::make(kron(a.matrix(), b.matrix()), std::move(labels));
}

StateVector apply_single_qubit(const StateVector& state, QubitId target, const Eigen::Matrix2cd& unitary) {
  const double defect = (unitary * unitary.adjoint() - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
  if (defect > kAlgebraicTolerance) throw InputError("apply_single_qubit: matrix is not unitary");
  Eigen::VectorXcd v = state.amplitudes();
  apply_in_place(v, state.position_of(target), state.qubit_count(), unitary);
  return StateAccess::make(std::move(v), state.labels());
}

const Eigen::Matrix2cd& hadamard() {
  static const Eigen::Matrix2cd h = [] {
    Eigen::Matrix2cd m;
    const double r = 1.0 / std::sqrt(2.0);
    m << r, r, r, -r;
    return m;
  }();
  return h;
}

Eigen::Matrix2cd rotated_basis_unitary(double theta) {
  Eigen::Matrix2cd u;
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  u << c, s, -s, c;
  return u;
}

// ---------------------------------------------------------------------------

MeasurementResult measure_qubits(const StateVector& state, std::span<const QubitId> targets, Basis basis,
                                 SplitRng& rng) {
  const auto positions = positions_of(state.labels(), targets);
  const std::size_t m = state.qubit_count();
  Eigen::VectorXcd v = state.amplitudes();
  BitString outcomes;
  for (auto p : positions) {
    if (basis == Basis::Hadamard) apply_in_place(v, p, m, hadamard());
    const std::size_t mask = bit_mask(p, m);
    double prob0 = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (!(static_cast<std::size_t>(i) & mask)) prob0 += std::norm(v[i]);
    }
    prob0 = std::clamp(prob0, 0.0, 1.0);
    const int outcome = rng.uniform() < prob0 ? 0 : 1;
    const double kept = outcome == 0 ? prob0 : 1.0 - prob0;
    const double scale = 1.0 / std::sqrt(kept);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      const bool one = (static_cast<std::size_t>(i) & mask) != 0;
      if (one != (outcome == 1)) {
        v[i] = 0.0;
      } else {
        v[i] *= scale;
      }
    }
    if (basis == Basis::Hadamard) apply_in_place(v, p, m, hadamard());
    outcomes.push_back(outcome);
  }
  v.normalize();
  return {std::move(outcomes), StateAccess::make(std::move(v), state.labels())};
}

double outcome_probability(const StateVector& state, std::span<const QubitId> targets, Basis basis,
                           const BitString& outcome) {
  if (outcome.size() != targets.size()) throw InputError("outcome_probability: outcome length mismatch");
  const auto positions = positions_of(state.labels(), targets);
  const std::size_t m = state.qubit_count();
  Eigen::VectorXcd v = state.amplitudes();
  if (basis == Basis::Hadamard) {
    for (auto p : positions) apply_in_place(v, p, m, hadamard());
  }
  std::size_t care = 0;
  std::size_t want = 0;
  for (std::size_t k = 0; k < positions.size(); ++k) {
    care |= bit_mask(positions[k], m);
    if (outcome[k]) want |= bit_mask(positions[k], m);
  }
  double p = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if ((static_cast<std::size_t>(i) & care) == want) p += std::norm(v[i]);
  }
  return p;
}

std::vector<double> outcome_distribution(const DensityOperator& rho, Basis basis) {
  Eigen::MatrixXcd m = rho.matrix();
  if (basis == Basis::Hadamard) {
    for (std::size_t p = 0; p < rho.qubit_count(); ++p) conjugate_in_place(m, p, rho.qubit_count(), hadamard());
  }
  std::vector<double> dist(rho.dimension());
  for (std::size_t i = 0; i < dist.size(); ++i) {
    dist[i] = std::max(0.0, m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real());
  }
  return dist;
}

DensityOperator measurement_channel(const DensityOperator& rho, std::span<const QubitId> targets, Basis basis) {
  const auto positions = positions_of(rho.labels(), targets);
  const std::size_t m = rho.qubit_count();
  Eigen::MatrixXcd out = rho.matrix();
  if (basis == Basis::Hadamard) {
    for (auto p : positions) conjugate_in_place(out, p, m, hadamard());
  }
  std::size_t care = 0;
  for (auto p : positions) care |= bit_mask(p, m);
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    for (Eigen::Index j = 0; j < out.cols(); ++j) {
      if ((static_cast<std::size_t>(i) & care) != (static_cast<std::size_t>(j) & care)) out(i, j) = 0.0;
    }
  }
  if (basis == Basis::Hadamard) {
    for (auto p : positions) conjugate_in_place(out, p, m, hadamard());
  }
  out = (out + out.adjoint()).eval() / 2.0;
  return StateAccess::make(std::move(out), rho.labels());
}

DensityOperator partial_trace(const StateVector& state, std::span<const QubitId> keep) {
  if (keep.empty()) throw InputError("partial_trace: empty keep set");
  const RegisterSplit split(state.labels(), positions_of(state.labels(), keep));
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(split.kept_dimension()),
                     static_cast<Eigen::Index>(split.traced_dimension()));
  for (std::size_t i = 0; i < state.dimension(); ++i) {
    m(static_cast<Eigen::Index>(split.kept_index(i)), static_cast<Eigen::Index>(split.traced_index(i))) =
        state.amplitudes()[static_cast<Eigen::Index>(i)];
  }
  Eigen::MatrixXcd rho = m * m.adjoint();
  rho = (rho + rho.adjoint()).eval() / 2.0;
  std::vector<QubitId> labels(keep.begin(), keep.end());
  return StateAccess::make(std::move(rho), std::move(labels));
}

DensityOperator partial_trace(const DensityOperator& rho, std::span<const QubitId> keep) {
  if (keep.empty()) throw InputError("partial_trace: empty keep set");
  const RegisterSplit split(rho.labels(), positions_of(rho.labels(), keep));
  const auto dk = split.kept_dimension();
  const auto de = split.traced_dimension();
  // full index for each (kept, traced) pair
  std::vector<std::size_t> full(dk * de);
  for (std::size_t i = 0; i < rho.dimension(); ++i) full[split.kept_index(i) * de + split.traced_index(i)] = i;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
  for (std::size_t a = 0; a < dk; ++a) {
    for (std::size_t b = 0; b < dk; ++b) {
      Complex s = 0.0;
      for (std::size_t e = 0; e < de; ++e) {
        s += rho.matrix()(static_cast<Eigen::Index>(full[a * de + e]), static_cast<Eigen::Index>(full[b * de + e]));
      }
      out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = s;
    }
  }
  out = (out + out.adjoint()).eval() / 2.0;
  std::vector<QubitId> labels(keep.begin(), keep.end());
  return StateAccess::make(std::move(out), std::move(labels));
}

double trace_norm(const Eigen::MatrixXcd& hermitian) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.labels() != sigma.labels()) throw InputError("trace_distance: operators act on different registers");
  return 0.5 * trace_norm(rho.matrix() - sigma.matrix());
}

// ---------------------------------------------------------------------------

double guess_probability(const CqEnsemble& ensemble) {
  const auto& entries = ensemble.entries();
  if (entries.size() == 1) return entries.front().probability;
  if (entries.size() == 2) {
    const Eigen::MatrixXcd diff =
        entries[0].probability * entries[0].state.matrix() - entries[1].probability * entries[1].state.matrix();
    return 0.5 + 0.5 * trace_norm(diff);
  }

  for (std::size_t a = 0; a < entries.size(); ++a) {
    for (std::size_t b = a + 1; b < entries.size(); ++b) {
      const auto& x = entries[a].state.matrix();
      const auto& y = entries[b].state.matrix();
      if ((x * y - y * x).cwiseAbs().maxCoeff() > kSpectralTolerance) {
        throw UnsupportedError("guess_probability: more than two labels with non-commuting conditional states");
      }
    }
  }
  // Generic weights split every eigenspace that the states do not share.
  const auto dim = static_cast<Eigen::Index>(entries.front().state.dimension());
  Eigen::MatrixXcd generic = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t x = 0; x < entries.size(); ++x) {
    generic += std::sqrt(2.0 + static_cast<double>(x)) * entries[x].state.matrix();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(generic);
  const Eigen::MatrixXcd& basis = solver.eigenvectors();

  Eigen::VectorXd best = Eigen::VectorXd::Zero(dim);
  for (const auto& e : entries) {
    Eigen::MatrixXcd d = basis.adjoint() * e.state.matrix() * basis;
    Eigen::MatrixXcd off = d;
    off.diagonal().setZero();
    if (off.cwiseAbs().maxCoeff() > kSpectralTolerance) {
      throw UnsupportedError("guess_probability: conditional states are not jointly diagonalizable");
    }
    for (Eigen::Index y = 0; y < dim; ++y) best[y] = std::max(best[y], e.probability * d(y, y).real());
  }
  return best.sum();
}

double product_guess_probability(std::span<const CqEnsemble> per_round) {
  double p = 1.0;
  for (const auto& round : per_round) p *= guess_probability(round);
  return p;
}

CqEnsemble tensor_ensemble(const CqEnsemble& first, const CqEnsemble& second) {
  std::vector<CqEntry> entries;
  for (const auto& a : first.entries()) {
    for (const auto& b : second.entries()) {
      entries.push_back({a.label + b.label, a.probability * b.probability, tensor(a.state, b.state)});
    }
  }
  return CqEnsemble(std::move(entries));
}

}  // namespace relcommit
