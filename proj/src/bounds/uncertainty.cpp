#include "relcommit/bounds/uncertainty.hpp"

#include <cmath>
#include <map>

#include "relcommit/bounds/entropy.hpp"
#include "relcommit/errors.hpp"

namespace relcommit {

namespace {

constexpr double kClassicalTolerance = 1e-9;

std::uint64_t bits_value(std::size_t full, std::size_t offset, std::size_t width) {
  return (full >> offset) & ((std::uint64_t{1} << width) - 1);
}

}  // namespace

double overlap_constant(Basis first, Basis second, std::size_t n) {
  if (n == 0) throw InputError("overlap_constant: n must be at least 1");
  // Single-qubit projectors onto basis vectors; |<z|x>|^2 per qubit.
  const double per_qubit = first == second ? 1.0 : 0.5;
  return std::pow(per_qubit, static_cast<double>(n));
}

CcqState::CcqState(std::vector<CcqBranch> branches) : branches_(std::move(branches)) {
  if (branches_.empty()) throw InputError("ccq state has no branches");
  double total = 0.0;
  for (const auto& br : branches_) {
    if (!(br.probability >= 0.0)) throw InputError("ccq branch probability is negative");
    if (br.a_state.labels() != branches_.front().a_state.labels()) {
      throw InputError("ccq branches act on different registers");
    }
    total += br.probability;
  }
  if (std::abs(total - 1.0) > kAlgebraicTolerance) throw InputError("ccq branch probabilities do not sum to 1");
}

CcqState CcqState::from_density(const DensityOperator& rho, std::span<const QubitId> a, std::span<const QubitId> b,
                                std::span<const QubitId> c) {
  if (a.empty()) throw InputError("ccq state needs at least one A qubit");
  std::vector<QubitId> order(a.begin(), a.end());
  order.insert(order.end(), b.begin(), b.end());
  order.insert(order.end(), c.begin(), c.end());
  if (order.size() != rho.qubit_count()) throw InputError("A, B and C must cover every qubit exactly once");
  const DensityOperator ordered = partial_trace(rho, order);
  const auto& m = ordered.matrix();

  const std::size_t da = std::size_t{1} << a.size();
  const std::size_t dbc = std::size_t{1} << (b.size() + c.size());
  // Index = a_index * dbc + bc_index, since A is most significant.
  for (std::size_t i = 0; i < static_cast<std::size_t>(m.rows()); ++i) {
    for (std::size_t j = 0; j < static_cast<std::size_t>(m.cols()); ++j) {
      if (i % dbc != j % dbc && std::abs(m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))) > kClassicalTolerance) {
        throw UnsupportedError("conditioning registers are not classical");
      }
    }
  }

  const std::vector<QubitId> a_labels(a.begin(), a.end());
  std::vector<CcqBranch> branches;
  for (std::size_t k = 0; k < dbc; ++k) {
    Eigen::MatrixXcd block(static_cast<Eigen::Index>(da), static_cast<Eigen::Index>(da));
    for (std::size_t i = 0; i < da; ++i) {
      for (std::size_t j = 0; j < da; ++j) {
        block(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            m(static_cast<Eigen::Index>(i * dbc + k), static_cast<Eigen::Index>(j * dbc + k));
      }
    }
    const double p = block.trace().real();
    if (p <= kAlgebraicTolerance) continue;
    block /= p;
    block = (block + block.adjoint()).eval() / 2.0;
    branches.push_back({bits_value(k, c.size(), b.size()), bits_value(k, 0, c.size()), p,
                        DensityOperator(block, a_labels)});
  }
  double total = 0.0;
  for (const auto& br : branches) total += br.probability;
  for (auto& br : branches) br.probability /= total;
  return CcqState(std::move(branches));
}

UncertaintyCheck check_uncertainty_relation(const CcqState& state, Basis first, Basis second) {
  std::map<std::pair<std::uint64_t, std::uint64_t>, double> zb;
  std::map<std::pair<std::uint64_t, std::uint64_t>, double> xc;
  for (const auto& br : state.branches()) {
    const auto pz = outcome_distribution(br.a_state, first);
    const auto px = outcome_distribution(br.a_state, second);
    for (std::size_t z = 0; z < pz.size(); ++z) zb[{z, br.b}] += br.probability * pz[z];
    for (std::size_t x = 0; x < px.size(); ++x) xc[{x, br.c}] += br.probability * px[x];
  }
  auto normalized = [](std::map<std::pair<std::uint64_t, std::uint64_t>, double> w) {
    double total = 0.0;
    for (const auto& [k, p] : w) total += p;
    for (auto& [k, p] : w) p /= total;
    return JointDistribution(std::move(w));
  };
  UncertaintyCheck out;
  out.lhs = hmax_conditional_classical(normalized(zb)) + hmin_conditional_classical(normalized(xc));
  out.rhs = -std::log2(overlap_constant(first, second, state.a_qubits()));
  out.holds = out.lhs >= out.rhs - 1e-9;
  return out;
}

UncertaintyCheck check_uncertainty_relation(const DensityOperator& rho, std::span<const QubitId> a,
                                            std::span<const QubitId> b, std::span<const QubitId> c, Basis first,
                                            Basis second) {
  return check_uncertainty_relation(CcqState::from_density(rho, a, b, c), first, second);
}

}  // namespace relcommit
