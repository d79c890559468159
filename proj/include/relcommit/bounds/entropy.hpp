#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <utility>

#include "relcommit/errors.hpp"
#include "relcommit/quantum/state.hpp"

namespace relcommit {

/// Finite probability distribution; weights must be non-negative and sum to 1 within 1e-12.
template <typename Symbol>
class Distribution {
 public:
  Distribution() = default;

  explicit Distribution(std::map<Symbol, double> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) throw InputError("distribution has no symbols");
    double total = 0.0;
    for (const auto& [symbol, w] : weights_) {
      if (!(w >= 0.0) || !std::isfinite(w)) throw InputError("distribution weight is negative or not finite");
      total += w;
    }
    if (std::abs(total - 1.0) > kAlgebraicTolerance) {
      throw InputError("distribution weights sum to " + std::to_string(total));
    }
  }

  const std::map<Symbol, double>& weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return weights_.size(); }

  double operator()(const Symbol& s) const {
    auto it = weights_.find(s);
    return it == weights_.end() ? 0.0 : it->second;
  }

 private:
  std::map<Symbol, double> weights_;
};

using SymbolDistribution = Distribution<std::uint64_t>;
using JointDistribution = Distribution<std::pair<std::uint64_t, std::uint64_t>>;

inline constexpr double kInfiniteOrder = std::numeric_limits<double>::infinity();

/// h(q) in bits, with 0 log 0 = 0.
double binary_entropy(double q);

/// Renyi entropy of order alpha in bits. alpha = 0, 1 and kInfiniteOrder are the usual limits.
double renyi_entropy(const SymbolDistribution& dist, double alpha);

/// -log2 of the optimal guessing probability of the label.
double hmin_cq(const CqEnsemble& ensemble);

/// log2 sum_y P(y) 2^{H_1/2(X|Y=y)} for a joint distribution over (x, y).
double hmax_conditional_classical(const JointDistribution& joint);

/// -log2 sum_y max_x P(x, y) for a joint distribution over (x, y).
double hmin_conditional_classical(const JointDistribution& joint);

}  // namespace relcommit
