#include "relcommit/bounds/entropy.hpp"

#include <algorithm>
#include <cmath>

namespace relcommit {

double binary_entropy(double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw InputError("binary_entropy: q outside [0, 1]");
  auto term = [](double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; };
  return term(q) + term(1.0 - q);
}

double renyi_entropy(const SymbolDistribution& dist, double alpha) {
  if (!(alpha >= 0.0)) throw InputError("renyi_entropy: negative order");
  if (alpha == 0.0) {
    std::size_t support = 0;
    for (const auto& [s, p] : dist.weights()) support += p > 0.0 ? 1 : 0;
    return std::log2(static_cast<double>(support));
  }
  if (alpha == 1.0) {
    double h = 0.0;
    for (const auto& [s, p] : dist.weights()) {
      if (p > 0.0) h -= p * std::log2(p);
    }
    return h;
  }
  if (std::isinf(alpha)) {
    double top = 0.0;
    for (const auto& [s, p] : dist.weights()) top = std::max(top, p);
    return -std::log2(top);
  }
  double sum = 0.0;
  for (const auto& [s, p] : dist.weights()) {
    if (p > 0.0) sum += std::pow(p, alpha);
  }
  return std::log2(sum) / (1.0 - alpha);
}

double hmin_cq(const CqEnsemble& ensemble) { return -std::log2(guess_probability(ensemble)); }

double hmax_conditional_classical(const JointDistribution& joint) {
  // P(y) 2^{H_1/2(X|Y=y)} = P(y) (sum_x sqrt(P(x|y)))^2 = (sum_x sqrt(P(x, y)))^2
  std::map<std::uint64_t, double> root_sums;
  for (const auto& [xy, p] : joint.weights()) root_sums[xy.second] += std::sqrt(p);
  double total = 0.0;
  for (const auto& [y, r] : root_sums) total += r * r;
  return std::log2(total);
}

double hmin_conditional_classical(const JointDistribution& joint) {
  std::map<std::uint64_t, double> best;
  for (const auto& [xy, p] : joint.weights()) {
    auto& b = best[xy.second];
    b = std::max(b, p);
  }
  double guess = 0.0;
  for (const auto& [y, p] : best) guess += p;
  return -std::log2(guess);
}

}  // namespace relcommit
