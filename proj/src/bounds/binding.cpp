#include "relcommit/bounds/binding.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "relcommit/bounds/entropy.hpp"
#include "relcommit/errors.hpp"

namespace relcommit {

namespace {

using boost::multiprecision::cpp_int;

double log2_of(const cpp_int& value) {
  if (value <= 0) throw PreconditionError("log2 of a non-positive integer");
  const std::size_t top = boost::multiprecision::msb(value);
  if (top < 62) return std::log2(value.convert_to<double>());
  const std::size_t shift = top - 62;
  const cpp_int head = value >> shift;
  return std::log2(head.convert_to<double>()) + static_cast<double>(shift);
}

void check_delta(double delta) {
  if (!(delta > 0.0 && delta < 0.5)) throw InputError("delta must lie in (0, 1/2)");
}

// Natural log of alpha_bound, evaluated without underflow.
double log_alpha_bound(std::size_t n, double delta) {
  const double nd = static_cast<double>(n);
  const double a = std::log(2.0) * (1.0 - nd * (1.0 - binary_entropy(delta)));
  const double b = std::log(2.0) - nd * delta * delta / 2.0;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

}  // namespace

double hoeffding_tail(std::size_t k, double delta) {
  if (k == 0) throw InputError("hoeffding_tail: k must be at least 1");
  if (!(delta > 0.0 && delta < 1.0)) throw InputError("hoeffding_tail: delta must lie in (0, 1)");
  return std::exp(-static_cast<double>(k) * delta * delta / 2.0);
}

double hamming_volume_log_bound(std::size_t n, double delta) {
  if (n == 0) throw InputError("hamming_volume_log_bound: n must be at least 1");
  check_delta(delta);
  const auto radius = static_cast<std::size_t>(std::floor(static_cast<double>(n) * delta + 1e-9));
  cpp_int binom = 1;
  cpp_int sum = 1;
  for (std::size_t i = 1; i <= std::min(radius, n); ++i) {
    binom = binom * (n - i + 1) / i;
    sum += binom;
  }
  const double value = log2_of(sum);
  if (value > static_cast<double>(n) * binary_entropy(delta) + 1e-9) {
    throw PreconditionError("Hamming-ball volume exceeds the entropy bound");
  }
  return value;
}

BoundReport alpha_bound_terms(std::size_t n, double delta) {
  if (n == 0) throw InputError("alpha_bound: n must be at least 1");
  check_delta(delta);
  const double nd = static_cast<double>(n);
  BoundReport r;
  r.n = n;
  r.delta_star = delta;
  r.term_entropy = std::exp2(1.0 - nd * (1.0 - binary_entropy(delta)));
  r.term_hoeffding = 2.0 * std::exp(-nd * delta * delta / 2.0);
  r.epsilon = r.term_entropy + r.term_hoeffding;
  return r;
}

double alpha_bound(std::size_t n, double delta) { return alpha_bound_terms(n, delta).epsilon; }

BoundReport binding_epsilon(std::size_t n, double grid_step) {
  if (n == 0) throw InputError("binding_epsilon: n must be at least 1");
  if (!(grid_step > 0.0 && grid_step < 0.25)) throw InputError("binding_epsilon: grid step must lie in (0, 1/4)");

  std::vector<double> grid;
  for (std::size_t k = 1;; ++k) {
    const double d = static_cast<double>(k) * grid_step;
    if (d >= 0.5) break;
    grid.push_back(d);
  }
  std::size_t best = 0;
  double best_value = log_alpha_bound(n, grid[0]);
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const double v = log_alpha_bound(n, grid[k]);
    if (v < best_value) {
      best_value = v;
      best = k;
    }
  }

  // For small n the infimum sits at delta -> 0; the bracket then reaches close to it.
  double lo = best == 0 ? grid[0] * 1e-6 : grid[best - 1];
  double hi = best + 1 == grid.size() ? (grid[best] + 0.5) / 2.0 : grid[best + 1];
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = log_alpha_bound(n, x1);
  double f2 = log_alpha_bound(n, x2);
  while (hi - lo > 1e-9 * hi) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = log_alpha_bound(n, x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = log_alpha_bound(n, x2);
    }
  }
  double delta = (lo + hi) / 2.0;
  if (log_alpha_bound(n, delta) > best_value) delta = grid[best];
  return alpha_bound_terms(n, delta);
}

}  // namespace relcommit
