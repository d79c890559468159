#pragma once

#include <cstddef>

namespace relcommit {

/// exp(-k delta^2 / 2): tail bound for sampling-based error estimation.
double hoeffding_tail(std::size_t k, double delta);

/// Exact log2 sum_{i <= floor(n delta)} C(n, i); checked against n h(delta).
double hamming_volume_log_bound(std::size_t n, double delta);

struct BoundReport {
  std::size_t n = 0;
  double delta_star = 0.0;
  double epsilon = 0.0;
  double term_entropy = 0.0;    // 2^{1 - n(1 - h(delta))}
  double term_hoeffding = 0.0;  // 2 exp(-n delta^2 / 2)
};

/// Both terms of the double-opening bound at a fixed delta in (0, 1/2).
BoundReport alpha_bound_terms(std::size_t n, double delta);

/// 2^{1 - n(1 - h(delta))} + 2 exp(-n delta^2 / 2).
double alpha_bound(std::size_t n, double delta);

/// Binding parameter: alpha_bound minimized over delta by a grid of the given
/// step followed by golden-section refinement of the best bracket.
BoundReport binding_epsilon(std::size_t n, double grid_step = 1e-3);

}  // namespace relcommit
