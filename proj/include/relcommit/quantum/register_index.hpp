#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "relcommit/quantum/state.hpp"

namespace relcommit {

/// Index mask of label position p in an m-qubit register (first label is the MSB).
constexpr std::size_t bit_mask(std::size_t p, std::size_t m) noexcept { return std::size_t{1} << (m - 1 - p); }

/// Splits full register indices into (kept, traced) sub-indices.
///
/// Kept qubits are ordered as given; traced qubits keep their register order.
class RegisterSplit {
 public:
  RegisterSplit(const std::vector<QubitId>& labels, std::vector<std::size_t> kept_positions)
      : m_(labels.size()), kept_(std::move(kept_positions)) {
    std::vector<bool> is_kept(m_, false);
    for (auto p : kept_) is_kept[p] = true;
    for (std::size_t p = 0; p < m_; ++p) {
      if (!is_kept[p]) traced_.push_back(p);
    }
  }

  std::size_t kept_dimension() const noexcept { return std::size_t{1} << kept_.size(); }
  std::size_t traced_dimension() const noexcept { return std::size_t{1} << traced_.size(); }

  std::size_t kept_index(std::size_t full) const noexcept { return gather(full, kept_); }
  std::size_t traced_index(std::size_t full) const noexcept { return gather(full, traced_); }

 private:
  std::size_t gather(std::size_t full, const std::vector<std::size_t>& positions) const noexcept {
    std::size_t out = 0;
    for (auto p : positions) out = (out << 1) | ((full & bit_mask(p, m_)) ? 1u : 0u);
    return out;
  }

  std::size_t m_;
  std::vector<std::size_t> kept_;
  std::vector<std::size_t> traced_;
};

}  // namespace relcommit
