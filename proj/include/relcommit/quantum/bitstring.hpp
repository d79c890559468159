#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace relcommit {

/// Ordered sequence of classical bits.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t length) : bits_(length, 0) {}
  explicit BitString(std::vector<std::uint8_t> bits);

  /// Parses a string of '0' and '1' characters.
  static BitString parse(std::string_view text);

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }

  int operator[](std::size_t i) const { return bits_[i]; }
  int at(std::size_t i) const;
  void set(std::size_t i, int value);
  void push_back(int value);

  /// Bits at the given positions, in the order given.
  BitString select(std::span<const std::size_t> positions) const;

  std::string to_string() const;
  const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// Number of positions at which two equal-length strings differ.
std::size_t hamming_distance(const BitString& x, const BitString& y);

}  // namespace relcommit
