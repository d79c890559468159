#include "relcommit/quantum/bitstring.hpp"

#include "relcommit/errors.hpp"

namespace relcommit {

BitString::BitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_) {
    if (b > 1) throw InputError("BitString: element outside {0,1}");
  }
}

BitString BitString::parse(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw InputError("BitString: unexpected character '" + std::string(1, c) + "'");
    }
    bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return BitString(std::move(bits));
}

int BitString::at(std::size_t i) const {
  if (i >= bits_.size()) throw InputError("BitString: index out of range");
  return bits_[i];
}

void BitString::set(std::size_t i, int value) {
  if (i >= bits_.size()) throw InputError("BitString: index out of range");
  if (value != 0 && value != 1) throw InputError("BitString: element outside {0,1}");
  bits_[i] = static_cast<std::uint8_t>(value);
}

void BitString::push_back(int value) {
  if (value != 0 && value != 1) throw InputError("BitString: element outside {0,1}");
  bits_.push_back(static_cast<std::uint8_t>(value));
}

BitString BitString::select(std::span<const std::size_t> positions) const {
  std::vector<std::uint8_t> out;
  out.reserve(positions.size());
  for (auto p : positions) out.push_back(static_cast<std::uint8_t>(at(p)));
  return BitString(std::move(out));
}

std::string BitString::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (auto b : bits_) s.push_back(static_cast<char>('0' + b));
  return s;
}

std::size_t hamming_distance(const BitString& x, const BitString& y) {
  if (x.size() != y.size()) {
    throw InputError("hamming_distance: length mismatch (" + std::to_string(x.size()) + " vs " +
                     std::to_string(y.size()) + ")");
  }
  std::size_t d = 0;
  for (std::size_t k = 0; k < x.size(); ++k) d += static_cast<std::size_t>(x[k] ^ y[k]);
  return d;
}

}  // namespace relcommit
