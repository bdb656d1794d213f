#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace qnblp {

/// Fixed-length vector over GF(2).
///
/// Position 0 is the leftmost character of the string form and the most
/// significant bit of the integer form, matching the qubit ordering used by
/// the simulator (qubit 0 is the most significant bit of a basis index).
/// Comparison is lexicographic on positions, which coincides with numeric
/// order of the integer form.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t size) : bits_(size, 0) {}
  BitString(std::initializer_list<int> bits);

  /// Parses a string of '0'/'1' characters.
  static BitString from_string(const std::string& text);
  /// Expands `value` into `size` bits, position 0 taking the most significant.
  static BitString from_index(std::uint64_t value, std::size_t size);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  int operator[](std::size_t i) const { return bits_[i]; }
  void set(std::size_t i, int value);

  /// Integer form; requires size() <= 63.
  std::uint64_t to_index() const;
  std::string str() const;

  /// GF(2) inner product; lengths must match.
  int dot(const BitString& other) const;
  BitString operator^(const BitString& other) const;
  /// True if any bit is set.
  bool any() const;
  std::size_t popcount() const;

  auto operator<=>(const BitString& other) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

}  // namespace qnblp
