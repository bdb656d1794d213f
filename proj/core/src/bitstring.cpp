#include "qnblp/bitstring.hpp"

#include <stdexcept>

#include "qnblp/errors.hpp"

namespace qnblp {

BitString::BitString(std::initializer_list<int> bits) {
  bits_.reserve(bits.size());
  for (int b : bits) {
    if (b != 0 && b != 1) {
      throw std::invalid_argument("bit values must be 0 or 1");
    }
    bits_.push_back(static_cast<std::uint8_t>(b));
  }
}

BitString BitString::from_string(const std::string& text) {
  BitString out;
  out.bits_.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("bit string may contain only '0' and '1'");
    }
    out.bits_.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return out;
}

BitString BitString::from_index(std::uint64_t value, std::size_t size) {
  if (size > 63) {
    throw LengthMismatch("integer form supports at most 63 bits");
  }
  if (size < 64 && (value >> size) != 0) {
    throw std::invalid_argument("value does not fit in the requested size");
  }
  BitString out(size);
  for (std::size_t i = 0; i < size; ++i) {
    out.bits_[i] = static_cast<std::uint8_t>((value >> (size - 1 - i)) & 1u);
  }
  return out;
}

void BitString::set(std::size_t i, int value) {
  if (value != 0 && value != 1) {
    throw std::invalid_argument("bit values must be 0 or 1");
  }
  bits_.at(i) = static_cast<std::uint8_t>(value);
}

std::uint64_t BitString::to_index() const {
  if (size() > 63) {
    throw LengthMismatch("integer form supports at most 63 bits");
  }
  std::uint64_t value = 0;
  for (std::uint8_t b : bits_) {
    value = (value << 1) | b;
  }
  return value;
}

std::string BitString::str() const {
  std::string out(size(), '0');
  for (std::size_t i = 0; i < size(); ++i) {
    out[i] = static_cast<char>('0' + bits_[i]);
  }
  return out;
}

int BitString::dot(const BitString& other) const {
  if (size() != other.size()) {
    throw LengthMismatch("inner product needs equal lengths");
  }
  int acc = 0;
  for (std::size_t i = 0; i < size(); ++i) {
    acc ^= bits_[i] & other.bits_[i];
  }
  return acc;
}

BitString BitString::operator^(const BitString& other) const {
  if (size() != other.size()) {
    throw LengthMismatch("xor needs equal lengths");
  }
  BitString out(size());
  for (std::size_t i = 0; i < size(); ++i) {
    out.bits_[i] = bits_[i] ^ other.bits_[i];
  }
  return out;
}

bool BitString::any() const {
  for (std::uint8_t b : bits_) {
    if (b) return true;
  }
  return false;
}

std::size_t BitString::popcount() const {
  std::size_t count = 0;
  for (std::uint8_t b : bits_) {
    count += b;
  }
  return count;
}

}  // namespace qnblp
