#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qham/errors.hpp"

namespace qham {

/// Number of positions at which two equal-length 0/1 strings differ.
inline std::size_t hamming_bits(const std::string& a, const std::string& b) {
  if (a.size() != b.size()) {
    throw ValidationError("hamming_bits needs equal-length strings (" + std::to_string(a.size()) +
                          " vs " + std::to_string(b.size()) + ")");
  }
  std::size_t diff = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) ++diff;
  }
  return diff;
}

/// Number of differing d-bit blocks between two equal-length bit strings.
/// A block counts once no matter how many of its bits differ.
inline std::size_t hamming_symbols(const std::string& a, const std::string& b, std::size_t bits_per_symbol) {
  if (bits_per_symbol == 0) {
    throw ValidationError("hamming_symbols needs bits_per_symbol >= 1");
  }
  if (a.size() != b.size()) {
    throw ValidationError("hamming_symbols needs equal-length strings");
  }
  if (a.size() % bits_per_symbol != 0) {
    throw ValidationError("string length " + std::to_string(a.size()) +
                          " is not a multiple of the symbol width " + std::to_string(bits_per_symbol));
  }
  std::size_t diff = 0;
  for (std::size_t start = 0; start < a.size(); start += bits_per_symbol) {
    if (a.compare(start, bits_per_symbol, b, start, bits_per_symbol) != 0) ++diff;
  }
  return diff;
}

}  // namespace qham
