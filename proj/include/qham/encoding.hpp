#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qham/errors.hpp"
#include "qham/hamming.hpp"

namespace qham {

/// Smallest width that can hold `count` distinct codes, floored at 1.
inline std::size_t bits_for_count(std::size_t count) {
  if (count == 0) {
    throw ValidationError("bits_for_count needs a positive symbol count");
  }
  std::size_t d = 1;
  while ((std::size_t{1} << d) < count) ++d;
  return d;
}

/// Fixed-width binary codebook over a sorted token set. Token i (in
/// lexicographic order) gets code i, written big-endian over
/// bits_per_symbol characters.
struct Alphabet {
  std::vector<std::string> symbols;  // sorted, distinct
  std::size_t bits_per_symbol = 1;

  std::size_t code_of(const std::string& token) const {
    auto it = std::lower_bound(symbols.begin(), symbols.end(), token);
    if (it == symbols.end() || *it != token) {
      throw ValidationError("unknown symbol '" + token + "'");
    }
    return static_cast<std::size_t>(it - symbols.begin());
  }

  const std::string& token_of(std::size_t code) const {
    if (code >= symbols.size()) {
      throw ValidationError("code " + std::to_string(code) + " has no symbol (alphabet holds " +
                            std::to_string(symbols.size()) + ")");
    }
    return symbols[code];
  }
};

inline Alphabet build_alphabet(const std::vector<std::string>& target,
                               const std::vector<std::vector<std::string>>& db) {
  std::set<std::string> distinct(target.begin(), target.end());
  for (const auto& row : db) distinct.insert(row.begin(), row.end());
  if (distinct.empty()) {
    throw ValidationError("cannot build an alphabet from empty input");
  }
  Alphabet alphabet;
  alphabet.symbols.assign(distinct.begin(), distinct.end());
  alphabet.bits_per_symbol = bits_for_count(alphabet.symbols.size());
  return alphabet;
}

inline std::string encode(const std::vector<std::string>& tokens, const Alphabet& alphabet) {
  const std::size_t d = alphabet.bits_per_symbol;
  std::string bits;
  bits.reserve(tokens.size() * d);
  for (const auto& token : tokens) {
    const std::size_t code = alphabet.code_of(token);
    for (std::size_t b = 0; b < d; ++b) {
      bits.push_back(((code >> (d - 1 - b)) & 1u) ? '1' : '0');
    }
  }
  return bits;
}

inline std::vector<std::string> decode(const std::string& bits, const Alphabet& alphabet) {
  const std::size_t d = alphabet.bits_per_symbol;
  if (bits.size() % d != 0) {
    throw ValidationError("bit string length is not a multiple of the symbol width");
  }
  std::vector<std::string> tokens;
  tokens.reserve(bits.size() / d);
  for (std::size_t start = 0; start < bits.size(); start += d) {
    std::size_t code = 0;
    for (std::size_t b = 0; b < d; ++b) {
      const char ch = bits[start + b];
      if (ch != '0' && ch != '1') {
        throw ValidationError("bit string contains a character other than 0/1");
      }
      code = (code << 1) | static_cast<std::size_t>(ch == '1');
    }
    tokens.push_back(alphabet.token_of(code));
  }
  return tokens;
}

/// A comparison instance mapped down to bit strings. The database is
/// deduplicated: the storage circuit cannot hold the same pattern twice,
/// and one stored copy keeps the probability formulas exact. origin_map
/// recovers the per-input-row view.
struct EncodedProblem {
  std::string target_bits;
  std::vector<std::string> db_bits;        // distinct, in first-occurrence order
  std::size_t n = 0;                       // bits per string
  std::size_t d = 1;                       // bits per symbol
  std::size_t z = 0;                       // symbols per string, n/d
  std::vector<std::size_t> origin_map;     // input row -> index into db_bits
  std::vector<std::size_t> multiplicities; // per db_bits entry
};

namespace detail {

inline void dedup_database(const std::vector<std::string>& rows, EncodedProblem& problem) {
  std::map<std::string, std::size_t> seen;
  for (const auto& row : rows) {
    auto it = seen.find(row);
    if (it == seen.end()) {
      const std::size_t index = problem.db_bits.size();
      seen.emplace(row, index);
      problem.db_bits.push_back(row);
      problem.multiplicities.push_back(1);
      problem.origin_map.push_back(index);
    } else {
      ++problem.multiplicities[it->second];
      problem.origin_map.push_back(it->second);
    }
  }
}

inline void check_binary_chars(const std::string& bits, const std::string& what) {
  for (char ch : bits) {
    if (ch != '0' && ch != '1') {
      throw ValidationError(what + " contains a character other than 0/1");
    }
  }
}

}  // namespace detail

/// Binary-mode entry point: target and database rows are 0/1 character
/// strings, carved into symbol_length-bit symbols.
inline EncodedProblem validate_and_encode_binary(const std::string& target,
                                                 const std::vector<std::string>& db,
                                                 std::size_t symbol_length) {
  if (symbol_length == 0) {
    throw ValidationError("symbol length must be at least 1");
  }
  if (db.empty()) {
    throw ValidationError("database is empty");
  }
  if (target.empty()) {
    throw ValidationError("target is empty");
  }
  detail::check_binary_chars(target, "target");
  if (target.size() % symbol_length != 0) {
    throw ValidationError("target length " + std::to_string(target.size()) +
                          " is not a multiple of the symbol length " + std::to_string(symbol_length));
  }
  for (std::size_t i = 0; i < db.size(); ++i) {
    if (db[i].size() != target.size()) {
      throw ValidationError("database entry " + std::to_string(i) + " has length " +
                            std::to_string(db[i].size()) + ", expected " + std::to_string(target.size()));
    }
    detail::check_binary_chars(db[i], "database entry " + std::to_string(i));
  }
  EncodedProblem problem;
  problem.target_bits = target;
  problem.n = target.size();
  problem.d = symbol_length;
  problem.z = problem.n / problem.d;
  detail::dedup_database(db, problem);
  return problem;
}

/// Symbol-mode entry point: strings are lists of opaque tokens. The
/// codebook is built from every token in sight and fixes the symbol
/// width d; distances are invariant under the particular code choice, so
/// only injectivity matters.
inline EncodedProblem validate_and_encode_symbols(const std::vector<std::string>& target,
                                                  const std::vector<std::vector<std::string>>& db) {
  if (db.empty()) {
    throw ValidationError("database is empty");
  }
  if (target.empty()) {
    throw ValidationError("target is empty");
  }
  for (std::size_t i = 0; i < db.size(); ++i) {
    if (db[i].size() != target.size()) {
      throw ValidationError("database entry " + std::to_string(i) + " has " +
                            std::to_string(db[i].size()) + " symbols, expected " +
                            std::to_string(target.size()));
    }
  }
  const Alphabet alphabet = build_alphabet(target, db);
  EncodedProblem problem;
  problem.target_bits = encode(target, alphabet);
  problem.d = alphabet.bits_per_symbol;
  problem.z = target.size();
  problem.n = problem.d * problem.z;
  std::vector<std::string> rows;
  rows.reserve(db.size());
  for (const auto& row : db) rows.push_back(encode(row, alphabet));
  detail::dedup_database(rows, problem);
  return problem;
}

/// Reference answer: per-input-row symbol distances computed classically.
inline std::vector<std::size_t> compare_classical(const EncodedProblem& problem) {
  std::vector<std::size_t> distances;
  distances.reserve(problem.origin_map.size());
  for (std::size_t row = 0; row < problem.origin_map.size(); ++row) {
    const std::string& pattern = problem.db_bits[problem.origin_map[row]];
    distances.push_back(hamming_symbols(problem.target_bits, pattern, problem.d));
  }
  return distances;
}

}  // namespace qham
