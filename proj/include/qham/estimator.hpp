#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "qham/circuits.hpp"
#include "qham/encoding.hpp"
#include "qham/errors.hpp"

namespace qham {

/// Distances recovered from a comparison run.
///
/// distances follow the original database order (duplicates share a
/// value); p_values are conditional-on-c=0 probabilities per distinct
/// stored pattern, in db_bits order, and in exact mode sum to 1 whenever
/// c0_probability is positive. Warnings are stable machine-readable
/// strings: "post-selection-impossible" and "zero-count:<row>".
struct ComparisonResult {
  std::vector<std::size_t> distances;
  std::vector<double> p_values;
  double c0_probability = 0.0;
  ExecutionMode::Kind mode = ExecutionMode::Kind::kExact;
  std::uint64_t shots = 0;
  std::uint64_t c0_count = 0;
  std::vector<std::string> warnings;
};

namespace detail {

// Invert P = cos^2(pi*D/(2z)) / (r*c): with arg = 2*c*r*P - 1 the
// distance is (z/pi)*arccos(arg). The clamp soaks up float spill past
// +-1 so the arccos can never go NaN; rounding is to nearest with halves
// up (2.5 -> 3).
inline std::size_t distance_from_cos_argument(double arg, std::size_t z) {
  arg = std::clamp(arg, -1.0, 1.0);
  const double raw = (static_cast<double>(z) / std::numbers::pi) * std::acos(arg);
  const long long rounded = std::llround(raw);
  if (rounded < 0) return 0;
  return std::min<std::size_t>(static_cast<std::size_t>(rounded), z);
}

inline void expand_to_rows(const std::vector<std::size_t>& per_pattern,
                           const std::vector<std::size_t>& origin_map,
                           std::vector<std::size_t>& out) {
  out.reserve(origin_map.size());
  for (std::size_t pattern_index : origin_map) out.push_back(per_pattern[pattern_index]);
}

}  // namespace detail

inline ComparisonResult estimate_exact(const RawRunResult& raw, const EncodedProblem& problem) {
  if (raw.mode != ExecutionMode::Kind::kExact) {
    throw ValidationError("estimate_exact needs an exact-mode run");
  }
  const std::size_t r = problem.db_bits.size();
  const std::size_t z = problem.z;
  ComparisonResult result;
  result.mode = ExecutionMode::Kind::kExact;
  result.c0_probability = raw.c0_probability;
  result.p_values.assign(r, 0.0);

  std::vector<std::size_t> per_pattern(r, z);
  if (raw.c0_probability < kPostSelectionEpsilon) {
    result.warnings.push_back("post-selection-impossible");
  } else {
    for (std::size_t k = 0; k < r; ++k) {
      const auto it = raw.memory_probabilities.find(problem.db_bits[k]);
      const double pk = it == raw.memory_probabilities.end() ? 0.0 : it->second;
      result.p_values[k] = pk;
      per_pattern[k] = detail::distance_from_cos_argument(
          2.0 * raw.c0_probability * static_cast<double>(r) * pk - 1.0, z);
    }
  }
  detail::expand_to_rows(per_pattern, problem.origin_map, result.distances);
  return result;
}

inline ComparisonResult estimate_sampled(const RawRunResult& raw, const EncodedProblem& problem) {
  if (raw.mode != ExecutionMode::Kind::kSampled) {
    throw ValidationError("estimate_sampled needs a sampled-mode run");
  }
  if (raw.total_shots == 0) {
    throw ValidationError("sampled run carries no shots");
  }
  const std::size_t r = problem.db_bits.size();
  const std::size_t z = problem.z;
  const double shots = static_cast<double>(raw.total_shots);
  ComparisonResult result;
  result.mode = ExecutionMode::Kind::kSampled;
  result.shots = raw.total_shots;
  result.c0_count = raw.c0_count;
  result.c0_probability = static_cast<double>(raw.c0_count) / shots;
  result.p_values.assign(r, 0.0);

  std::vector<std::size_t> per_pattern(r, z);
  std::vector<bool> zero_count(r, false);
  if (raw.c0_count == 0) {
    result.warnings.push_back("post-selection-impossible");
  } else {
    for (std::size_t k = 0; k < r; ++k) {
      const auto it = raw.memory_counts.find(problem.db_bits[k]);
      const std::uint64_t count = it == raw.memory_counts.end() ? 0 : it->second;
      result.p_values[k] = static_cast<double>(count) / static_cast<double>(raw.c0_count);
      if (count == 0) {
        zero_count[k] = true;
        per_pattern[k] = z;
      } else {
        // the empirical joint count/shots stands in for c*P, so the c
        // estimate cancels out of the argument
        per_pattern[k] = detail::distance_from_cos_argument(
            2.0 * static_cast<double>(r) * static_cast<double>(count) / shots - 1.0, z);
      }
    }
  }
  detail::expand_to_rows(per_pattern, problem.origin_map, result.distances);
  if (raw.c0_count > 0) {
    for (std::size_t row = 0; row < problem.origin_map.size(); ++row) {
      if (zero_count[problem.origin_map[row]]) {
        result.warnings.push_back("zero-count:" + std::to_string(row));
      }
    }
  }
  return result;
}

/// Forward model: where a run with the given true distances must land.
struct AnalyticDistribution {
  double c0_probability = 0.0;
  std::vector<double> conditional;  // per pattern, conditional on c=0
  bool conditional_defined = false;
};

inline AnalyticDistribution analytic_distribution(const std::vector<std::size_t>& distances,
                                                  std::size_t symbols) {
  if (distances.empty()) {
    throw ValidationError("analytic_distribution needs at least one distance");
  }
  if (symbols == 0) {
    throw ValidationError("analytic_distribution needs symbols >= 1");
  }
  const double r = static_cast<double>(distances.size());
  AnalyticDistribution dist;
  std::vector<double> joint(distances.size());
  for (std::size_t k = 0; k < distances.size(); ++k) {
    if (distances[k] > symbols) {
      throw ValidationError("distance " + std::to_string(distances[k]) + " exceeds the symbol count " +
                            std::to_string(symbols));
    }
    const double c = std::cos(std::numbers::pi * static_cast<double>(distances[k]) /
                              (2.0 * static_cast<double>(symbols)));
    joint[k] = c * c / r;
    dist.c0_probability += joint[k];
  }
  dist.conditional.assign(distances.size(), 0.0);
  if (dist.c0_probability >= kPostSelectionEpsilon) {
    dist.conditional_defined = true;
    for (std::size_t k = 0; k < distances.size(); ++k) {
      dist.conditional[k] = joint[k] / dist.c0_probability;
    }
  }
  return dist;
}

}  // namespace qham
