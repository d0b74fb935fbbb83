#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "qham/errors.hpp"

namespace qham {

/// Default cap on register width. 2^26 amplitudes is 1 GiB of doubles;
/// anything wider needs an explicit opt-in from the caller.
inline constexpr std::size_t kDefaultQubitCeiling = 26;

/// diag(e^{i*phase0}, e^{i*phase1}); unitary for any pair of real phases.
struct SingleQubitDiagonal {
  double phase0 = 0.0;
  double phase1 = 0.0;
};

/// Arbitrary 2x2 complex matrix. apply_controlled_2x2 rejects it unless
/// is_unitary() holds.
struct TwoLevelUnitary {
  std::complex<double> m00{1.0, 0.0};
  std::complex<double> m01{0.0, 0.0};
  std::complex<double> m10{0.0, 0.0};
  std::complex<double> m11{0.0, 0.0};

  bool is_unitary(double tol = 1e-12) const {
    // M * M^dagger against the identity; the product is Hermitian so one
    // off-diagonal entry suffices.
    const std::complex<double> r00 = m00 * std::conj(m00) + m01 * std::conj(m01);
    const std::complex<double> r01 = m00 * std::conj(m10) + m01 * std::conj(m11);
    const std::complex<double> r11 = m10 * std::conj(m10) + m11 * std::conj(m11);
    return std::abs(r00 - 1.0) <= tol && std::abs(r01) <= tol && std::abs(r11 - 1.0) <= tol;
  }
};

namespace detail {

// Insert a zero bit at `pos`, shifting the higher bits up by one slot.
// Applying this for an ascending sequence of positions enumerates the
// subspace where those qubits are fixed.
inline std::size_t insert_zero_bit(std::size_t index, std::size_t pos) {
  const std::size_t low = index & ((std::size_t{1} << pos) - 1);
  return ((index >> pos) << (pos + 1)) | low;
}

}  // namespace detail

/// Dense register of 2^n complex amplitudes. Qubit i is bit i (least
/// significant) of the amplitude index. Gates mutate the array in place,
/// one strided pass per gate.
class Statevector {
 public:
  explicit Statevector(std::size_t num_qubits, std::size_t max_qubits = kDefaultQubitCeiling)
      : num_qubits_(num_qubits) {
    if (num_qubits == 0) {
      throw ValidationError("statevector needs at least one qubit");
    }
    if (num_qubits > max_qubits) {
      throw CapacityError("requested " + std::to_string(num_qubits) +
                          " qubits, ceiling is " + std::to_string(max_qubits) +
                          " (raise the limit to override)");
    }
    amps_.assign(std::size_t{1} << num_qubits, std::complex<double>{0.0, 0.0});
    amps_[0] = {1.0, 0.0};
  }

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t size() const { return amps_.size(); }

  const std::vector<std::complex<double>>& amplitudes() const { return amps_; }
  std::complex<double> amplitude(std::size_t index) const { return amps_.at(index); }

  /// Raw amplitude write for analytic state preparation. The caller is
  /// responsible for leaving the vector normalized.
  void set_amplitude(std::size_t index, std::complex<double> value) { amps_.at(index) = value; }

  void apply_x(std::size_t qubit) {
    check_qubit(qubit);
    const std::size_t mask = std::size_t{1} << qubit;
    const std::size_t pairs = amps_.size() >> 1;
    for (std::size_t i = 0; i < pairs; ++i) {
      const std::size_t i0 = detail::insert_zero_bit(i, qubit);
      std::swap(amps_[i0], amps_[i0 | mask]);
    }
  }

  void apply_h(std::size_t qubit) {
    check_qubit(qubit);
    constexpr double kInvSqrt2 = 0.70710678118654752440;
    const std::size_t mask = std::size_t{1} << qubit;
    const std::size_t pairs = amps_.size() >> 1;
    for (std::size_t i = 0; i < pairs; ++i) {
      const std::size_t i0 = detail::insert_zero_bit(i, qubit);
      const std::complex<double> a0 = amps_[i0];
      const std::complex<double> a1 = amps_[i0 | mask];
      amps_[i0] = (a0 + a1) * kInvSqrt2;
      amps_[i0 | mask] = (a0 - a1) * kInvSqrt2;
    }
  }

  /// X on `target`, applied on the subspace where every control is |1>.
  /// An empty control list is a plain X.
  void apply_mcx(const std::vector<std::size_t>& controls, std::size_t target) {
    check_operands(controls, target);
    if (controls.empty()) {
      apply_x(target);
      return;
    }
    std::vector<std::size_t> fixed(controls);
    fixed.push_back(target);
    std::sort(fixed.begin(), fixed.end());
    std::size_t control_mask = 0;
    for (std::size_t c : controls) control_mask |= std::size_t{1} << c;
    const std::size_t target_mask = std::size_t{1} << target;
    const std::size_t count = amps_.size() >> fixed.size();
    for (std::size_t i = 0; i < count; ++i) {
      std::size_t idx = i;
      for (std::size_t pos : fixed) idx = detail::insert_zero_bit(idx, pos);
      idx |= control_mask;
      std::swap(amps_[idx], amps_[idx | target_mask]);
    }
  }

  /// Diagonal phase gate on `qubit`, optionally conditioned on controls
  /// all being |1>.
  void apply_diag(std::size_t qubit, const SingleQubitDiagonal& gate,
                  const std::vector<std::size_t>& controls = {}) {
    check_operands(controls, qubit);
    const std::complex<double> e0 = std::polar(1.0, gate.phase0);
    const std::complex<double> e1 = std::polar(1.0, gate.phase1);
    std::vector<std::size_t> fixed(controls);
    fixed.push_back(qubit);
    std::sort(fixed.begin(), fixed.end());
    std::size_t control_mask = 0;
    for (std::size_t c : controls) control_mask |= std::size_t{1} << c;
    const std::size_t qubit_mask = std::size_t{1} << qubit;
    const std::size_t count = amps_.size() >> fixed.size();
    for (std::size_t i = 0; i < count; ++i) {
      std::size_t idx = i;
      for (std::size_t pos : fixed) idx = detail::insert_zero_bit(idx, pos);
      idx |= control_mask;
      amps_[idx] *= e0;
      amps_[idx | qubit_mask] *= e1;
    }
  }

  /// General 2x2 unitary on `target` over the control=|1> subspace.
  void apply_controlled_2x2(std::size_t control, std::size_t target, const TwoLevelUnitary& m) {
    check_operands({control}, target);
    if (!m.is_unitary()) {
      throw ValidationError("matrix handed to apply_controlled_2x2 is not unitary");
    }
    const std::size_t control_mask = std::size_t{1} << control;
    const std::size_t target_mask = std::size_t{1} << target;
    std::size_t lo = std::min(control, target);
    std::size_t hi = std::max(control, target);
    const std::size_t count = amps_.size() >> 2;
    for (std::size_t i = 0; i < count; ++i) {
      std::size_t idx = detail::insert_zero_bit(detail::insert_zero_bit(i, lo), hi);
      idx |= control_mask;
      const std::complex<double> a0 = amps_[idx];
      const std::complex<double> a1 = amps_[idx | target_mask];
      amps_[idx] = m.m00 * a0 + m.m01 * a1;
      amps_[idx | target_mask] = m.m10 * a0 + m.m11 * a1;
    }
  }

  /// Probability table over the listed qubits, all other qubits summed
  /// out. Key character p is the value of qubits[p], so the key reads in
  /// the order the qubits were given. Zero-probability patterns are
  /// omitted.
  std::map<std::string, double> marginal_distribution(const std::vector<std::size_t>& qubits) const {
    if (qubits.empty()) {
      throw ValidationError("marginal_distribution needs at least one qubit");
    }
    for (std::size_t i = 0; i < qubits.size(); ++i) {
      check_qubit(qubits[i]);
      for (std::size_t j = i + 1; j < qubits.size(); ++j) {
        if (qubits[i] == qubits[j]) {
          throw ValidationError("duplicate qubit index in marginal_distribution");
        }
      }
    }
    const std::size_t k = qubits.size();
    std::map<std::string, double> result;
    if (k <= 20) {
      std::vector<double> dense(std::size_t{1} << k, 0.0);
      for (std::size_t idx = 0; idx < amps_.size(); ++idx) {
        const double p = std::norm(amps_[idx]);
        if (p == 0.0) continue;
        std::size_t key = 0;
        for (std::size_t b = 0; b < k; ++b) key |= ((idx >> qubits[b]) & 1u) << b;
        dense[key] += p;
      }
      for (std::size_t key = 0; key < dense.size(); ++key) {
        if (dense[key] != 0.0) result.emplace(key_string(key, k), dense[key]);
      }
    } else {
      std::map<std::size_t, double> sparse;
      for (std::size_t idx = 0; idx < amps_.size(); ++idx) {
        const double p = std::norm(amps_[idx]);
        if (p == 0.0) continue;
        std::size_t key = 0;
        for (std::size_t b = 0; b < k; ++b) key |= ((idx >> qubits[b]) & 1u) << b;
        sparse[key] += p;
      }
      for (const auto& [key, p] : sparse) result.emplace(key_string(key, k), p);
    }
    return result;
  }

  /// Project onto qubit == outcome and renormalize.
  void collapse(std::size_t qubit, int outcome) {
    check_qubit(qubit);
    if (outcome != 0 && outcome != 1) {
      throw ValidationError("collapse outcome must be 0 or 1");
    }
    const std::size_t mask = std::size_t{1} << qubit;
    const std::size_t want = outcome ? mask : 0;
    double p = 0.0;
    for (std::size_t idx = 0; idx < amps_.size(); ++idx) {
      if ((idx & mask) == want) p += std::norm(amps_[idx]);
    }
    if (p <= 1e-12) {
      throw PostSelectionError("collapse outcome has (near-)zero probability");
    }
    const double scale = 1.0 / std::sqrt(p);
    for (std::size_t idx = 0; idx < amps_.size(); ++idx) {
      if ((idx & mask) == want) {
        amps_[idx] *= scale;
      } else {
        amps_[idx] = {0.0, 0.0};
      }
    }
  }

  double norm_squared() const {
    double total = 0.0;
    for (const auto& a : amps_) total += std::norm(a);
    return total;
  }

 private:
  void check_qubit(std::size_t qubit) const {
    if (qubit >= num_qubits_) {
      throw ValidationError("qubit index " + std::to_string(qubit) + " out of range for a " +
                            std::to_string(num_qubits_) + "-qubit state");
    }
  }

  void check_operands(const std::vector<std::size_t>& controls, std::size_t target) const {
    check_qubit(target);
    for (std::size_t i = 0; i < controls.size(); ++i) {
      check_qubit(controls[i]);
      if (controls[i] == target) {
        throw ValidationError("target qubit also appears as a control");
      }
      for (std::size_t j = i + 1; j < controls.size(); ++j) {
        if (controls[i] == controls[j]) {
          throw ValidationError("duplicate qubit index in operand list");
        }
      }
    }
  }

  static std::string key_string(std::size_t key, std::size_t width) {
    std::string s(width, '0');
    for (std::size_t b = 0; b < width; ++b) {
      if ((key >> b) & 1u) s[b] = '1';
    }
    return s;
  }

  std::size_t num_qubits_;
  std::vector<std::complex<double>> amps_;
};

/// Draw `shots` outcomes from a probability table. Uniform deviates come
/// straight from mt19937_64 bits ((x >> 11) * 2^-53), not from
/// std::uniform_real_distribution, so identical (distribution, shots,
/// seed) triples give identical counts on every platform. Outcomes with
/// zero draws are left out of the result.
inline std::map<std::string, std::uint64_t> sample(const std::map<std::string, double>& distribution,
                                                   std::uint64_t shots, std::uint64_t seed) {
  if (shots == 0) {
    throw ValidationError("sample needs a positive shot count");
  }
  double total = 0.0;
  for (const auto& [key, p] : distribution) {
    if (p < 0.0) throw ValidationError("negative probability for outcome " + key);
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw ValidationError("distribution is not normalized (sums to " + std::to_string(total) + ")");
  }
  std::vector<const std::string*> keys;
  std::vector<double> cumulative;
  keys.reserve(distribution.size());
  cumulative.reserve(distribution.size());
  double running = 0.0;
  for (const auto& [key, p] : distribution) {
    running += p;
    keys.push_back(&key);
    cumulative.push_back(running);
  }
  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> counts(keys.size(), 0);
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * running;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    std::size_t idx = static_cast<std::size_t>(it - cumulative.begin());
    if (idx >= counts.size()) idx = counts.size() - 1;
    ++counts[idx];
  }
  std::map<std::string, std::uint64_t> result;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (counts[i] > 0) result.emplace(*keys[i], counts[i]);
  }
  return result;
}

}  // namespace qham
