#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qham/errors.hpp"
#include "qham/statevector.hpp"

namespace qham {

/// Anything below this is treated as "the control qubit never lands on 0":
/// every stored pattern sits at maximal distance and post-selection on
/// c=0 is impossible.
inline constexpr double kPostSelectionEpsilon = 1e-12;

/// Fixed qubit assignment for an n-bit memory compared d bits at a time.
///
///   memory bit j   -> qubit j            (j in [0, n))
///   match flag j   -> qubit n + j        (one per symbol, j in [0, z))
///   control c / u1 -> qubit n + z
///   storage u2     -> qubit n + z + 1
///
/// u1 doubles as the retrieval control c; total width is n + n/d + 2.
struct RegisterLayout {
  std::size_t memory_bits;     // n
  std::size_t bits_per_symbol; // d

  RegisterLayout(std::size_t n, std::size_t d) : memory_bits(n), bits_per_symbol(d) {
    if (n == 0) throw ValidationError("register layout needs at least one memory bit");
    if (d == 0) throw ValidationError("register layout needs bits_per_symbol >= 1");
    if (n % d != 0) {
      throw ValidationError("memory width " + std::to_string(n) +
                            " is not a multiple of the symbol width " + std::to_string(d));
    }
  }

  std::size_t symbols() const { return memory_bits / bits_per_symbol; }  // z
  std::size_t memory_qubit(std::size_t j) const { return j; }
  std::size_t flag_qubit(std::size_t j) const { return memory_bits + j; }
  std::size_t control_qubit() const { return memory_bits + symbols(); }
  std::size_t u2_qubit() const { return control_qubit() + 1; }
  std::size_t total_qubits() const { return memory_bits + symbols() + 2; }

  bool operator==(const RegisterLayout&) const = default;
};

/// One abstract gate. Kept simulator-agnostic so the same list drives
/// both the statevector replay and the OpenQASM emitter.
struct GateRecord {
  enum class Kind { kPauliX, kHadamard, kMultiControlledX, kDiagonal, kControlledSplit };

  Kind kind = Kind::kPauliX;
  std::vector<std::size_t> controls;
  std::size_t target = 0;
  double phase0 = 0.0;        // kDiagonal
  double phase1 = 0.0;        // kDiagonal
  std::size_t split_index = 0; // kControlledSplit: which S^j

  bool operator==(const GateRecord&) const = default;

  static GateRecord x(std::size_t target) { return {Kind::kPauliX, {}, target, 0.0, 0.0, 0}; }
  static GateRecord h(std::size_t target) { return {Kind::kHadamard, {}, target, 0.0, 0.0, 0}; }
  static GateRecord mcx(std::vector<std::size_t> controls, std::size_t target) {
    return {Kind::kMultiControlledX, std::move(controls), target, 0.0, 0.0, 0};
  }
  static GateRecord diag(std::size_t target, double phase0, std::vector<std::size_t> controls = {}) {
    return {Kind::kDiagonal, std::move(controls), target, phase0, 0.0, 0};
  }
  static GateRecord controlled_split(std::size_t split_index, std::size_t control, std::size_t target) {
    return {Kind::kControlledSplit, {control}, target, 0.0, 0.0, split_index};
  }
};

/// The storage splitter S^j: a real rotation that peels amplitude 1/sqrt(j)
/// off the still-unwritten branch. Chaining j = r, r-1, ..., 1 leaves every
/// stored pattern with amplitude exactly 1/sqrt(r) and nothing behind.
inline TwoLevelUnitary split_rotation(std::size_t j) {
  if (j == 0) throw ValidationError("split index must be at least 1");
  const double inv = 1.0 / std::sqrt(static_cast<double>(j));
  const double keep = std::sqrt(static_cast<double>(j - 1) / static_cast<double>(j));
  TwoLevelUnitary m;
  m.m00 = {keep, 0.0};
  m.m01 = {inv, 0.0};
  m.m10 = {-inv, 0.0};
  m.m11 = {keep, 0.0};
  return m;
}

namespace detail {

// Amplitude index of a basis state with the memory register set to
// `pattern` (pattern character j lives on qubit j) and all other qubits 0.
inline std::size_t pattern_to_index(const std::string& pattern) {
  std::size_t index = 0;
  for (std::size_t j = 0; j < pattern.size(); ++j) {
    if (pattern[j] == '1') index |= std::size_t{1} << j;
  }
  return index;
}

inline void check_bit_string(const std::string& bits, std::size_t expected, const std::string& what) {
  if (bits.size() != expected) {
    throw ValidationError(what + " has length " + std::to_string(bits.size()) + ", expected " +
                          std::to_string(expected));
  }
  for (char ch : bits) {
    if (ch != '0' && ch != '1') {
      throw ValidationError(what + " contains a character other than 0/1");
    }
  }
}

// Storage writes each pattern into a fresh branch: mark the unwritten
// branch through u2, set the memory bits to the pattern there, flag the
// all-ones coincidence on u1, rotate a 1/sqrt(j) slice of amplitude from
// "unwritten" to "written" with S^j, then uncompute the markers. Patterns
// must be distinct or the coincidence flag misfires.
inline void append_storage_gates(std::vector<GateRecord>& out, const RegisterLayout& layout,
                                 const std::vector<std::string>& patterns) {
  const std::size_t n = layout.memory_bits;
  const std::size_t u1 = layout.control_qubit();
  const std::size_t u2 = layout.u2_qubit();
  std::vector<std::size_t> all_memory(n);
  for (std::size_t j = 0; j < n; ++j) all_memory[j] = layout.memory_qubit(j);

  out.push_back(GateRecord::x(u2));
  const std::size_t r = patterns.size();
  for (std::size_t k = 0; k < r; ++k) {
    const std::string& p = patterns[k];
    for (std::size_t j = 0; j < n; ++j) {
      if (p[j] == '1') out.push_back(GateRecord::mcx({u2}, layout.memory_qubit(j)));
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (p[j] == '0') out.push_back(GateRecord::x(layout.memory_qubit(j)));
    }
    out.push_back(GateRecord::mcx(all_memory, u1));
    out.push_back(GateRecord::controlled_split(r - k, u1, u2));
    out.push_back(GateRecord::mcx(all_memory, u1));
    for (std::size_t j = n; j-- > 0;) {
      if (p[j] == '0') out.push_back(GateRecord::x(layout.memory_qubit(j)));
    }
    for (std::size_t j = n; j-- > 0;) {
      if (p[j] == '1') out.push_back(GateRecord::mcx({u2}, layout.memory_qubit(j)));
    }
  }
}

// Symbol-level retrieval. The target stays classical, which collapses the
// usual compare-and-restore into: flip memory bit j exactly when the
// target bit is 0, so memory bit j reads |1> iff it agrees with the
// target. Each flag qubit then collects its symbol's d-way agreement, the
// phase pass writes e^{i*pi/(2z)} per disagreeing symbol on the c=0
// branch and the opposite sign on c=1, and everything uncomputes. After
// the closing Hadamard, P(c=0, pattern) = cos^2(pi*D/(2z)) / r.
inline void append_retrieval_gates(std::vector<GateRecord>& out, const RegisterLayout& layout,
                                   const std::string& target) {
  const std::size_t n = layout.memory_bits;
  const std::size_t d = layout.bits_per_symbol;
  const std::size_t z = layout.symbols();
  const std::size_t c = layout.control_qubit();
  const double phase = std::numbers::pi / (2.0 * static_cast<double>(z));

  out.push_back(GateRecord::h(c));
  for (std::size_t j = 0; j < z; ++j) out.push_back(GateRecord::x(layout.flag_qubit(j)));

  for (std::size_t j = 0; j < n; ++j) {
    if (target[j] == '0') out.push_back(GateRecord::x(layout.memory_qubit(j)));
  }
  for (std::size_t j = 0; j < z; ++j) {
    std::vector<std::size_t> block(d);
    for (std::size_t b = 0; b < d; ++b) block[b] = layout.memory_qubit(j * d + b);
    out.push_back(GateRecord::mcx(block, layout.flag_qubit(j)));
    out.push_back(GateRecord::x(layout.flag_qubit(j)));
  }

  for (std::size_t j = 0; j < z; ++j) {
    out.push_back(GateRecord::diag(layout.flag_qubit(j), phase));
  }
  for (std::size_t e = 0; e < z; ++e) {
    out.push_back(GateRecord::diag(layout.flag_qubit(e), -2.0 * phase, {c}));
  }

  for (std::size_t j = z; j-- > 0;) {
    out.push_back(GateRecord::x(layout.flag_qubit(j)));
    std::vector<std::size_t> block(d);
    for (std::size_t b = 0; b < d; ++b) block[b] = layout.memory_qubit(j * d + b);
    out.push_back(GateRecord::mcx(block, layout.flag_qubit(j)));
  }
  for (std::size_t j = n; j-- > 0;) {
    if (target[j] == '0') out.push_back(GateRecord::x(layout.memory_qubit(j)));
  }
  out.push_back(GateRecord::h(c));
}

// Bit-level retrieval: the phase pass runs over the memory qubits
// directly, one e^{i*pi/(2n)} per disagreeing bit. The flag qubits are
// still parked in |1> (they are never touched afterwards) so both
// retrieval flavors finish on the same register state; with d=1 the two
// coincide amplitude for amplitude.
inline void append_bitlevel_retrieval_gates(std::vector<GateRecord>& out, const RegisterLayout& layout,
                                            const std::string& target) {
  const std::size_t n = layout.memory_bits;
  const std::size_t z = layout.symbols();
  const std::size_t c = layout.control_qubit();
  const double phase = std::numbers::pi / (2.0 * static_cast<double>(n));

  out.push_back(GateRecord::h(c));
  for (std::size_t j = 0; j < z; ++j) out.push_back(GateRecord::x(layout.flag_qubit(j)));

  for (std::size_t j = 0; j < n; ++j) {
    if (target[j] == '0') out.push_back(GateRecord::x(layout.memory_qubit(j)));
  }
  for (std::size_t j = 0; j < n; ++j) {
    out.push_back(GateRecord::diag(layout.memory_qubit(j), phase));
  }
  for (std::size_t e = 0; e < n; ++e) {
    out.push_back(GateRecord::diag(layout.memory_qubit(e), -2.0 * phase, {c}));
  }
  for (std::size_t j = n; j-- > 0;) {
    if (target[j] == '0') out.push_back(GateRecord::x(layout.memory_qubit(j)));
  }
  out.push_back(GateRecord::h(c));
}

}  // namespace detail

/// Replay an abstract gate list against a statevector.
inline void apply_trace(Statevector& state, const std::vector<GateRecord>& trace) {
  for (const GateRecord& gate : trace) {
    switch (gate.kind) {
      case GateRecord::Kind::kPauliX:
        state.apply_x(gate.target);
        break;
      case GateRecord::Kind::kHadamard:
        state.apply_h(gate.target);
        break;
      case GateRecord::Kind::kMultiControlledX:
        state.apply_mcx(gate.controls, gate.target);
        break;
      case GateRecord::Kind::kDiagonal:
        state.apply_diag(gate.target, {gate.phase0, gate.phase1}, gate.controls);
        break;
      case GateRecord::Kind::kControlledSplit:
        if (gate.controls.size() != 1) {
          throw ValidationError("controlled split expects exactly one control");
        }
        state.apply_controlled_2x2(gate.controls[0], gate.target, split_rotation(gate.split_index));
        break;
    }
  }
}

enum class StorageMode { kGateLevel, kDirect };

/// Memory register loaded with an equal superposition of patterns, plus
/// the layout and the patterns themselves. The post-storage amplitudes
/// are kept so repeated retrievals skip the storage pass; both storage
/// modes land on the same state (gate-level within float error).
struct StoredMemory {
  RegisterLayout layout;
  std::vector<std::string> patterns;
  Statevector state;
};

inline StoredMemory store_patterns(const RegisterLayout& layout, const std::vector<std::string>& patterns,
                                   StorageMode mode, std::size_t max_qubits = kDefaultQubitCeiling) {
  if (patterns.empty()) {
    throw ValidationError("store_patterns needs at least one pattern");
  }
  std::set<std::string> distinct;
  for (std::size_t k = 0; k < patterns.size(); ++k) {
    detail::check_bit_string(patterns[k], layout.memory_bits, "pattern " + std::to_string(k));
    if (!distinct.insert(patterns[k]).second) {
      throw ValidationError("pattern " + std::to_string(k) + " is a duplicate; patterns must be distinct");
    }
  }
  Statevector state(layout.total_qubits(), max_qubits);
  if (mode == StorageMode::kDirect) {
    state.set_amplitude(0, {0.0, 0.0});
    const double amp = 1.0 / std::sqrt(static_cast<double>(patterns.size()));
    for (const auto& p : patterns) {
      state.set_amplitude(detail::pattern_to_index(p), {amp, 0.0});
    }
  } else {
    std::vector<GateRecord> gates;
    detail::append_storage_gates(gates, layout, patterns);
    apply_trace(state, gates);
  }
  return {layout, patterns, std::move(state)};
}

inline Statevector retrieve_symbollevel(const StoredMemory& memory, const std::string& target) {
  detail::check_bit_string(target, memory.layout.memory_bits, "target");
  Statevector state = memory.state;
  std::vector<GateRecord> gates;
  detail::append_retrieval_gates(gates, memory.layout, target);
  apply_trace(state, gates);
  return state;
}

inline Statevector retrieve_bitlevel(const StoredMemory& memory, const std::string& target) {
  detail::check_bit_string(target, memory.layout.memory_bits, "target");
  Statevector state = memory.state;
  std::vector<GateRecord> gates;
  detail::append_bitlevel_retrieval_gates(gates, memory.layout, target);
  apply_trace(state, gates);
  return state;
}

/// Full circuit from |0...0>: storage of every pattern followed by
/// symbol-level retrieval. Replaying it through a fresh statevector
/// reproduces the pre-measurement state of run_comparison.
inline std::vector<GateRecord> circuit_trace(const RegisterLayout& layout,
                                             const std::vector<std::string>& patterns,
                                             const std::string& target) {
  detail::check_bit_string(target, layout.memory_bits, "target");
  std::vector<GateRecord> gates;
  detail::append_storage_gates(gates, layout, patterns);
  detail::append_retrieval_gates(gates, layout, target);
  return gates;
}

inline std::vector<GateRecord> circuit_trace(const StoredMemory& memory, const std::string& target) {
  return circuit_trace(memory.layout, memory.patterns, target);
}

struct ExecutionMode {
  enum class Kind { kExact, kSampled };

  Kind kind = Kind::kExact;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;

  static ExecutionMode exact() { return {Kind::kExact, 0, 0}; }
  static ExecutionMode sampled(std::uint64_t shots, std::uint64_t seed) {
    return {Kind::kSampled, shots, seed};
  }
};

/// What a comparison run actually observes, before any distance math.
/// Exact mode: the full joint distribution reduced to P(c=0) plus the
/// memory distribution conditioned on c=0 (left empty when post-selection
/// is impossible). Sampled mode: shot counts, with c=1 shots discarded.
struct RawRunResult {
  ExecutionMode::Kind mode = ExecutionMode::Kind::kExact;
  double c0_probability = 0.0;
  std::uint64_t total_shots = 0;
  std::uint64_t c0_count = 0;
  std::map<std::string, double> memory_probabilities;
  std::map<std::string, std::uint64_t> memory_counts;
};

inline RawRunResult run_comparison(const StoredMemory& memory, const std::string& target,
                                   const ExecutionMode& mode) {
  const RegisterLayout& layout = memory.layout;
  Statevector state = retrieve_symbollevel(memory, target);

  std::vector<std::size_t> qubits;
  qubits.reserve(layout.memory_bits + 1);
  qubits.push_back(layout.control_qubit());
  for (std::size_t j = 0; j < layout.memory_bits; ++j) qubits.push_back(layout.memory_qubit(j));
  const std::map<std::string, double> joint = state.marginal_distribution(qubits);

  RawRunResult result;
  result.mode = mode.kind;
  if (mode.kind == ExecutionMode::Kind::kExact) {
    double c0 = 0.0;
    for (const auto& [key, p] : joint) {
      if (key[0] == '0') c0 += p;
    }
    result.c0_probability = c0;
    if (c0 >= kPostSelectionEpsilon) {
      for (const auto& [key, p] : joint) {
        if (key[0] == '0') result.memory_probabilities.emplace(key.substr(1), p / c0);
      }
    }
  } else {
    if (mode.shots == 0) {
      throw ValidationError("sampled execution needs a positive shot count");
    }
    result.total_shots = mode.shots;
    const std::map<std::string, std::uint64_t> counts = sample(joint, mode.shots, mode.seed);
    for (const auto& [key, count] : counts) {
      if (key[0] == '0') {
        result.c0_count += count;
        result.memory_counts.emplace(key.substr(1), count);
      }
    }
  }
  return result;
}

}  // namespace qham
