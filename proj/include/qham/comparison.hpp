#pragma once

#include <cstddef>
#include <string>

#include "qham/circuits.hpp"
#include "qham/encoding.hpp"
#include "qham/estimator.hpp"
#include "qham/errors.hpp"

namespace qham {

/// Qubits consumed by an n-bit comparison at symbol width d: the memory
/// register, one match flag per symbol, the control, and the storage
/// utility qubit.
inline std::size_t qubits_needed(std::size_t memory_bits, std::size_t bits_per_symbol) {
  return RegisterLayout(memory_bits, bits_per_symbol).total_qubits();
}

/// Largest problem a machine with `available_qubits` fits at symbol
/// width d. Each symbol costs d memory qubits plus one flag qubit, and
/// two qubits go to bookkeeping, so z_max = floor((q - 2) / (d + 1)).
struct ResourceReport {
  std::size_t available_qubits = 0;  // q
  std::size_t bits_per_symbol = 1;   // d
  std::size_t max_symbols = 0;       // z_max
  std::size_t max_memory_bits = 0;   // z_max * d
  std::size_t qubits_used = 0;       // at full capacity
};

inline ResourceReport estimate_resources(std::size_t available_qubits, std::size_t bits_per_symbol) {
  if (bits_per_symbol == 0) {
    throw ValidationError("bits_per_symbol must be at least 1");
  }
  if (available_qubits < bits_per_symbol + 3) {
    throw ValidationError("need at least " + std::to_string(bits_per_symbol + 3) +
                          " qubits to compare one symbol of width " + std::to_string(bits_per_symbol));
  }
  ResourceReport report;
  report.available_qubits = available_qubits;
  report.bits_per_symbol = bits_per_symbol;
  report.max_symbols = (available_qubits - 2) / (bits_per_symbol + 1);
  report.max_memory_bits = report.max_symbols * bits_per_symbol;
  report.qubits_used = report.max_memory_bits + report.max_symbols + 2;
  return report;
}

/// Encoded problem -> stored memory -> retrieval -> distance estimate.
/// The storage pass runs gate by gate; the cached post-storage state then
/// serves every retrieval.
inline ComparisonResult compare_encoded(const EncodedProblem& problem, const ExecutionMode& mode,
                                        StorageMode storage = StorageMode::kGateLevel,
                                        std::size_t max_qubits = kDefaultQubitCeiling) {
  const RegisterLayout layout(problem.n, problem.d);
  const StoredMemory memory = store_patterns(layout, problem.db_bits, storage, max_qubits);
  const RawRunResult raw = run_comparison(memory, problem.target_bits, mode);
  return mode.kind == ExecutionMode::Kind::kExact ? estimate_exact(raw, problem)
                                                  : estimate_sampled(raw, problem);
}

}  // namespace qham
