#pragma once

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qham/circuits.hpp"
#include "qham/errors.hpp"

namespace qham {

namespace detail {

// Shortest exact decimal for a double; 17 significant digits round-trip.
inline std::string qasm_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

}  // namespace detail

/// OpenQASM 3 text for the full storage + retrieval circuit. One emitted
/// gate statement per trace record: multi-controlled X uses the ctrl(k)
/// modifier instead of an ancilla decomposition, the diagonal phases get
/// a declared helper gate p0 (a phase on the |0> component), and each
/// storage splitter S^j gets its own declared one-qubit gate. Identical
/// inputs produce byte-identical text.
inline std::string export_qasm(const RegisterLayout& layout, const std::vector<std::string>& patterns,
                               const std::string& target) {
  const std::vector<GateRecord> trace = circuit_trace(layout, patterns, target);

  std::set<std::size_t> split_indices;
  for (const GateRecord& gate : trace) {
    if (gate.kind == GateRecord::Kind::kControlledSplit) split_indices.insert(gate.split_index);
  }

  const std::size_t n = layout.memory_bits;
  const std::size_t z = layout.symbols();
  std::ostringstream out;
  out << "OPENQASM 3.0;\n";
  out << "include \"stdgates.inc\";\n";
  out << "\n";
  out << "// memory bits -> q[0.." << n - 1 << "], symbol match flags -> q[" << n << ".."
      << n + z - 1 << "],\n";
  out << "// control c -> q[" << layout.control_qubit() << "], storage utility -> q["
      << layout.u2_qubit() << "]\n";
  out << "gate p0(theta) q { x q; p(theta) q; x q; }\n";
  for (std::size_t j : split_indices) {
    const double angle = -2.0 * std::asin(1.0 / std::sqrt(static_cast<double>(j)));
    out << "gate split" << j << " q { ry(" << detail::qasm_double(angle) << ") q; }\n";
  }
  out << "qubit[" << layout.total_qubits() << "] q;\n";
  out << "\n";

  for (const GateRecord& gate : trace) {
    switch (gate.kind) {
      case GateRecord::Kind::kPauliX:
        out << "x q[" << gate.target << "];\n";
        break;
      case GateRecord::Kind::kHadamard:
        out << "h q[" << gate.target << "];\n";
        break;
      case GateRecord::Kind::kMultiControlledX:
        if (gate.controls.empty()) {
          out << "x q[" << gate.target << "];\n";
        } else if (gate.controls.size() == 1) {
          out << "cx q[" << gate.controls[0] << "], q[" << gate.target << "];\n";
        } else {
          out << "ctrl(" << gate.controls.size() << ") @ x ";
          for (std::size_t c : gate.controls) out << "q[" << c << "], ";
          out << "q[" << gate.target << "];\n";
        }
        break;
      case GateRecord::Kind::kDiagonal: {
        if (gate.phase1 != 0.0) {
          throw ValidationError("exporter only handles diagonals that phase the |0> component");
        }
        if (gate.controls.empty()) {
          out << "p0(" << detail::qasm_double(gate.phase0) << ") q[" << gate.target << "];\n";
        } else if (gate.controls.size() == 1) {
          out << "ctrl @ p0(" << detail::qasm_double(gate.phase0) << ") q[" << gate.controls[0]
              << "], q[" << gate.target << "];\n";
        } else {
          throw ValidationError("exporter only handles diagonals with at most one control");
        }
        break;
      }
      case GateRecord::Kind::kControlledSplit:
        out << "ctrl @ split" << gate.split_index << " q[" << gate.controls[0] << "], q["
            << gate.target << "];\n";
        break;
    }
  }
  return out.str();
}

inline std::string export_qasm(const StoredMemory& memory, const std::string& target) {
  return export_qasm(memory.layout, memory.patterns, target);
}

}  // namespace qham
