// Command-line front end: compare strings through the simulated memory,
// report register capacity, or emit the circuit as OpenQASM 3.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qham/comparison.hpp"
#include "qham/qasm.hpp"

namespace {

using nlohmann::json;

struct IoError : qham::Error {
  using qham::Error::Error;
};

struct CommonInput {
  std::string db_path;
  std::string target;
  bool binary = false;
  std::size_t symbol_length = 1;
  std::string format = "human";
  std::string out_path;
};

std::size_t simulator_ceiling() {
  const char* env = std::getenv("QHAM_MAX_QUBITS");
  if (env == nullptr || *env == '\0') return qham::kDefaultQubitCeiling;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0' || value == 0) {
    throw qham::ValidationError("QHAM_MAX_QUBITS must be a positive integer");
  }
  return static_cast<std::size_t>(value);
}

std::string trim(const std::string& s) {
  const char* ws = " \t\r\n";
  const std::size_t begin = s.find_first_not_of(ws);
  if (begin == std::string::npos) return "";
  const std::size_t end = s.find_last_not_of(ws);
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> tokens;
  std::string token;
  while (in >> token) tokens.push_back(token);
  return tokens;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open database file '" + path + "'");
  }
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (!t.empty()) lines.push_back(t);
  }
  return lines;
}

// Target comes from --target when given, otherwise from the first
// non-empty line of the database file.
qham::EncodedProblem load_problem(const CommonInput& input) {
  std::vector<std::string> lines = read_lines(input.db_path);
  std::string target = input.target;
  if (target.empty()) {
    if (lines.empty()) {
      throw qham::ValidationError("database file is empty; expected a target line");
    }
    target = lines.front();
    lines.erase(lines.begin());
  }
  if (input.binary) {
    return qham::validate_and_encode_binary(target, lines, input.symbol_length);
  }
  std::vector<std::vector<std::string>> db;
  db.reserve(lines.size());
  for (const auto& line : lines) db.push_back(tokenize(line));
  return qham::validate_and_encode_symbols(tokenize(target), db);
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open output file '" + out_path + "'");
  }
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

std::string render_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

std::string render_compare(const qham::EncodedProblem& problem, const qham::ComparisonResult& result,
                           std::uint64_t shots, std::uint64_t seed, const std::string& format) {
  const bool exact = result.mode == qham::ExecutionMode::Kind::kExact;
  if (format == "json") {
    json j;
    j["distances"] = result.distances;
    j["p_values"] = result.p_values;
    j["c0"] = result.c0_probability;
    j["n"] = problem.n;
    j["d"] = problem.d;
    j["z"] = problem.z;
    j["r"] = problem.db_bits.size();
    j["mode"] = exact ? "exact" : "sampled";
    j["shots"] = shots;
    j["seed"] = seed;
    j["warnings"] = result.warnings;
    return j.dump() + "\n";
  }
  std::ostringstream out;
  out << "mode: " << (exact ? "exact" : "sampled") << "\n";
  out << "n: " << problem.n << "  d: " << problem.d << "  z: " << problem.z
      << "  r: " << problem.db_bits.size() << "\n";
  out << "c0: " << render_double(result.c0_probability) << "\n";
  out << "shots: " << shots << "\n";
  out << "seed: " << seed << "\n";
  out << "distances:";
  for (std::size_t d : result.distances) out << " " << d;
  out << "\n";
  out << "p-values:";
  for (double p : result.p_values) out << " " << render_double(p);
  out << "\n";
  if (result.warnings.empty()) {
    out << "warnings: none\n";
  } else {
    out << "warnings:";
    for (const auto& w : result.warnings) out << " " << w;
    out << "\n";
  }
  return out.str();
}

std::string render_resources(const qham::ResourceReport& report, const std::string& format) {
  if (format == "json") {
    json j;
    j["q"] = report.available_qubits;
    j["d"] = report.bits_per_symbol;
    j["z_max"] = report.max_symbols;
    j["n_max"] = report.max_memory_bits;
    j["qubits_used"] = report.qubits_used;
    return j.dump() + "\n";
  }
  std::ostringstream out;
  out << "available qubits: " << report.available_qubits << "\n";
  out << "bits per symbol: " << report.bits_per_symbol << "\n";
  out << "max symbols: " << report.max_symbols << "\n";
  out << "max memory bits: " << report.max_memory_bits << "\n";
  out << "qubits used at capacity: " << report.qubits_used << "\n";
  return out.str();
}

int fail(const std::string& kind, const std::string& message, const std::string& format,
         const std::string& out_path) {
  if (format == "json") {
    json j;
    j["error"] = {{"kind", kind}, {"message", message}};
    try {
      emit(j.dump() + "\n", out_path);
    } catch (const qham::Error&) {
      std::fprintf(stderr, "error: %s\n", message.c_str());
    }
  } else {
    std::fprintf(stderr, "error: %s\n", message.c_str());
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symbol-level Hamming-distance string comparison on a simulated quantum memory"};
  app.require_subcommand(1);

  CommonInput cmp_in;
  bool cmp_exact = false;
  std::uint64_t cmp_shots = 8192;
  std::uint64_t cmp_seed = 42;
  CLI::App* cmp = app.add_subcommand("compare", "estimate distances between a target and a database");
  cmp->add_option("--db", cmp_in.db_path, "database file, one string per line")->required();
  cmp->add_option("--target", cmp_in.target, "target string (default: first line of the database file)");
  cmp->add_flag("--binary", cmp_in.binary, "treat strings as raw 0/1 characters");
  cmp->add_option("--symbol-length", cmp_in.symbol_length, "bits per symbol in binary mode")
      ->check(CLI::PositiveNumber);
  cmp->add_flag("--exact", cmp_exact, "read probabilities off the statevector instead of sampling");
  cmp->add_option("--shots", cmp_shots, "measurement shots in sampled mode")->check(CLI::PositiveNumber);
  cmp->add_option("--seed", cmp_seed, "sampling seed");
  cmp->add_option("--format", cmp_in.format, "output format")->check(CLI::IsMember({"human", "json"}));
  cmp->add_option("--out", cmp_in.out_path, "write output to a file instead of stdout");

  std::size_t res_qubits = 0;
  std::size_t res_symbol_length = 1;
  std::string res_format = "human";
  std::string res_out;
  CLI::App* res = app.add_subcommand("resources", "largest problem a given register width can hold");
  res->add_option("--qubits", res_qubits, "available qubits")->required()->check(CLI::PositiveNumber);
  res->add_option("--symbol-length", res_symbol_length, "bits per symbol")->check(CLI::PositiveNumber);
  res->add_option("--format", res_format, "output format")->check(CLI::IsMember({"human", "json"}));
  res->add_option("--out", res_out, "write output to a file instead of stdout");

  CommonInput qasm_in;
  CLI::App* qasm = app.add_subcommand("export-qasm", "emit the comparison circuit as OpenQASM 3");
  qasm->add_option("--db", qasm_in.db_path, "database file, one string per line")->required();
  qasm->add_option("--target", qasm_in.target, "target string (default: first line of the database file)");
  qasm->add_flag("--binary", qasm_in.binary, "treat strings as raw 0/1 characters");
  qasm->add_option("--symbol-length", qasm_in.symbol_length, "bits per symbol in binary mode");
  qasm->add_option("--out", qasm_in.out_path, "write output to a file instead of stdout");

  CLI11_PARSE(app, argc, argv);

  std::string format = "human";
  std::string out_path;
  try {
    if (cmp->parsed()) {
      format = cmp_in.format;
      out_path = cmp_in.out_path;
      const qham::EncodedProblem problem = load_problem(cmp_in);
      const qham::ExecutionMode mode = cmp_exact ? qham::ExecutionMode::exact()
                                                 : qham::ExecutionMode::sampled(cmp_shots, cmp_seed);
      const qham::ComparisonResult result =
          qham::compare_encoded(problem, mode, qham::StorageMode::kGateLevel, simulator_ceiling());
      emit(render_compare(problem, result, cmp_shots, cmp_seed, format), out_path);
    } else if (res->parsed()) {
      format = res_format;
      out_path = res_out;
      const qham::ResourceReport report = qham::estimate_resources(res_qubits, res_symbol_length);
      emit(render_resources(report, format), out_path);
    } else if (qasm->parsed()) {
      out_path = qasm_in.out_path;
      const qham::EncodedProblem problem = load_problem(qasm_in);
      const qham::RegisterLayout layout(problem.n, problem.d);
      emit(qham::export_qasm(layout, problem.db_bits, problem.target_bits), out_path);
    }
  } catch (const qham::CapacityError& e) {
    return fail("capacity", e.what(), format, out_path);
  } catch (const IoError& e) {
    return fail("io", e.what(), format, out_path);
  } catch (const qham::Error& e) {
    return fail("validation", e.what(), format, out_path);
  }
  return 0;
}
