#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qgmuse/errors.hpp"
#include "qgmuse/rng.hpp"

namespace qgmuse {

// Basis-state convention: bit i of a basis index is the value of qubit
// q_i, so q0 is the least significant bit. String labels read the other
// way round: the leftmost character is the highest-index qubit
// (label "100" on three qubits means q2 = 1, q1 = q0 = 0).

enum class GateKind { H, X, Z, T, Tdg, CNOT, CCZ, MCZ };

// Every kind here is self-inverse except T/Tdg, which invert each other.
struct GateOp {
  GateKind kind;
  // H/X/Z/T/Tdg: {target}. CNOT: {control, target}. CCZ: three qubits,
  // fully symmetric. MCZ: the flip set, any size >= 1, fully symmetric.
  std::vector<int> qubits;

  static GateOp h(int q) { return {GateKind::H, {q}}; }
  static GateOp x(int q) { return {GateKind::X, {q}}; }
  static GateOp z(int q) { return {GateKind::Z, {q}}; }
  static GateOp t(int q) { return {GateKind::T, {q}}; }
  static GateOp tdg(int q) { return {GateKind::Tdg, {q}}; }
  static GateOp cnot(int control, int target) { return {GateKind::CNOT, {control, target}}; }
  static GateOp ccz(int a, int b, int c) { return {GateKind::CCZ, {a, b, c}}; }
  static GateOp mcz(std::vector<int> qs) { return {GateKind::MCZ, std::move(qs)}; }

  bool is_single_qubit() const { return qubits.size() == 1; }

  bool operator==(const GateOp&) const = default;
};

std::string to_string(GateKind kind);
std::string to_string(const GateOp& op);

struct Circuit {
  int num_qubits = 0;
  std::vector<GateOp> ops;

  Circuit() = default;
  explicit Circuit(int n) : num_qubits(n) {}

  Circuit& push(GateOp op) {
    ops.push_back(std::move(op));
    return *this;
  }

  // Throws CircuitError on out-of-range or duplicate qubit indices.
  void validate() const;
};

// Per-gate success probabilities, each in (0, 1].
struct NoiseConfig {
  double fidelity_1q = 1.0;
  double fidelity_2q = 1.0;
  bool enabled = false;

  void validate() const;
};

// Shot histogram. Keys are fixed-width bit labels, so the map's
// lexicographic order is binary order.
struct CountsTable {
  int num_qubits = 0;
  long shots = 0;
  std::map<std::string, long> counts;

  long count_of(const std::string& label) const {
    auto it = counts.find(label);
    return it == counts.end() ? 0 : it->second;
  }
  double frequency_of(const std::string& label) const {
    return shots == 0 ? 0.0 : static_cast<double>(count_of(label)) / static_cast<double>(shots);
  }
};

std::string basis_label(std::uint64_t index, int num_qubits);
std::uint64_t label_to_index(const std::string& label);

// Rewrites the circuit over {H, X, Z, T, Tdg, CNOT}. The MCZ family is
// lowered by flip-set size: 1 -> Z, 2 -> H-conjugated CNOT, 3 -> the
// 6-CNOT / 7-T diagonal phase circuit (same lowering as CCZ). Larger
// flip sets are not supported at gate level; the simulator applies them
// natively in noiseless runs. The result's unitary equals the input's
// exactly (no global phase is introduced).
Circuit decompose(const Circuit& circuit);

// One stochastic noisy instance of an already-decomposed circuit: after
// each single-qubit gate, with probability 1 - fidelity_1q, one Pauli
// (X, Y or Z, uniform) lands on that qubit; after each CNOT, with
// probability 1 - fidelity_2q, one of the 15 non-identity two-qubit
// Pauli pairs lands on the pair. Y is emitted as X then Z (equal up to
// global phase, which measurement cannot see).
// Throws CircuitError if the circuit still contains CCZ/MCZ.
Circuit apply_noise(const Circuit& circuit, const NoiseConfig& noise, Rng& rng);

}  // namespace qgmuse
