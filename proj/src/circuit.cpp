#include "qgmuse/circuit.hpp"

#include <algorithm>

namespace qgmuse {

std::string to_string(GateKind kind) {
  switch (kind) {
    case GateKind::H: return "h";
    case GateKind::X: return "x";
    case GateKind::Z: return "z";
    case GateKind::T: return "t";
    case GateKind::Tdg: return "tdg";
    case GateKind::CNOT: return "cx";
    case GateKind::CCZ: return "ccz";
    case GateKind::MCZ: return "mcz";
  }
  return "?";
}

std::string to_string(const GateOp& op) {
  std::string s = to_string(op.kind);
  for (int q : op.qubits) s += " q" + std::to_string(q);
  return s;
}

void Circuit::validate() const {
  for (const GateOp& op : ops) {
    std::uint64_t seen = 0;
    for (int q : op.qubits) {
      if (q < 0 || q >= num_qubits)
        throw CircuitError("op '" + to_string(op) + "' references qubit out of range for " +
                           std::to_string(num_qubits) + "-qubit circuit");
      const std::uint64_t bit = std::uint64_t(1) << q;
      if (seen & bit) throw CircuitError("op '" + to_string(op) + "' repeats a qubit");
      seen |= bit;
    }
  }
}

void NoiseConfig::validate() const {
  if (!enabled) return;
  if (!(fidelity_1q > 0.0 && fidelity_1q <= 1.0) || !(fidelity_2q > 0.0 && fidelity_2q <= 1.0))
    throw ConfigError("gate fidelities must lie in (0, 1]");
}

std::string basis_label(std::uint64_t index, int num_qubits) {
  std::string label(static_cast<std::size_t>(num_qubits), '0');
  for (int q = 0; q < num_qubits; ++q)
    if (index & (std::uint64_t(1) << q)) label[static_cast<std::size_t>(num_qubits - 1 - q)] = '1';
  return label;
}

std::uint64_t label_to_index(const std::string& label) {
  std::uint64_t index = 0;
  for (char c : label) {
    if (c != '0' && c != '1') throw Error("malformed bit label '" + label + "'");
    index = (index << 1) | static_cast<std::uint64_t>(c - '0');
  }
  return index;
}

namespace {

// Diagonal phase circuit for a Z flip on the all-ones configuration of
// {a, b, c}: exp(i pi/4 (a + b + c - (a^b) - (a^c) - (b^c) + (a^b^c)))
// equals -1 exactly on |111> and +1 elsewhere. Six CNOTs, seven T/Tdg,
// no Hadamards anywhere since the target is already diagonal.
void emit_ccz(std::vector<GateOp>& out, int a, int b, int c) {
  out.push_back(GateOp::t(c));
  out.push_back(GateOp::cnot(b, c));
  out.push_back(GateOp::tdg(c));
  out.push_back(GateOp::cnot(a, c));
  out.push_back(GateOp::t(c));
  out.push_back(GateOp::cnot(b, c));
  out.push_back(GateOp::tdg(c));
  out.push_back(GateOp::cnot(a, c));
  out.push_back(GateOp::t(b));
  out.push_back(GateOp::cnot(a, b));
  out.push_back(GateOp::tdg(b));
  out.push_back(GateOp::cnot(a, b));
  out.push_back(GateOp::t(a));
}

}  // namespace

Circuit decompose(const Circuit& circuit) {
  circuit.validate();
  Circuit out(circuit.num_qubits);
  for (const GateOp& op : circuit.ops) {
    switch (op.kind) {
      case GateKind::H:
      case GateKind::X:
      case GateKind::Z:
      case GateKind::T:
      case GateKind::Tdg:
      case GateKind::CNOT:
        out.ops.push_back(op);
        break;
      case GateKind::CCZ:
        emit_ccz(out.ops, op.qubits[0], op.qubits[1], op.qubits[2]);
        break;
      case GateKind::MCZ:
        switch (op.qubits.size()) {
          case 1:
            out.ops.push_back(GateOp::z(op.qubits[0]));
            break;
          case 2:
            // cz = H-conjugated cx
            out.ops.push_back(GateOp::h(op.qubits[1]));
            out.ops.push_back(GateOp::cnot(op.qubits[0], op.qubits[1]));
            out.ops.push_back(GateOp::h(op.qubits[1]));
            break;
          case 3:
            emit_ccz(out.ops, op.qubits[0], op.qubits[1], op.qubits[2]);
            break;
          default:
            throw DecomposeError("mcz over " + std::to_string(op.qubits.size()) +
                                 " qubits has no gate-level decomposition here; "
                                 "it is only applied natively");
        }
        break;
    }
  }
  return out;
}

namespace {

// Pauli code: 0 = I, 1 = X, 2 = Y, 3 = Z. Y = (global phase) * Z*X.
void emit_pauli(std::vector<GateOp>& out, int code, int qubit) {
  switch (code) {
    case 1: out.push_back(GateOp::x(qubit)); break;
    case 2:
      out.push_back(GateOp::x(qubit));
      out.push_back(GateOp::z(qubit));
      break;
    case 3: out.push_back(GateOp::z(qubit)); break;
    default: break;
  }
}

}  // namespace

Circuit apply_noise(const Circuit& circuit, const NoiseConfig& noise, Rng& rng) {
  noise.validate();
  Circuit out(circuit.num_qubits);
  for (const GateOp& op : circuit.ops) {
    if (op.kind == GateKind::CCZ || op.kind == GateKind::MCZ)
      throw CircuitError("noise injection needs a decomposed circuit; found '" + to_string(op) +
                         "' (run decompose first)");
    out.ops.push_back(op);
    if (!noise.enabled) continue;
    if (op.is_single_qubit()) {
      if (rng.next_double() < 1.0 - noise.fidelity_1q)
        emit_pauli(out.ops, 1 + static_cast<int>(rng.next_below(3)), op.qubits[0]);
    } else {  // CNOT
      if (rng.next_double() < 1.0 - noise.fidelity_2q) {
        const int pair = 1 + static_cast<int>(rng.next_below(15));  // skip I(x)I
        emit_pauli(out.ops, pair / 4, op.qubits[0]);
        emit_pauli(out.ops, pair % 4, op.qubits[1]);
      }
    }
  }
  return out;
}

}  // namespace qgmuse
