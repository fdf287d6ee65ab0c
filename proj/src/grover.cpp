#include "qgmuse/grover.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

namespace qgmuse {

Eigen::VectorXi build_diagonal_oracle(const ExprPtr& expr) {
  const TruthTable table = enumerate_solutions(expr);
  const std::int64_t dim = std::int64_t(1) << table.num_vars;
  Eigen::VectorXi diagonal = Eigen::VectorXi::Constant(dim, 1);
  for (std::uint64_t x : table.satisfying) diagonal(static_cast<std::int64_t>(x)) = -1;
  return diagonal;
}

namespace {

// ---- in-place synthesis: conjunction of NOT/XOR literals -------------

// One conjunct, reduced to a parity over one variable or two.
struct InPlaceUnit {
  bool is_xor = false;
  int qa = -1;      // var qubit (or left xor operand)
  int qb = -1;      // right xor operand
  bool negated = false;
  int output = -1;  // assigned later; xor picks qa or qb
};

std::optional<InPlaceUnit> parse_unit(const ExprPtr& node,
                                      const std::map<std::string, int>& qubit_of) {
  InPlaceUnit unit;
  const BoolExpr* e = node.get();
  while (e->kind == BoolExpr::Kind::Not) {
    unit.negated = !unit.negated;
    e = e->kids[0].get();
  }
  auto peel_var = [&](const BoolExpr* v, bool& neg) -> int {
    while (v->kind == BoolExpr::Kind::Not) {
      neg = !neg;
      v = v->kids[0].get();
    }
    return v->kind == BoolExpr::Kind::Var ? qubit_of.at(v->name) : -1;
  };
  if (e->kind == BoolExpr::Kind::Var) {
    unit.qa = qubit_of.at(e->name);
    unit.output = unit.qa;
    return unit;
  }
  if (e->kind == BoolExpr::Kind::Xor) {
    unit.is_xor = true;
    unit.qa = peel_var(e->kids[0].get(), unit.negated);
    unit.qb = peel_var(e->kids[1].get(), unit.negated);
    if (unit.qa < 0 || unit.qb < 0 || unit.qa == unit.qb) return std::nullopt;
    return unit;
  }
  return std::nullopt;
}

// Pick a CNOT landing site for every XOR unit so that all conjunct
// outputs are distinct and no landing site doubles as a CNOT control
// (controls must still hold their variable when the CNOT layer runs).
bool assign_outputs(std::vector<InPlaceUnit>& units, std::size_t at) {
  if (at == units.size()) {
    std::uint64_t outputs = 0;
    std::uint64_t controls = 0;
    for (const InPlaceUnit& u : units) {
      const std::uint64_t out_bit = std::uint64_t(1) << u.output;
      if (outputs & out_bit) return false;
      outputs |= out_bit;
      if (u.is_xor) controls |= std::uint64_t(1) << (u.output == u.qa ? u.qb : u.qa);
    }
    std::uint64_t xor_outputs = 0;
    for (const InPlaceUnit& u : units)
      if (u.is_xor) xor_outputs |= std::uint64_t(1) << u.output;
    return (xor_outputs & controls) == 0;
  }
  InPlaceUnit& u = units[at];
  if (!u.is_xor) return assign_outputs(units, at + 1);
  for (int candidate : {u.qb, u.qa}) {
    u.output = candidate;
    if (assign_outputs(units, at + 1)) return true;
  }
  u.output = -1;
  return false;
}

std::optional<Circuit> synthesize_in_place(const ExprPtr& expr,
                                           const std::map<std::string, int>& qubit_of,
                                           int num_vars) {
  std::vector<InPlaceUnit> units;
  const std::vector<ExprPtr> conjuncts =
      expr->kind == BoolExpr::Kind::And ? expr->kids : std::vector<ExprPtr>{expr};
  for (const ExprPtr& c : conjuncts) {
    auto unit = parse_unit(c, qubit_of);
    if (!unit) return std::nullopt;
    units.push_back(*unit);
  }
  if (!assign_outputs(units, 0)) return std::nullopt;

  Circuit circuit(num_vars);
  std::vector<GateOp> compute;
  for (const InPlaceUnit& u : units)
    if (u.is_xor) compute.push_back(GateOp::cnot(u.output == u.qa ? u.qb : u.qa, u.output));
  for (const InPlaceUnit& u : units)
    if (u.negated) compute.push_back(GateOp::x(u.output));

  std::vector<int> flip_set;
  for (const InPlaceUnit& u : units) flip_set.push_back(u.output);
  std::sort(flip_set.begin(), flip_set.end());

  circuit.ops = compute;
  circuit.push(flip_set.size() == 1 ? GateOp::z(flip_set[0]) : GateOp::mcz(flip_set));
  circuit.ops.insert(circuit.ops.end(), compute.rbegin(), compute.rend());
  return circuit;
}

// ---- ancilla synthesis: general compute / phase / uncompute ----------

// A computed sub-term: a wire plus a fold-in negation, or a constant.
// Ancilla-backed wires are always materialized (neg == false) so only
// variable wires carry polarity.
struct Lit {
  bool is_const = false;
  int const_val = 0;
  int qubit = -1;
  bool neg = false;

  static Lit constant(int v) { return {true, v, -1, false}; }
  static Lit wire(int q, bool n) { return {false, 0, q, n}; }
};

class AncillaSynth {
 public:
  AncillaSynth(const std::map<std::string, int>& qubit_of, int num_vars)
      : qubit_of_(qubit_of), num_vars_(num_vars), next_ancilla_(num_vars) {}

  Circuit run(const ExprPtr& root) {
    // The root AND folds straight into the final phase flip; everything
    // else is computed first and phased through a plain Z.
    if (root->kind == BoolExpr::Kind::And) {
      auto lits = compute_children(root->kids);
      if (auto folded = fold_and(lits)) {
        apply_phase(*folded);
      } else {
        phase_on_conjunction(lits);
      }
    } else {
      apply_phase(compute(root));
    }
    finish();
    Circuit circuit(next_ancilla_);
    circuit.ops = std::move(ops_);
    return circuit;
  }

 private:
  bool is_ancilla(int q) const { return q >= num_vars_; }
  int alloc() { return next_ancilla_++; }

  Lit compute(const ExprPtr& e) {
    switch (e->kind) {
      case BoolExpr::Kind::Var:
        return Lit::wire(qubit_of_.at(e->name), false);
      case BoolExpr::Kind::Not: {
        Lit lit = compute(e->kids[0]);
        if (lit.is_const) return Lit::constant(1 - lit.const_val);
        lit.neg = !lit.neg;
        return materialize(lit);
      }
      case BoolExpr::Kind::Xor:
        return compute_xor(compute(e->kids[0]), compute(e->kids[1]));
      case BoolExpr::Kind::And: {
        auto lits = compute_children(e->kids);
        if (auto folded = fold_and(lits)) return *folded;
        return compute_gate(lits, /*invert_controls=*/false, /*invert_result=*/false);
      }
      case BoolExpr::Kind::Or: {
        auto lits = compute_children(e->kids);
        if (auto folded = fold_or(lits)) return *folded;
        return compute_gate(lits, /*invert_controls=*/true, /*invert_result=*/true);
      }
    }
    throw SynthesisError("corrupt expression node");
  }

  std::vector<Lit> compute_children(const std::vector<ExprPtr>& kids) {
    std::vector<Lit> lits;
    lits.reserve(kids.size());
    for (const ExprPtr& k : kids) lits.push_back(compute(k));
    return lits;
  }

  // Constant / duplicate folding shared by AND and the root phase.
  // Returns a Lit when the gate collapses, nullopt when >= 2 distinct
  // wires remain (left in `lits`).
  std::optional<Lit> fold_and(std::vector<Lit>& lits) {
    std::vector<Lit> kept;
    for (const Lit& l : lits) {
      if (l.is_const) {
        if (l.const_val == 0) return Lit::constant(0);
        continue;  // AND with 1 is a no-op
      }
      bool duplicate = false;
      for (const Lit& k : kept) {
        if (k.qubit != l.qubit) continue;
        if (k.neg != l.neg) return Lit::constant(0);  // q AND !q
        duplicate = true;
      }
      if (!duplicate) kept.push_back(l);
    }
    lits = std::move(kept);
    if (lits.empty()) return Lit::constant(1);
    if (lits.size() == 1) return lits.front();
    return std::nullopt;
  }

  std::optional<Lit> fold_or(std::vector<Lit>& lits) {
    // OR(xs) = !AND(!xs): reuse the AND folder on flipped literals.
    for (Lit& l : lits) {
      if (l.is_const)
        l.const_val = 1 - l.const_val;
      else
        l.neg = !l.neg;
    }
    auto folded = fold_and(lits);
    for (Lit& l : lits)
      if (!l.is_const) l.neg = !l.neg;
    if (!folded) return std::nullopt;
    if (folded->is_const) return Lit::constant(1 - folded->const_val);
    folded->neg = !folded->neg;
    return materialize(*folded);
  }

  Lit compute_xor(Lit a, Lit b) {
    if (a.is_const && b.is_const) return Lit::constant(a.const_val ^ b.const_val);
    if (a.is_const || b.is_const) {
      const Lit& wire = a.is_const ? b : a;
      const int c = a.is_const ? a.const_val : b.const_val;
      Lit out = wire;
      out.neg = out.neg ^ (c == 1);
      return materialize(out);
    }
    if (a.qubit == b.qubit) return Lit::constant(a.neg ^ b.neg);
    // Accumulate onto an ancilla-backed operand when one exists; its
    // node value has exactly one consumer, so mutating it is safe and
    // the reversed tape still restores it.
    int target;
    if (is_ancilla(a.qubit)) {
      target = a.qubit;
      ops_.push_back(GateOp::cnot(b.qubit, target));
    } else if (is_ancilla(b.qubit)) {
      target = b.qubit;
      ops_.push_back(GateOp::cnot(a.qubit, target));
    } else {
      target = alloc();
      ops_.push_back(GateOp::cnot(a.qubit, target));
      ops_.push_back(GateOp::cnot(b.qubit, target));
    }
    return materialize(Lit::wire(target, a.neg ^ b.neg));
  }

  // MCZ conjugated by H on a fresh ancilla: a multi-controlled X. AND
  // takes the controls as-is; OR inverts them and the result.
  Lit compute_gate(const std::vector<Lit>& lits, bool invert_controls, bool invert_result) {
    const int target = alloc();
    std::vector<int> flip_set;
    for (const Lit& l : lits) flip_set.push_back(l.qubit);
    flip_set.push_back(target);
    std::sort(flip_set.begin(), flip_set.end());

    auto sandwich = [&] {
      for (const Lit& l : lits)
        if (l.neg != invert_controls) ops_.push_back(GateOp::x(l.qubit));
    };
    sandwich();
    ops_.push_back(GateOp::h(target));
    ops_.push_back(GateOp::mcz(flip_set));
    ops_.push_back(GateOp::h(target));
    sandwich();
    if (invert_result) ops_.push_back(GateOp::x(target));
    return Lit::wire(target, false);
  }

  // Ancilla wires absorb their polarity as a gate; variable wires keep
  // the flag (they may not be disturbed outside an X sandwich).
  Lit materialize(Lit lit) {
    if (!lit.is_const && lit.neg && is_ancilla(lit.qubit)) {
      ops_.push_back(GateOp::x(lit.qubit));
      lit.neg = false;
    }
    return lit;
  }

  void apply_phase(const Lit& lit) {
    mark_phase();
    if (lit.is_const) {
      if (lit.const_val == 1) emit_global_minus();
      return;
    }
    if (lit.neg) {
      ops_.push_back(GateOp::x(lit.qubit));
      ops_.push_back(GateOp::z(lit.qubit));
      ops_.push_back(GateOp::x(lit.qubit));
    } else {
      ops_.push_back(GateOp::z(lit.qubit));
    }
  }

  void phase_on_conjunction(const std::vector<Lit>& lits) {
    mark_phase();
    std::vector<int> flip_set;
    for (const Lit& l : lits) flip_set.push_back(l.qubit);
    std::sort(flip_set.begin(), flip_set.end());
    for (const Lit& l : lits)
      if (l.neg) ops_.push_back(GateOp::x(l.qubit));
    ops_.push_back(GateOp::mcz(flip_set));
    for (const Lit& l : lits)
      if (l.neg) ops_.push_back(GateOp::x(l.qubit));
  }

  // Z X Z X = -I on any one qubit: a bare -1 for rules that hold (or
  // fail) everywhere. Invisible to measurement but kept exact so the
  // circuit equals the diagonal oracle as a matrix.
  void emit_global_minus() {
    const int q = 0;
    ops_.push_back(GateOp::z(q));
    ops_.push_back(GateOp::x(q));
    ops_.push_back(GateOp::z(q));
    ops_.push_back(GateOp::x(q));
  }

  void mark_phase() { compute_end_ = ops_.size(); }

  void finish() {
    // Reverse the compute tape; every emitted gate is self-inverse.
    std::vector<GateOp> uncompute(ops_.begin(), ops_.begin() + static_cast<long>(compute_end_));
    std::reverse(uncompute.begin(), uncompute.end());
    ops_.insert(ops_.end(), uncompute.begin(), uncompute.end());
  }

  const std::map<std::string, int>& qubit_of_;
  int num_vars_;
  int next_ancilla_;
  std::size_t compute_end_ = 0;
  std::vector<GateOp> ops_;
};

}  // namespace

Circuit synthesize_oracle_circuit(const ExprPtr& expr) {
  const std::vector<std::string> vars = variables(expr);
  if (vars.empty()) throw SynthesisError("rule has no variables");
  if (static_cast<int>(vars.size()) > kMaxQubits)
    throw CapacityError("rule has more variables than the simulator holds qubits");
  std::map<std::string, int> qubit_of;
  for (std::size_t i = 0; i < vars.size(); ++i) qubit_of[vars[i]] = static_cast<int>(i);
  const int num_vars = static_cast<int>(vars.size());

  if (auto circuit = synthesize_in_place(expr, qubit_of, num_vars)) return *circuit;

  // Ancilla demand can push the width past what the state-vector
  // simulator holds; that is the simulating caller's concern.
  return AncillaSynth(qubit_of, num_vars).run(expr);
}

Circuit build_diffusion(int num_var_qubits) {
  if (num_var_qubits < 1) throw ConfigError("diffusion needs at least one qubit");
  Circuit circuit(num_var_qubits);
  std::vector<int> all(static_cast<std::size_t>(num_var_qubits));
  for (int q = 0; q < num_var_qubits; ++q) all[static_cast<std::size_t>(q)] = q;
  for (int q : all) circuit.push(GateOp::h(q));
  for (int q : all) circuit.push(GateOp::x(q));
  circuit.push(GateOp::mcz(all));
  for (int q : all) circuit.push(GateOp::x(q));
  for (int q : all) circuit.push(GateOp::h(q));
  return circuit;
}

GroverPlan build_grover(const ExprPtr& expr, int iterations) {
  if (iterations < 1) throw ConfigError("iterations must be >= 1");
  const Circuit oracle = synthesize_oracle_circuit(expr);
  if (oracle.num_qubits > kMaxQubits)
    throw CapacityError("oracle needs " + std::to_string(oracle.num_qubits) +
                        " qubits (variables + ancillas), above the simulator's " +
                        std::to_string(kMaxQubits));
  const int num_vars = static_cast<int>(variables(expr).size());
  const Circuit diffusion = build_diffusion(num_vars);

  GroverPlan plan;
  plan.num_var_qubits = num_vars;
  plan.ancilla_count = oracle.num_qubits - num_vars;
  plan.iterations = iterations;
  plan.num_solutions = solution_count(expr);

  plan.circuit = Circuit(oracle.num_qubits);
  for (int q = 0; q < num_vars; ++q) plan.circuit.push(GateOp::h(q));
  for (int k = 0; k < iterations; ++k) {
    plan.circuit.ops.insert(plan.circuit.ops.end(), oracle.ops.begin(), oracle.ops.end());
    plan.circuit.ops.insert(plan.circuit.ops.end(), diffusion.ops.begin(), diffusion.ops.end());
  }
  return plan;
}

int optimal_iterations(int num_vars, std::uint64_t num_solutions) {
  if (num_vars < 1 || num_vars > kMaxQubits) throw ConfigError("num_vars out of range");
  if (num_solutions == 0) throw SchedulingError("no solutions: nothing to amplify");
  const double n_states = std::pow(2.0, num_vars);
  if (static_cast<double>(num_solutions) > n_states)
    throw ConfigError("more solutions than basis states");
  const int k = static_cast<int>(
      std::floor(std::numbers::pi / 4.0 * std::sqrt(n_states / static_cast<double>(num_solutions))));
  return std::max(1, k);
}

double grover_success_probability(int num_vars, std::uint64_t num_solutions, int iterations) {
  if (num_solutions == 0) return 0.0;
  const double n_states = std::pow(2.0, num_vars);
  const double theta = std::asin(std::sqrt(static_cast<double>(num_solutions) / n_states));
  const double amp = std::sin((2.0 * iterations + 1.0) * theta);
  return amp * amp;
}

CountsTable sample_rule(const ExprPtr& expr, int iterations, long shots, std::uint64_t seed,
                        const NoiseConfig& noise) {
  const GroverPlan plan = build_grover(expr, iterations);
  const Circuit& circuit = plan.circuit;
  const CountsTable full =
      noise.enabled ? sample(decompose(circuit), shots, seed, noise) : sample(circuit, shots, seed);

  CountsTable result;
  result.num_qubits = plan.num_var_qubits;
  result.shots = full.shots;
  const std::size_t drop = static_cast<std::size_t>(full.num_qubits - plan.num_var_qubits);
  for (const auto& [label, count] : full.counts) result.counts[label.substr(drop)] += count;
  return result;
}

std::function<std::string()> make_rule_sampler(const ExprPtr& expr, int iterations,
                                               std::uint64_t seed, const NoiseConfig& noise) {
  GroverPlan plan = build_grover(expr, iterations);
  const int num_vars = plan.num_var_qubits;
  const std::uint64_t var_mask = (std::uint64_t(1) << num_vars) - 1;

  if (!noise.enabled) {
    auto probs = probabilities(run_circuit(plan.circuit));
    return [probs = std::move(probs), num_vars, var_mask, rng = Rng(seed)]() mutable {
      const std::uint64_t outcome = static_cast<std::uint64_t>(detail::draw_index(probs, rng));
      return basis_label(outcome & var_mask, num_vars);
    };
  }
  Circuit gates = decompose(plan.circuit);
  return [gates = std::move(gates), noise, num_vars, var_mask, rng = Rng(seed)]() mutable {
    const Circuit noisy = apply_noise(gates, noise, rng);
    const auto probs = probabilities(run_circuit(noisy));
    const std::uint64_t outcome = static_cast<std::uint64_t>(detail::draw_index(probs, rng));
    return basis_label(outcome & var_mask, num_vars);
  };
}

}  // namespace qgmuse
