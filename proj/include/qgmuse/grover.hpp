#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>

#include "qgmuse/circuit.hpp"
#include "qgmuse/qsim.hpp"
#include "qgmuse/rules.hpp"

namespace qgmuse {

// Sign array of the phase oracle: entry x is -1 exactly when the rule
// holds on assignment x. Built straight from brute-force enumeration;
// serves as the reference the gate-level oracle is checked against.
Eigen::VectorXi build_diagonal_oracle(const ExprPtr& expr);

// Gate-level phase oracle. Variables sit on qubits 0..v-1, ancillas
// (if any) above them; every ancilla is returned to |0> on every basis
// input (compute, phase, uncompute). Two strategies:
//  - in place, when the rule is a conjunction of NOT/XOR literals that
//    can each be prepared on its own qubit: XOR becomes a CNOT landing
//    on a qubit no other literal needs, NOT becomes X, and one MCZ
//    across the prepared qubits flips the phase;
//  - otherwise sub-terms are computed into fresh ancillas (AND through
//    a Hadamard-conjugated MCZ, OR the same way on inverted inputs with
//    the ancilla inverted after), a final Z/MCZ applies the phase, and
//    the computation is reversed gate by gate.
// Throws SynthesisError rather than approximating.
Circuit synthesize_oracle_circuit(const ExprPtr& expr);

// [H all, X all, MCZ all, X all, H all]: equal to the reflection about
// the uniform state, times a global -1.
Circuit build_diffusion(int num_var_qubits);

struct GroverPlan {
  Circuit circuit;            // H layer, then iterations x (oracle, diffusion)
  int num_var_qubits = 0;     // qubits 0..v-1; measurement covers these
  int ancilla_count = 0;      // qubits v.. left untouched by H layer and diffusion
  int iterations = 0;
  std::uint64_t num_solutions = 0;  // brute-forced; 0 means nothing to amplify
};

// Diffusion acts on the variable qubits only; ancillas belong to the
// oracle. A rule with zero solutions still builds (the oracle is the
// identity and the output stays uniform); the plan's num_solutions
// field is the caller's warning.
GroverPlan build_grover(const ExprPtr& expr, int iterations);

// max(1, floor(pi/4 * sqrt(2^n / m))) — the standard schedule that
// maximizes sin^2((2k+1) * asin(sqrt(m / 2^n))).
int optimal_iterations(int num_vars, std::uint64_t num_solutions);

// Success probability after k iterations with m solutions in 2^n states.
double grover_success_probability(int num_vars, std::uint64_t num_solutions, int iterations);

// build_grover + sample, with counts re-keyed to variable-qubit labels
// (ancillas are deterministically |0> in noiseless runs and are traced
// out either way). Noise requires the gate basis, so the circuit is
// decomposed first when noise is enabled.
CountsTable sample_rule(const ExprPtr& expr, int iterations, long shots, std::uint64_t seed,
                        const NoiseConfig& noise = {});

// Stream of single-shot variable-qubit labels from the rule's Grover
// circuit; what the composer consumes. Ideal mode runs the circuit once
// up front and draws from the final distribution; noisy mode runs one
// fresh trajectory per call.
std::function<std::string()> make_rule_sampler(const ExprPtr& expr, int iterations,
                                               std::uint64_t seed, const NoiseConfig& noise = {});

}  // namespace qgmuse
