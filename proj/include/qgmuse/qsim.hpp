#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>

#include "qgmuse/circuit.hpp"
#include "qgmuse/errors.hpp"
#include "qgmuse/rng.hpp"

namespace qgmuse {

// Dense state-vector register over 2^n basis amplitudes, templated on
// the real scalar like the Eigen types it wraps. Gate application walks
// bit strides in place; everything else is expressed on the amplitude
// vector. Operations are pure functions of their inputs plus an
// explicit Rng, so values move freely between threads.

inline constexpr int kMaxQubits = 20;

template <typename Scalar = double>
struct StateVector {
  using Complex = std::complex<Scalar>;
  using AmpVector = Eigen::Vector<Complex, Eigen::Dynamic>;

  int num_qubits = 0;
  AmpVector amplitudes;

  Scalar norm() const { return amplitudes.norm(); }
};

using StateVectord = StateVector<double>;
using StateVectorf = StateVector<float>;

// |00...0>
template <typename Scalar = double>
StateVector<Scalar> init_state(int num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQubits)
    throw ConfigError("num_qubits must be in 1..=" + std::to_string(kMaxQubits) + ", got " +
                      std::to_string(num_qubits));
  StateVector<Scalar> st;
  st.num_qubits = num_qubits;
  st.amplitudes = StateVector<Scalar>::AmpVector::Zero(std::int64_t(1) << num_qubits);
  st.amplitudes(0) = typename StateVector<Scalar>::Complex(1, 0);
  return st;
}

template <typename Scalar = double>
StateVector<Scalar> basis_state(int num_qubits, std::uint64_t index) {
  auto st = init_state<Scalar>(num_qubits);
  if (index >= (std::uint64_t(1) << num_qubits))
    throw ConfigError("basis index " + std::to_string(index) + " out of range");
  st.amplitudes(0) = 0;
  st.amplitudes(static_cast<std::int64_t>(index)) = typename StateVector<Scalar>::Complex(1, 0);
  return st;
}

namespace detail {

inline std::uint64_t qubit_mask(const std::vector<int>& qubits) {
  std::uint64_t mask = 0;
  for (int q : qubits) mask |= std::uint64_t(1) << q;
  return mask;
}

inline void check_op(const GateOp& op, int num_qubits) {
  std::uint64_t seen = 0;
  for (int q : op.qubits) {
    if (q < 0 || q >= num_qubits)
      throw CircuitError("qubit index " + std::to_string(q) + " out of range for " +
                         std::to_string(num_qubits) + "-qubit state");
    const std::uint64_t bit = std::uint64_t(1) << q;
    if (seen & bit) throw CircuitError("duplicate qubit in " + to_string(op));
    seen |= bit;
  }
}

}  // namespace detail

template <typename Scalar>
void apply_gate(StateVector<Scalar>& state, const GateOp& op) {
  using Complex = typename StateVector<Scalar>::Complex;
  detail::check_op(op, state.num_qubits);
  auto& a = state.amplitudes;
  const std::int64_t dim = a.size();

  switch (op.kind) {
    case GateKind::H: {
      const std::int64_t bit = std::int64_t(1) << op.qubits[0];
      const Scalar inv_sqrt2 = Scalar(1) / std::sqrt(Scalar(2));
      for (std::int64_t i = 0; i < dim; ++i) {
        if (i & bit) continue;
        const Complex lo = a(i), hi = a(i | bit);
        a(i) = (lo + hi) * inv_sqrt2;
        a(i | bit) = (lo - hi) * inv_sqrt2;
      }
      break;
    }
    case GateKind::X: {
      const std::int64_t bit = std::int64_t(1) << op.qubits[0];
      for (std::int64_t i = 0; i < dim; ++i)
        if (!(i & bit)) std::swap(a(i), a(i | bit));
      break;
    }
    case GateKind::Z: {
      const std::int64_t bit = std::int64_t(1) << op.qubits[0];
      for (std::int64_t i = 0; i < dim; ++i)
        if (i & bit) a(i) = -a(i);
      break;
    }
    case GateKind::T:
    case GateKind::Tdg: {
      const std::int64_t bit = std::int64_t(1) << op.qubits[0];
      const Scalar inv_sqrt2 = Scalar(1) / std::sqrt(Scalar(2));
      // exp(+-i pi/4) = (1 +- i)/sqrt(2)
      const Complex phase(inv_sqrt2, op.kind == GateKind::T ? inv_sqrt2 : -inv_sqrt2);
      for (std::int64_t i = 0; i < dim; ++i)
        if (i & bit) a(i) *= phase;
      break;
    }
    case GateKind::CNOT: {
      const std::int64_t cbit = std::int64_t(1) << op.qubits[0];
      const std::int64_t tbit = std::int64_t(1) << op.qubits[1];
      for (std::int64_t i = 0; i < dim; ++i)
        if ((i & cbit) && !(i & tbit)) std::swap(a(i), a(i | tbit));
      break;
    }
    case GateKind::CCZ:
    case GateKind::MCZ: {
      const std::int64_t mask = static_cast<std::int64_t>(detail::qubit_mask(op.qubits));
      for (std::int64_t i = 0; i < dim; ++i)
        if ((i & mask) == mask) a(i) = -a(i);
      break;
    }
  }
}

template <typename Scalar>
StateVector<Scalar> run_circuit(const Circuit& circuit, StateVector<Scalar> initial) {
  if (circuit.num_qubits != initial.num_qubits)
    throw CircuitError("circuit has " + std::to_string(circuit.num_qubits) +
                       " qubits but state has " + std::to_string(initial.num_qubits));
  for (const GateOp& op : circuit.ops) apply_gate(initial, op);
  return initial;
}

template <typename Scalar = double>
StateVector<Scalar> run_circuit(const Circuit& circuit) {
  return run_circuit(circuit, init_state<Scalar>(circuit.num_qubits));
}

// Entry i = |amplitude_i|^2.
template <typename Scalar>
Eigen::Vector<Scalar, Eigen::Dynamic> probabilities(const StateVector<Scalar>& state) {
  return state.amplitudes.cwiseAbs2();
}

namespace detail {

// One draw from an (unnormalized-by-eps) probability array.
template <typename Scalar>
std::int64_t draw_index(const Eigen::Vector<Scalar, Eigen::Dynamic>& probs, Rng& rng) {
  const Scalar u = static_cast<Scalar>(rng.next_double());
  Scalar acc = 0;
  const std::int64_t dim = probs.size();
  for (std::int64_t i = 0; i < dim; ++i) {
    acc += probs(i);
    if (u < acc) return i;
  }
  return dim - 1;  // u landed in the rounding slack at the top
}

}  // namespace detail

// Measurement histogram over `shots` runs. Ideal mode runs the circuit
// once and samples the final distribution, which is statistically
// identical to re-running per shot. Noisy mode has to re-run: every
// trajectory draws its own error pattern. Deterministic for a fixed
// (circuit, shots, seed, noise).
template <typename Scalar = double>
CountsTable sample(const Circuit& circuit, long shots, std::uint64_t seed,
                   const NoiseConfig& noise = {}) {
  if (shots < 1) throw ConfigError("shots must be >= 1");
  noise.validate();
  circuit.validate();

  std::vector<long> hits(std::size_t(1) << circuit.num_qubits, 0);
  Rng rng(seed);

  if (!noise.enabled) {
    const auto probs = probabilities(run_circuit<Scalar>(circuit));
    for (long s = 0; s < shots; ++s) ++hits[static_cast<std::size_t>(detail::draw_index(probs, rng))];
  } else {
    for (long s = 0; s < shots; ++s) {
      const Circuit noisy = apply_noise(circuit, noise, rng);
      const auto probs = probabilities(run_circuit<Scalar>(noisy));
      ++hits[static_cast<std::size_t>(detail::draw_index(probs, rng))];
    }
  }

  CountsTable table;
  table.num_qubits = circuit.num_qubits;
  table.shots = shots;
  for (std::size_t i = 0; i < hits.size(); ++i)
    if (hits[i] > 0) table.counts[basis_label(i, circuit.num_qubits)] = hits[i];
  return table;
}

}  // namespace qgmuse
