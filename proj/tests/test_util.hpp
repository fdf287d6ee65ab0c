#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "qgmuse/qsim.hpp"
#include "qgmuse/rng.hpp"
#include "qgmuse/rules.hpp"

namespace testutil {

// Column x = circuit applied to |x>.
inline Eigen::MatrixXcd build_unitary(const qgmuse::Circuit& circuit) {
  const std::int64_t dim = std::int64_t(1) << circuit.num_qubits;
  Eigen::MatrixXcd u(dim, dim);
  for (std::int64_t x = 0; x < dim; ++x) {
    auto st = qgmuse::run_circuit(
        circuit, qgmuse::basis_state(circuit.num_qubits, static_cast<std::uint64_t>(x)));
    u.col(x) = st.amplitudes;
  }
  return u;
}

// Rotate so the first entry above tolerance is real positive; equality
// up to global phase becomes plain entrywise equality.
inline Eigen::MatrixXcd phase_normalized(Eigen::MatrixXcd m, double tol = 1e-12) {
  for (std::int64_t c = 0; c < m.cols(); ++c)
    for (std::int64_t r = 0; r < m.rows(); ++r) {
      const std::complex<double> e = m(r, c);
      if (std::abs(e) > tol) {
        m *= std::conj(e) / std::abs(e);
        return m;
      }
    }
  return m;
}

inline double deviation_up_to_phase(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (phase_normalized(a) - phase_normalized(b)).cwiseAbs().maxCoeff();
}

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::int64_t i = 0; i < a.rows(); ++i)
    for (std::int64_t j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Eigen::MatrixXcd hadamard_n(int n) {
  Eigen::MatrixXcd h(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  h << s, s, s, -s;
  Eigen::MatrixXcd out = h;
  for (int i = 1; i < n; ++i) out = kron(out, h);
  return out;
}

// Random rule over single-letter variables; And/Or arity 2..3, sizes
// kept small enough to simulate.
inline qgmuse::ExprPtr random_expr(qgmuse::Rng& rng, int depth, int var_pool) {
  using qgmuse::BoolExpr;
  auto var = [&] { return BoolExpr::var(std::string(1, static_cast<char>('a' + rng.next_below(static_cast<std::uint64_t>(var_pool))))); };
  if (depth <= 0 || rng.next_below(4) == 0) return var();
  switch (rng.next_below(4)) {
    case 0:
      return BoolExpr::lnot(random_expr(rng, depth - 1, var_pool));
    case 1:
    case 2: {
      std::vector<qgmuse::ExprPtr> kids;
      const int arity = 2 + static_cast<int>(rng.next_below(2));
      for (int i = 0; i < arity; ++i) kids.push_back(random_expr(rng, depth - 1, var_pool));
      return rng.next_bool() ? BoolExpr::land(std::move(kids)) : BoolExpr::lor(std::move(kids));
    }
    default:
      return BoolExpr::lxor(random_expr(rng, depth - 1, var_pool),
                            random_expr(rng, depth - 1, var_pool));
  }
}

inline std::string data_path(const std::string& name) {
  return std::string(QGMUSE_DATA_DIR) + "/" + name;
}

}  // namespace testutil
