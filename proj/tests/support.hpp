// Copyright 2026 The mqc authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Brute-force oracles the test suites check the fast paths against. These
// build dense matrices independently of the implementation's update rules.
#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "mqc/pauli.hpp"
#include "mqc/statevector.hpp"

namespace mqc::test {

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c)
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return out;
}

/// Full 2^n x 2^n matrix of any state transformer, built column by column.
inline Eigen::MatrixXcd full_matrix(
    int n, const std::function<StateVector(const StateVector&)>& op) {
  const size_t dim = size_t{1} << n;
  Eigen::MatrixXcd m(dim, dim);
  for (size_t c = 0; c < dim; ++c) {
    std::vector<cd> e(dim, cd(0.0, 0.0));
    e[c] = 1.0;
    const StateVector out = op(StateVector::from_amplitudes(n, std::move(e)));
    for (size_t r = 0; r < dim; ++r) m(r, c) = out.amp(r);
  }
  return m;
}

/// Direct Kronecker-product matrix of a Pauli string (independent oracle for
/// PauliString::to_matrix and the algebra built on it).
inline Eigen::MatrixXcd pauli_matrix_oracle(const PauliString& p) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (int q = 0; q < p.n_qubits; ++q) {
    int idx = 0;
    switch (p.letter(q)) {
      case 'X': idx = 1; break;
      case 'Y': idx = 2; break;
      case 'Z': idx = 3; break;
      default: idx = 0; break;
    }
    m = kron(m, sigma_matrix(idx));
  }
  const cd i_unit(0.0, 1.0);
  cd phase(1.0, 0.0);
  for (int k = 0; k < (p.phase_exp & 3); ++k) phase *= i_unit;
  return phase * m;
}

inline double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace mqc::test
