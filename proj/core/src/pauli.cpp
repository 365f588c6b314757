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

#include "mqc/pauli.hpp"

#include <bit>
#include <stdexcept>

#include <fmt/format.h>

namespace mqc {

namespace {

void check_size(int n) {
  if (n < 1 || n > PauliString::kMaxQubits) {
    throw std::invalid_argument(fmt::format("qubit count {} out of range", n));
  }
}

void check_qubit(const PauliString& p, int q) {
  if (q < 0 || q >= p.n_qubits) {
    throw std::invalid_argument(
        fmt::format("qubit {} out of range for {}-qubit Pauli string", q, p.n_qubits));
  }
}

}  // namespace

PauliString PauliString::identity(int n) {
  check_size(n);
  return PauliString{n, 0, 0, 0};
}

PauliString PauliString::single(int n, int qubit, char letter) {
  PauliString p = identity(n);
  check_qubit(p, qubit);
  p.set_letter(qubit, letter);
  return p;
}

char PauliString::letter(int qubit) const {
  check_qubit(*this, qubit);
  const bool x = (x_mask >> qubit) & 1u;
  const bool z = (z_mask >> qubit) & 1u;
  if (x && z) return 'Y';
  if (x) return 'X';
  if (z) return 'Z';
  return 'I';
}

void PauliString::set_letter(int qubit, char letter) {
  check_qubit(*this, qubit);
  const uint32_t bit = 1u << qubit;
  x_mask &= ~bit;
  z_mask &= ~bit;
  switch (letter) {
    case 'I': break;
    case 'X': x_mask |= bit; break;
    case 'Y': x_mask |= bit; z_mask |= bit; break;
    case 'Z': z_mask |= bit; break;
    default:
      throw std::invalid_argument(fmt::format("invalid Pauli letter '{}'", letter));
  }
}

int PauliString::weight() const { return std::popcount(x_mask | z_mask); }

std::string PauliString::str() const {
  static constexpr const char* kPrefix[4] = {"+", "+i", "-", "-i"};
  std::string out = kPrefix[phase_exp & 3u];
  for (int q = 0; q < n_qubits; ++q) {
    out.push_back(letter(q));
  }
  return out;
}

PauliString PauliString::from_string(std::string_view text) {
  size_t pos = 0;
  uint8_t phase = 0;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    if (text[pos] == '-') phase = 2;
    ++pos;
  }
  if (pos < text.size() && text[pos] == 'i') {
    phase = (phase + 1) & 3u;
    ++pos;
  }
  if (pos >= text.size()) {
    throw std::invalid_argument(fmt::format("no Pauli letters in \"{}\"", std::string(text)));
  }
  PauliString p = identity(static_cast<int>(text.size() - pos));
  p.phase_exp = phase;
  for (int q = 0; pos < text.size(); ++pos, ++q) {
    p.set_letter(q, text[pos]);
  }
  return p;
}

Eigen::MatrixXcd PauliString::to_matrix() const {
  if (n_qubits > 10) {
    throw std::invalid_argument("to_matrix supports at most 10 qubits");
  }
  static const std::complex<double> kI(0.0, 1.0);
  // Kronecker product with qubit 0 as the leftmost factor.
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (int q = 0; q < n_qubits; ++q) {
    int idx;
    switch (letter(q)) {
      case 'I': idx = 0; break;
      case 'X': idx = 1; break;
      case 'Y': idx = 2; break;
      default: idx = 3; break;
    }
    const Eigen::Matrix2cd s = sigma_matrix(idx);
    Eigen::MatrixXcd next(m.rows() * 2, m.cols() * 2);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        next.block(2 * r, 2 * c, 2, 2) = m(r, c) * s;
      }
    }
    m = std::move(next);
  }
  std::complex<double> phase(1.0, 0.0);
  for (unsigned k = 0; k < (phase_exp & 3u); ++k) phase *= kI;
  return phase * m;
}

PauliString multiply(const PauliString& a, const PauliString& b) {
  if (a.n_qubits != b.n_qubits) {
    throw std::invalid_argument(
        fmt::format("Pauli size mismatch: {} vs {}", a.n_qubits, b.n_qubits));
  }
  PauliString out = PauliString::identity(a.n_qubits);
  out.x_mask = a.x_mask ^ b.x_mask;
  out.z_mask = a.z_mask ^ b.z_mask;
  // Per-qubit phase of letter(a)*letter(b) = i^t * letter(out), from the
  // normal form letter(x,z) = i^{xz} X^x Z^z.
  int t = a.phase_exp + b.phase_exp;
  for (int q = 0; q < a.n_qubits; ++q) {
    const int xa = (a.x_mask >> q) & 1, za = (a.z_mask >> q) & 1;
    const int xb = (b.x_mask >> q) & 1, zb = (b.z_mask >> q) & 1;
    t += xa * za + xb * zb - (xa ^ xb) * (za ^ zb) + 2 * (za & xb);
  }
  out.phase_exp = static_cast<uint8_t>(((t % 4) + 4) % 4);
  return out;
}

bool commutes(const PauliString& a, const PauliString& b) {
  if (a.n_qubits != b.n_qubits) {
    throw std::invalid_argument(
        fmt::format("Pauli size mismatch: {} vs {}", a.n_qubits, b.n_qubits));
  }
  const int anticommutations =
      std::popcount(a.x_mask & b.z_mask) + std::popcount(a.z_mask & b.x_mask);
  return (anticommutations & 1) == 0;
}

std::string CliffordGate::str() const {
  switch (kind) {
    case Kind::kCnot: return fmt::format("CNOT({},{})", q0, q1);
    case Kind::kH: return fmt::format("H({})", q0);
    case Kind::kP: return fmt::format("P({})", q0);
    case Kind::kSwap: return fmt::format("SWAP({},{})", q0, q1);
  }
  return "?";
}

namespace {

// Image of the generator X_q (or Z_q) under conjugation by g. All images have
// phase +1; only P maps X to Y, every other entry is a plain relabelling.
PauliString image_of_x(const CliffordGate& g, int q, int n) {
  using Kind = CliffordGate::Kind;
  switch (g.kind) {
    case Kind::kCnot:
      if (q == g.q0) {  // X on control spreads to the target
        PauliString p = PauliString::single(n, g.q0, 'X');
        p.set_letter(g.q1, 'X');
        return p;
      }
      break;
    case Kind::kH:
      if (q == g.q0) return PauliString::single(n, q, 'Z');
      break;
    case Kind::kP:
      if (q == g.q0) return PauliString::single(n, q, 'Y');
      break;
    case Kind::kSwap:
      if (q == g.q0) return PauliString::single(n, g.q1, 'X');
      if (q == g.q1) return PauliString::single(n, g.q0, 'X');
      break;
  }
  return PauliString::single(n, q, 'X');
}

PauliString image_of_z(const CliffordGate& g, int q, int n) {
  using Kind = CliffordGate::Kind;
  switch (g.kind) {
    case Kind::kCnot:
      if (q == g.q1) {  // Z on target spreads to the control
        PauliString p = PauliString::single(n, g.q0, 'Z');
        p.set_letter(g.q1, 'Z');
        return p;
      }
      break;
    case Kind::kH:
      if (q == g.q0) return PauliString::single(n, q, 'X');
      break;
    case Kind::kP:
      break;  // Z is fixed
    case Kind::kSwap:
      if (q == g.q0) return PauliString::single(n, g.q1, 'Z');
      if (q == g.q1) return PauliString::single(n, g.q0, 'Z');
      break;
  }
  return PauliString::single(n, q, 'Z');
}

}  // namespace

PauliString conjugate(const CliffordGate& g, const PauliString& p) {
  if (g.q0 < 0 || g.q0 >= p.n_qubits || (g.arity() == 2 && (g.q1 < 0 || g.q1 >= p.n_qubits))) {
    throw std::invalid_argument(
        fmt::format("{} targets out of range for {} qubits", g.str(), p.n_qubits));
  }
  if (g.arity() == 2 && g.q0 == g.q1) {
    throw std::invalid_argument(fmt::format("{} targets must be distinct", g.str()));
  }
  // Normal form p = i^{phase + #Y} prod_q X_q^{x_q} Z_q^{z_q}; conjugation is a
  // homomorphism, so conjugate factor by factor and multiply back together.
  PauliString acc = PauliString::identity(p.n_qubits);
  acc.phase_exp = static_cast<uint8_t>((p.phase_exp + std::popcount(p.x_mask & p.z_mask)) & 3u);
  for (int q = 0; q < p.n_qubits; ++q) {
    if ((p.x_mask >> q) & 1u) acc = multiply(acc, image_of_x(g, q, p.n_qubits));
    if ((p.z_mask >> q) & 1u) acc = multiply(acc, image_of_z(g, q, p.n_qubits));
  }
  return acc;
}

int pauli_index_compose(int a, int b) {
  auto [xa, za] = pauli_index_bits(a);
  auto [xb, zb] = pauli_index_bits(b);
  return pauli_index_from_bits(xa ^ xb, za ^ zb);
}

std::pair<int, int> pauli_index_bits(int j) {
  switch (j & 3) {
    case 0: return {0, 0};
    case 1: return {1, 0};
    case 2: return {1, 1};
    default: return {0, 1};
  }
}

int pauli_index_from_bits(int x, int z) {
  if (x && z) return 2;
  if (x) return 1;
  if (z) return 3;
  return 0;
}

Eigen::Matrix2cd sigma_matrix(int j) {
  const std::complex<double> kI(0.0, 1.0);
  Eigen::Matrix2cd m;
  switch (j & 3) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -kI, kI, 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

}  // namespace mqc
