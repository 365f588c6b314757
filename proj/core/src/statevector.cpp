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

#include "mqc/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

namespace mqc {

namespace {

constexpr double kNormTol = 1e-8;
constexpr double kOrthoTol = 1e-12;

void check_n(int n) {
  if (n < 1 || n > StateVector::kMaxQubits) {
    throw std::invalid_argument(fmt::format("qubit count {} out of range (max {})", n,
                                            StateVector::kMaxQubits));
  }
}

void check_targets(const StateVector& s, std::span<const int> targets) {
  for (size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] < 0 || targets[i] >= s.n_qubits()) {
      throw std::invalid_argument(fmt::format("target {} out of range", targets[i]));
    }
    for (size_t j = i + 1; j < targets.size(); ++j) {
      if (targets[i] == targets[j]) {
        throw std::invalid_argument("targets must be distinct");
      }
    }
  }
}

void check_unitary(const Eigen::MatrixXcd& u, const char* name) {
  const Eigen::MatrixXcd delta =
      u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols());
  if (delta.cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument(fmt::format("{} matrix is not unitary", name));
  }
}

}  // namespace

StateVector StateVector::zeros(int n) {
  check_n(n);
  std::vector<cd> a(size_t{1} << n, cd(0.0, 0.0));
  a[0] = 1.0;
  return StateVector(n, std::move(a));
}

StateVector StateVector::basis(int n, std::string_view bits) {
  check_n(n);
  if (static_cast<int>(bits.size()) != n) {
    throw std::invalid_argument("bit string length must equal the qubit count");
  }
  size_t index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("bit string must be 0/1");
    index = (index << 1) | static_cast<size_t>(c - '0');
  }
  std::vector<cd> a(size_t{1} << n, cd(0.0, 0.0));
  a[index] = 1.0;
  return StateVector(n, std::move(a));
}

StateVector StateVector::bell(int j) {
  const double r = 1.0 / std::sqrt(2.0);
  switch (j) {
    case 0: return from_amplitudes(2, {r, 0, 0, r});
    case 1: return from_amplitudes(2, {0, r, r, 0});
    case 2: return from_amplitudes(2, {0, r, -r, 0});
    case 3: return from_amplitudes(2, {r, 0, 0, -r});
    default:
      throw std::invalid_argument(fmt::format("Bell index {} out of range", j));
  }
}

StateVector StateVector::from_amplitudes(int n, std::vector<cd> amps) {
  check_n(n);
  if (amps.size() != (size_t{1} << n)) {
    throw std::invalid_argument("amplitude count must be 2^n");
  }
  StateVector s(n, std::move(amps));
  if (std::abs(s.norm() - 1.0) > kNormTol) {
    throw std::invalid_argument(fmt::format("state norm {} is not 1", s.norm()));
  }
  return s;
}

double StateVector::norm() const {
  double acc = 0.0;
  for (const cd& v : a_) acc += std::norm(v);
  return std::sqrt(acc);
}

Gate Gate::cnot(int control, int target) {
  Gate g;
  g.kind = Kind::kCnot;
  g.targets = {control, target};
  return g;
}
Gate Gate::h(int q) {
  Gate g;
  g.kind = Kind::kH;
  g.targets = {q, -1};
  return g;
}
Gate Gate::p(int q) {
  Gate g;
  g.kind = Kind::kP;
  g.targets = {q, -1};
  return g;
}
Gate Gate::swap(int a, int b) {
  Gate g;
  g.kind = Kind::kSwap;
  g.targets = {a, b};
  return g;
}
Gate Gate::rz(int q, double theta) {
  Gate g;
  g.kind = Kind::kRz;
  g.targets = {q, -1};
  g.theta = theta;
  return g;
}
Gate Gate::rx(int q, double theta) {
  Gate g;
  g.kind = Kind::kRx;
  g.targets = {q, -1};
  g.theta = theta;
  return g;
}
Gate Gate::unitary1(int q, const Eigen::Matrix2cd& u) {
  check_unitary(u, "1-qubit");
  Gate g;
  g.kind = Kind::kU1;
  g.targets = {q, -1};
  g.m1 = u;
  return g;
}
Gate Gate::unitary2(int q0, int q1, const Eigen::Matrix4cd& u) {
  check_unitary(u, "2-qubit");
  Gate g;
  g.kind = Kind::kU2;
  g.targets = {q0, q1};
  g.m2 = u;
  return g;
}

Eigen::MatrixXcd Gate::matrix() const {
  const cd i(0.0, 1.0);
  switch (kind) {
    case Kind::kH: {
      Eigen::Matrix2cd m;
      const double r = 1.0 / std::sqrt(2.0);
      m << r, r, r, -r;
      return m;
    }
    case Kind::kP: {
      Eigen::Matrix2cd m;
      m << std::exp(-i * M_PI / 4.0), 0, 0, std::exp(i * M_PI / 4.0);
      return m;
    }
    case Kind::kRz: {
      Eigen::Matrix2cd m;
      m << std::exp(-i * theta / 2.0), 0, 0, std::exp(i * theta / 2.0);
      return m;
    }
    case Kind::kRx: {
      Eigen::Matrix2cd m;
      const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
      m << c, -i * s, -i * s, c;
      return m;
    }
    case Kind::kU1:
      return m1;
    case Kind::kCnot: {
      Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
      m(0, 0) = 1;
      m(1, 1) = 1;
      m(2, 3) = 1;
      m(3, 2) = 1;
      return m;
    }
    case Kind::kSwap: {
      Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
      m(0, 0) = 1;
      m(1, 2) = 1;
      m(2, 1) = 1;
      m(3, 3) = 1;
      return m;
    }
    case Kind::kU2:
      return m2;
  }
  throw std::logic_error("unreachable");
}

std::string Gate::name() const {
  switch (kind) {
    case Kind::kCnot: return "CNOT";
    case Kind::kH: return "H";
    case Kind::kP: return "P";
    case Kind::kSwap: return "SWAP";
    case Kind::kRz: return fmt::format("RZ({:.6g})", theta);
    case Kind::kRx: return fmt::format("RX({:.6g})", theta);
    case Kind::kU1: return "U1";
    case Kind::kU2: return "U2";
  }
  return "?";
}

StateVector apply_gate(const StateVector& s, const Gate& g) {
  std::array<int, 2> t = g.targets;
  check_targets(s, std::span<const int>(t.data(), g.arity()));
  const int n = s.n_qubits();
  std::vector<cd> out(s.amplitudes());

  if (g.arity() == 1) {
    const Eigen::Matrix2cd m = g.matrix();
    const size_t bit = size_t{1} << s.bit_of(t[0]);
    for (size_t i = 0; i < out.size(); ++i) {
      if (i & bit) continue;
      const cd a0 = out[i];
      const cd a1 = out[i | bit];
      out[i] = m(0, 0) * a0 + m(0, 1) * a1;
      out[i | bit] = m(1, 0) * a0 + m(1, 1) * a1;
    }
  } else {
    const Eigen::Matrix4cd m = g.matrix();
    const size_t b0 = size_t{1} << s.bit_of(t[0]);
    const size_t b1 = size_t{1} << s.bit_of(t[1]);
    for (size_t i = 0; i < out.size(); ++i) {
      if ((i & b0) || (i & b1)) continue;
      std::array<cd, 4> v = {out[i], out[i | b1], out[i | b0], out[i | b0 | b1]};
      for (int r = 0; r < 4; ++r) {
        cd acc = 0.0;
        for (int c = 0; c < 4; ++c) acc += m(r, c) * v[c];
        const size_t idx = i | ((r & 2) ? b0 : 0) | ((r & 1) ? b1 : 0);
        out[idx] = acc;
      }
    }
  }
  StateVector result = StateVector::from_amplitudes(n, std::move(out));
  return result;
}

StateVector apply_pauli(const PauliString& p, const StateVector& s) {
  if (p.n_qubits != s.n_qubits()) {
    throw std::invalid_argument("Pauli string size must match the register");
  }
  const int n = s.n_qubits();
  // Translate qubit masks to index-bit masks (qubit 0 = MSB).
  size_t xflip = 0, zbits = 0;
  for (int q = 0; q < n; ++q) {
    if ((p.x_mask >> q) & 1u) xflip |= size_t{1} << (n - 1 - q);
    if ((p.z_mask >> q) & 1u) zbits |= size_t{1} << (n - 1 - q);
  }
  const int y_count = std::popcount(p.x_mask & p.z_mask);
  const cd i_unit(0.0, 1.0);
  cd base(1.0, 0.0);
  for (int k = 0; k < ((p.phase_exp + y_count) & 3); ++k) base *= i_unit;

  std::vector<cd> out(s.dim(), cd(0.0, 0.0));
  const auto& a = s.amplitudes();
  for (size_t idx = 0; idx < a.size(); ++idx) {
    const int sign_pops = std::popcount(idx & zbits);
    const cd f = (sign_pops & 1) ? -base : base;
    out[idx ^ xflip] = f * a[idx];
  }
  return StateVector(n, std::move(out));
}

MeasurementOp::MeasurementOp(int arity_in, std::vector<Projector> projectors_in,
                             std::vector<int> labels_in)
    : arity(arity_in), projectors(std::move(projectors_in)), labels(std::move(labels_in)) {
  if (arity < 1 || arity > 2) throw std::invalid_argument("measurement arity must be 1 or 2");
  if (projectors.empty() || projectors.size() != labels.size()) {
    throw std::invalid_argument("projector/label count mismatch");
  }
  const long dim = 1L << arity;
  long rank_sum = 0;
  std::vector<const Eigen::VectorXcd*> all;
  for (const auto& proj : projectors) {
    if (proj.basis.empty()) throw std::invalid_argument("empty projector");
    for (const auto& v : proj.basis) {
      if (v.size() != dim) throw std::invalid_argument("projector vector dimension mismatch");
      all.push_back(&v);
    }
    rank_sum += static_cast<long>(proj.basis.size());
  }
  if (rank_sum != dim) {
    throw std::invalid_argument(
        fmt::format("projector ranks sum to {}, expected {}", rank_sum, dim));
  }
  for (size_t i = 0; i < all.size(); ++i) {
    for (size_t j = 0; j < all.size(); ++j) {
      const cd ip = all[i]->dot(*all[j]);
      const double want = (i == j) ? 1.0 : 0.0;
      if (std::abs(ip - want) > 10 * kOrthoTol) {
        throw std::invalid_argument("projector basis vectors are not orthonormal");
      }
    }
  }
}

MeasurementOp MeasurementOp::bell_basis() {
  return conjugated_bell_basis(Eigen::Matrix2cd::Identity());
}

MeasurementOp MeasurementOp::conjugated_bell_basis(const Eigen::Matrix2cd& a) {
  check_unitary(a, "basis-change");
  std::vector<Projector> projs;
  std::vector<int> labels;
  for (int j = 0; j < 4; ++j) {
    const StateVector phi = StateVector::bell(j);
    Eigen::VectorXcd v(4);
    for (int r = 0; r < 4; ++r) v(r) = phi.amp(r);
    // (A ⊗ I) |Phi_j>
    Eigen::VectorXcd w = Eigen::VectorXcd::Zero(4);
    for (int r0 = 0; r0 < 2; ++r0)
      for (int c0 = 0; c0 < 2; ++c0)
        for (int k = 0; k < 2; ++k) w(r0 * 2 + k) += a(r0, c0) * v(c0 * 2 + k);
    projs.push_back(Projector{{w}});
    labels.push_back(j);
  }
  return MeasurementOp(2, std::move(projs), std::move(labels));
}

MeasurementOp MeasurementOp::parity_pm() {
  auto vec = [](int j) {
    const StateVector phi = StateVector::bell(j);
    Eigen::VectorXcd v(4);
    for (int r = 0; r < 4; ++r) v(r) = phi.amp(r);
    return v;
  };
  std::vector<Projector> projs;
  projs.push_back(Projector{{vec(0), vec(1)}});
  projs.push_back(Projector{{vec(2), vec(3)}});
  return MeasurementOp(2, std::move(projs), {+1, -1});
}

Eigen::MatrixXcd MeasurementOp::projector_matrix(size_t k) const {
  const long dim = 1L << arity;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& v : projectors.at(k).basis) m += v * v.adjoint();
  return m;
}

namespace {

// Iterates the register grouped by the configuration of non-target qubits.
// For each environment configuration, `body` receives the 2^k register
// indices of the target subspace in target order (targets[0] = MSB).
template <typename F>
void for_each_env(const StateVector& s, std::span<const int> targets, F&& body) {
  const int k = static_cast<int>(targets.size());
  std::vector<size_t> tbits(k);
  for (int i = 0; i < k; ++i) tbits[i] = size_t{1} << s.bit_of(targets[i]);
  size_t tmask = 0;
  for (size_t b : tbits) tmask |= b;

  const size_t dim = s.dim();
  const size_t sub = size_t{1} << k;
  std::vector<size_t> idx(sub);
  for (size_t base = 0; base < dim; ++base) {
    if (base & tmask) continue;  // enumerate env configs only
    for (size_t t = 0; t < sub; ++t) {
      size_t id = base;
      for (int i = 0; i < k; ++i) {
        if ((t >> (k - 1 - i)) & 1u) id |= tbits[i];
      }
      idx[t] = id;
    }
    body(std::span<const size_t>(idx));
  }
}

}  // namespace

MeasureResult measure(const StateVector& s, const MeasurementOp& op,
                      std::span<const int> targets, OutcomeSource& src, const char* what) {
  check_targets(s, targets);
  if (static_cast<int>(targets.size()) != op.arity) {
    throw std::invalid_argument("target count must match the measurement arity");
  }
  const auto& a = s.amplitudes();
  const size_t outcomes = op.outcome_count();
  std::vector<double> probs(outcomes, 0.0);
  for_each_env(s, targets, [&](std::span<const size_t> idx) {
    for (size_t k = 0; k < outcomes; ++k) {
      for (const auto& v : op.projectors[k].basis) {
        cd overlap = 0.0;
        for (size_t t = 0; t < idx.size(); ++t) overlap += std::conj(v(t)) * a[idx[t]];
        probs[k] += std::norm(overlap);
      }
    }
  });

  const int pick = src.choose(probs, op.labels, what);
  const double p = probs[pick];

  std::vector<cd> out(s.dim(), cd(0.0, 0.0));
  const double scale = 1.0 / std::sqrt(p);
  for_each_env(s, targets, [&](std::span<const size_t> idx) {
    for (const auto& v : op.projectors[pick].basis) {
      cd overlap = 0.0;
      for (size_t t = 0; t < idx.size(); ++t) overlap += std::conj(v(t)) * a[idx[t]];
      if (std::norm(overlap) == 0.0) continue;
      for (size_t t = 0; t < idx.size(); ++t) out[idx[t]] += scale * overlap * v(t);
    }
  });
  return MeasureResult{op.labels[pick], p,
                       StateVector::from_amplitudes(s.n_qubits(), std::move(out))};
}

MeasureResult measure_pauli_observable(const StateVector& s, const PauliString& p,
                                       std::span<const int> targets, OutcomeSource& src,
                                       const char* what) {
  check_targets(s, targets);
  if (p.n_qubits != static_cast<int>(targets.size())) {
    throw std::invalid_argument("observable arity must match the target count");
  }
  if (p.is_identity()) throw std::invalid_argument("observable must be non-identity");
  if (!p.is_sign_only()) throw std::invalid_argument("observable must be Hermitian (phase ±1)");

  // Embed into the full register.
  PauliString full = PauliString::identity(s.n_qubits());
  for (int i = 0; i < p.n_qubits; ++i) full.set_letter(targets[i], p.letter(i));
  full.phase_exp = p.phase_exp;

  const StateVector ps = apply_pauli(full, s);
  cd expectation = inner(s, ps);
  double e = std::clamp(expectation.real(), -1.0, 1.0);
  const std::array<double, 2> probs = {(1.0 + e) / 2.0, (1.0 - e) / 2.0};
  const std::array<int, 2> labels = {+1, -1};
  const int pick = src.choose(probs, labels, what);
  const double sign = pick == 0 ? 1.0 : -1.0;
  const double prob = probs[pick];

  std::vector<cd> out(s.dim());
  const double scale = 0.5 / std::sqrt(prob);
  for (size_t i = 0; i < out.size(); ++i) {
    out[i] = scale * (s.amplitudes()[i] + sign * ps.amplitudes()[i]);
  }
  return MeasureResult{labels[pick], prob,
                       StateVector::from_amplitudes(s.n_qubits(), std::move(out))};
}

cd inner(const StateVector& a, const StateVector& b) {
  if (a.n_qubits() != b.n_qubits()) throw std::invalid_argument("dimension mismatch");
  cd acc = 0.0;
  for (size_t i = 0; i < a.dim(); ++i) acc += std::conj(a.amplitudes()[i]) * b.amplitudes()[i];
  return acc;
}

double fidelity(const StateVector& a, const StateVector& b) { return std::abs(inner(a, b)); }

bool equal_up_to_global_phase(const StateVector& a, const StateVector& b, double tol) {
  return fidelity(a, b) > 1.0 - tol;
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  const int n = a.n_qubits() + b.n_qubits();
  check_n(n);
  std::vector<cd> out(size_t{1} << n);
  for (size_t i = 0; i < a.dim(); ++i) {
    for (size_t j = 0; j < b.dim(); ++j) {
      out[(i << b.n_qubits()) | j] = a.amplitudes()[i] * b.amplitudes()[j];
    }
  }
  return StateVector::from_amplitudes(n, std::move(out));
}

StateVector canonical_phase(const StateVector& s) {
  for (const cd& v : s.amplitudes()) {
    if (std::abs(v) > 1e-9) {
      const cd rot = std::conj(v) / std::abs(v);
      std::vector<cd> out(s.amplitudes());
      for (cd& x : out) x *= rot;
      return StateVector::from_amplitudes(s.n_qubits(), std::move(out));
    }
  }
  throw std::invalid_argument("zero state has no canonical phase");
}

Factored factor_out(const StateVector& s, std::span<const int> kept) {
  check_targets(s, kept);
  const int k = static_cast<int>(kept.size());
  const int r = s.n_qubits() - k;
  if (r == 0) {
    // Everything kept: the "rest" factor is trivial; represent it as scalar 1
    // on a dummy empty register is not supported, so forbid.
    throw std::invalid_argument("factor_out requires a non-empty remainder");
  }

  // Collect, for each environment configuration, the kept-subspace vector.
  std::vector<std::vector<cd>> slices;
  const size_t sub = size_t{1} << k;
  std::vector<double> norms;
  for_each_env(s, kept, [&](std::span<const size_t> idx) {
    std::vector<cd> v(sub);
    double nrm = 0.0;
    for (size_t t = 0; t < sub; ++t) {
      v[t] = s.amplitudes()[idx[t]];
      nrm += std::norm(v[t]);
    }
    slices.push_back(std::move(v));
    norms.push_back(nrm);
  });

  size_t best = 0;
  for (size_t e = 1; e < slices.size(); ++e) {
    if (norms[e] > norms[best]) best = e;
  }
  if (norms[best] < 1e-12) throw std::runtime_error("factor_out: zero state");

  const double bn = std::sqrt(norms[best]);
  std::vector<cd> kept_amps(sub);
  for (size_t t = 0; t < sub; ++t) kept_amps[t] = slices[best][t] / bn;

  // rest[e] = <kept | slice_e>; verify proportionality (unentangled cut).
  std::vector<cd> rest(slices.size());
  for (size_t e = 0; e < slices.size(); ++e) {
    cd coef = 0.0;
    for (size_t t = 0; t < sub; ++t) coef += std::conj(kept_amps[t]) * slices[e][t];
    rest[e] = coef;
    const double residual = norms[e] - std::norm(coef);
    if (residual > 1e-8) {
      throw std::runtime_error("factor_out: qubits are entangled across the cut");
    }
  }
  return Factored{StateVector::from_amplitudes(k, std::move(kept_amps)),
                  StateVector::from_amplitudes(r, std::move(rest))};
}

StateVector random_state(int n, Rng& rng) {
  check_n(n);
  std::vector<cd> a(size_t{1} << n);
  double nrm = 0.0;
  for (cd& v : a) {
    v = rng.complex_normal();
    nrm += std::norm(v);
  }
  nrm = std::sqrt(nrm);
  for (cd& v : a) v /= nrm;
  return StateVector::from_amplitudes(n, std::move(a));
}

Eigen::MatrixXcd random_unitary(int dim, Rng& rng) {
  Eigen::MatrixXcd g(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) g(r, c) = rng.complex_normal();
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  Eigen::MatrixXcd rmat = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < dim; ++c) {
    const cd d = rmat(c, c);
    q.col(c) *= d / std::abs(d);
  }
  return q;
}

std::string serialize_amplitudes(const StateVector& s) {
  std::ostringstream out;
  out.precision(17);
  for (size_t i = 0; i < s.dim(); ++i) {
    const cd v = s.amplitudes()[i];
    if (std::abs(v) > 1e-14) {
      out << i << " " << v.real() << " " << v.imag() << "\n";
    }
  }
  return out.str();
}

StateVector deserialize_amplitudes(int n, std::string_view text) {
  std::vector<cd> a(size_t{1} << n, cd(0.0, 0.0));
  std::istringstream in{std::string(text)};
  size_t idx;
  double re, im;
  while (in >> idx >> re >> im) {
    a.at(idx) = cd(re, im);
  }
  return StateVector::from_amplitudes(n, std::move(a));
}

}  // namespace mqc
