// Copyright 2026 The XXZ Gatesmith Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Test-only reference computations. Nothing in here calls the closed-form
// propagators it is used to check.

#ifndef GATESMITH_TESTS_ORACLES_HPP
#define GATESMITH_TESTS_ORACLES_HPP

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "gatesmith/core.hpp"
#include "gatesmith/gate_catalog.hpp"
#include "gatesmith/protocol.hpp"
#include "gatesmith/synthesizer.hpp"

namespace gatesmith::testing {

/// exp(A) by scaling and squaring a truncated Taylor series.
template <typename Scalar>
Matrix4<Scalar> expm_series(const Matrix4<Scalar>& a) {
  const Scalar norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  while (norm / std::pow(Scalar(2), squarings) > Scalar(0.25)) ++squarings;
  const Matrix4<Scalar> scaled = a / std::pow(Scalar(2), squarings);
  Matrix4<Scalar> result = Matrix4<Scalar>::Identity();
  Matrix4<Scalar> term = Matrix4<Scalar>::Identity();
  for (int k = 1; k <= 30; ++k) {
    term = (term * scaled) / Scalar(k);
    result += term;
  }
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

/// exp(-i H t) from hamiltonian() in long double, rounded back to double.
inline Matrix4cd propagator_oracle(const CouplingParamsd& c, double t) {
  using LD = long double;
  const CouplingParams<LD> cl{static_cast<LD>(c.J), static_cast<LD>(c.gamma)};
  const Matrix4<LD> h = hamiltonian(cl);
  const Matrix4<LD> u = expm_series<LD>(Matrix4<LD>(std::complex<LD>(0, -static_cast<LD>(t)) * h));
  return u.cast<std::complex<double>>();
}

/// Tr[W^dagger U] through an explicit matrix product.
inline Complexd brute_force_trace(const Matrix4cd& w, const Matrix4cd& u) {
  const Matrix4cd product = w.adjoint() * u;
  Complexd sum = 0.0;
  for (int i = 0; i < 4; ++i) sum += product(i, i);
  return sum;
}

inline Matrix4cd random_complex_matrix(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Matrix4cd m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = {normal(rng), normal(rng)};
  return m;
}

inline Matrix2cd random_complex_matrix2(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Matrix2cd m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m(i, j) = {normal(rng), normal(rng)};
  return m;
}

/// Haar-ish random unitary from the QR factor of a Gaussian matrix.
inline Unitary4d random_unitary(std::mt19937_64& rng) {
  Eigen::HouseholderQR<Matrix4cd> qr(random_complex_matrix(rng));
  return Unitary4d(Matrix4cd(qr.householderQ()));
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline ProtocolParamsd random_params(std::mt19937_64& rng) {
  constexpr double pi = std::numbers::pi;
  ProtocolParamsd p;
  p.coupling = {uniform(rng, -3.0, 3.0), uniform(rng, -5.0, 5.0)};
  p.t = uniform(rng, 0.0, 10.0);
  p.pulse1 = PulseSpecd(uniform(rng, -2 * pi, 2 * pi), uniform(rng, 0, pi), uniform(rng, 0, 2 * pi));
  p.pulse2 = PulseSpecd(uniform(rng, -2 * pi, 2 * pi), uniform(rng, 0, pi), uniform(rng, 0, 2 * pi));
  p.chi = uniform(rng, -pi, pi);
  return p;
}

/// A random point inside the synthesizer's box.
inline SearchVector random_search_point(std::mt19937_64& rng, const SearchBounds& bounds) {
  SearchVector x;
  for (int i = 0; i < kSearchDim; ++i) x(i) = uniform(rng, bounds.box[i].lo, bounds.box[i].hi);
  return x;
}

struct FamilyMembership {
  bool member = false;
  int n = 0;
  int residue = 0;
  int p = 0;
  bool pulsed = false;
};

/// Decides whether parameters sit in one of the SWAP / iSWAP / sqrt-SWAP
/// condition families: Jt on the family's lattice, gamma an integer in an
/// admissible residue class, and the pulse pair equal (up to phase) to the
/// identity or to sz x sz as the branch rule for (n, p) demands.
inline FamilyMembership classify_family_member(GateKind kind, const ProtocolParamsd& params,
                                               double tol = 1e-6) {
  constexpr double pi = std::numbers::pi;
  FamilyMembership m;
  const double jt = params.coupling.J * params.t;
  const double base = kind == GateKind::SqrtSwap ? pi / 2 : pi;
  const double n_real = (jt - base) / (2 * pi);
  m.n = static_cast<int>(std::lround(n_real));
  if (std::abs(jt - (base + 2 * pi * m.n)) > tol) return m;

  const double gamma = params.coupling.gamma;
  const long g = std::lround(gamma);
  if (std::abs(gamma - static_cast<double>(g)) > tol) return m;
  m.residue = static_cast<int>(((g % 4) + 4) % 4);
  m.p = static_cast<int>((g - m.residue) / 4);

  const Unitary4d pulses = pulse_unitary(params.pulse1, params.pulse2);
  const Matrix2cd sz = pauli<double>(Axis::Z);
  const bool off = approx_equal_up_to_phase(pulses, Unitary4d::identity(), tol);
  const bool zz = approx_equal_up_to_phase(pulses, Unitary4d(kron(sz, sz)), tol);
  if (!off && !zz) return m;
  m.pulsed = zz;

  bool expect_pulsed = false;
  switch (kind) {
    case GateKind::Swap:
      if (m.residue != 1 && m.residue != 3) return m;
      expect_pulsed = m.residue == 3;
      break;
    case GateKind::ISwap:
      if (m.residue != 0 && m.residue != 2) return m;
      expect_pulsed = (m.residue == 0) == (m.n % 2 == 0);
      break;
    case GateKind::SqrtSwap:
      if (m.residue != 1) return m;
      expect_pulsed = m.p % 2 != 0;
      break;
    default:
      return m;
  }
  m.member = m.pulsed == expect_pulsed;
  return m;
}

}  // namespace gatesmith::testing

#endif  // GATESMITH_TESTS_ORACLES_HPP
