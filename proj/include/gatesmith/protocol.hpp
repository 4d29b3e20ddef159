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

#ifndef GATESMITH_PROTOCOL_HPP
#define GATESMITH_PROTOCOL_HPP

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gatesmith/core.hpp"

namespace gatesmith {

// Two-step gate protocol: the spins evolve freely under the XXZ coupling
//
//   H = (J/4) (sx sx + sy sy + gamma sz sz)
//
// for a time t, then each spin receives an instantaneous rotation of area
// omega about its own axis n(theta, phi). All propagators are evaluated in
// closed form; nothing here integrates or exponentiates numerically.

template <typename Scalar>
struct CouplingParams {
  Scalar J{0};      // angular frequency, hbar = 1; either sign
  Scalar gamma{0};  // anisotropy; 1 is isotropic Heisenberg, 0 is XX
};

/// Wraps an angle into [0, period).
template <typename Scalar>
Scalar wrap_angle(Scalar x, Scalar period = Scalar(2) * std::numbers::pi_v<Scalar>) {
  Scalar r = std::fmod(x, period);
  if (r < 0) r += period;
  if (r >= period) r -= period;
  return r;
}

/// One spin's pulse: rotation angle omega about n = (sin t cos p, sin t sin p, cos t).
/// theta is normalized into [0, pi] and phi into [0, 2 pi) without changing n;
/// omega is kept as given since its sign and winding are physical.
template <typename Scalar>
class PulseSpec {
 public:
  PulseSpec() = default;

  PulseSpec(Scalar omega, Scalar theta, Scalar phi) : omega_(omega) {
    if (!std::isfinite(omega) || !std::isfinite(theta) || !std::isfinite(phi)) {
      throw std::invalid_argument("pulse parameters must be finite");
    }
    constexpr Scalar pi = std::numbers::pi_v<Scalar>;
    theta = wrap_angle(theta);
    if (theta > pi) {
      theta = Scalar(2) * pi - theta;
      phi += pi;
    }
    theta_ = theta;
    phi_ = wrap_angle(phi);
  }

  static PulseSpec off() { return PulseSpec(); }

  Scalar omega() const { return omega_; }
  Scalar theta() const { return theta_; }
  Scalar phi() const { return phi_; }

  Eigen::Matrix<Scalar, 3, 1> axis() const {
    return {std::sin(theta_) * std::cos(phi_), std::sin(theta_) * std::sin(phi_),
            std::cos(theta_)};
  }

  friend bool operator==(const PulseSpec&, const PulseSpec&) = default;

 private:
  Scalar omega_{0};
  Scalar theta_{0};
  Scalar phi_{0};
};

/// Full parameter set of one circuit instance W = e^{i chi} U_mf U_int.
/// The pulse fires at the end of the interaction period, so the pulse instant
/// coincides with t.
template <typename Scalar>
struct ProtocolParams {
  CouplingParams<Scalar> coupling;
  Scalar t{0};
  PulseSpec<Scalar> pulse1;
  PulseSpec<Scalar> pulse2;
  Scalar chi{0};

  void validate() const {
    if (!std::isfinite(coupling.J) || !std::isfinite(coupling.gamma) || !std::isfinite(t) ||
        !std::isfinite(chi)) {
      throw std::invalid_argument("protocol parameters must be finite");
    }
    if (t < 0) {
      throw std::invalid_argument("interaction time t must be nonnegative");
    }
  }
};

using CouplingParamsd = CouplingParams<double>;
using PulseSpecd = PulseSpec<double>;
using ProtocolParamsd = ProtocolParams<double>;

enum class Spin { First = 1, Second = 2 };

template <typename Scalar>
Matrix4<Scalar> hamiltonian(const CouplingParams<Scalar>& c) {
  const auto sx = pauli<Scalar>(Axis::X);
  const auto sy = pauli<Scalar>(Axis::Y);
  const auto sz = pauli<Scalar>(Axis::Z);
  return Complex<Scalar>(c.J / Scalar(4)) *
         (kron(sx, sx) + kron(sy, sy) + Complex<Scalar>(c.gamma) * kron(sz, sz));
}

template <typename Scalar>
struct Eigenpair {
  Scalar energy;
  Vector4<Scalar> vector;
};

/// Analytic eigensystem of hamiltonian(c), ordered |uu>, |dd>, symmetric and
/// antisymmetric combinations of |ud>, |du>.
template <typename Scalar>
std::array<Eigenpair<Scalar>, 4> spectrum(const CouplingParams<Scalar>& c) {
  const Scalar gj = c.gamma * c.J;
  const Scalar r = Scalar(1) / std::sqrt(Scalar(2));
  Vector4<Scalar> sym = Vector4<Scalar>::Zero();
  sym(kUpDown) = r;
  sym(kDownUp) = r;
  Vector4<Scalar> anti = Vector4<Scalar>::Zero();
  anti(kUpDown) = r;
  anti(kDownUp) = -r;
  return {{
      {gj / Scalar(4), basis_vector<Scalar>(kUpUp)},
      {gj / Scalar(4), basis_vector<Scalar>(kDownDown)},
      {(-gj + Scalar(2) * c.J) / Scalar(4), sym},
      {(-gj - Scalar(2) * c.J) / Scalar(4), anti},
  }};
}

/// exp(-i H t) without validation; hot path for the synthesizer.
template <typename Scalar>
Matrix4<Scalar> interaction_matrix(const CouplingParams<Scalar>& c, Scalar t) {
  using C = Complex<Scalar>;
  const Scalar jt = c.J * t;
  const C corner = std::polar(Scalar(1), -c.gamma * jt / Scalar(4));
  const C centre = std::conj(corner);
  const C diag = centre * std::cos(jt / Scalar(2));
  const C off = centre * C(0, -std::sin(jt / Scalar(2)));
  Matrix4<Scalar> u = Matrix4<Scalar>::Zero();
  u(0, 0) = corner;
  u(3, 3) = corner;
  u(1, 1) = diag;
  u(2, 2) = diag;
  u(1, 2) = off;
  u(2, 1) = off;
  return u;
}

template <typename Scalar>
Unitary4<Scalar> evolve_interaction(const CouplingParams<Scalar>& c, Scalar t) {
  return Unitary4<Scalar>(interaction_matrix(c, t));
}

/// cos(omega/2) I - i sin(omega/2) sigma.n for a single spin.
template <typename Scalar>
Matrix2<Scalar> spin_rotation(const PulseSpec<Scalar>& p) {
  using C = Complex<Scalar>;
  const Scalar c = std::cos(p.omega() / Scalar(2));
  const Scalar s = std::sin(p.omega() / Scalar(2));
  const Scalar ct = std::cos(p.theta());
  const Scalar st = std::sin(p.theta());
  Matrix2<Scalar> r;
  r << C(c, -s * ct), C(0, -s * st) * std::polar(Scalar(1), -p.phi()),
      C(0, -s * st) * std::polar(Scalar(1), p.phi()), C(c, s * ct);
  return r;
}

template <typename Scalar>
Unitary4<Scalar> single_pulse_unitary(Spin spin, const PulseSpec<Scalar>& pulse) {
  const Matrix2<Scalar> id = Matrix2<Scalar>::Identity();
  const Matrix2<Scalar> r = spin_rotation(pulse);
  return Unitary4<Scalar>(spin == Spin::First ? kron(r, id) : kron(id, r));
}

/// U_mf = U1 U2 without validation.
template <typename Scalar>
Matrix4<Scalar> pulse_matrix(const PulseSpec<Scalar>& pulse1, const PulseSpec<Scalar>& pulse2) {
  return kron(spin_rotation(pulse1), spin_rotation(pulse2));
}

template <typename Scalar>
Unitary4<Scalar> pulse_unitary(const PulseSpec<Scalar>& pulse1, const PulseSpec<Scalar>& pulse2) {
  return Unitary4<Scalar>(pulse_matrix(pulse1, pulse2));
}

/// U_mf U_int, without the global phase chi.
template <typename Scalar>
Unitary4<Scalar> circuit_unitary(const ProtocolParams<Scalar>& params) {
  params.validate();
  return Unitary4<Scalar>(Matrix4<Scalar>(pulse_matrix(params.pulse1, params.pulse2) *
                                          interaction_matrix(params.coupling, params.t)));
}

/// (1/4) Re(e^{i chi} Tr[W^dagger U_mf U_int]). Signed; equals 1 exactly when
/// W = e^{i chi} U_mf U_int.
template <typename Scalar>
Scalar gate_fidelity(const Unitary4<Scalar>& target, const ProtocolParams<Scalar>& params) {
  const Unitary4<Scalar> u = circuit_unitary(params);
  return std::real(std::polar(Scalar(1), params.chi) * trace_overlap(target.matrix(), u.matrix())) /
         Scalar(4);
}

template <typename Scalar>
struct PhaseOptimizedFidelity {
  Scalar fidelity;  // |Tr[W^dagger U]| / 4
  Scalar chi_star;  // maximizer of Re(e^{i chi} Tr[W^dagger U]), in (-pi, pi]
};

template <typename Scalar, typename DerivedW, typename DerivedU>
PhaseOptimizedFidelity<Scalar> phase_optimized_fidelity(const Eigen::MatrixBase<DerivedW>& target,
                                                        const Eigen::MatrixBase<DerivedU>& circuit) {
  const Complex<Scalar> overlap = trace_overlap(target, circuit);
  const Scalar magnitude = std::abs(overlap) / Scalar(4);
  // arg is in (-pi, pi]; negating maps pi to -pi, which is folded back. The
  // added zero turns -0 into +0.
  Scalar chi = magnitude == Scalar(0) ? Scalar(0) : -std::arg(overlap) + Scalar(0);
  if (chi <= -std::numbers::pi_v<Scalar>) chi = std::numbers::pi_v<Scalar>;
  return {magnitude, chi};
}

template <typename Scalar>
PhaseOptimizedFidelity<Scalar> phase_optimized_fidelity(const Unitary4<Scalar>& target,
                                                        const Unitary4<Scalar>& circuit) {
  return phase_optimized_fidelity<Scalar>(target.matrix(), circuit.matrix());
}

}  // namespace gatesmith

#endif  // GATESMITH_PROTOCOL_HPP
