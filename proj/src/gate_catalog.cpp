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

#include "gatesmith/gate_catalog.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gatesmith {

namespace {

constexpr double kPi = std::numbers::pi;

constexpr std::array<std::pair<GateKind, std::string_view>, 6> kGateNames{{
    {GateKind::Swap, "swap"},
    {GateKind::ISwap, "iswap"},
    {GateKind::SqrtSwap, "sqrt-swap"},
    {GateKind::Entangler, "entangler"},
    {GateKind::ConjugatedEntangler, "conj-entangler"},
    {GateKind::Custom, "custom"},
}};

int floor_mod(int a, int m) {
  const int r = a % m;
  return r < 0 ? r + m : r;
}

bool is_even(int k) { return floor_mod(k, 2) == 0; }

/// omega1 = -omega2 = pi about z: U_mf = sz x sz.
void apply_opposite_z_pulses(ProtocolParamsd& params) {
  params.pulse1 = PulseSpecd(kPi, 0.0, 0.0);
  params.pulse2 = PulseSpecd(-kPi, 0.0, 0.0);
}

Matrix4cd entangler_matrix(double omega_sum) {
  const double r = 1.0 / std::sqrt(2.0);
  const auto ph = [](double a) { return std::polar(1.0, a); };
  Matrix4cd w = Matrix4cd::Zero();
  w(0, 0) = ph(-omega_sum / 2.0);
  w(1, 1) = r * ph(-kPi / 4.0);
  w(1, 2) = r * ph(-3.0 * kPi / 4.0);
  w(2, 1) = r * ph(-kPi / 4.0);
  w(2, 2) = r * ph(kPi / 4.0);
  w(3, 3) = ph(omega_sum / 2.0);
  return w;
}

Matrix4cd conjugated_entangler_matrix(double omega_sum) {
  const double r = 1.0 / std::sqrt(2.0);
  const auto ph = [](double a) { return std::polar(1.0, a); };
  Matrix4cd w = Matrix4cd::Zero();
  w(0, 0) = r * ph(kPi / 4.0);
  w(0, 3) = r * ph(-kPi / 4.0);
  w(1, 1) = ph(omega_sum / 2.0);
  w(2, 2) = ph(-omega_sum / 2.0);
  w(3, 0) = r * ph(-3.0 * kPi / 4.0);
  w(3, 3) = r * ph(-kPi / 4.0);
  return w;
}

void require_finite_omega_sum(double omega_sum) {
  if (!std::isfinite(omega_sum)) {
    throw std::invalid_argument("entangler omega_sum must be finite");
  }
}

}  // namespace

std::string_view gate_name(GateKind kind) {
  for (const auto& [k, name] : kGateNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<GateKind> parse_gate_kind(std::string_view name) {
  for (const auto& [k, n] : kGateNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

std::string valid_gate_names() {
  std::string out;
  for (const auto& [k, name] : kGateNames) {
    if (!out.empty()) out += ", ";
    out += name;
  }
  return out;
}

NamedGate NamedGate::entangler(double omega_sum) {
  require_finite_omega_sum(omega_sum);
  return NamedGate(GateKind::Entangler, omega_sum);
}

NamedGate NamedGate::conjugated_entangler(double omega_sum) {
  require_finite_omega_sum(omega_sum);
  return NamedGate(GateKind::ConjugatedEntangler, omega_sum);
}

NamedGate NamedGate::of_kind(GateKind kind, double omega_sum) {
  switch (kind) {
    case GateKind::Entangler:
      return entangler(omega_sum);
    case GateKind::ConjugatedEntangler:
      return conjugated_entangler(omega_sum);
    case GateKind::Custom:
      throw std::invalid_argument("custom gates need a matrix");
    default:
      return NamedGate(kind);
  }
}

Unitary4d swap_beta(double beta) {
  Matrix4cd w = Matrix4cd::Zero();
  w(0, 0) = 1.0;
  w(3, 3) = 1.0;
  w(1, 2) = std::polar(1.0, beta);
  w(2, 1) = std::polar(1.0, beta);
  return Unitary4d(w);
}

Unitary4d make_gate(const NamedGate& gate) {
  switch (gate.kind()) {
    case GateKind::Swap:
      return swap_beta(0.0);
    case GateKind::ISwap: {
      Matrix4cd w = swap_beta(0.0).matrix();
      w(1, 2) = w(2, 1) = Complexd(0.0, 1.0);
      return Unitary4d(w);
    }
    case GateKind::SqrtSwap: {
      Matrix4cd w = Matrix4cd::Zero();
      w(0, 0) = 1.0;
      w(3, 3) = 1.0;
      w(1, 1) = w(2, 2) = Complexd(0.5, 0.5);
      w(1, 2) = w(2, 1) = Complexd(0.5, -0.5);
      return Unitary4d(w);
    }
    case GateKind::Entangler:
      return Unitary4d(entangler_matrix(gate.omega_sum()));
    case GateKind::ConjugatedEntangler:
      return Unitary4d(conjugated_entangler_matrix(gate.omega_sum()));
    case GateKind::Custom:
      return *gate.custom_matrix();
  }
  throw std::logic_error("unhandled gate kind");
}

std::vector<int> admissible_residues(GateKind kind) {
  switch (kind) {
    case GateKind::Swap:
      return {1, 3};
    case GateKind::ISwap:
      return {0, 2};
    case GateKind::SqrtSwap:
      return {1};
    case GateKind::Entangler:
      return {0};
    default:
      return {};
  }
}

double chi_formula(GateKind kind, double gamma, int n) {
  switch (kind) {
    case GateKind::Swap:
    case GateKind::ISwap:
      return gamma * (kPi / 4.0 + kPi * n / 2.0);
    case GateKind::SqrtSwap:
      return gamma * (kPi / 8.0 + kPi * n / 2.0);
    default:
      return 0.0;
  }
}

Realization condition_params(const NamedGate& gate, int n, int p, const FamilyOptions& options) {
  if (!std::isfinite(options.J) || options.J == 0.0) {
    throw std::invalid_argument("reference coupling J must be finite and nonzero");
  }
  const GateKind kind = gate.kind();
  const std::vector<int> residues = admissible_residues(kind);
  if (residues.empty()) {
    return Unrealizable{std::string("no analytic condition family for ") +
                        std::string(gate_name(kind))};
  }
  const int residue = options.residue.value_or(residues.front());
  if (std::find(residues.begin(), residues.end(), residue) == residues.end()) {
    return Unrealizable{std::string(gate_name(kind)) + " has no analytic family for gamma = 4p+" +
                        std::to_string(residue)};
  }

  double target_jt = 0.0;
  bool pulsed = false;
  ProtocolParamsd params;
  params.coupling.gamma = 4.0 * p + residue;
  switch (kind) {
    case GateKind::Swap:
      target_jt = kPi + 2.0 * kPi * n;
      pulsed = residue == 3;
      break;
    case GateKind::ISwap:
      target_jt = kPi + 2.0 * kPi * n;
      pulsed = residue == 0 ? is_even(n) : !is_even(n);
      break;
    case GateKind::SqrtSwap:
      target_jt = kPi / 2.0 + 2.0 * kPi * n;
      pulsed = !is_even(p);
      break;
    case GateKind::Entangler:
      if (n != 0 || p != 0) {
        return Unrealizable{"the entangler is only given at Jt = pi/2, gamma = 0 (n = p = 0)"};
      }
      target_jt = kPi / 2.0;
      break;
    default:
      break;
  }

  // t stays nonnegative; a negative target product is carried by the sign of J.
  params.coupling.J = std::copysign(std::abs(options.J), target_jt);
  params.t = std::abs(target_jt) / std::abs(options.J);
  if (kind == GateKind::Entangler) {
    const double s = gate.omega_sum();
    params.pulse1 = PulseSpecd(s / 2.0 + kPi / 4.0, 0.0, 0.0);
    params.pulse2 = PulseSpecd(s / 2.0 - kPi / 4.0, 0.0, 0.0);
  } else if (pulsed) {
    apply_opposite_z_pulses(params);
  }
  params.chi = chi_formula(kind, params.coupling.gamma, n);
  return params;
}

double angle_distance(double a, double b) {
  const double d = wrap_angle(a - b);
  return std::min(d, 2.0 * kPi - d);
}

FamilyReport verify_family(const NamedGate& gate, IntRange n_range, IntRange p_range,
                           const FamilyOptions& options) {
  FamilyReport report{gate.kind(), {}, 0, 0.0, 0.0};
  const Unitary4d target = make_gate(gate);
  std::vector<int> residues;
  if (options.residue) {
    residues.push_back(*options.residue);
  } else {
    residues = admissible_residues(gate.kind());
  }

  for (int n = n_range.lo; n <= n_range.hi; ++n) {
    for (int p = p_range.lo; p <= p_range.hi; ++p) {
      for (int residue : residues) {
        FamilyOptions opts = options;
        opts.residue = residue;
        FamilyRecord rec{n, p, residue, std::nullopt, {}};
        const Realization realization = condition_params(gate, n, p, opts);
        if (const auto* why = std::get_if<Unrealizable>(&realization)) {
          rec.note = why->reason;
          report.records.push_back(std::move(rec));
          continue;
        }
        const auto& params = std::get<ProtocolParamsd>(realization);
        const Unitary4d circuit = circuit_unitary(params);
        const auto best = phase_optimized_fidelity(target, circuit);
        rec.params = params;
        rec.fidelity = gate_fidelity(target, params);
        rec.fidelity_deviation = std::abs(rec.fidelity - 1.0);
        rec.chi_star = best.chi_star;
        rec.chi_formula = params.chi;
        rec.chi_mismatch = angle_distance(best.chi_star, params.chi);
        ++report.realized;
        report.max_fidelity_deviation =
            std::max(report.max_fidelity_deviation, rec.fidelity_deviation);
        report.max_chi_mismatch = std::max(report.max_chi_mismatch, rec.chi_mismatch);
        report.records.push_back(std::move(rec));
      }
    }
  }
  return report;
}

double concurrence(const Vector4cd& psi) {
  if (std::abs(psi.norm() - 1.0) > 1e-10) {
    throw std::invalid_argument("concurrence needs a unit-norm state");
  }
  const Matrix2cd sy = pauli<double>(Axis::Y);
  return std::abs((psi.transpose() * kron(sy, sy) * psi).value());
}

namespace {

Vector4cd bell(BasisState a, BasisState b, double sign) {
  Vector4cd v = Vector4cd::Zero();
  v(a) = 1.0 / std::sqrt(2.0);
  v(b) = sign / std::sqrt(2.0);
  return v;
}

}  // namespace

Vector4cd bell_psi_plus() { return bell(kUpDown, kDownUp, 1.0); }
Vector4cd bell_psi_minus() { return bell(kUpDown, kDownUp, -1.0); }
Vector4cd bell_phi_plus() { return bell(kUpUp, kDownDown, 1.0); }
Vector4cd bell_phi_minus() { return bell(kUpUp, kDownDown, -1.0); }

}  // namespace gatesmith
