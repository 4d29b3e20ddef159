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

#ifndef GATESMITH_GATE_CATALOG_HPP
#define GATESMITH_GATE_CATALOG_HPP

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gatesmith/core.hpp"
#include "gatesmith/protocol.hpp"

namespace gatesmith {

enum class GateKind { Swap, ISwap, SqrtSwap, Entangler, ConjugatedEntangler, Custom };

/// CLI spelling: swap, iswap, sqrt-swap, entangler, conj-entangler, custom.
std::string_view gate_name(GateKind kind);
std::optional<GateKind> parse_gate_kind(std::string_view name);
std::string valid_gate_names();

/// A target gate. The entanglers carry the free diagonal phase omega1 + omega2;
/// Custom carries its own matrix.
class NamedGate {
 public:
  static NamedGate swap() { return NamedGate(GateKind::Swap); }
  static NamedGate iswap() { return NamedGate(GateKind::ISwap); }
  static NamedGate sqrt_swap() { return NamedGate(GateKind::SqrtSwap); }
  static NamedGate entangler(double omega_sum);
  static NamedGate conjugated_entangler(double omega_sum);
  static NamedGate custom(const Unitary4d& u) { return NamedGate(GateKind::Custom, 0.0, u); }
  /// Builds a named kind; omega_sum is ignored for kinds that have none.
  static NamedGate of_kind(GateKind kind, double omega_sum = 0.0);

  GateKind kind() const { return kind_; }
  double omega_sum() const { return omega_sum_; }
  const std::optional<Unitary4d>& custom_matrix() const { return custom_; }

 private:
  explicit NamedGate(GateKind kind, double omega_sum = 0.0,
                     std::optional<Unitary4d> custom = std::nullopt)
      : kind_(kind), omega_sum_(omega_sum), custom_(std::move(custom)) {}

  GateKind kind_;
  double omega_sum_;
  std::optional<Unitary4d> custom_;
};

/// Exchange gate with phase beta on the swapped amplitudes; beta = 0 is SWAP,
/// beta = pi/2 is iSWAP.
Unitary4d swap_beta(double beta);

Unitary4d make_gate(const NamedGate& gate);

struct Unrealizable {
  std::string reason;
};

using Realization = std::variant<ProtocolParamsd, Unrealizable>;

struct FamilyOptions {
  /// Magnitude of the reference coupling; t = |target Jt| / |J|.
  double J = 1.0;
  /// gamma = 4p + residue. Unset selects the first admissible residue.
  std::optional<int> residue;
};

/// Residues r (gamma = 4p + r) for which the gate has an analytic family.
std::vector<int> admissible_residues(GateKind kind);

/// Parameters realizing `gate` for integers (n, p), or Unrealizable when the
/// catalog has no analytic family for the request.
Realization condition_params(const NamedGate& gate, int n, int p, const FamilyOptions& options = {});

/// Predicted global phase for a family member: gamma (pi/4 + pi n/2) for the
/// SWAP-type gates, gamma (pi/8 + pi n/2) for sqrt-SWAP, 0 for the entangler.
double chi_formula(GateKind kind, double gamma, int n);

struct IntRange {
  int lo;
  int hi;
};

struct FamilyRecord {
  int n;
  int p;
  int residue;
  std::optional<ProtocolParamsd> params;  // empty when unrealizable
  std::string note;
  double fidelity = 0.0;
  double fidelity_deviation = 0.0;
  double chi_star = 0.0;
  double chi_formula = 0.0;
  double chi_mismatch = 0.0;  // |chi_star - chi_formula| reduced mod 2 pi
};

struct FamilyReport {
  GateKind kind;
  std::vector<FamilyRecord> records;  // (n, p, residue) lexicographic
  int realized = 0;
  double max_fidelity_deviation = 0.0;
  double max_chi_mismatch = 0.0;
};

/// Evaluates every (n, p) in the ranges and, when options.residue is unset,
/// every admissible residue.
FamilyReport verify_family(const NamedGate& gate, IntRange n_range, IntRange p_range,
                           const FamilyOptions& options = {});

/// Distance between two angles on the circle, in [0, pi].
double angle_distance(double a, double b);

/// |<psi| sy sy |psi*>|; throws std::invalid_argument if psi is not normalized
/// to within 1e-10.
double concurrence(const Vector4cd& psi);

/// The four Bell states (|ud> +- |du>)/sqrt2 and (|uu> +- |dd>)/sqrt2.
Vector4cd bell_psi_plus();
Vector4cd bell_psi_minus();
Vector4cd bell_phi_plus();
Vector4cd bell_phi_minus();

}  // namespace gatesmith

#endif  // GATESMITH_GATE_CATALOG_HPP
