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

#ifndef GATESMITH_LATTICE_HPP
#define GATESMITH_LATTICE_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gatesmith/gate_catalog.hpp"

namespace gatesmith {

// Two atoms in a deep cubic optical lattice mapped onto the XXZ spin pair.
//
// Energies are kept in units of the recoil energy E_r until the very end;
// J is converted to angular frequency (rad/s) with LatticeConfig::recoil_energy.

enum class Statistics { Bose, Fermi };

struct LatticeConfig {
  double v_up = 20.0;  // lattice depths, units of E_r
  double v_down = 20.0;
  double ka_updown = 0.05;  // k * a_{sigma sigma'}, dimensionless
  double ka_upup = 0.05;
  double ka_downdown = 0.05;
  Statistics statistics = Statistics::Bose;
  double recoil_energy = 1.0;                 // rad/s
  std::optional<double> coherence_time;       // seconds
  std::optional<double> rabi_frequency;       // rad/s; only feeds the pulse warning
  double perturbative_ratio = 0.1;            // t_sigma <= ratio * min U counts as perturbative

  void validate() const;
};

/// (4/sqrt(pi)) V^{3/4} exp(-2 sqrt(V)), V and result in E_r.
double tunneling_energy(double depth);

/// 4 V_up V_down / (sqrt(V_up) + sqrt(V_down))^2.
double spin_average_depth(double v_up, double v_down);

struct OnsiteEnergies {
  double updown;
  double upup;
  double downdown;
};

OnsiteEnergies onsite_energies(const LatticeConfig& config);

/// Superexchange J and gamma J in E_r units from tunnelings and on-site
/// energies. For Fermi statistics the same-spin terms are dropped.
struct Superexchange {
  double J;
  double gamma_J;
};

Superexchange superexchange(double t_up, double t_down, const OnsiteEnergies& u, Statistics s);

struct EffectiveCouplings {
  double t_up;  // E_r
  double t_down;
  double u_updown;
  double u_upup;
  double u_downdown;
  double J_recoil;  // J in E_r
  double J;         // rad/s
  double gamma;
  bool perturbative_ok;
};

EffectiveCouplings effective_couplings(const LatticeConfig& config);

struct FeasibilityReport {
  GateKind gate;
  double coherence_time;  // s
  double J_min;           // rad/s
  double J_min_khz;
  double J_abs;           // |J| in rad/s
  bool feasible;
  double gate_time;       // s, minimal (n = 0) member at the supplied |J|
  bool pulses_required;
  std::vector<std::string> warnings;
};

/// Coherence bound |J| >= pi / t_c for the SWAP-type gates and pi / (2 t_c)
/// for sqrt-SWAP and the entanglers. t_c may be +infinity.
FeasibilityReport gate_feasibility(const EffectiveCouplings& couplings, GateKind gate,
                                   double coherence_time,
                                   std::optional<double> rabi_frequency = std::nullopt);

struct DepthSearch {
  double lo = 1.0;  // E_r
  double hi = 50.0;
  double relative_tolerance = 1e-6;
};

struct Infeasible {
  std::string reason;
  double closest_v_up;
  double closest_v_down;
  double closest_J;  // rad/s
  double closest_gamma;
};

using DepthSolution = std::variant<LatticeConfig, Infeasible>;

/// Finds depths (V_up, V_down) in the search box whose couplings match
/// (target_J, target_gamma). Statistics, scattering lengths and recoil energy
/// come from `tmpl`. Throws std::invalid_argument when the sign of target_J
/// contradicts the statistics (Bose needs J < 0, Fermi J > 0).
DepthSolution solve_depths_for_couplings(double target_J, double target_gamma,
                                         const LatticeConfig& tmpl, const DepthSearch& search = {});

}  // namespace gatesmith

#endif  // GATESMITH_LATTICE_HPP
