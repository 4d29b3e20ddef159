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

#include "gatesmith/lattice.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace gatesmith {

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive_depth(double depth) {
  if (!(depth > 0.0) || !std::isfinite(depth)) {
    throw std::invalid_argument("lattice depth must be positive and finite");
  }
}

// Pulse-addressability margin: Omega counts as >> |J| from this ratio on.
constexpr double kRabiMargin = 10.0;

}  // namespace

void LatticeConfig::validate() const {
  require_positive_depth(v_up);
  require_positive_depth(v_down);
  if (!(recoil_energy > 0.0) || !std::isfinite(recoil_energy)) {
    throw std::invalid_argument("recoil energy must be positive and finite");
  }
  if (!std::isfinite(ka_updown) || !std::isfinite(ka_upup) || !std::isfinite(ka_downdown)) {
    throw std::invalid_argument("scattering parameters must be finite");
  }
  if (coherence_time && !(*coherence_time > 0.0)) {
    throw std::invalid_argument("coherence time must be positive");
  }
  if (!(perturbative_ratio > 0.0)) {
    throw std::invalid_argument("perturbative ratio must be positive");
  }
}

double tunneling_energy(double depth) {
  require_positive_depth(depth);
  return 4.0 / std::sqrt(kPi) * std::pow(depth, 0.75) * std::exp(-2.0 * std::sqrt(depth));
}

double spin_average_depth(double v_up, double v_down) {
  require_positive_depth(v_up);
  require_positive_depth(v_down);
  const double s = std::sqrt(v_up) + std::sqrt(v_down);
  return 4.0 * v_up * v_down / (s * s);
}

OnsiteEnergies onsite_energies(const LatticeConfig& config) {
  config.validate();
  const double c = std::sqrt(8.0 / kPi);
  OnsiteEnergies u;
  u.updown = c * config.ka_updown * std::pow(spin_average_depth(config.v_up, config.v_down), 0.75);
  if (config.statistics == Statistics::Bose) {
    u.upup = c * config.ka_upup * std::pow(config.v_up, 0.75);
    u.downdown = c * config.ka_downdown * std::pow(config.v_down, 0.75);
  } else {
    u.upup = 2.0 * std::sqrt(config.v_up);
    u.downdown = 2.0 * std::sqrt(config.v_down);
  }
  return u;
}

Superexchange superexchange(double t_up, double t_down, const OnsiteEnergies& u, Statistics s) {
  if (u.updown == 0.0) {
    throw std::domain_error("U_updown vanishes; superexchange coupling undefined");
  }
  const double magnitude = t_up * t_down / u.updown;
  double gamma_j = (t_up * t_up + t_down * t_down) / (2.0 * u.updown);
  if (s == Statistics::Bose) {
    if (u.upup == 0.0 || u.downdown == 0.0) {
      throw std::domain_error("same-spin on-site energy vanishes");
    }
    gamma_j -= t_up * t_up / u.upup + t_down * t_down / u.downdown;
    return {-magnitude, gamma_j};
  }
  return {magnitude, gamma_j};
}

EffectiveCouplings effective_couplings(const LatticeConfig& config) {
  const OnsiteEnergies u = onsite_energies(config);
  EffectiveCouplings out{};
  out.t_up = tunneling_energy(config.v_up);
  out.t_down = tunneling_energy(config.v_down);
  out.u_updown = u.updown;
  out.u_upup = u.upup;
  out.u_downdown = u.downdown;
  const Superexchange se = superexchange(out.t_up, out.t_down, u, config.statistics);
  out.J_recoil = se.J;
  out.J = se.J * config.recoil_energy;
  out.gamma = se.gamma_J / se.J;
  const double min_u = std::min({std::abs(u.updown), std::abs(u.upup), std::abs(u.downdown)});
  out.perturbative_ok = std::max(out.t_up, out.t_down) <= config.perturbative_ratio * min_u;
  return out;
}

FeasibilityReport gate_feasibility(const EffectiveCouplings& couplings, GateKind gate,
                                   double coherence_time, std::optional<double> rabi_frequency) {
  if (!(coherence_time > 0.0)) {
    throw std::invalid_argument("coherence time must be positive");
  }
  double min_area = 0.0;  // Jt of the shortest family member
  switch (gate) {
    case GateKind::Swap:
    case GateKind::ISwap:
      min_area = kPi;
      break;
    case GateKind::SqrtSwap:
    case GateKind::Entangler:
    case GateKind::ConjugatedEntangler:
      min_area = kPi / 2.0;
      break;
    case GateKind::Custom:
      throw std::invalid_argument("custom gates have no analytic gate time");
  }

  FeasibilityReport report{};
  report.gate = gate;
  report.coherence_time = coherence_time;
  report.J_min = std::isinf(coherence_time) ? 0.0 : min_area / coherence_time;
  report.J_min_khz = report.J_min / 1000.0;
  report.J_abs = std::abs(couplings.J);
  report.feasible = report.J_abs >= report.J_min;
  report.gate_time = report.J_abs > 0.0 ? min_area / report.J_abs
                                        : std::numeric_limits<double>::infinity();

  const double gamma = couplings.gamma;
  auto off_family = [&](const std::string& what) {
    std::ostringstream os;
    os << "gamma = " << gamma << " is outside the analytic " << what
       << " family; use the numerical synthesizer";
    report.warnings.push_back(os.str());
  };
  if (gate == GateKind::Entangler || gate == GateKind::ConjugatedEntangler) {
    report.pulses_required = true;
    if (std::abs(gamma) > 1e-6) off_family(std::string(gate_name(gate)));
  } else {
    const double g = std::round(gamma);
    const int gi = static_cast<int>(g);
    const int residue = ((gi % 4) + 4) % 4;
    const auto allowed = admissible_residues(gate);
    if (std::abs(gamma - g) > 1e-6 ||
        std::find(allowed.begin(), allowed.end(), residue) == allowed.end()) {
      off_family(std::string(gate_name(gate)));
    } else {
      FamilyOptions opts;
      opts.residue = residue;
      const Realization r = condition_params(NamedGate::of_kind(gate), 0, (gi - residue) / 4, opts);
      const auto& params = std::get<ProtocolParamsd>(r);
      report.pulses_required = params.pulse1.omega() != 0.0 || params.pulse2.omega() != 0.0;
    }
  }
  if (report.pulses_required) {
    report.warnings.push_back(
        "pulsed branch needs single-spin rotations with Rabi frequency Omega >> |J|");
    if (rabi_frequency && *rabi_frequency < kRabiMargin * report.J_abs) {
      std::ostringstream os;
      os << "Rabi frequency " << *rabi_frequency << " rad/s is not >> |J| = " << report.J_abs
         << " rad/s";
      report.warnings.push_back(os.str());
    }
  }
  return report;
}

namespace {

struct DepthResidual {
  Eigen::Vector2d r;
  double J;
  double gamma;
};

class DepthProblem {
 public:
  DepthProblem(double target_J, double target_gamma, const LatticeConfig& tmpl)
      : target_J_(target_J), target_gamma_(target_gamma), tmpl_(tmpl) {}

  // Unknowns are log-depths; the J residual is log(|J| / |J0|), which is the
  // relative error to first order and keeps the exponential depth dependence
  // well conditioned.
  DepthResidual operator()(const Eigen::Vector2d& log_depth) const {
    LatticeConfig c = tmpl_;
    c.v_up = std::exp(log_depth(0));
    c.v_down = std::exp(log_depth(1));
    const EffectiveCouplings e = effective_couplings(c);
    const double gamma_scale = std::max(1.0, std::abs(target_gamma_));
    return {{std::log(std::abs(e.J) / std::abs(target_J_)), (e.gamma - target_gamma_) / gamma_scale},
            e.J,
            e.gamma};
  }

 private:
  double target_J_;
  double target_gamma_;
  LatticeConfig tmpl_;
};

Eigen::Vector2d clamp_box(const Eigen::Vector2d& x, double lo, double hi) {
  return x.cwiseMax(lo).cwiseMin(hi);
}

// Levenberg-Marquardt on the 2x2 system with central-difference Jacobian.
Eigen::Vector2d levenberg_marquardt(const DepthProblem& f, Eigen::Vector2d x, double lo, double hi,
                                    double tolerance) {
  double lambda = 1e-3;
  DepthResidual cur = f(x);
  for (int it = 0; it < 400; ++it) {
    if (cur.r.cwiseAbs().maxCoeff() <= 0.01 * tolerance) break;
    Eigen::Matrix2d jac;
    for (int k = 0; k < 2; ++k) {
      const double h = 1e-6;
      Eigen::Vector2d xp = x, xm = x;
      xp(k) += h;
      xm(k) -= h;
      jac.col(k) = (f(xp).r - f(xm).r) / (2.0 * h);
    }
    const Eigen::Matrix2d jtj = jac.transpose() * jac;
    const Eigen::Vector2d g = jac.transpose() * cur.r;
    bool accepted = false;
    for (int tries = 0; tries < 30 && !accepted; ++tries) {
      Eigen::Matrix2d a = jtj;
      a.diagonal() += lambda * (jtj.diagonal().array() + 1e-12).matrix();
      const Eigen::Vector2d step = a.ldlt().solve(-g);
      const Eigen::Vector2d candidate = clamp_box(x + step, lo, hi);
      const DepthResidual next = f(candidate);
      if (next.r.squaredNorm() < cur.r.squaredNorm()) {
        x = candidate;
        cur = next;
        lambda = std::max(lambda * 0.3, 1e-12);
        accepted = true;
      } else {
        lambda *= 10.0;
      }
    }
    if (!accepted) break;
  }
  return x;
}

}  // namespace

DepthSolution solve_depths_for_couplings(double target_J, double target_gamma,
                                         const LatticeConfig& tmpl, const DepthSearch& search) {
  tmpl.validate();
  if (!std::isfinite(target_J) || !std::isfinite(target_gamma) || target_J == 0.0) {
    throw std::invalid_argument("target J must be finite and nonzero, gamma finite");
  }
  if ((tmpl.statistics == Statistics::Bose) != (target_J < 0.0)) {
    throw std::invalid_argument(tmpl.statistics == Statistics::Bose
                                    ? "bosonic atoms give J < 0; target J has the wrong sign"
                                    : "fermionic atoms give J > 0; target J has the wrong sign");
  }
  if (!(search.lo > 0.0) || !(search.hi >= search.lo)) {
    throw std::invalid_argument("depth search box must satisfy 0 < lo <= hi");
  }

  const DepthProblem problem(target_J, target_gamma, tmpl);
  const double lo = std::log(search.lo);
  const double hi = std::log(search.hi);

  // Coarse scan to seed the local solver from the most promising cells.
  constexpr int kGrid = 48;
  constexpr int kSeeds = 6;
  std::vector<std::pair<double, Eigen::Vector2d>> cells;
  cells.reserve(kGrid * kGrid);
  for (int i = 0; i < kGrid; ++i) {
    for (int j = 0; j < kGrid; ++j) {
      const Eigen::Vector2d x(lo + (hi - lo) * i / (kGrid - 1), lo + (hi - lo) * j / (kGrid - 1));
      cells.emplace_back(problem(x).r.squaredNorm(), x);
    }
  }
  std::partial_sort(cells.begin(), cells.begin() + kSeeds, cells.end(),
                    [](const auto& a, const auto& b) { return a.first < b.first; });

  Eigen::Vector2d best = cells.front().second;
  double best_norm = cells.front().first;
  for (int s = 0; s < kSeeds; ++s) {
    const Eigen::Vector2d x =
        levenberg_marquardt(problem, cells[s].second, lo, hi, search.relative_tolerance);
    const double norm = problem(x).r.squaredNorm();
    if (norm < best_norm) {
      best_norm = norm;
      best = x;
    }
  }

  LatticeConfig solved = tmpl;
  solved.v_up = std::exp(best(0));
  solved.v_down = std::exp(best(1));
  const EffectiveCouplings e = effective_couplings(solved);
  const bool j_ok = std::abs(e.J - target_J) <= search.relative_tolerance * std::abs(target_J);
  const bool gamma_ok = std::abs(e.gamma - target_gamma) <=
                        search.relative_tolerance * std::max(1.0, std::abs(target_gamma));
  if (j_ok && gamma_ok) return solved;

  std::ostringstream os;
  os << "no depths in [" << search.lo << ", " << search.hi << "] E_r reach J = " << target_J
     << ", gamma = " << target_gamma << "; closest is J = " << e.J << ", gamma = " << e.gamma;
  return Infeasible{os.str(), solved.v_up, solved.v_down, e.J, e.gamma};
}

}  // namespace gatesmith
