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

#include "gatesmith/synthesizer.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "gatesmith/nelder_mead.hpp"

namespace gatesmith {

namespace {

constexpr double kPi = std::numbers::pi;

constexpr std::array<std::string_view, kSearchDim> kParameterNames{
    "Jt", "gamma", "omega1", "theta1", "phi1", "omega2", "theta2", "phi2"};

constexpr std::array<int, kSearchDim> kHaltonBases{2, 3, 5, 7, 11, 13, 17, 19};

constexpr int kMaxReseeds = 6;

// Jt values closer than this are the same interaction period.
constexpr double kJtTieWidth = 1e-6;

double radical_inverse(std::uint64_t index, int base) {
  double inv = 1.0 / base;
  double f = inv;
  double result = 0.0;
  while (index > 0) {
    result += f * static_cast<double>(index % base);
    index /= base;
    f *= inv;
  }
  return result;
}

double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Fidelities closer than this are treated as equal when ranking restarts.
double ranking_key(double fidelity) { return std::round(fidelity * 1e14); }

struct RestartOutcome {
  SearchVector x;
  double objective;
};

RestartOutcome run_restart(const Matrix4cd& target, const SearchConfig& config, int index) {
  const SearchBounds& bounds = config.bounds;
  auto objective = [&](const SearchVector& x) { return synthesis_objective(target, x); };
  auto project = [&](const SearchVector& x) { return bounds.clamp(x); };

  SearchVector width;
  for (int i = 0; i < kSearchDim; ++i) width(i) = bounds.box[i].hi - bounds.box[i].lo;

  NelderMeadOptions options;
  options.f_target = config.tolerance * 1e-4;

  SearchVector x = start_point(bounds, config.seed, index);
  double best = objective(x);
  int budget = config.max_iterations;
  double scale = 0.1;
  for (int reseed = 0; reseed < kMaxReseeds && budget > 0; ++reseed) {
    options.max_iterations = budget;
    const auto result = nelder_mead<kSearchDim>(objective, project, x, SearchVector(scale * width),
                                                options);
    budget -= std::max(result.iterations, 1);
    const bool improved = result.f < best;
    if (improved) {
      x = result.x;
      best = result.f;
    }
    if (best <= options.f_target) break;
    if (!improved && reseed > 0) break;
    scale *= 0.5;
  }
  return {x, best};
}

}  // namespace

std::string_view parameter_name(SearchParameter p) {
  return kParameterNames[static_cast<int>(p)];
}

SearchParameter parse_parameter(std::string_view name) {
  for (int i = 0; i < kSearchDim; ++i) {
    if (kParameterNames[i] == name) return static_cast<SearchParameter>(i);
  }
  throw std::invalid_argument("unknown search parameter '" + std::string(name) +
                              "' (expected Jt, gamma, omega1, theta1, phi1, omega2, theta2, phi2)");
}

SearchBounds SearchBounds::defaults() {
  SearchBounds b;
  b[SearchParameter::Jt] = {0.0, 8.0 * kPi};
  b[SearchParameter::Gamma] = {-6.0, 6.0};
  for (auto p : {SearchParameter::Omega1, SearchParameter::Omega2}) b[p] = {-2.0 * kPi, 2.0 * kPi};
  for (auto p : {SearchParameter::Theta1, SearchParameter::Theta2}) b[p] = {0.0, kPi};
  for (auto p : {SearchParameter::Phi1, SearchParameter::Phi2}) b[p] = {0.0, 2.0 * kPi};
  return b;
}

SearchVector SearchBounds::clamp(const SearchVector& x) const {
  SearchVector out;
  for (int i = 0; i < kSearchDim; ++i) out(i) = std::clamp(x(i), box[i].lo, box[i].hi);
  return out;
}

void SearchConfig::validate() const {
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
  if (!(tolerance > 0.0 && tolerance < 1.0)) {
    throw std::invalid_argument("tolerance must lie in (0, 1)");
  }
  if (!(reference_J > 0.0) || !std::isfinite(reference_J)) {
    throw std::invalid_argument("reference J must be positive and finite");
  }
  for (int i = 0; i < kSearchDim; ++i) {
    const Interval& iv = bounds.box[i];
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || iv.lo > iv.hi) {
      throw std::invalid_argument("empty or non-finite bounds for " +
                                  std::string(kParameterNames[i]));
    }
  }
  if (bounds[SearchParameter::Jt].lo < 0.0) {
    throw std::invalid_argument("Jt bounds must be nonnegative (t >= 0 with J > 0)");
  }
}

double synthesis_objective(const Matrix4cd& target, const SearchVector& x) {
  const CouplingParamsd coupling{1.0, x(1)};
  const PulseSpecd p1(x(2), x(3), x(4));
  const PulseSpecd p2(x(5), x(6), x(7));
  const Matrix4cd u = pulse_matrix(p1, p2) * interaction_matrix(coupling, x(0));
  return 1.0 - std::abs(trace_overlap(target, u)) / 4.0;
}

ProtocolParamsd to_protocol_params(const SearchVector& x, double J, double chi) {
  ProtocolParamsd params;
  params.coupling = {J, x(1)};
  params.t = x(0) / J;
  params.pulse1 = PulseSpecd(x(2), x(3), x(4));
  params.pulse2 = PulseSpecd(x(5), x(6), x(7));
  params.chi = chi;
  return params;
}

SearchVector to_search_vector(const ProtocolParamsd& params) {
  SearchVector x;
  x << params.coupling.J * params.t, params.coupling.gamma, params.pulse1.omega(),
      params.pulse1.theta(), params.pulse1.phi(), params.pulse2.omega(), params.pulse2.theta(),
      params.pulse2.phi();
  return x;
}

SearchVector start_point(const SearchBounds& bounds, std::uint64_t seed, int index) {
  std::mt19937_64 rng(seed);
  SearchVector x;
  for (int i = 0; i < kSearchDim; ++i) {
    const double shift = unit_double(rng);
    double u = radical_inverse(static_cast<std::uint64_t>(index) + 1, kHaltonBases[i]) + shift;
    if (u >= 1.0) u -= 1.0;
    x(i) = bounds.box[i].lo + u * (bounds.box[i].hi - bounds.box[i].lo);
  }
  return x;
}

SynthesisResult synthesize(const Unitary4d& target, const SearchConfig& config) {
  config.validate();
  SynthesisResult result;
  result.restart_fidelities.reserve(config.restarts);

  // Restarts that reach the tolerance count as tied on fidelity and are ranked
  // by interaction area Jt (shortest gate first); the rest by rounded fidelity.
  // Remaining ties go to the lowest restart index.
  std::vector<RestartOutcome> outcomes;
  outcomes.reserve(config.restarts);
  for (int index = 0; index < config.restarts; ++index) {
    outcomes.push_back(run_restart(target.matrix(), config, index));
    result.restart_fidelities.push_back(1.0 - outcomes.back().objective);
  }
  auto reached = [&](int i) { return result.restart_fidelities[i] >= 1.0 - config.tolerance; };
  auto better = [&](int i, int best) {
    if (reached(i) != reached(best)) return reached(i);
    if (reached(i)) return outcomes[i].x(0) < outcomes[best].x(0) - kJtTieWidth;
    return ranking_key(result.restart_fidelities[i]) > ranking_key(result.restart_fidelities[best]);
  };
  for (int index = 1; index < config.restarts; ++index) {
    if (better(index, result.best_restart)) result.best_restart = index;
  }
  const SearchVector best_x = outcomes[result.best_restart].x;

  // Report through the protocol module so the numbers are reproducible from
  // best_params alone.
  ProtocolParamsd params = to_protocol_params(best_x, config.reference_J);
  const auto best = phase_optimized_fidelity(target, circuit_unitary(params));
  params.chi = best.chi_star;
  result.best_params = params;
  result.best_fidelity = std::clamp(best.fidelity, 0.0, 1.0);
  result.reached = result.best_fidelity >= 1.0 - config.tolerance;
  return result;
}

double LandscapeAxis::coordinate(int i) const {
  if (resolution <= 1) return lo;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(resolution - 1);
}

Landscape fidelity_landscape(const Unitary4d& target, const LandscapeAxis& axis1,
                             const LandscapeAxis& axis2, const ProtocolParamsd& fixed) {
  if (axis1.parameter == axis2.parameter) {
    throw std::invalid_argument("landscape axes must be distinct");
  }
  for (const auto* axis : {&axis1, &axis2}) {
    if (axis->resolution < 1) throw std::invalid_argument("landscape resolution must be >= 1");
    if (!std::isfinite(axis->lo) || !std::isfinite(axis->hi)) {
      throw std::invalid_argument("landscape axis range must be finite");
    }
  }
  fixed.validate();
  Landscape out{axis1, axis2, Eigen::MatrixXd(axis1.resolution, axis2.resolution)};
  SearchVector x = to_search_vector(fixed);
  const int i1 = static_cast<int>(axis1.parameter);
  const int i2 = static_cast<int>(axis2.parameter);
  for (int r = 0; r < axis1.resolution; ++r) {
    x(i1) = axis1.coordinate(r);
    for (int c = 0; c < axis2.resolution; ++c) {
      x(i2) = axis2.coordinate(c);
      out.fidelity(r, c) = 1.0 - synthesis_objective(target.matrix(), x);
    }
  }
  return out;
}

}  // namespace gatesmith
