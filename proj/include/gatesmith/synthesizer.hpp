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

#ifndef GATESMITH_SYNTHESIZER_HPP
#define GATESMITH_SYNTHESIZER_HPP

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "gatesmith/core.hpp"
#include "gatesmith/protocol.hpp"

namespace gatesmith {

// Numerical search for protocol parameters realizing an arbitrary target.
//
// The fidelity depends on J and t only through Jt (and gamma Jt), so the
// search runs over the eight coordinates below with J pinned to 1; the
// reference coupling is reattached when results are reported. The global
// phase is never searched: max over chi of the fidelity is |Tr[W^+ U]| / 4.

enum class SearchParameter : int {
  Jt = 0,
  Gamma,
  Omega1,
  Theta1,
  Phi1,
  Omega2,
  Theta2,
  Phi2,
};

inline constexpr int kSearchDim = 8;

using SearchVector = Eigen::Matrix<double, kSearchDim, 1>;

std::string_view parameter_name(SearchParameter p);
/// Throws std::invalid_argument for an unknown name.
SearchParameter parse_parameter(std::string_view name);

struct Interval {
  double lo;
  double hi;
};

struct SearchBounds {
  std::array<Interval, kSearchDim> box;

  /// Jt in [0, 8pi], gamma in [-6, 6], omega in [-2pi, 2pi], theta in [0, pi],
  /// phi in [0, 2pi].
  static SearchBounds defaults();

  Interval& operator[](SearchParameter p) { return box[static_cast<int>(p)]; }
  const Interval& operator[](SearchParameter p) const { return box[static_cast<int>(p)]; }

  SearchVector clamp(const SearchVector& x) const;
};

struct SearchConfig {
  int restarts = 24;
  int max_iterations = 4000;  // per restart, shared across simplex re-seeds
  std::uint64_t seed = 0x5eed'c0de'2016'0001ULL;
  SearchBounds bounds = SearchBounds::defaults();
  double tolerance = 1e-10;  // reached iff fidelity >= 1 - tolerance
  double reference_J = 1.0;  // attached to reported params; must be > 0

  void validate() const;
};

struct SynthesisResult {
  ProtocolParamsd best_params;  // chi set to the closed-form optimum
  double best_fidelity = 0.0;
  bool reached = false;
  int best_restart = 0;
  std::vector<double> restart_fidelities;
};

/// 1 - |Tr[W^+ U(x)]| / 4 at a search point.
double synthesis_objective(const Matrix4cd& target, const SearchVector& x);

ProtocolParamsd to_protocol_params(const SearchVector& x, double J, double chi = 0.0);
/// Inverse of to_protocol_params up to angle normalization; Jt = J t.
SearchVector to_search_vector(const ProtocolParamsd& params);

/// Seeded start point for restart `index`: a Cranley-Patterson shifted Halton
/// point mapped into the bounds. Depends only on (seed, index).
SearchVector start_point(const SearchBounds& bounds, std::uint64_t seed, int index);

SynthesisResult synthesize(const Unitary4d& target, const SearchConfig& config = {});

struct LandscapeAxis {
  SearchParameter parameter;
  double lo;
  double hi;
  int resolution;  // >= 1; a single point sits at lo

  double coordinate(int i) const;
};

struct Landscape {
  LandscapeAxis axis1;
  LandscapeAxis axis2;
  Eigen::MatrixXd fidelity;  // rows follow axis1, columns axis2
};

/// Phase-optimized fidelity on a dense grid over two search coordinates, the
/// rest taken from `fixed` (its Jt is fixed.coupling.J * fixed.t).
Landscape fidelity_landscape(const Unitary4d& target, const LandscapeAxis& axis1,
                             const LandscapeAxis& axis2, const ProtocolParamsd& fixed);

}  // namespace gatesmith

#endif  // GATESMITH_SYNTHESIZER_HPP
