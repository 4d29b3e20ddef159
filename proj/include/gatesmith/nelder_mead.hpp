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

#ifndef GATESMITH_NELDER_MEAD_HPP
#define GATESMITH_NELDER_MEAD_HPP

#include <Eigen/Core>
#include <algorithm>
#include <array>
#include <limits>
#include <numeric>

namespace gatesmith {

struct NelderMeadOptions {
  int max_iterations = 2000;
  /// Stop as soon as the best vertex reaches this value.
  double f_target = -std::numeric_limits<double>::infinity();
  /// Stop when max f - min f over the simplex falls to this.
  double f_tolerance = 1e-15;
  /// Stop when every vertex lies within this (max-norm) of the best one.
  double x_tolerance = 1e-12;
};

template <int Dim>
struct NelderMeadResult {
  Eigen::Matrix<double, Dim, 1> x;
  double f;
  int iterations;
  int evaluations;
};

/// Nelder-Mead downhill simplex with dimension-adaptive coefficients
/// (Gao & Han 2012). Every trial point is passed through `project` first,
/// which is how box constraints are enforced; `objective` only ever sees
/// projected points.
template <int Dim, typename Objective, typename Projection>
NelderMeadResult<Dim> nelder_mead(Objective&& objective, Projection&& project,
                                  const Eigen::Matrix<double, Dim, 1>& start,
                                  const Eigen::Matrix<double, Dim, 1>& step,
                                  const NelderMeadOptions& options) {
  using Vector = Eigen::Matrix<double, Dim, 1>;
  constexpr int kVertices = Dim + 1;
  constexpr double n = Dim;
  constexpr double kReflect = 1.0;
  const double kExpand = 1.0 + 2.0 / n;
  const double kContract = 0.75 - 1.0 / (2.0 * n);
  const double kShrink = 1.0 - 1.0 / n;

  int evaluations = 0;
  auto eval = [&](Vector& x) {
    x = project(x);
    ++evaluations;
    return objective(static_cast<const Vector&>(x));
  };

  std::array<Vector, kVertices> vertex;
  std::array<double, kVertices> value;
  vertex[0] = start;
  value[0] = eval(vertex[0]);
  for (int i = 0; i < Dim; ++i) {
    vertex[i + 1] = start;
    vertex[i + 1](i) += step(i);
    value[i + 1] = eval(vertex[i + 1]);
  }

  std::array<int, kVertices> order;
  auto sort_vertices = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return value[a] < value[b]; });
  };

  int iteration = 0;
  sort_vertices();
  while (iteration < options.max_iterations) {
    const int best = order.front();
    const int worst = order.back();
    const int second_worst = order[kVertices - 2];
    if (value[best] <= options.f_target) break;
    if (value[worst] - value[best] <= options.f_tolerance) break;
    double spread = 0.0;
    for (int i = 0; i < kVertices; ++i) {
      spread = std::max(spread, (vertex[i] - vertex[best]).cwiseAbs().maxCoeff());
    }
    if (spread <= options.x_tolerance) break;
    ++iteration;

    Vector centroid = Vector::Zero();
    for (int k = 0; k < Dim; ++k) centroid += vertex[order[k]];
    centroid /= n;

    Vector reflected = centroid + kReflect * (centroid - vertex[worst]);
    const double f_reflected = eval(reflected);

    if (f_reflected < value[best]) {
      Vector expanded = centroid + kExpand * (reflected - centroid);
      const double f_expanded = eval(expanded);
      if (f_expanded < f_reflected) {
        vertex[worst] = expanded;
        value[worst] = f_expanded;
      } else {
        vertex[worst] = reflected;
        value[worst] = f_reflected;
      }
    } else if (f_reflected < value[second_worst]) {
      vertex[worst] = reflected;
      value[worst] = f_reflected;
    } else {
      const bool outside = f_reflected < value[worst];
      Vector contracted = outside ? Vector(centroid + kContract * (reflected - centroid))
                                  : Vector(centroid + kContract * (vertex[worst] - centroid));
      const double f_contracted = eval(contracted);
      if (f_contracted < (outside ? f_reflected : value[worst])) {
        vertex[worst] = contracted;
        value[worst] = f_contracted;
      } else {
        for (int i = 0; i < kVertices; ++i) {
          if (i == best) continue;
          vertex[i] = vertex[best] + kShrink * (vertex[i] - vertex[best]);
          value[i] = eval(vertex[i]);
        }
      }
    }
    sort_vertices();
  }

  const int best = order.front();
  return {vertex[best], value[best], iteration, evaluations};
}

}  // namespace gatesmith

#endif  // GATESMITH_NELDER_MEAD_HPP
