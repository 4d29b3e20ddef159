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

#include <cmath>
#include <cstring>
#include <numbers>
#include <random>

#include "doctest.h"
#include "gatesmith/gate_catalog.hpp"
#include "gatesmith/nelder_mead.hpp"
#include "gatesmith/synthesizer.hpp"
#include "oracles.hpp"

using namespace gatesmith;
using namespace gatesmith::testing;

namespace {

constexpr double kPi = std::numbers::pi;

Unitary4d forward_target(std::mt19937_64& rng) {
  const SearchVector x = random_search_point(rng, SearchBounds::defaults());
  return circuit_unitary(to_protocol_params(x, 1.0));
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("parameter names") {
  for (int i = 0; i < kSearchDim; ++i) {
    const auto p = static_cast<SearchParameter>(i);
    CHECK(parse_parameter(parameter_name(p)) == p);
  }
  CHECK(parameter_name(SearchParameter::Jt) == "Jt");
  CHECK_THROWS_AS(parse_parameter("omega3"), std::invalid_argument);
}

TEST_CASE("search vector round trip") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 50; ++i) {
    const SearchVector x = random_search_point(rng, SearchBounds::defaults());
    const ProtocolParamsd p = to_protocol_params(x, 2.5);
    CHECK(p.t == doctest::Approx(x(0) / 2.5));
    CHECK((to_search_vector(p) - x).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(1.0 - synthesis_objective(circuit_unitary(p).matrix(), x) ==
          doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("config validation") {
  SearchConfig c;
  CHECK_NOTHROW(c.validate());
  c.restarts = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = SearchConfig{};
  c.tolerance = 0.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = SearchConfig{};
  c.reference_J = -1.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = SearchConfig{};
  c.bounds[SearchParameter::Jt] = {-1.0, 1.0};
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = SearchConfig{};
  c.bounds[SearchParameter::Gamma] = {2.0, 1.0};
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("start points lie in the box and depend on the seed") {
  const SearchBounds b = SearchBounds::defaults();
  for (int i = 0; i < 64; ++i) {
    const SearchVector x = start_point(b, 7, i);
    for (int k = 0; k < kSearchDim; ++k) {
      CHECK(x(k) >= b.box[k].lo);
      CHECK(x(k) <= b.box[k].hi);
    }
  }
  CHECK(start_point(b, 7, 3) == start_point(b, 7, 3));
  CHECK(start_point(b, 7, 3) != start_point(b, 8, 3));
  CHECK(start_point(b, 7, 3) != start_point(b, 7, 4));
}

TEST_CASE("nelder_mead minimizes a shifted quadratic inside a box") {
  using V = Eigen::Matrix<double, 3, 1>;
  const V centre(0.3, -1.2, 2.0);
  auto f = [&](const V& x) { return (x - centre).squaredNorm(); };
  auto project = [](const V& x) { return V(x.cwiseMax(-1.0).cwiseMin(1.0)); };
  const auto r = nelder_mead<3>(f, project, V::Zero(), V::Constant(0.5), {});
  CHECK(r.x(0) == doctest::Approx(0.3).epsilon(1e-5));
  CHECK(r.x(1) == doctest::Approx(-1.0));
  CHECK(r.x(2) == doctest::Approx(1.0));
}

TEST_CASE("identity target is reached on a full exchange period") {
  SearchConfig c;
  c.restarts = 8;
  const SynthesisResult r = synthesize(Unitary4d::identity(), c);
  CHECK(r.reached);
  CHECK(r.best_fidelity >= 1.0 - 1e-10);
  // The exchange block must close: Jt in 2 pi Z, with z pulses absorbing the
  // gamma phases.
  const double jt = r.best_params.coupling.J * r.best_params.t;
  CHECK(std::abs(std::sin(jt / 2)) < 1e-4);
  CHECK(approx_equal_up_to_phase(circuit_unitary(r.best_params), Unitary4d::identity(), 1e-4));
}

TEST_CASE("catalog gates are found inside their condition families") {
  for (auto kind : {GateKind::Swap, GateKind::ISwap, GateKind::SqrtSwap}) {
    CAPTURE(gate_name(kind));
    const Unitary4d target = make_gate(NamedGate::of_kind(kind));
    const SynthesisResult r = synthesize(target);
    CHECK(r.best_fidelity >= 1.0 - 1e-9);
    const FamilyMembership m = classify_family_member(kind, r.best_params, 1e-4);
    CHECK(m.member);
    CHECK(m.n == 0);
  }
}

TEST_CASE("entangler is synthesized") {
  const Unitary4d target = make_gate(NamedGate::entangler(0.5));
  const SynthesisResult r = synthesize(target);
  CHECK(r.reached);
  CHECK(gate_fidelity(target, r.best_params) >= 1.0 - 1e-9);
}

TEST_CASE("forward-generated targets are recovered") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 8; ++i) {
    const Unitary4d target = forward_target(rng);
    const SynthesisResult r = synthesize(target);
    CHECK(r.best_fidelity >= 1.0 - 1e-6);
  }
}

TEST_CASE("reported fidelity is reproducible from the parameters") {
  std::mt19937_64 rng(43);
  SearchConfig c;
  c.restarts = 4;
  c.max_iterations = 300;  // leaves most runs unconverged on purpose
  for (int i = 0; i < 10; ++i) {
    const Unitary4d target = random_unitary(rng);
    const SynthesisResult r = synthesize(target, c);
    CHECK(std::abs(gate_fidelity(target, r.best_params) - r.best_fidelity) <= 1e-12);
    CHECK(r.restart_fidelities.size() == 4);
    CHECK(r.reached == (r.best_fidelity >= 1.0 - c.tolerance));
    CHECK(r.best_params.t >= 0.0);
  }
}

TEST_CASE("synthesis is bit-identical for a fixed seed") {
  std::mt19937_64 rng(44);
  const Unitary4d target = forward_target(rng);
  SearchConfig c;
  c.restarts = 6;
  const SynthesisResult a = synthesize(target, c);
  const SynthesisResult b = synthesize(target, c);
  CHECK(same_bits(a.best_fidelity, b.best_fidelity));
  CHECK(same_bits(a.best_params.t, b.best_params.t));
  CHECK(same_bits(a.best_params.coupling.gamma, b.best_params.coupling.gamma));
  CHECK(same_bits(a.best_params.pulse1.omega(), b.best_params.pulse1.omega()));
  CHECK(same_bits(a.best_params.pulse2.phi(), b.best_params.pulse2.phi()));
  CHECK(same_bits(a.best_params.chi, b.best_params.chi));
  CHECK(a.best_restart == b.best_restart);
  for (int i = 0; i < c.restarts; ++i) {
    CHECK(same_bits(a.restart_fidelities[i], b.restart_fidelities[i]));
  }
}

TEST_CASE("more restarts never lose ground") {
  std::mt19937_64 rng(45);
  SearchConfig c;
  for (int trial = 0; trial < 4; ++trial) {
    // Alternate unreachable targets under a tight budget with reachable ones.
    const bool reachable = trial % 2 == 1;
    c.max_iterations = reachable ? 4000 : 200;
    const Unitary4d target = reachable ? forward_target(rng) : random_unitary(rng);
    SynthesisResult previous;
    for (int k = 1; k <= 6; ++k) {
      c.restarts = k;
      const SynthesisResult r = synthesize(target, c);
      if (k > 1) {
        if (previous.reached) {
          CHECK(r.reached);
        } else {
          CHECK(r.best_fidelity >= previous.best_fidelity - 1e-13);
        }
        // Earlier restarts are unaffected by later ones.
        for (int i = 0; i < k - 1; ++i) {
          CHECK(same_bits(r.restart_fidelities[i], previous.restart_fidelities[i]));
        }
      }
      previous = r;
    }
  }
}

TEST_CASE("narrow bounds are respected") {
  SearchConfig c;
  c.restarts = 4;
  c.bounds[SearchParameter::Gamma] = {0.5, 0.5};
  c.bounds[SearchParameter::Jt] = {0.0, kPi};
  const SynthesisResult r = synthesize(make_gate(NamedGate::swap()), c);
  CHECK(r.best_params.coupling.gamma == 0.5);
  CHECK(r.best_params.coupling.J * r.best_params.t <= kPi + 1e-12);
  // gamma = 1/2 cannot give SWAP, so the search reports failure honestly.
  CHECK_FALSE(r.reached);
  CHECK(r.best_fidelity < 1.0 - 1e-3);
}

TEST_CASE("landscape over (Jt, gamma) for SWAP") {
  const Unitary4d swap = make_gate(NamedGate::swap());
  const LandscapeAxis jt{SearchParameter::Jt, 0.0, 2 * kPi, 9};
  const LandscapeAxis gamma{SearchParameter::Gamma, -3.0, 5.0, 9};
  const Landscape l = fidelity_landscape(swap, jt, gamma, ProtocolParamsd{{1.0, 0.0}, 0.0});
  CHECK(l.fidelity.rows() == 9);
  CHECK(l.fidelity.cols() == 9);
  // (Jt, gamma) = (pi, 1) is grid point (4, 4).
  CHECK(jt.coordinate(4) == doctest::Approx(kPi));
  CHECK(gamma.coordinate(4) == doctest::Approx(1.0));
  CHECK(l.fidelity(4, 4) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(l.fidelity.maxCoeff() <= 1.0 + 1e-15);
  CHECK(l.fidelity.minCoeff() >= 0.0);
  // gamma = 3 needs the pulses; unpulsed it is sz x sz SWAP, orthogonal to SWAP.
  CHECK(std::abs(l.fidelity(4, 6)) < 1e-15);
}

TEST_CASE("landscape of a generated target peaks at the generating point") {
  std::mt19937_64 rng(46);
  const SearchVector x = random_search_point(rng, SearchBounds::defaults());
  const ProtocolParamsd params = to_protocol_params(x, 1.0);
  const Unitary4d target = circuit_unitary(params);
  const LandscapeAxis a{SearchParameter::Omega1, x(2) - 1.0, x(2) + 1.0, 11};
  const LandscapeAxis b{SearchParameter::Theta2, x(6) - 0.5, x(6) + 0.5, 11};
  const Landscape l = fidelity_landscape(target, a, b, params);
  Eigen::Index r = 0;
  Eigen::Index c = 0;
  l.fidelity.maxCoeff(&r, &c);
  CHECK(r == 5);
  CHECK(c == 5);
  CHECK(l.fidelity(5, 5) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("landscape over the pulse areas for iSWAP") {
  const Unitary4d iswap = make_gate(NamedGate::iswap());
  const LandscapeAxis w1{SearchParameter::Omega1, -kPi, kPi, 5};
  const LandscapeAxis w2{SearchParameter::Omega2, -kPi, kPi, 5};
  const Landscape l = fidelity_landscape(iswap, w1, w2, ProtocolParamsd{{1.0, 0.0}, kPi});
  // (pi, -pi) and (-pi, pi) realize iSWAP; (0, 0) leaves exp(-i pi/2 ...) off by zz.
  CHECK(l.fidelity(4, 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(l.fidelity(0, 4) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(l.fidelity(2, 2) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("landscape edge cases") {
  const Unitary4d swap = make_gate(NamedGate::swap());
  const ProtocolParamsd fixed{{1.0, 1.0}, kPi};
  const Landscape single = fidelity_landscape(swap, {SearchParameter::Jt, kPi, 10.0, 1},
                                              {SearchParameter::Gamma, 1.0, 2.0, 1}, fixed);
  CHECK(single.fidelity.size() == 1);
  CHECK(single.fidelity(0, 0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(fidelity_landscape(swap, {SearchParameter::Jt, 0, 1, 3},
                                     {SearchParameter::Jt, 0, 1, 3}, fixed),
                  std::invalid_argument);
  CHECK_THROWS_AS(fidelity_landscape(swap, {SearchParameter::Jt, 0, 1, 0},
                                     {SearchParameter::Gamma, 0, 1, 3}, fixed),
                  std::invalid_argument);
}
