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

#ifndef GATESMITH_JSON_IO_HPP
#define GATESMITH_JSON_IO_HPP

#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

#include "gatesmith/core.hpp"
#include "gatesmith/gate_catalog.hpp"
#include "gatesmith/lattice.hpp"
#include "gatesmith/protocol.hpp"
#include "gatesmith/synthesizer.hpp"

namespace gatesmith {

// JSON interchange. Matrices are row-major arrays of [re, im] pairs; doubles
// are written in shortest round-trip form, so decoding restores every bit.

class JsonFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses text, rethrowing syntax errors as JsonFormatError with the byte offset.
nlohmann::json parse_json(std::string_view text);

nlohmann::json matrix_to_json(const Matrix4cd& m);
nlohmann::json matrix_to_json(const Matrix2cd& m);
Matrix4cd matrix4_from_json(const nlohmann::json& j);
/// Decodes and validates unitarity (throws NonUnitaryError).
Unitary4d unitary_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ProtocolParamsd& params);
/// {"J", "gamma", "t", "pulse1": {"omega","theta","phi"}, "pulse2": {...}, "chi"}.
/// Pulses and chi default to zero when absent; unknown keys are rejected.
ProtocolParamsd protocol_params_from_json(const nlohmann::json& j);

LatticeConfig lattice_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const LatticeConfig& config);
nlohmann::json to_json(const EffectiveCouplings& couplings);
nlohmann::json to_json(const FeasibilityReport& report);
nlohmann::json to_json(const FamilyReport& report);
nlohmann::json to_json(const SynthesisResult& result);

}  // namespace gatesmith

#endif  // GATESMITH_JSON_IO_HPP
