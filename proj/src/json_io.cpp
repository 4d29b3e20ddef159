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

#include "gatesmith/json_io.hpp"

#include <initializer_list>

namespace gatesmith {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& j, std::initializer_list<std::string_view> allowed,
                         std::string_view what) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (auto key : allowed) known = known || item.key() == key;
    if (!known) {
      throw JsonFormatError("unknown key '" + item.key() + "' in " + std::string(what));
    }
  }
}

double number_at(const json& j, const char* key, std::string_view what) {
  if (!j.contains(key)) {
    throw JsonFormatError(std::string(what) + " is missing '" + key + "'");
  }
  const json& v = j.at(key);
  if (!v.is_number()) {
    throw JsonFormatError(std::string(what) + "." + key + " must be a number");
  }
  return v.get<double>();
}

double number_or(const json& j, const char* key, double fallback, std::string_view what) {
  return j.contains(key) ? number_at(j, key, what) : fallback;
}

template <int N>
json encode_matrix(const Eigen::Matrix<std::complex<double>, N, N>& m) {
  json rows = json::array();
  for (int r = 0; r < N; ++r) {
    json row = json::array();
    for (int c = 0; c < N; ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

json pulse_to_json(const PulseSpecd& p) {
  return {{"omega", p.omega()}, {"theta", p.theta()}, {"phi", p.phi()}};
}

PulseSpecd pulse_from_json(const json& j, std::string_view what) {
  if (!j.is_object()) throw JsonFormatError(std::string(what) + " must be an object");
  reject_unknown_keys(j, {"omega", "theta", "phi"}, what);
  return PulseSpecd(number_or(j, "omega", 0.0, what), number_or(j, "theta", 0.0, what),
                    number_or(j, "phi", 0.0, what));
}

std::string_view statistics_name(Statistics s) { return s == Statistics::Bose ? "bose" : "fermi"; }

}  // namespace

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw JsonFormatError("malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

json matrix_to_json(const Matrix4cd& m) { return encode_matrix<4>(m); }
json matrix_to_json(const Matrix2cd& m) { return encode_matrix<2>(m); }

Matrix4cd matrix4_from_json(const json& j) {
  if (!j.is_array() || j.size() != 4) {
    throw JsonFormatError("matrix must be an array of 4 rows");
  }
  Matrix4cd m;
  for (int r = 0; r < 4; ++r) {
    const json& row = j[r];
    if (!row.is_array() || row.size() != 4) {
      throw JsonFormatError("matrix row " + std::to_string(r) + " must have 4 entries");
    }
    for (int c = 0; c < 4; ++c) {
      const json& e = row[c];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        throw JsonFormatError("matrix entry [" + std::to_string(r) + "][" + std::to_string(c) +
                              "] must be a [re, im] pair of numbers");
      }
      m(r, c) = {e[0].get<double>(), e[1].get<double>()};
    }
  }
  return m;
}

Unitary4d unitary_from_json(const json& j) { return Unitary4d(matrix4_from_json(j)); }

json to_json(const ProtocolParamsd& params) {
  return {{"J", params.coupling.J},
          {"gamma", params.coupling.gamma},
          {"t", params.t},
          {"pulse1", pulse_to_json(params.pulse1)},
          {"pulse2", pulse_to_json(params.pulse2)},
          {"chi", params.chi}};
}

ProtocolParamsd protocol_params_from_json(const json& j) {
  constexpr std::string_view what = "protocol params";
  if (!j.is_object()) throw JsonFormatError("protocol params must be a JSON object");
  reject_unknown_keys(j, {"J", "gamma", "t", "pulse1", "pulse2", "chi"}, what);
  ProtocolParamsd p;
  p.coupling.J = number_at(j, "J", what);
  p.coupling.gamma = number_at(j, "gamma", what);
  p.t = number_at(j, "t", what);
  if (j.contains("pulse1")) p.pulse1 = pulse_from_json(j.at("pulse1"), "pulse1");
  if (j.contains("pulse2")) p.pulse2 = pulse_from_json(j.at("pulse2"), "pulse2");
  p.chi = number_or(j, "chi", 0.0, what);
  p.validate();
  return p;
}

LatticeConfig lattice_config_from_json(const json& j) {
  constexpr std::string_view what = "lattice config";
  if (!j.is_object()) throw JsonFormatError("lattice config must be a JSON object");
  reject_unknown_keys(j,
                      {"v_up", "v_down", "k_a_updown", "k_a_upup", "k_a_downdown", "statistics",
                       "recoil_energy", "coherence_time", "rabi_frequency", "perturbative_ratio"},
                      what);
  LatticeConfig c;
  c.v_up = number_at(j, "v_up", what);
  c.v_down = number_at(j, "v_down", what);
  c.ka_updown = number_at(j, "k_a_updown", what);
  c.ka_upup = number_or(j, "k_a_upup", c.ka_updown, what);
  c.ka_downdown = number_or(j, "k_a_downdown", c.ka_updown, what);
  if (!j.contains("statistics") || !j.at("statistics").is_string()) {
    throw JsonFormatError("lattice config needs \"statistics\": \"bose\" or \"fermi\"");
  }
  const auto stats = j.at("statistics").get<std::string>();
  if (stats == "bose") {
    c.statistics = Statistics::Bose;
  } else if (stats == "fermi") {
    c.statistics = Statistics::Fermi;
  } else {
    throw JsonFormatError("statistics must be \"bose\" or \"fermi\", got \"" + stats + "\"");
  }
  c.recoil_energy = number_at(j, "recoil_energy", what);
  if (j.contains("coherence_time")) c.coherence_time = number_at(j, "coherence_time", what);
  if (j.contains("rabi_frequency")) c.rabi_frequency = number_at(j, "rabi_frequency", what);
  c.perturbative_ratio = number_or(j, "perturbative_ratio", c.perturbative_ratio, what);
  c.validate();
  return c;
}

json to_json(const LatticeConfig& c) {
  json j = {{"v_up", c.v_up},
            {"v_down", c.v_down},
            {"k_a_updown", c.ka_updown},
            {"k_a_upup", c.ka_upup},
            {"k_a_downdown", c.ka_downdown},
            {"statistics", statistics_name(c.statistics)},
            {"recoil_energy", c.recoil_energy},
            {"perturbative_ratio", c.perturbative_ratio}};
  if (c.coherence_time) j["coherence_time"] = *c.coherence_time;
  if (c.rabi_frequency) j["rabi_frequency"] = *c.rabi_frequency;
  return j;
}

json to_json(const EffectiveCouplings& e) {
  return {{"t_up", e.t_up},           {"t_down", e.t_down},         {"u_updown", e.u_updown},
          {"u_upup", e.u_upup},       {"u_downdown", e.u_downdown}, {"J_recoil", e.J_recoil},
          {"J", e.J},                 {"gamma", e.gamma},           {"perturbative_ok", e.perturbative_ok}};
}

json to_json(const FeasibilityReport& r) {
  return {{"gate", gate_name(r.gate)},
          {"coherence_time", r.coherence_time},
          {"J_min", r.J_min},
          {"J_min_khz", r.J_min_khz},
          {"J_abs", r.J_abs},
          {"feasible", r.feasible},
          {"gate_time", r.gate_time},
          {"pulses_required", r.pulses_required},
          {"warnings", r.warnings}};
}

json to_json(const FamilyReport& report) {
  json records = json::array();
  for (const auto& rec : report.records) {
    json j = {{"n", rec.n}, {"p", rec.p}, {"residue", rec.residue}};
    if (rec.params) {
      j["params"] = to_json(*rec.params);
      j["fidelity"] = rec.fidelity;
      j["fidelity_deviation"] = rec.fidelity_deviation;
      j["chi_star"] = rec.chi_star;
      j["chi_formula"] = rec.chi_formula;
      j["chi_mismatch"] = rec.chi_mismatch;
    } else {
      j["unrealizable"] = rec.note;
    }
    records.push_back(std::move(j));
  }
  return {{"gate", gate_name(report.kind)},
          {"realized", report.realized},
          {"max_fidelity_deviation", report.max_fidelity_deviation},
          {"max_chi_mismatch", report.max_chi_mismatch},
          {"records", std::move(records)}};
}

json to_json(const SynthesisResult& r) {
  return {{"best_params", to_json(r.best_params)},
          {"best_fidelity", r.best_fidelity},
          {"reached", r.reached},
          {"best_restart", r.best_restart},
          {"restart_fidelities", r.restart_fidelities}};
}

}  // namespace gatesmith
