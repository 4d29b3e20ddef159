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

#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <numbers>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "gatesmith/gate_catalog.hpp"
#include "gatesmith/json_io.hpp"
#include "gatesmith/lattice.hpp"
#include "gatesmith/protocol.hpp"
#include "gatesmith/synthesizer.hpp"

namespace gatesmith::cli {

namespace {

using nlohmann::json;

// Thrown for argument combinations CLI11 cannot express; maps to exit 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { Json, Csv };

struct Context {
  std::ostream& out;
  std::istream& in;
  bool stdin_used = false;

  std::string read_stdin() {
    if (stdin_used) throw UsageError("only one argument may read from stdin ('-')");
    stdin_used = true;
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }

  /// Inline JSON text, or '-' for stdin.
  json json_argument(const std::string& value) {
    return parse_json(value == "-" ? read_stdin() : value);
  }
};

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Flattens nested objects into dotted keys; arrays get [i] suffixes.
void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (const auto& item : j.items()) {
      flatten(item.value(), prefix.empty() ? item.key() : prefix + "." + item.key(), rows);
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
    }
  } else if (j.is_number_float()) {
    rows.emplace_back(prefix, format_number(j.get<double>()));
  } else if (j.is_string()) {
    rows.emplace_back(prefix, j.get<std::string>());
  } else {
    rows.emplace_back(prefix, j.dump());
  }
}

void write_payload(const json& payload, Format format, std::ostream& out) {
  if (format == Format::Json) {
    out << payload.dump(2) << '\n';
    return;
  }
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(payload, "", rows);
  out << "key,value\n";
  for (const auto& [k, v] : rows) out << k << ',' << v << '\n';
}

void write_matrix(const Matrix4cd& m, Format format, std::ostream& out) {
  if (format == Format::Json) {
    out << matrix_to_json(m).dump() << '\n';
    return;
  }
  out << "row,col,re,im\n";
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      out << r << ',' << c << ',' << format_number(m(r, c).real()) << ','
          << format_number(m(r, c).imag()) << '\n';
    }
  }
}

GateKind gate_kind_or_throw(const std::string& name) {
  const auto kind = parse_gate_kind(name);
  if (!kind) {
    throw std::invalid_argument("unknown gate '" + name + "'; valid names: " + valid_gate_names());
  }
  return *kind;
}

/// A gate name, an inline JSON matrix, or '-' for a JSON matrix on stdin.
Unitary4d resolve_target(Context& ctx, const std::string& spec, double omega_sum,
                         const std::string& matrix) {
  if (spec == "-" || (!spec.empty() && spec.front() == '[')) {
    return unitary_from_json(ctx.json_argument(spec));
  }
  const GateKind kind = gate_kind_or_throw(spec);
  if (kind == GateKind::Custom) {
    if (matrix.empty()) throw UsageError("gate 'custom' needs --matrix");
    return unitary_from_json(ctx.json_argument(matrix));
  }
  return make_gate(NamedGate::of_kind(kind, omega_sum));
}

NamedGate named_gate(Context& ctx, const std::string& name, double omega_sum,
                     const std::string& matrix) {
  const GateKind kind = gate_kind_or_throw(name);
  if (kind == GateKind::Custom) return NamedGate::custom(resolve_target(ctx, name, 0.0, matrix));
  return NamedGate::of_kind(kind, omega_sum);
}

LandscapeAxis parse_axis(const std::string& spec) {
  // name:lo:hi:resolution
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.size() != 4) {
    throw UsageError("axis '" + spec + "' must look like name:lo:hi:resolution");
  }
  try {
    return {parse_parameter(parts[0]), std::stod(parts[1]), std::stod(parts[2]),
            std::stoi(parts[3])};
  } catch (const std::invalid_argument& e) {
    throw UsageError("bad axis '" + spec + "': " + e.what());
  }
}

void apply_bound(SearchBounds& bounds, const std::string& spec) {
  // key=lo:hi; "omega", "theta", "phi" set both spins.
  const auto eq = spec.find('=');
  const auto colon = spec.find(':', eq == std::string::npos ? 0 : eq);
  if (eq == std::string::npos || colon == std::string::npos) {
    throw UsageError("bound '" + spec + "' must look like key=lo:hi");
  }
  const std::string key = spec.substr(0, eq);
  Interval iv{};
  try {
    iv = {std::stod(spec.substr(eq + 1, colon - eq - 1)), std::stod(spec.substr(colon + 1))};
  } catch (const std::exception&) {
    throw UsageError("bound '" + spec + "' has non-numeric limits");
  }
  if (key == "omega" || key == "theta" || key == "phi") {
    bounds[parse_parameter(key + "1")] = iv;
    bounds[parse_parameter(key + "2")] = iv;
  } else {
    bounds[parse_parameter(key)] = iv;
  }
}

void write_sweep_csv(const Landscape& l, std::ostream& out) {
  out << "axis1,axis2,fidelity\n";
  for (int r = 0; r < l.axis1.resolution; ++r) {
    for (int c = 0; c < l.axis2.resolution; ++c) {
      out << format_number(l.axis1.coordinate(r)) << ',' << format_number(l.axis2.coordinate(c))
          << ',' << format_number(l.fidelity(r, c)) << '\n';
    }
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        std::istream& in) {
  CLI::App app{"Two-qubit gates from an XXZ interaction period plus pulsed single-spin fields",
               "xxz-gatesmith"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format_name = "json";
  app.add_option("--format", format_name, "Output format for numeric payloads")
      ->check(CLI::IsMember({"json", "csv"}))
      ->option_text("json|csv (default json)");

  // gate
  std::string gate_name_arg;
  double omega_sum = 0.0;
  std::string matrix_arg;
  auto* gate_cmd = app.add_subcommand("gate", "Print a catalog gate matrix");
  gate_cmd->add_option("--name", gate_name_arg, "swap, iswap, sqrt-swap, entangler, conj-entangler, custom")
      ->required();
  gate_cmd->add_option("--omega-sum", omega_sum, "Entangler diagonal phase omega1 + omega2");
  gate_cmd->add_option("--matrix", matrix_arg, "JSON matrix for 'custom' ('-' reads stdin)");

  // fidelity
  std::string target_arg;
  std::string params_arg;
  auto* fid_cmd = app.add_subcommand("fidelity", "Fidelity of a protocol against a target gate");
  fid_cmd->add_option("--target", target_arg, "Gate name, JSON matrix, or '-'")->required();
  fid_cmd->add_option("--params", params_arg, "Protocol parameters as JSON, or '-'")->required();
  fid_cmd->add_option("--omega-sum", omega_sum, "Entangler diagonal phase");
  fid_cmd->add_option("--matrix", matrix_arg, "JSON matrix for target 'custom'");

  // conditions
  int n = 0;
  int p = 0;
  std::optional<int> residue;
  double reference_J = 1.0;
  auto* cond_cmd = app.add_subcommand("conditions", "Analytic family member for (n, p)");
  cond_cmd->add_option("--gate", gate_name_arg, "Gate name")->required();
  cond_cmd->add_option("--n", n, "Interaction-time index n");
  cond_cmd->add_option("--p", p, "Anisotropy index p (gamma = 4p + residue)");
  cond_cmd->add_option("--residue", residue, "gamma residue class mod 4");
  cond_cmd->add_option("--J", reference_J, "Reference coupling magnitude");
  cond_cmd->add_option("--omega-sum", omega_sum, "Entangler diagonal phase");

  // verify
  int n_min = -3, n_max = 3, p_min = -3, p_max = 3;
  auto* verify_cmd = app.add_subcommand("verify", "Check a condition family over an (n, p) grid");
  verify_cmd->add_option("--gate", gate_name_arg, "Gate name")->required();
  verify_cmd->add_option("--n-min", n_min);
  verify_cmd->add_option("--n-max", n_max);
  verify_cmd->add_option("--p-min", p_min);
  verify_cmd->add_option("--p-max", p_max);
  verify_cmd->add_option("--residue", residue, "Restrict to one gamma residue class");
  verify_cmd->add_option("--J", reference_J, "Reference coupling magnitude");
  verify_cmd->add_option("--omega-sum", omega_sum, "Entangler diagonal phase");

  // synth
  SearchConfig config;
  std::vector<std::string> bound_specs;
  auto* synth_cmd = app.add_subcommand("synth", "Numerically search protocol parameters for a target");
  synth_cmd->add_option("--target", target_arg, "Gate name, JSON matrix, or '-'")->required();
  synth_cmd->add_option("--omega-sum", omega_sum, "Entangler diagonal phase");
  synth_cmd->add_option("--matrix", matrix_arg, "JSON matrix for target 'custom'");
  synth_cmd->add_option("--restarts", config.restarts, "Number of seeded restarts")
      ->check(CLI::PositiveNumber);
  synth_cmd->add_option("--max-iterations", config.max_iterations, "Simplex iterations per restart")
      ->check(CLI::PositiveNumber);
  synth_cmd->add_option("--seed", config.seed, "Search seed")->envname("XXZ_GATESMITH_SEED");
  synth_cmd->add_option("--tol", config.tolerance, "Reached iff fidelity >= 1 - tol");
  synth_cmd->add_option("--bounds", bound_specs,
                        "Search box override key=lo:hi (Jt, gamma, omega1, theta1, phi1, omega2, "
                        "theta2, phi2; omega/theta/phi set both spins)");
  synth_cmd->add_option("--J", config.reference_J, "Reference coupling attached to the result");

  // sweep
  std::string axis1_arg, axis2_arg, out_path = "-";
  auto* sweep_cmd = app.add_subcommand("sweep", "Fidelity landscape over two parameters as CSV");
  sweep_cmd->add_option("--target", target_arg, "Gate name, JSON matrix, or '-'")->required();
  sweep_cmd->add_option("--omega-sum", omega_sum, "Entangler diagonal phase");
  sweep_cmd->add_option("--matrix", matrix_arg, "JSON matrix for target 'custom'");
  sweep_cmd->add_option("--axis1", axis1_arg, "name:lo:hi:resolution")->required();
  sweep_cmd->add_option("--axis2", axis2_arg, "name:lo:hi:resolution")->required();
  sweep_cmd->add_option("--params", params_arg, "Fixed protocol parameters as JSON (default: J=1, all else 0)");
  sweep_cmd->add_option("--out", out_path, "Output CSV path ('-' for stdout)");

  // lattice
  std::string config_arg;
  std::vector<std::string> lattice_gates;
  std::optional<double> coherence_override;
  std::optional<double> solve_J;
  std::optional<double> solve_gamma;
  DepthSearch depth_search;
  auto* lattice_cmd = app.add_subcommand(
      "lattice",
      "Ultracold-atom couplings and gate feasibility.\n"
      "Config JSON keys: v_up, v_down (depths in E_r), k_a_updown, k_a_upup, k_a_downdown, "
      "statistics (bose|fermi), recoil_energy (rad/s), coherence_time (s), rabi_frequency (rad/s), perturbative_ratio.");
  lattice_cmd->add_option("--config", config_arg, "Path to a JSON config, or '-' for stdin")->required();
  lattice_cmd->add_option("--gate", lattice_gates, "Gates to check (default: swap, iswap, sqrt-swap, entangler)");
  lattice_cmd->add_option("--coherence-time", coherence_override, "Coherence time t_c in seconds");
  lattice_cmd->add_option("--solve-J", solve_J, "Find depths reaching this J (rad/s)");
  lattice_cmd->add_option("--solve-gamma", solve_gamma, "Anisotropy to reach with --solve-J");
  lattice_cmd->add_option("--depth-min", depth_search.lo, "Depth search lower bound (E_r)");
  lattice_cmd->add_option("--depth-max", depth_search.hi, "Depth search upper bound (E_r)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }

  const Format format = format_name == "csv" ? Format::Csv : Format::Json;
  Context ctx{out, in};
  try {
    const int stdin_args = static_cast<int>(target_arg == "-") + (params_arg == "-") +
                           (matrix_arg == "-") + (config_arg == "-");
    if (stdin_args > 1) throw UsageError("only one argument may read from stdin ('-')");
    if (gate_cmd->parsed()) {
      const NamedGate gate = named_gate(ctx, gate_name_arg, omega_sum, matrix_arg);
      write_matrix(make_gate(gate).matrix(), format, out);
    } else if (fid_cmd->parsed()) {
      const Unitary4d target = resolve_target(ctx, target_arg, omega_sum, matrix_arg);
      const ProtocolParamsd params = protocol_params_from_json(ctx.json_argument(params_arg));
      const auto best = phase_optimized_fidelity(target, circuit_unitary(params));
      write_payload({{"fidelity", gate_fidelity(target, params)},
                     {"phase_optimized_fidelity", best.fidelity},
                     {"chi_star", best.chi_star}},
                    format, out);
    } else if (cond_cmd->parsed()) {
      const NamedGate gate = named_gate(ctx, gate_name_arg, omega_sum, matrix_arg);
      const Realization r = condition_params(gate, n, p, {reference_J, residue});
      if (const auto* why = std::get_if<Unrealizable>(&r)) {
        throw std::domain_error("unrealizable: " + why->reason);
      }
      write_payload(to_json(std::get<ProtocolParamsd>(r)), format, out);
    } else if (verify_cmd->parsed()) {
      const NamedGate gate = named_gate(ctx, gate_name_arg, omega_sum, matrix_arg);
      const FamilyReport report =
          verify_family(gate, {n_min, n_max}, {p_min, p_max}, {reference_J, residue});
      if (format == Format::Csv) {
        out << "n,p,residue,fidelity_deviation,chi_star,chi_formula\n";
        for (const auto& rec : report.records) {
          if (!rec.params) continue;
          out << rec.n << ',' << rec.p << ',' << rec.residue << ','
              << format_number(rec.fidelity_deviation) << ',' << format_number(rec.chi_star) << ','
              << format_number(rec.chi_formula) << '\n';
        }
      } else {
        write_payload(to_json(report), format, out);
      }
    } else if (synth_cmd->parsed()) {
      const Unitary4d target = resolve_target(ctx, target_arg, omega_sum, matrix_arg);
      for (const auto& spec : bound_specs) apply_bound(config.bounds, spec);
      write_payload(to_json(synthesize(target, config)), format, out);
    } else if (sweep_cmd->parsed()) {
      const Unitary4d target = resolve_target(ctx, target_arg, omega_sum, matrix_arg);
      ProtocolParamsd fixed;
      fixed.coupling.J = 1.0;
      if (!params_arg.empty()) fixed = protocol_params_from_json(ctx.json_argument(params_arg));
      const Landscape landscape =
          fidelity_landscape(target, parse_axis(axis1_arg), parse_axis(axis2_arg), fixed);
      if (out_path == "-") {
        write_sweep_csv(landscape, out);
      } else {
        std::ofstream file(out_path, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open '" + out_path + "' for writing");
        write_sweep_csv(landscape, file);
        file.close();
        if (!file) throw std::runtime_error("failed writing '" + out_path + "'");
      }
    } else if (lattice_cmd->parsed()) {
      std::string text;
      if (config_arg == "-") {
        text = ctx.read_stdin();
      } else {
        std::ifstream file(config_arg);
        if (!file) throw std::runtime_error("cannot read config '" + config_arg + "'");
        text.assign(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
      }
      LatticeConfig lattice = lattice_config_from_json(parse_json(text));
      if (coherence_override) lattice.coherence_time = *coherence_override;
      json payload;
      if (solve_J || solve_gamma) {
        if (!solve_J || !solve_gamma) throw UsageError("--solve-J and --solve-gamma go together");
        const DepthSolution sol =
            solve_depths_for_couplings(*solve_J, *solve_gamma, lattice, depth_search);
        if (const auto* bad = std::get_if<Infeasible>(&sol)) {
          err << json{{"error", bad->reason},
                      {"closest",
                       {{"v_up", bad->closest_v_up},
                        {"v_down", bad->closest_v_down},
                        {"J", bad->closest_J},
                        {"gamma", bad->closest_gamma}}}}
                     .dump()
              << '\n';
          return kExitDomainError;
        }
        lattice = std::get<LatticeConfig>(sol);
      }
      const EffectiveCouplings couplings = effective_couplings(lattice);
      payload["config"] = to_json(lattice);
      payload["couplings"] = to_json(couplings);
      if (lattice.coherence_time) {
        if (lattice_gates.empty()) lattice_gates = {"swap", "iswap", "sqrt-swap", "entangler"};
        json reports = json::array();
        for (const auto& g : lattice_gates) {
          reports.push_back(to_json(gate_feasibility(couplings, gate_kind_or_throw(g),
                                                     *lattice.coherence_time,
                                                     lattice.rabi_frequency)));
        }
        payload["feasibility"] = std::move(reports);
      }
      write_payload(payload, format, out);
    }
  } catch (const UsageError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << json{{"error", e.what()}}.dump() << '\n';
    return kExitDomainError;
  }
  return kExitOk;
}

}  // namespace gatesmith::cli
