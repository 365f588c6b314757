// Copyright 2026 The mqc authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "mqc/ancilla.hpp"
#include "mqc/compiler.hpp"
#include "mqc/gadgets.hpp"
#include "mqc/sets.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitSemantic = 3;
constexpr int kExitVerify = 4;

struct RunConfig {
  std::string circuit_path;
  std::string set_name = "s3";
  std::optional<double> theta;
  std::string mode = "frame";
  uint64_t seed = 1;
  int trials = 1;
  std::vector<int> forced;
  std::string out_path;
  bool json = false;
  bool inject_fault = false;
  std::string gadget = "1q";
  std::string input_bits;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot open {}", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const RunConfig& cfg, const std::string& payload) {
  if (cfg.out_path.empty()) {
    std::cout << payload;
    if (!payload.empty() && payload.back() != '\n') std::cout << '\n';
  } else {
    std::ofstream out(cfg.out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(fmt::format("cannot write {}", cfg.out_path));
    out << payload;
  }
}

mqc::UniversalSet build_set(const RunConfig& cfg) {
  const mqc::SetId id = mqc::set_id_from_string(cfg.set_name);
  return mqc::make_universal_set(id, cfg.theta, std::nullopt);
}

nlohmann::json stats_json(const mqc::SimStats& stats) {
  return nlohmann::json{{"steps", stats.steps},
                        {"two_qubit_steps", stats.two_qubit_steps},
                        {"ancillas_used", stats.ancillas_used},
                        {"rounds_total", stats.rounds_total},
                        {"seed", stats.seed}};
}

int cmd_compile(const RunConfig& cfg) {
  const mqc::GateCircuit circuit = mqc::GateCircuit::parse(read_file(cfg.circuit_path));
  const mqc::UniversalSet set = build_set(cfg);
  const mqc::MeasurementProgram prog =
      mqc::compile(circuit, set, mqc::compile_mode_from_string(cfg.mode));

  if (cfg.json) {
    emit(cfg, prog.json());
  } else {
    std::string out = prog.text();
    out += fmt::format("# steps={} gadgets={} physical={} ancillas={}\n", prog.steps.size(),
                       prog.gadgets.size(), prog.n_physical, prog.ancillas_used);
    emit(cfg, out);
  }
  return kExitOk;
}

int cmd_simulate(const RunConfig& cfg) {
  const mqc::GateCircuit circuit = mqc::GateCircuit::parse(read_file(cfg.circuit_path));
  const mqc::UniversalSet set = build_set(cfg);
  const mqc::MeasurementProgram prog =
      mqc::compile(circuit, set, mqc::compile_mode_from_string(cfg.mode));

  mqc::StateVector input =
      cfg.input_bits.empty() ? mqc::StateVector::zeros(circuit.n_qubits)
                             : mqc::StateVector::basis(circuit.n_qubits, cfg.input_bits);
  mqc::Rng rng(cfg.seed);
  mqc::OutcomeSource src = cfg.forced.empty() ? mqc::OutcomeSource(rng)
                                              : mqc::OutcomeSource(rng, cfg.forced);
  mqc::SimResult result = mqc::simulate(prog, input, src);
  result.stats.seed = cfg.seed;

  nlohmann::json j;
  j["outcomes"] = result.outcomes;
  j["frame"] = result.final_frame.str();
  j["stats"] = stats_json(result.stats);
  j["state"] = mqc::serialize_amplitudes(result.output);
  if (cfg.json) {
    emit(cfg, j.dump(2));
  } else {
    std::string out;
    out += fmt::format("outcomes:");
    for (int o : result.outcomes) out += fmt::format(" {}", o);
    out += fmt::format("\nframe: {}\n", result.final_frame.str());
    out += fmt::format("stats: steps={} two_qubit_steps={} ancillas={} rounds={} seed={}\n",
                       result.stats.steps, result.stats.two_qubit_steps,
                       result.stats.ancillas_used, result.stats.rounds_total, cfg.seed);
    out += "state (index re im):\n" + mqc::serialize_amplitudes(result.output);
    emit(cfg, out);
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg) {
  const mqc::GateCircuit circuit = mqc::GateCircuit::parse(read_file(cfg.circuit_path));
  const mqc::UniversalSet set = build_set(cfg);
  mqc::MeasurementProgram prog =
      mqc::compile(circuit, set, mqc::compile_mode_from_string(cfg.mode));
  if (cfg.inject_fault) prog = mqc::corrupt_program(prog);

  mqc::Rng rng(cfg.seed);
  const mqc::VerifyReport report = mqc::verify_equivalence(circuit, prog, cfg.trials, rng);

  if (cfg.json) {
    nlohmann::json j;
    j["trials"] = report.trials;
    j["min_fidelity"] = report.min_fidelity;
    j["failed_trials"] = report.failed_trials;
    j["pass"] = report.pass;
    emit(cfg, j.dump(2));
  } else {
    emit(cfg, fmt::format("{}: trials={} min_fidelity={:.12g} failures={}\n",
                          report.pass ? "PASS" : "FAIL", report.trials, report.min_fidelity,
                          report.failed_trials.size()));
  }
  return report.pass ? kExitOk : kExitVerify;
}

nlohmann::json trace_json(const mqc::GadgetTrace& trace) {
  return nlohmann::json{{"outcomes", trace.outcomes},
                        {"rounds", trace.rounds},
                        {"frame", trace.frame.str()}};
}

int cmd_stats(const RunConfig& cfg) {
  double sum = 0.0, sum_sq = 0.0;
  nlohmann::json sample;
  for (int t = 0; t < cfg.trials; ++t) {
    mqc::Rng rng(cfg.seed + static_cast<uint64_t>(t));
    mqc::OutcomeSource src(rng);
    const mqc::StateVector psi = mqc::random_state(cfg.gadget == "2q" ? 2 : 1, rng);
    mqc::GadgetTrace trace;
    if (cfg.gadget == "1q") {
      trace = mqc::indirect_gate_1q(psi, mqc::Gate::h(0), mqc::IndirectMode::kLiteral, src);
    } else if (cfg.gadget == "2q") {
      const Eigen::Matrix4cd u = mqc::random_unitary(4, rng);
      trace = mqc::indirect_gate_2q(psi, mqc::Gate::unitary2(0, 1, u), src);
    } else if (cfg.gadget == "bu") {
      trace = mqc::indirect_gate_bu(psi, mqc::Gate::rz(0, M_PI / 4.0), src,
                                    /*track_frame_only=*/true);
    } else {
      throw std::invalid_argument(fmt::format("unknown gadget \"{}\"", cfg.gadget));
    }
    if (t == 0) sample = trace_json(trace);
    sum += trace.rounds;
    sum_sq += static_cast<double>(trace.rounds) * trace.rounds;
  }
  const double mean = sum / cfg.trials;
  const double var = std::max(0.0, sum_sq / cfg.trials - mean * mean);
  const double se = std::sqrt(var / cfg.trials);

  if (cfg.json) {
    nlohmann::json j{{"gadget", cfg.gadget},
                     {"trials", cfg.trials},
                     {"mean_rounds", mean},
                     {"std_error", se},
                     {"seed", cfg.seed},
                     {"sample_trace", sample}};
    emit(cfg, j.dump(2));
  } else {
    emit(cfg, fmt::format("gadget={} trials={} mean_rounds={:.6g} std_error={:.6g} seed={}\n",
                          cfg.gadget, cfg.trials, mean, se, cfg.seed));
  }
  return kExitOk;
}

int cmd_acn(const RunConfig& cfg) {
  const mqc::StateVector reference = mqc::acn_state();
  mqc::Rng rng(cfg.seed);

  nlohmann::json rows = nlohmann::json::array();
  std::string table;
  table += "X Z XX ZZ P parity -> (k,l) overlap\n";
  for (const auto& forced : mqc::acn_forced_combinations()) {
    mqc::OutcomeSource src(rng, forced);
    const mqc::AncillaBranch branch =
        mqc::prepare_acn(src, mqc::AncillaBackend::kStatevector);
    mqc::PauliString shift = mqc::PauliString::identity(4);
    shift.set_letter(0, "IXYZ"[branch.label.first]);
    shift.set_letter(1, "IXYZ"[branch.label.second]);
    const double overlap =
        mqc::fidelity(branch.state, mqc::apply_pauli(shift, reference));

    std::string key;
    for (size_t i = 0; i < forced.size(); ++i) {
      key += fmt::format("{}{:+d}", i ? " " : "", forced[i]);
    }
    table += fmt::format("{} -> ({},{}) {:.12f}\n", key, branch.label.first,
                         branch.label.second, overlap);
    rows.push_back(nlohmann::json{{"forced", forced},
                                  {"k", branch.label.first},
                                  {"l", branch.label.second},
                                  {"overlap", overlap}});
  }
  emit(cfg, cfg.json ? rows.dump(2) : table);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"measurement-only compilation and simulation toolkit"};
  app.require_subcommand(1);

  RunConfig cfg;
  auto add_common = [&](CLI::App* sub, bool needs_circuit) {
    if (needs_circuit) {
      sub->add_option("circuit", cfg.circuit_path, "circuit file")->required();
      sub->add_option("--set", cfg.set_name, "universal set: s0|s1|s2|s3");
      sub->add_option("--theta", cfg.theta, "rotation angle for s1/s2");
      sub->add_option("--mode", cfg.mode, "correction handling: frame|literal");
    }
    sub->add_option("--seed", cfg.seed, "rng seed");
    sub->add_option("--out", cfg.out_path, "output file (default stdout)");
    sub->add_flag("--json", cfg.json, "machine-readable output");
  };

  CLI::App* compile = app.add_subcommand("compile", "compile a circuit to measurements");
  add_common(compile, true);

  CLI::App* simulate = app.add_subcommand("simulate", "compile and run a circuit");
  add_common(simulate, true);
  simulate->add_option("--force", cfg.forced, "forced outcome labels")->delimiter(',');
  simulate->add_option("--input", cfg.input_bits, "basis-state input bits");

  CLI::App* verify = app.add_subcommand("verify", "check program/circuit equivalence");
  add_common(verify, true);
  verify->add_option("--trials", cfg.trials, "random-input trials");
  verify->add_flag("--inject-fault", cfg.inject_fault, "corrupt one step (negative control)");

  CLI::App* stats = app.add_subcommand("stats", "gadget retry statistics");
  add_common(stats, false);
  stats->add_option("--gadget", cfg.gadget, "gadget: 1q|2q|bu");
  stats->add_option("--trials", cfg.trials, "Monte Carlo trials");

  CLI::App* acn = app.add_subcommand("acn", "enumerate ancilla preparation branches");
  add_common(acn, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (compile->parsed()) return cmd_compile(cfg);
    if (simulate->parsed()) return cmd_simulate(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    if (stats->parsed()) return cmd_stats(cfg);
    if (acn->parsed()) return cmd_acn(cfg);
  } catch (const mqc::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const mqc::CompileError& e) {
    std::cerr << "compile error: " << e.what() << "\n";
    return kExitSemantic;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSemantic;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
