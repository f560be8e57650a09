// Copyright 2026 The wgsc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end:
//   wgsc run    — one concentration run, branch-by-branch report
//   wgsc sweep  — figure presets and custom sweeps, CSV (+ optional SVG)
//   wgsc verify — closed-form oracle checks
// Exit codes: 0 success, 1 usage/config error, 2 verification failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "wgsc/harness.hpp"
#include "wgsc/metrics.hpp"
#include "wgsc/optimize.hpp"
#include "wgsc/protocol.hpp"
#include "wgsc/svg_heatmap.hpp"

namespace {

using namespace wgsc;

std::string angle_text(double radians) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g rad (%.6g pi)", radians, radians / kPi);
  return buf;
}

std::string outcome_text(const std::vector<int>& outcomes) {
  if (outcomes.empty()) return "(none)";
  std::string s;
  for (int o : outcomes) {
    if (!s.empty()) s += ' ';
    s += o > 0 ? "+1" : "-1";
  }
  return s;
}

template <typename StateT>
void print_branch_table(const std::vector<ProtocolOutcome<StateT>>& branches, int n) {
  const bool with_concurrence = n == 1;
  std::printf("%-8s%-*s%-18s%s\n", "branch", std::max(10, 3 * n + 2), "outcomes",
              "probability", with_concurrence ? "concurrence" : "");
  for (std::size_t b = 0; b < branches.size(); ++b) {
    const auto& branch = branches[b];
    std::printf("%-8zu%-*s%-18.12g", b, std::max(10, 3 * n + 2),
                outcome_text(branch.outcomes).c_str(), branch.probability);
    if (with_concurrence) {
      if (branch.post_state) {
        std::printf("%.12g", concurrence(*branch.post_state).value);
      } else {
        std::printf("n/a (null branch)");
      }
    }
    std::printf("\n");
  }
}

template <typename StateT>
int report_run(const StateT& state, int n, double phi) {
  const auto branches = run_concentration(state, protocol_bases(n, phi));
  std::printf("closed-form success probability P_s = %.12g\n", success_probability(n, phi));
  std::printf("simulated all-(-1) branch probability = %.12g\n\n",
              success_branch(branches).probability);
  print_branch_table(branches, n);

  const auto& success = success_branch(branches);
  if (!success.post_state) {
    std::printf("\nsuccess branch has vanishing probability; nothing to correct\n");
    return 0;
  }
  const auto corrected = with_correction(success, phi);
  std::printf("\nafter R_z[n(pi - phi)] on surviving qubit %d:\n", n + 1);
  std::printf("  GHZ fidelity (orbit under single-qubit Z) = %.12g\n",
              ghz_orbit_fidelity(*corrected.post_state));
  if (n == 1) {
    std::printf("  success-branch concurrence = %.12g\n",
                concurrence(*corrected.post_state).value);
  }
  return 0;
}

int cmd_run(int n, const std::string& phi_text, const std::string& noise_kind,
            double noise_p) {
  const double phi = parse_angle(phi_text);
  const int num_qubits = 2 * n + 1;
  std::printf("uniform chain: n=%d (%d qubits), phi = %s\n", n, num_qubits,
              angle_text(phi).c_str());

  if (noise_kind.empty()) {
    if (n > 5) {
      std::fprintf(stderr, "error: pure-state runs support n <= 5 (%d qubits max)\n",
                   kMaxQubits);
      return 1;
    }
    return report_run(build_uniform_chain(ChainSpec<double>(n, phi)), n, phi);
  }

  if (n > 2) {
    std::fprintf(stderr, "error: noisy density-matrix runs support n <= 2 (5 qubits)\n");
    return 1;
  }
  const NoiseKind kind =
      noise_kind == "dephasing" ? NoiseKind::dephasing : NoiseKind::depolarizing;
  const NoiseSpec<double> noise(kind, noise_p);
  std::printf("noise: %s, p = %.12g (applied to every qubit before the CP gates)\n",
              noise_kind.c_str(), noise_p);
  return report_run(build_noisy_state(path_graph(ChainSpec<double>(n, phi)), noise), n,
                    phi);
}

int cmd_sweep(const std::string& preset_name, const std::string& config_path,
              const std::string& out_path, const std::string& svg_path) {
  SweepConfig config;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) {
      std::fprintf(stderr, "error: cannot open config file '%s'\n", config_path.c_str());
      return 1;
    }
    config = parse_sweep_config(in);
  }
  if (!preset_name.empty()) config.preset = parse_preset(preset_name);
  if (!out_path.empty()) config.out_path = out_path;
  if (!svg_path.empty()) config.svg_path = svg_path;

  if (config.out_path.empty()) {
    std::fprintf(stderr, "error: no output path (--out or config 'out')\n");
    return 1;
  }

  const Table table = run_preset(config);
  emit_csv(table, config.out_path);
  std::printf("wrote %s (%zu rows)\n", config.out_path.c_str(), table.rows.size());

  if (!config.svg_path.empty()) {
    std::string column = heatmap_column(config.preset);
    if (column.empty()) column = "concurrence";
    emit_svg_heatmap(table, column, config.svg_path);
    std::printf("wrote %s (heatmap of '%s')\n", config.svg_path.c_str(), column.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GHZ extraction from 1D weighted graph states: simulation and sweeps"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run one concentration on a uniform chain");
  int n = 1;
  std::string phi_text = "0.8pi";
  std::string noise_kind;
  double noise_p = 0.0;
  run->add_option("--n", n, "Chain parameter (2n+1 qubits)")->check(CLI::NonNegativeNumber);
  run->add_option("--phi", phi_text, "Uniform edge weight (radians or e.g. 0.8pi)");
  run->add_option("--noise-kind", noise_kind, "depolarizing or dephasing")
      ->check(CLI::IsMember({"depolarizing", "dephasing"}));
  run->add_option("--noise-p", noise_p, "Error probability in [0, 1]")
      ->check(CLI::Range(0.0, 1.0));

  auto* sweep = app.add_subcommand("sweep", "Run a figure preset or a custom sweep");
  std::string preset_name, config_path, out_path, svg_path;
  auto* preset_opt = sweep->add_option("--preset", preset_name, "Preset name (fig2..fig5c)");
  auto* config_opt = sweep->add_option("--config", config_path, "Config file path");
  preset_opt->excludes(config_opt);
  sweep->add_option("--out", out_path, "CSV output path");
  sweep->add_option("--svg", svg_path, "SVG heatmap output path (2-axis tables only)");

  auto* verify = app.add_subcommand("verify", "Run the closed-form oracle suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run->parsed()) {
      if (noise_p > 0.0 && noise_kind.empty()) {
        std::fprintf(stderr, "error: --noise-p requires --noise-kind\n");
        return 1;
      }
      return cmd_run(n, phi_text, noise_kind, noise_p);
    }
    if (sweep->parsed()) {
      if (preset_name.empty() && config_path.empty()) {
        std::fprintf(stderr, "error: sweep needs --preset or --config\n");
        return 1;
      }
      return cmd_sweep(preset_name, config_path, out_path, svg_path);
    }
    if (verify->parsed()) {
      return run_verification(std::cout) ? 0 : 2;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
