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

// Sweep engine and figure presets: deterministic parameter grids evaluated
// cell-by-cell (optionally in parallel), emitted as CSV tables. Also hosts
// the closed-form verification suite behind the CLI's `verify` subcommand.

#pragma once

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "wgsc/core.hpp"
#include "wgsc/metrics.hpp"
#include "wgsc/optimize.hpp"
#include "wgsc/protocol.hpp"
#include "wgsc/qsim.hpp"
#include "wgsc/wgs.hpp"

namespace wgsc {

// ---------------------------------------------------------------------------
// Worker pool
// ---------------------------------------------------------------------------

// Worker count: WGSC_WORKERS when set, otherwise the available parallelism.
// Results never depend on this value: cells are written by index.
inline int worker_count() {
  if (const char* env = std::getenv("WGSC_WORKERS")) {
    const int w = std::atoi(env);
    if (w >= 1) return w;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

template <typename F>
void parallel_for(std::size_t count, F&& body) {
  const int workers = std::min<std::size_t>(worker_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        body(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

// ---------------------------------------------------------------------------
// Sweep configuration
// ---------------------------------------------------------------------------

enum class Preset { fig2, fig3a, fig3b, fig3c, fig4a, fig4b, fig4c, fig5a, fig5b, fig5c, custom };

inline const char* to_string(Preset p) {
  switch (p) {
    case Preset::fig2: return "fig2";
    case Preset::fig3a: return "fig3a";
    case Preset::fig3b: return "fig3b";
    case Preset::fig3c: return "fig3c";
    case Preset::fig4a: return "fig4a";
    case Preset::fig4b: return "fig4b";
    case Preset::fig4c: return "fig4c";
    case Preset::fig5a: return "fig5a";
    case Preset::fig5b: return "fig5b";
    case Preset::fig5c: return "fig5c";
    case Preset::custom: return "custom";
  }
  return "?";
}

inline Preset parse_preset(const std::string& name) {
  for (Preset p : {Preset::fig2, Preset::fig3a, Preset::fig3b, Preset::fig3c,
                   Preset::fig4a, Preset::fig4b, Preset::fig4c, Preset::fig5a,
                   Preset::fig5b, Preset::fig5c, Preset::custom}) {
    if (name == to_string(p)) return p;
  }
  throw std::invalid_argument("unknown preset '" + name + "'");
}

struct Axis {
  std::string name;
  double start = 0;
  double stop = 0;
  int count = 0;

  double value(int i) const {
    return start + (stop - start) * static_cast<double>(i) / (count - 1);
  }

  void validate() const {
    if (count < 2) throw std::invalid_argument("axis '" + name + "': count must be >= 2");
  }
};

struct SweepConfig {
  Preset preset = Preset::custom;
  std::vector<Axis> axes;  // empty = preset defaults; at most 2
  std::optional<NoiseSpec<double>> noise;
  int n = 1;  // chain parameter for custom 1-axis sweeps
  std::string out_path;
  std::string svg_path;  // empty = no SVG
};

struct Table {
  std::vector<std::string> columns;
  std::vector<Axis> axes;
  std::vector<std::vector<double>> rows;  // row-major grid order
};

inline std::vector<Axis> default_axes(Preset preset) {
  switch (preset) {
    case Preset::fig2:
      return {{"phi", 0.0, kPi, 101}};
    case Preset::fig3a:
      return {{"phi12", -kPi, kPi, 51}, {"phi23", -kPi, kPi, 51}};
    case Preset::fig3b:
      return {{"phi12", 0.0, kPi, 51}, {"phi23", 0.0, kPi, 51}};
    case Preset::fig3c:
      return {{"phi23", 0.6 * kPi, kPi, 101}};
    case Preset::fig4a:
    case Preset::fig4b:
    case Preset::fig4c:
    case Preset::fig5a:
    case Preset::fig5b:
    case Preset::fig5c:
      return {{"phi", 0.0, kPi, 51}, {"p", 0.0, 0.1, 51}};
    case Preset::custom:
      return {};
  }
  return {};
}

// The column an SVG heatmap of this preset colors by.
inline std::string heatmap_column(Preset preset) {
  switch (preset) {
    case Preset::fig3a: return "concurrence";
    case Preset::fig3b: return "ps_best_branch";
    case Preset::fig4a:
    case Preset::fig5a: return "concurrence";
    case Preset::fig4b:
    case Preset::fig5b: return "ps";
    case Preset::fig4c:
    case Preset::fig5c: return "delta_c";
    default: return "";
  }
}

// ---------------------------------------------------------------------------
// Preset tables
// ---------------------------------------------------------------------------

namespace detail {

inline WeightedGraph<double> three_qubit_graph(double phi12, double phi23) {
  return WeightedGraph<double>(3, {{1, 2, phi12}, {2, 3, phi23}});
}

inline Table fig2_table(const Axis& axis, int n) {
  Table table;
  table.columns = {"phi", "ps", "baseline"};
  table.axes = {axis};
  table.rows.resize(axis.count);
  parallel_for(axis.count, [&](std::size_t i) {
    const double phi = axis.value(static_cast<int>(i));
    table.rows[i] = {phi, success_probability(n, phi), 1.0 / 32.0};
  });
  return table;
}

// Shared by fig3a and fig3b: optimized concurrence over a (phi12, phi23)
// grid, with both success-probability definitions as separate columns.
inline Table fig3ab_table(const Axis& ax1, const Axis& ax2) {
  Table table;
  table.columns = {"phi12", "phi23", "concurrence", "ps_minus_branch", "ps_best_branch"};
  table.axes = {ax1, ax2};
  table.rows.resize(static_cast<std::size_t>(ax1.count) * ax2.count);
  parallel_for(table.rows.size(), [&](std::size_t cell) {
    const int i = static_cast<int>(cell) / ax2.count;
    const int j = static_cast<int>(cell) % ax2.count;
    const double phi12 = ax1.value(i);
    const double phi23 = ax2.value(j);
    const PureState<double> state = build_state(three_qubit_graph(phi12, phi23));
    const auto result = optimize_basis(state);
    const auto at_best = evaluate_middle_measurement(state, result.best_basis);
    table.rows[cell] = {phi12, phi23, result.best_concurrence,
                        at_best.probability_minus, result.success_probability};
  });
  return table;
}

inline Table fig3c_table(const Axis& axis) {
  const double phi12 = 0.8 * kPi;
  Table table;
  table.columns = {"phi23", "concurrence", "reference_concurrence", "delta_c"};
  table.axes = {axis};
  table.rows.resize(axis.count);
  const NoiseSpec<double> noiseless(NoiseKind::depolarizing, 0.0);
  parallel_for(axis.count, [&](std::size_t i) {
    const double phi23 = axis.value(static_cast<int>(i));
    const PureState<double> state = build_state(three_qubit_graph(phi12, phi23));
    const double c = optimize_basis(state).best_concurrence;
    const double c_ref = reference_concurrence(std::max(phi12, phi23), noiseless);
    table.rows[i] = {phi23, c, c_ref, concurrence_advantage(c, c_ref)};
  });
  return table;
}

inline Table noisy_sweep_table(const Axis& ax_phi, const Axis& ax_p, NoiseKind kind) {
  Table table;
  table.columns = {"phi", "p", "concurrence", "ps", "reference_concurrence", "delta_c"};
  table.axes = {ax_phi, ax_p};
  table.rows.resize(static_cast<std::size_t>(ax_phi.count) * ax_p.count);
  parallel_for(table.rows.size(), [&](std::size_t cell) {
    const int i = static_cast<int>(cell) / ax_p.count;
    const int j = static_cast<int>(cell) % ax_p.count;
    const double phi = ax_phi.value(i);
    const double p = ax_p.value(j);
    const NoiseSpec<double> noise(kind, p);
    const DensityMatrix<double> state =
        build_noisy_state(path_graph(ChainSpec<double>(1, phi)), noise);
    const auto result = optimize_basis(state);
    const double c_ref = reference_concurrence(phi, noise);
    table.rows[cell] = {phi,
                        p,
                        result.best_concurrence,
                        result.success_probability,
                        c_ref,
                        concurrence_advantage(result.best_concurrence, c_ref)};
  });
  return table;
}

inline void check_axis_names(const std::vector<Axis>& axes,
                             const std::vector<Axis>& defaults, Preset preset) {
  if (axes.size() != defaults.size()) {
    throw std::invalid_argument(std::string("preset ") + to_string(preset) + " expects " +
                                std::to_string(defaults.size()) + " axis/axes");
  }
  for (std::size_t i = 0; i < axes.size(); ++i) {
    if (axes[i].name != defaults[i].name) {
      throw std::invalid_argument(std::string("preset ") + to_string(preset) + " axis " +
                                  std::to_string(i + 1) + " must be '" +
                                  defaults[i].name + "'");
    }
    axes[i].validate();
  }
}

}  // namespace detail

// Builds the preset's table. Explicit axes override the default grids (the
// names must match); custom sweeps require explicit axes: a single `phi` axis
// yields the fig2-style closed-form table for chain parameter n, and a
// (`phi`, `p`) pair yields the fig4/fig5-style table with the configured
// noise kind.
inline Table run_preset(const SweepConfig& config) {
  std::vector<Axis> axes = config.axes.empty() ? default_axes(config.preset) : config.axes;
  for (const auto& axis : axes) axis.validate();

  switch (config.preset) {
    case Preset::fig2:
      detail::check_axis_names(axes, default_axes(config.preset), config.preset);
      return detail::fig2_table(axes[0], 2);
    case Preset::fig3a:
    case Preset::fig3b:
      detail::check_axis_names(axes, default_axes(config.preset), config.preset);
      return detail::fig3ab_table(axes[0], axes[1]);
    case Preset::fig3c:
      detail::check_axis_names(axes, default_axes(config.preset), config.preset);
      return detail::fig3c_table(axes[0]);
    case Preset::fig4a:
    case Preset::fig4b:
    case Preset::fig4c:
      detail::check_axis_names(axes, default_axes(config.preset), config.preset);
      return detail::noisy_sweep_table(axes[0], axes[1], NoiseKind::depolarizing);
    case Preset::fig5a:
    case Preset::fig5b:
    case Preset::fig5c:
      detail::check_axis_names(axes, default_axes(config.preset), config.preset);
      return detail::noisy_sweep_table(axes[0], axes[1], NoiseKind::dephasing);
    case Preset::custom:
      break;
  }

  if (axes.size() == 1 && axes[0].name == "phi") {
    return detail::fig2_table(axes[0], config.n);
  }
  if (axes.size() == 2 && axes[0].name == "phi" && axes[1].name == "p") {
    const NoiseKind kind = config.noise ? config.noise->kind : NoiseKind::depolarizing;
    return detail::noisy_sweep_table(axes[0], axes[1], kind);
  }
  throw std::invalid_argument(
      "custom sweep: expected a single 'phi' axis or a ('phi', 'p') axis pair");
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

inline std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline void emit_csv(const Table& table, std::ostream& out) {
  if (table.rows.empty()) throw std::invalid_argument("emit_csv: empty table");
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    out << (c ? "," : "") << table.columns[c];
  }
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << (c ? "," : "") << format_value(row[c]);
    }
    out << "\n";
  }
}

inline void emit_csv(const Table& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  emit_csv(table, out);
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path);
}

// ---------------------------------------------------------------------------
// Config file: one `key = value` per line, '#' comments.
// ---------------------------------------------------------------------------

class ConfigParseError : public std::runtime_error {
 public:
  ConfigParseError(int line, const std::string& reason)
      : std::runtime_error("config parse error at line " + std::to_string(line) + ": " +
                           reason),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

// Keys: preset, out, svg, n, noise_kind, noise_p, axis1, axis2.
// Axis values are "<name> <start> <stop> <count>"; angles accept pi literals.
inline SweepConfig parse_sweep_config(std::istream& in) {
  SweepConfig config;
  std::optional<NoiseKind> noise_kind;
  double noise_p = 0.0;
  Axis axis1, axis2;
  bool have_axis1 = false, have_axis2 = false;

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream probe(line);
    std::string key;
    if (!(probe >> key)) continue;

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigParseError(line_no, "expected 'key = value'");
    }
    std::istringstream key_stream(line.substr(0, eq));
    key_stream >> key;
    std::string value_str = line.substr(eq + 1);
    std::istringstream value(value_str);

    try {
      if (key == "preset") {
        std::string name;
        value >> name;
        config.preset = parse_preset(name);
      } else if (key == "out") {
        value >> config.out_path;
      } else if (key == "svg") {
        value >> config.svg_path;
      } else if (key == "n") {
        if (!(value >> config.n) || config.n < 0) {
          throw std::invalid_argument("n must be a nonnegative integer");
        }
      } else if (key == "noise_kind") {
        std::string name;
        value >> name;
        if (name == "depolarizing") {
          noise_kind = NoiseKind::depolarizing;
        } else if (name == "dephasing") {
          noise_kind = NoiseKind::dephasing;
        } else {
          throw std::invalid_argument("noise_kind must be depolarizing or dephasing");
        }
      } else if (key == "noise_p") {
        if (!(value >> noise_p)) throw std::invalid_argument("noise_p must be a number");
      } else if (key == "axis1" || key == "axis2") {
        Axis axis;
        std::string start_text, stop_text;
        if (!(value >> axis.name >> start_text >> stop_text >> axis.count)) {
          throw std::invalid_argument("expected '<name> <start> <stop> <count>'");
        }
        axis.start = parse_angle(start_text);
        axis.stop = parse_angle(stop_text);
        axis.validate();
        if (key == "axis1") {
          axis1 = axis;
          have_axis1 = true;
        } else {
          axis2 = axis;
          have_axis2 = true;
        }
      } else {
        throw std::invalid_argument("unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument& err) {
      throw ConfigParseError(line_no, err.what());
    }
  }

  if (have_axis2 && !have_axis1) {
    throw ConfigParseError(line_no, "axis2 given without axis1");
  }
  if (have_axis1) config.axes.push_back(axis1);
  if (have_axis2) config.axes.push_back(axis2);
  if (noise_kind) config.noise = NoiseSpec<double>(*noise_kind, noise_p);
  return config;
}

// ---------------------------------------------------------------------------
// Closed-form verification suite (the CLI `verify` subcommand)
// ---------------------------------------------------------------------------

namespace detail {

inline bool report_check(std::ostream& out, const std::string& name, bool ok,
                         const std::string& detail = "") {
  out << (ok ? "PASS " : "FAIL ") << name;
  if (!ok && !detail.empty()) out << "  (" << detail << ")";
  out << "\n";
  return ok;
}

}  // namespace detail

// Runs the closed-form oracle checks and prints one PASS/FAIL line each.
// Returns true when everything passed.
inline bool run_verification(std::ostream& out) {
  bool all_ok = true;
  char detail[160];

  // Eq. (7): simulated all-(-1) branch probability vs the closed form.
  {
    double worst = 0;
    for (int n = 1; n <= 4; ++n) {
      for (int k = 1; k <= 10; ++k) {
        const double phi = 0.1 * k * kPi;
        const auto chain = build_uniform_chain(ChainSpec<double>(n, phi));
        const auto branches = run_concentration(chain, protocol_bases(n, phi));
        worst = std::max(worst, std::abs(success_branch(branches).probability -
                                         success_probability(n, phi)));
      }
    }
    std::snprintf(detail, sizeof detail, "max deviation %.3g", worst);
    all_ok &= detail::report_check(out, "success-probability-closed-form", worst <= 1e-10,
                                   detail);
  }

  // Kraus pair: completeness over random phases, element-wise match of the
  // simulated n=1 branch maps.
  {
    std::mt19937_64 rng(20260810);
    std::uniform_real_distribution<double> dist(-kPi, kPi);
    double worst_completeness = 0;
    double worst_elementwise = 0;
    for (int trial = 0; trial < 100; ++trial) {
      const double phi = dist(rng);
      const auto pair = kraus_pair(phi);
      worst_completeness = std::max(worst_completeness, pair.completeness_error());

      const MeasurementBasis<double> basis = MeasurementBasis<double>::equatorial(phi);
      Matrix4c<double> simulated_plus = Matrix4c<double>::Zero();
      Matrix4c<double> simulated_minus = Matrix4c<double>::Zero();
      for (int b3 = 0; b3 < 2; ++b3) {
        for (int b1 = 0; b1 < 2; ++b1) {
          VectorXc<double> amps = VectorXc<double>::Zero(8);
          const double s = 1.0 / std::sqrt(2.0);
          amps(b1 + 4 * b3) = ComplexT<double>(s, 0);
          amps(b1 + 2 + 4 * b3) = ComplexT<double>(s, 0);
          PureState<double> input(3, std::move(amps));
          input = apply_controlled_phase(input, 1, 2, phi);
          input = apply_controlled_phase(input, 2, 3, phi);
          const auto branches = measure_and_remove(input, 2, basis);
          for (int k = 0; k < 2; ++k) {
            auto& target = k == 0 ? simulated_plus : simulated_minus;
            if (branches[k].post_state) {
              target.col(b1 + 2 * b3) = std::sqrt(branches[k].probability) *
                                        branches[k].post_state->amplitudes;
            }
          }
        }
      }
      worst_elementwise = std::max(
          worst_elementwise,
          std::max((simulated_plus - pair.k_plus).cwiseAbs().maxCoeff(),
                   (simulated_minus - pair.k_minus).cwiseAbs().maxCoeff()));
    }
    std::snprintf(detail, sizeof detail, "completeness %.3g, element-wise %.3g",
                  worst_completeness, worst_elementwise);
    all_ok &= detail::report_check(
        out, "kraus-closed-form", worst_completeness <= 1e-13 && worst_elementwise <= 1e-12,
        detail);
  }

  // Step-2 correction yields the GHZ state exactly.
  {
    double worst = 1;
    for (int n = 1; n <= 4; ++n) {
      for (int k = 1; k <= 10; ++k) {
        const double phi = 0.1 * k * kPi;
        const auto chain = build_uniform_chain(ChainSpec<double>(n, phi));
        const auto branches = run_concentration(chain, protocol_bases(n, phi));
        const auto corrected = with_correction(success_branch(branches), phi);
        worst = std::min(worst, ghz_orbit_fidelity(*corrected.post_state));
      }
    }
    std::snprintf(detail, sizeof detail, "min orbit fidelity %.12f", worst);
    all_ok &= detail::report_check(out, "ghz-extraction", worst >= 1 - 1e-10, detail);
  }

  // phi = pi: every branch correctable, total probability 1.
  {
    bool ok = true;
    for (int n = 1; n <= 3 && ok; ++n) {
      const auto branches = deterministic_cluster_conversion<double>(n);
      double total = 0;
      for (const auto& branch : branches) {
        total += branch.probability;
        ok &= branch.corrected &&
              fidelity(ghz_state<double>(n + 1), *branch.post_state) >= 1 - 1e-10;
      }
      ok &= std::abs(total - 1.0) <= 1e-12;
    }
    all_ok &= detail::report_check(out, "deterministic-cluster-conversion", ok);
  }

  // Werner states: C = max(0, (3w-1)/2).
  {
    double worst = 0;
    const PureState<double> bell = ghz_state<double>(2);
    for (double w : {0.0, 1.0 / 3.0, 0.6, 1.0}) {
      DensityMatrix<double> rho;
      rho.num_qubits = 2;
      rho.elements = w * to_density(bell).elements +
                     (1 - w) * MatrixXc<double>::Identity(4, 4) / 4.0;
      const double expected = std::max(0.0, (3 * w - 1) / 2);
      worst = std::max(worst, std::abs(concurrence(rho).value - expected));
    }
    std::snprintf(detail, sizeof detail, "max deviation %.3g", worst);
    all_ok &= detail::report_check(out, "werner-concurrence", worst <= 1e-10, detail);
  }

  // Reference concurrence at p = 0 equals |sin(phi/2)|.
  {
    double worst = 0;
    const NoiseSpec<double> noiseless(NoiseKind::depolarizing, 0.0);
    for (int k = 0; k < 100; ++k) {
      const double phi = kPi * (k + 1) / 100.0;
      worst = std::max(worst, std::abs(reference_concurrence(phi, noiseless) -
                                       std::abs(std::sin(phi / 2))));
    }
    std::snprintf(detail, sizeof detail, "max deviation %.3g", worst);
    all_ok &= detail::report_check(out, "reference-concurrence-closed-form",
                                   worst <= 1e-12, detail);
  }

  // Channel identities: full depolarizing mixes to I/2; the |0><0| diagonal.
  {
    DensityMatrix<double> zero;
    zero.num_qubits = 1;
    zero.elements = MatrixXc<double>::Zero(2, 2);
    zero.elements(0, 0) = 1;
    const double p = 0.3;
    const auto after = apply_channel(zero, 1, NoiseSpec<double>(NoiseKind::depolarizing, p));
    const auto mixed =
        apply_channel(zero, 1, NoiseSpec<double>(NoiseKind::depolarizing, 0.75));
    const bool ok =
        std::abs(after.elements(0, 0).real() - (1 - 2 * p / 3)) <= 1e-14 &&
        std::abs(after.elements(1, 1).real() - 2 * p / 3) <= 1e-14 &&
        (mixed.elements - MatrixXc<double>::Identity(2, 2) / 2).cwiseAbs().maxCoeff() <=
            1e-14;
    all_ok &= detail::report_check(out, "depolarizing-channel-algebra", ok);
  }

  // Optimizer recovers the protocol basis on uniform chains.
  {
    bool ok = true;
    for (double phi : {0.4 * kPi, 0.8 * kPi}) {
      const auto state = build_uniform_chain(ChainSpec<double>(1, phi));
      const auto result = optimize_basis(state);
      ok &= std::abs(result.best_concurrence - 1.0) <= 1e-6;
      ok &= result.best_basis.same_projectors(MeasurementBasis<double>::equatorial(phi),
                                              1e-4);
    }
    all_ok &= detail::report_check(out, "optimizer-uniform-chain", ok);
  }

  return all_ok;
}

}  // namespace wgsc
