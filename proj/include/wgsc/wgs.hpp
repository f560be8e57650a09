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

// Weighted-graph data model and construction of weighted graph states from
// |+>^N via controlled-phase gates.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "wgsc/core.hpp"
#include "wgsc/qsim.hpp"

namespace wgsc {

template <typename Real = double>
struct WeightedEdge {
  int a = 0;
  int b = 0;
  Real weight = 0;  // phase angle in radians, normalized to (-pi, pi]
};

// Folds an angle into (-pi, pi]. In-range values pass through unchanged.
template <typename Real>
Real normalize_weight(Real w) {
  if (w > Real(kPi) || w <= -Real(kPi)) {
    w = std::fmod(w + Real(kPi), Real(2 * kPi));
    if (w <= Real(0)) w += Real(2 * kPi);
    w -= Real(kPi);
  }
  return w;
}

template <typename Real = double>
struct WeightedGraph {
  int num_vertices = 0;
  std::vector<WeightedEdge<Real>> edges;

  WeightedGraph() = default;
  explicit WeightedGraph(int n) : num_vertices(n) { validate(); }
  WeightedGraph(int n, std::vector<WeightedEdge<Real>> e)
      : num_vertices(n), edges(std::move(e)) {
    for (auto& edge : edges) edge.weight = normalize_weight(edge.weight);
    validate();
  }

  void add_edge(int a, int b, Real weight) {
    edges.push_back({a, b, normalize_weight(weight)});
    validate();
  }

  void validate() const {
    if (num_vertices < 1) {
      throw std::invalid_argument("WeightedGraph: num_vertices must be >= 1");
    }
    std::set<std::pair<int, int>> seen;
    for (const auto& e : edges) {
      if (e.a < 1 || e.a > num_vertices || e.b < 1 || e.b > num_vertices) {
        throw std::invalid_argument("WeightedGraph: edge (" + std::to_string(e.a) + ", " +
                                    std::to_string(e.b) + ") references a missing vertex");
      }
      if (e.a == e.b) {
        throw std::invalid_argument("WeightedGraph: self-loop at vertex " +
                                    std::to_string(e.a));
      }
      const auto key = std::minmax(e.a, e.b);
      if (!seen.insert(key).second) {
        throw std::invalid_argument("WeightedGraph: duplicate edge (" +
                                    std::to_string(key.first) + ", " +
                                    std::to_string(key.second) + ")");
      }
    }
  }
};

// A 1D chain with 2n+1 qubits and uniform weight phi; n is the GHZ parameter.
template <typename Real = double>
struct ChainSpec {
  int n = 0;
  Real phi = 0;

  ChainSpec() = default;
  ChainSpec(int n_in, Real phi_in) : n(n_in), phi(phi_in) {
    if (n < 0) throw std::invalid_argument("ChainSpec: n must be >= 0");
  }

  int num_qubits() const { return 2 * n + 1; }
};

// The path graph 1-2-...-(2n+1) with all weights phi.
template <typename Real>
WeightedGraph<Real> path_graph(const ChainSpec<Real>& spec) {
  WeightedGraph<Real> g;
  g.num_vertices = spec.num_qubits();
  for (int v = 1; v < g.num_vertices; ++v) {
    g.edges.push_back({v, v + 1, normalize_weight(spec.phi)});
  }
  g.validate();
  return g;
}

// prod_{(a,b) in E} CP_{a,b}(phi_{a,b}) |+>^N. The CP gates commute, so the
// result is independent of edge order.
template <typename Real>
PureState<Real> build_state(const WeightedGraph<Real>& graph) {
  graph.validate();
  PureState<Real> psi = PureState<Real>::plus_state(graph.num_vertices);
  for (const auto& e : graph.edges) {
    psi = apply_controlled_phase(psi, e.a, e.b, e.weight);
  }
  return psi;
}

template <typename Real>
PureState<Real> build_uniform_chain(const ChainSpec<Real>& spec) {
  return build_state(path_graph(spec));
}

// Heterogeneous variant: one NoiseSpec per qubit, applied to |+><+|^N before
// the CP gates.
template <typename Real>
DensityMatrix<Real> build_noisy_state(const WeightedGraph<Real>& graph,
                                      std::span<const NoiseSpec<Real>> per_qubit) {
  graph.validate();
  if (static_cast<int>(per_qubit.size()) != graph.num_vertices) {
    throw std::invalid_argument("build_noisy_state: need one NoiseSpec per vertex");
  }
  DensityMatrix<Real> rho = to_density(PureState<Real>::plus_state(graph.num_vertices));
  for (int q = 1; q <= graph.num_vertices; ++q) {
    rho = apply_channel(rho, q, per_qubit[q - 1]);
  }
  for (const auto& e : graph.edges) {
    rho = apply_controlled_phase(rho, e.a, e.b, e.weight);
  }
  return rho;
}

// Applies the same channel to every qubit of |+><+|^N, then all CP gates.
template <typename Real>
DensityMatrix<Real> build_noisy_state(const WeightedGraph<Real>& graph,
                                      const NoiseSpec<Real>& noise) {
  const std::vector<NoiseSpec<Real>> per_qubit(graph.num_vertices, noise);
  return build_noisy_state(graph, std::span<const NoiseSpec<Real>>(per_qubit));
}

// ---------------------------------------------------------------------------
// Graph text format
//
//   line 1:          vertices <N>
//   following lines: edge <a> <b> <weight>
//
// where <weight> is a decimal radian value or a pi-multiple literal such as
// 0.8pi. Blank lines and lines starting with '#' are ignored.
// ---------------------------------------------------------------------------

class GraphParseError : public std::runtime_error {
 public:
  GraphParseError(int line, const std::string& reason)
      : std::runtime_error("graph parse error at line " + std::to_string(line) + ": " +
                           reason),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

inline WeightedGraph<double> parse_graph(std::istream& in) {
  WeightedGraph<double> g;
  bool have_vertices = false;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (tag == "vertices") {
      if (have_vertices) throw GraphParseError(line_no, "duplicate 'vertices' line");
      int n = 0;
      if (!(ls >> n)) throw GraphParseError(line_no, "expected 'vertices <N>'");
      if (n < 1) throw GraphParseError(line_no, "vertex count must be >= 1");
      g.num_vertices = n;
      have_vertices = true;
    } else if (tag == "edge") {
      if (!have_vertices) {
        throw GraphParseError(line_no, "'edge' before 'vertices' line");
      }
      int a = 0, b = 0;
      std::string weight_text;
      if (!(ls >> a >> b >> weight_text)) {
        throw GraphParseError(line_no, "expected 'edge <a> <b> <weight>'");
      }
      double w = 0;
      try {
        w = parse_angle(weight_text);
      } catch (const std::invalid_argument& err) {
        throw GraphParseError(line_no, err.what());
      }
      g.edges.push_back({a, b, normalize_weight(w)});
      try {
        g.validate();
      } catch (const std::invalid_argument& err) {
        throw GraphParseError(line_no, err.what());
      }
    } else {
      throw GraphParseError(line_no, "unknown directive '" + tag + "'");
    }
  }
  if (!have_vertices) throw GraphParseError(line_no, "missing 'vertices' line");
  return g;
}

inline WeightedGraph<double> parse_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file: " + path);
  return parse_graph(in);
}

inline void write_graph(std::ostream& out, const WeightedGraph<double>& g) {
  out << "vertices " << g.num_vertices << "\n";
  char buf[64];
  for (const auto& e : g.edges) {
    std::snprintf(buf, sizeof buf, "%.17g", e.weight);
    out << "edge " << e.a << " " << e.b << " " << buf << "\n";
  }
}

}  // namespace wgsc
