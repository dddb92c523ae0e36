// Copyright 2026 The defectwalk Authors.
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

#include "defectwalk/propagator.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <utility>

#include "defectwalk/errors.hpp"

namespace defectwalk {

namespace {

struct SupportEntry {
  int node;
  Complex amplitude;
};

std::vector<SupportEntry> support_of(const NodeState& psi) {
  std::vector<SupportEntry> out;
  for (std::size_t i = 0; i < psi.amplitudes.size(); ++i) {
    if (psi.amplitudes[i] != Complex{}) {
      out.push_back({psi.window.node(i), psi.amplitudes[i]});
    }
  }
  return out;
}

void require_light_cone(const DefectLineParams& params,
                        const LatticeWindow& window, double t) {
  const int needed = light_cone_radius(params, t, kDefaultBuffer);
  if (window.radius() < needed) {
    throw WindowError("window radius " + std::to_string(window.radius()) +
                      " is inside the light cone radius " +
                      std::to_string(needed));
  }
}

Complex phase(double lambda, double t) {
  return std::polar(1.0, -lambda * t);
}

// <mode|psi0> over the finite support.
Complex project(const TravelingMode& mode,
                const std::vector<SupportEntry>& support) {
  Complex acc{};
  for (const auto& s : support) acc += std::conj(mode.amplitude(s.node)) * s.amplitude;
  return acc;
}

double project(const BoundState& b, const DefectLineParams& params,
               const std::vector<SupportEntry>& support, Complex* out) {
  Complex acc{};
  for (const auto& s : support) acc += bound_amplitude(b, s.node, params) * s.amplitude;
  *out = acc;
  return std::norm(acc);
}

void require_connected(const DefectLineParams& params) {
  if (defect_disconnected(params)) {
    throw DisconnectedDefectError(
        "spectral propagator unavailable for a disconnected defect; use the "
        "oracle");
  }
}

}  // namespace

SpectralEvolution evolve_spectral(const NodeState& psi0, double t,
                                  const DefectLineParams& params,
                                  const QuadratureSpec& quad,
                                  const LatticeWindow& window) {
  const auto start = std::chrono::steady_clock::now();
  require_connected(params);
  require_light_cone(params, window, t);

  const auto support = support_of(psi0);
  const auto rule = quad.rule();
  const auto bounds = bound_states(params);

  std::vector<Complex> out(window.size());
  for (std::size_t i = 0; i < rule->nodes.size(); ++i) {
    const double k = rule->nodes[i];
    const TravelingMode odd(k, Parity::kOdd, params);
    const TravelingMode even(k, Parity::kEven, params);
    const Complex c = rule->weights[i] * phase(odd.lambda(), t);
    const Complex p_odd = c * project(odd, support);
    const Complex p_even = c * project(even, support);
    for (std::size_t n = 0; n < out.size(); ++n) {
      const int j = window.node(n);
      out[n] += odd.amplitude(j) * p_odd + even.amplitude(j) * p_even;
    }
  }

  PropagatorReport report;
  for (const auto& b : bounds) {
    Complex proj;
    report.bound_weight += project(b, params, support, &proj);
    const Complex c = phase(b.lambda, t) * proj;
    for (std::size_t n = 0; n < out.size(); ++n) {
      out[n] += bound_amplitude(b, window.node(n), params) * c;
    }
  }

  SpectralEvolution result{NodeState{window, std::move(out)}, report};
  result.report.norm_deviation =
      std::abs(result.state.norm_squared() - psi0.norm_squared());
  result.report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (result.report.norm_deviation > kMaxNormDeviation) {
    throw AccuracyError("spectral evolution lost norm: deviation " +
                        std::to_string(result.report.norm_deviation));
  }
  return result;
}

Complex spectral_amplitude(const NodeState& psi0, int j, double t,
                           const DefectLineParams& params,
                           const QuadratureSpec& quad) {
  require_connected(params);
  const auto support = support_of(psi0);
  const auto rule = quad.rule();
  Complex acc{};
  for (std::size_t i = 0; i < rule->nodes.size(); ++i) {
    const double k = rule->nodes[i];
    const TravelingMode odd(k, Parity::kOdd, params);
    const TravelingMode even(k, Parity::kEven, params);
    acc += rule->weights[i] * phase(odd.lambda(), t) *
           (odd.amplitude(j) * project(odd, support) +
            even.amplitude(j) * project(even, support));
  }
  for (const auto& b : bound_states(params)) {
    Complex proj;
    project(b, params, support, &proj);
    acc += phase(b.lambda, t) * bound_amplitude(b, j, params) * proj;
  }
  return acc;
}

OracleEigensystem::OracleEigensystem(const DefectLineParams& params,
                                     const LatticeWindow& window)
    : params_(params), window_(window) {
  const auto h = build_hamiltonian(params, window);
  const Eigen::Index n = static_cast<Eigen::Index>(h.diag.size());
  const Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(h.diag.data(), n);
  const Eigen::VectorXd sub =
      Eigen::Map<const Eigen::VectorXd>(h.offdiag.data(), n - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw AccuracyError("tridiagonal eigensolver did not converge");
  }
  eigenvalues_.assign(solver.eigenvalues().data(),
                      solver.eigenvalues().data() + n);
  eigenvectors_.assign(solver.eigenvectors().data(),
                       solver.eigenvectors().data() + n * n);
}

NodeState OracleEigensystem::evolve(const NodeState& psi0, double t) const {
  require_light_cone(params_, window_, t);
  const std::size_t n = window_.size();
  const auto support = support_of(psi0);
  std::vector<std::pair<std::size_t, Complex>> local;
  local.reserve(support.size());
  for (const auto& s : support) local.emplace_back(window_.offset(s.node), s.amplitude);

  // Coefficients in the eigenbasis, advanced by their phases.
  std::vector<Complex> coeff(n);
  for (std::size_t col = 0; col < n; ++col) {
    Complex acc{};
    for (const auto& [row, a] : local) acc += eigenvector(row, col) * a;
    coeff[col] = phase(eigenvalues_[col], t) * acc;
  }
  std::vector<Complex> out(n);
  for (std::size_t col = 0; col < n; ++col) {
    const Complex c = coeff[col];
    const double* v = eigenvectors_.data() + col * n;
    for (std::size_t row = 0; row < n; ++row) out[row] += v[row] * c;
  }
  return NodeState{window_, std::move(out)};
}

NodeState evolve_oracle(const NodeState& psi0, double t,
                        const DefectLineParams& params,
                        const LatticeWindow& window) {
  require_light_cone(params, window, t);
  return OracleEigensystem(params, window).evolve(psi0, t);
}

double compare_backends(const DefectLineParams& params, int j0, double t,
                        const QuadratureSpec& quad, const LatticeWindow& window) {
  const NodeState psi0 = basis_state(j0, window);
  const auto spectral = evolve_spectral(psi0, t, params, quad, window);
  const auto oracle = evolve_oracle(psi0, t, params, window);
  double worst = 0.0;
  for (std::size_t i = 0; i < window.size(); ++i) {
    worst = std::max(worst, std::abs(std::norm(spectral.state.amplitudes[i]) -
                                     std::norm(oracle.amplitudes[i])));
  }
  return worst;
}

double completeness_residual(const DefectLineParams& params,
                             const QuadratureSpec& quad, int window_radius) {
  require_connected(params);
  const int jd = params.j_defect;
  const std::size_t n = 2 * static_cast<std::size_t>(window_radius) + 1;
  const int first = jd - window_radius;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  Eigen::VectorXcd odd(n);
  Eigen::VectorXcd even(n);

  const auto rule = quad.rule();
  for (std::size_t i = 0; i < rule->nodes.size(); ++i) {
    const TravelingMode mo(rule->nodes[i], Parity::kOdd, params);
    const TravelingMode me(rule->nodes[i], Parity::kEven, params);
    for (std::size_t r = 0; r < n; ++r) {
      odd[r] = mo.amplitude(first + static_cast<int>(r));
      even[r] = me.amplitude(first + static_cast<int>(r));
    }
    const double w = rule->weights[i];
    m.noalias() += w * (odd * odd.adjoint() + even * even.adjoint());
  }
  for (const auto& b : bound_states(params)) {
    Eigen::VectorXd v(n);
    for (std::size_t r = 0; r < n; ++r) {
      v[r] = bound_amplitude(b, first + static_cast<int>(r), params);
    }
    m += (v * v.transpose()).cast<Complex>();
  }
  m -= Eigen::MatrixXcd::Identity(n, n);
  return m.cwiseAbs().maxCoeff();
}

OrthonormalityResiduals orthonormality_residuals(const DefectLineParams& params,
                                                 const QuadratureSpec& quad,
                                                 int window_radius) {
  require_connected(params);
  const int jd = params.j_defect;
  const auto bounds = bound_states(params);
  OrthonormalityResiduals res;

  auto bound_vec = [&](const BoundState& b) {
    std::vector<double> v;
    for (int j = jd - window_radius; j <= jd + window_radius; ++j) {
      v.push_back(bound_amplitude(b, j, params));
    }
    return v;
  };
  std::vector<std::vector<double>> bvecs;
  for (const auto& b : bounds) bvecs.push_back(bound_vec(b));

  for (std::size_t a = 0; a < bvecs.size(); ++a) {
    for (std::size_t c = 0; c < bvecs.size(); ++c) {
      double dot = 0.0;
      for (std::size_t r = 0; r < bvecs[a].size(); ++r) dot += bvecs[a][r] * bvecs[c][r];
      res.bound_bound = std::max(res.bound_bound, std::abs(dot - (a == c ? 1.0 : 0.0)));
    }
  }

  const auto rule = quad.rule();
  for (double k : rule->nodes) {
    const TravelingMode mo(k, Parity::kOdd, params);
    const TravelingMode me(k, Parity::kEven, params);
    Complex oe{};
    std::vector<Complex> ob(bvecs.size());
    std::vector<Complex> eb(bvecs.size());
    for (int j = jd - window_radius; j <= jd + window_radius; ++j) {
      const Complex o = std::conj(mo.amplitude(j));
      const Complex e = me.amplitude(j);
      oe += o * e;
      const std::size_t r = static_cast<std::size_t>(j - jd + window_radius);
      for (std::size_t b = 0; b < bvecs.size(); ++b) {
        ob[b] += o * bvecs[b][r];
        eb[b] += std::conj(e) * bvecs[b][r];
      }
    }
    res.odd_even = std::max(res.odd_even, std::abs(oe));
    for (std::size_t b = 0; b < bvecs.size(); ++b) {
      res.odd_bound = std::max(res.odd_bound, std::abs(ob[b]));
      res.even_bound = std::max(res.even_bound, std::abs(eb[b]));
    }
  }
  return res;
}

}  // namespace defectwalk
