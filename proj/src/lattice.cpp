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

#include "defectwalk/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "defectwalk/errors.hpp"

namespace defectwalk {

DefectLineParams make_params(double epsilon, double gamma, double alpha,
                             double beta, int j_defect) {
  if (!std::isfinite(epsilon) || !std::isfinite(gamma) ||
      !std::isfinite(alpha) || !std::isfinite(beta)) {
    throw InvalidParameterError("model parameters must be finite");
  }
  if (gamma == 0.0) {
    throw InvalidParameterError("gamma must be nonzero");
  }
  return DefectLineParams{epsilon, gamma, alpha, beta, j_defect};
}

LatticeWindow::LatticeWindow(int center, int radius)
    : center_(center), radius_(radius) {
  if (radius < 0) {
    throw WindowError("window radius must be non-negative");
  }
}

std::size_t LatticeWindow::offset(int j) const {
  if (!contains(j)) {
    throw WindowError("node " + std::to_string(j) + " outside window [" +
                      std::to_string(first()) + ", " +
                      std::to_string(last()) + "]");
  }
  return static_cast<std::size_t>(j - first());
}

std::vector<Complex> TridiagonalHamiltonian::apply(
    std::span<const Complex> v) const {
  const std::size_t n = diag.size();
  std::vector<Complex> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    Complex acc = diag[i] * v[i];
    if (i > 0) acc += offdiag[i - 1] * v[i - 1];
    if (i + 1 < n) acc += offdiag[i] * v[i + 1];
    out[i] = acc;
  }
  return out;
}

double TridiagonalHamiltonian::expectation(std::span<const Complex> v) const {
  const auto hv = apply(v);
  Complex acc{};
  for (std::size_t i = 0; i < hv.size(); ++i) acc += std::conj(v[i]) * hv[i];
  return acc.real();
}

TridiagonalHamiltonian build_hamiltonian(const DefectLineParams& params,
                                         const LatticeWindow& window) {
  const int jd = params.j_defect;
  if (jd - 2 < window.first() || jd + 2 > window.last()) {
    throw WindowError("window must contain the defect node with two nodes of "
                      "margin on each side");
  }
  const std::size_t n = window.size();
  TridiagonalHamiltonian h{window, std::vector<double>(n, params.epsilon),
                           std::vector<double>(n - 1, -params.gamma)};
  const std::size_t d = window.offset(jd);
  h.diag[d] += params.alpha;
  h.offdiag[d - 1] = -params.defect_hopping();
  h.offdiag[d] = -params.defect_hopping();
  return h;
}

Band band_interval(const DefectLineParams& params) {
  const double half_width = 2.0 * std::abs(params.gamma);
  return Band{params.epsilon - half_width, params.epsilon + half_width};
}

int light_cone_radius(const DefectLineParams& params, double t, int buffer) {
  if (t < 0.0 || buffer < 0) {
    throw DomainError("light cone needs t >= 0 and buffer >= 0");
  }
  const double reach =
      2.0 * (std::abs(params.gamma) + std::abs(params.beta)) * t;
  // Shave off accumulated rounding so exact products do not round up.
  return static_cast<int>(std::ceil(reach * (1.0 - 1e-12))) + buffer;
}

LatticeWindow evolution_window(const DefectLineParams& params, int j0, double t,
                               int buffer) {
  const int cone = light_cone_radius(params, t, buffer);
  const int defect_reach = std::abs(params.j_defect - j0) + 2;
  return LatticeWindow(j0, std::max(cone, defect_reach));
}

double NodeState::norm_squared() const {
  double acc = 0.0;
  for (const auto& a : amplitudes) acc += std::norm(a);
  return acc;
}

NodeState basis_state(int j0, const LatticeWindow& window) {
  NodeState s{window, std::vector<Complex>(window.size())};
  s.amplitudes[window.offset(j0)] = 1.0;
  return s;
}

}  // namespace defectwalk
