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

#ifndef DEFECTWALK_PROPAGATOR_HPP
#define DEFECTWALK_PROPAGATOR_HPP

#include <vector>

#include "defectwalk/lattice.hpp"
#include "defectwalk/quadrature.hpp"
#include "defectwalk/spectral.hpp"

namespace defectwalk {

// Spectral evolutions drifting further than this from unit norm are rejected.
inline constexpr double kMaxNormDeviation = 1e-6;

struct PropagatorReport {
  // | ||psi(t)||^2 - ||psi(0)||^2 |
  double norm_deviation = 0.0;
  // sum_b |<psi_b|psi(0)>|^2
  double bound_weight = 0.0;
  double runtime_seconds = 0.0;
};

struct SpectralEvolution {
  NodeState state;
  PropagatorReport report;
};

// exp(-iHt) psi0 on the infinite line, evaluated on `window`, from the
// traveling-mode integral (Gauss-Legendre in k) plus the exact bound-state
// sum. Accumulation order is fixed: ascending k, then ascending bound energy.
//
// Throws DisconnectedDefectError if |gamma + beta| <= kDisconnectTolerance,
// WindowError if the window radius is below the light cone for t, and
// AccuracyError if the norm drifts by more than kMaxNormDeviation.
SpectralEvolution evolve_spectral(const NodeState& psi0, double t,
                                  const DefectLineParams& params,
                                  const QuadratureSpec& quad,
                                  const LatticeWindow& window);

// Single amplitude <j| exp(-iHt) |psi0> from the spectral representation.
Complex spectral_amplitude(const NodeState& psi0, int j, double t,
                           const DefectLineParams& params,
                           const QuadratureSpec& quad);

// Full eigendecomposition of the hard-wall truncated Hamiltonian. One
// decomposition serves any number of evolution times.
class OracleEigensystem {
 public:
  OracleEigensystem(const DefectLineParams& params, const LatticeWindow& window);

  const LatticeWindow& window() const { return window_; }
  const std::vector<double>& eigenvalues() const { return eigenvalues_; }
  // Component `row` of eigenvector `col`.
  double eigenvector(std::size_t row, std::size_t col) const {
    return eigenvectors_[col * window_.size() + row];
  }

  // Throws WindowError if psi0 does not fit in the window or the window is
  // narrower than the light cone for t.
  NodeState evolve(const NodeState& psi0, double t) const;

 private:
  DefectLineParams params_;
  LatticeWindow window_;
  std::vector<double> eigenvalues_;
  std::vector<double> eigenvectors_;  // column-major
};

NodeState evolve_oracle(const NodeState& psi0, double t,
                        const DefectLineParams& params,
                        const LatticeWindow& window);

// max_j |P_j(spectral) - P_j(oracle)| for a walk started on node j0.
double compare_backends(const DefectLineParams& params, int j0, double t,
                        const QuadratureSpec& quad, const LatticeWindow& window);

// max |(sum_b |b><b| + quadrature of odd + even projectors) - I| over nodes
// within window_radius of the defect.
double completeness_residual(const DefectLineParams& params,
                             const QuadratureSpec& quad, int window_radius);

// Overlaps evaluated as node sums over |j - j_d| <= window_radius, at every
// quadrature node.
struct OrthonormalityResiduals {
  double odd_even = 0.0;     // max |<o_k|e_k>|
  double odd_bound = 0.0;    // max |<o_k|b>|
  double even_bound = 0.0;   // max |<e_k|b>|
  double bound_bound = 0.0;  // max |<b|b'> - delta|
};

OrthonormalityResiduals orthonormality_residuals(const DefectLineParams& params,
                                                 const QuadratureSpec& quad,
                                                 int window_radius);

}  // namespace defectwalk

#endif  // DEFECTWALK_PROPAGATOR_HPP
