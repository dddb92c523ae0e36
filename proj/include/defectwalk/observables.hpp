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

#ifndef DEFECTWALK_OBSERVABLES_HPP
#define DEFECTWALK_OBSERVABLES_HPP

#include <span>
#include <vector>

#include "defectwalk/lattice.hpp"
#include "defectwalk/quadrature.hpp"
#include "defectwalk/spectral.hpp"

namespace defectwalk {

struct ProbabilityDistribution {
  LatticeWindow window;
  std::vector<double> p;

  double at(int j) const { return window.contains(j) ? p[window.offset(j)] : 0.0; }
  double total() const;
};

// P_j = |a_j|^2.
ProbabilityDistribution probability_distribution(const NodeState& state);

// sqrt(<j^2> - <j>^2) using absolute node labels.
double std_dev(const ProbabilityDistribution& dist);

// The three coherent contributions to <j|exp(-iHt)|j0>: odd traveling,
// even traveling and bound. total_probability = |sum|^2.
struct DefectSiteDecomposition {
  Complex odd_term;
  Complex even_term;
  Complex bound_term;
  double total_probability = 0.0;
};

DefectSiteDecomposition defect_site_decomposition(const DefectLineParams& params,
                                                  int j0, int j, double t,
                                                  const QuadratureSpec& quad);

// |sum_b exp(-i lambda_b t) <j|b><b|j0>|^2, the localized part of the
// probability when the traveling modes are neglected. Throws
// NoBoundStateError if the configuration has no bound state.
double bound_projection_probability(const DefectLineParams& params, int j,
                                    int j0, double t);

// 2 pi / (lambda_+ - lambda_-); DomainError unless exactly two bound states.
double interference_period(std::span<const BoundState> bounds);

// Closed forms for a walk started on the defect with two bound states: the
// localized probability at j_d and at j_d +- 1. DomainError unless exactly two
// bound states exist.
double two_bound_defect_probability(const DefectLineParams& params, double t);
double two_bound_neighbor_probability(const DefectLineParams& params, double t);

}  // namespace defectwalk

#endif  // DEFECTWALK_OBSERVABLES_HPP
