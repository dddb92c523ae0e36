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

// Reference computations that share no code path with the library's
// solvers: Sturm counting, Bessel amplitudes and a Taylor propagator.

#ifndef DEFECTWALK_TESTS_ORACLES_HPP
#define DEFECTWALK_TESTS_ORACLES_HPP

#include <vector>

#include "defectwalk/lattice.hpp"

namespace oracle {

using defectwalk::Complex;

// Number of eigenvalues below x of the symmetric tridiagonal matrix.
int sturm_count_below(const std::vector<double>& diag,
                      const std::vector<double>& offdiag, double x);

// Eigenvalues outside [lo, hi] located by bisection on the Sturm count.
std::vector<double> sturm_eigenvalues_outside(const std::vector<double>& diag,
                                              const std::vector<double>& offdiag,
                                              double lo, double hi);

// Hamiltonian diagonals assembled directly from the model definition.
void defect_line_matrix(double epsilon, double gamma, double alpha, double beta,
                        int jd, int first, int last, std::vector<double>& diag,
                        std::vector<double>& offdiag);

// <j|exp(-iHt)|j0> on the defect-free line:
// exp(-i eps t) i^|n| J_|n|(2 gamma t), n = j - j0.
Complex free_amplitude(double epsilon, double gamma, int j, int j0, double t);

// exp(-iHt) psi by Taylor series in steps of at most dt_max.
std::vector<Complex> taylor_evolve(const std::vector<double>& diag,
                                   const std::vector<double>& offdiag,
                                   std::vector<Complex> psi, double t,
                                   double dt_max = 0.05);

}  // namespace oracle

#endif  // DEFECTWALK_TESTS_ORACLES_HPP
