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

#ifndef DEFECTWALK_QUADRATURE_HPP
#define DEFECTWALK_QUADRATURE_HPP

#include <memory>
#include <vector>

namespace defectwalk {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [a, b], nodes ascending.
QuadratureRule gauss_legendre(int n, double a, double b);

// Gauss-Legendre discretization of the wave-number integral over (0, pi).
struct QuadratureSpec {
  int n_nodes = 2048;

  // Memoized rule; safe to call concurrently.
  std::shared_ptr<const QuadratureRule> rule() const;
};

}  // namespace defectwalk

#endif  // DEFECTWALK_QUADRATURE_HPP
