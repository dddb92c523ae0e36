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

#ifndef DEFECTWALK_LATTICE_HPP
#define DEFECTWALK_LATTICE_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace defectwalk {

using Complex = std::complex<double>;

// Infinite line with on-site energy epsilon and hopping gamma, plus a
// single defect node j_defect carrying on-site shift alpha and a hopping
// shift beta on both bonds touching it. Units are dimensionless (hbar = 1).
struct DefectLineParams {
  double epsilon = 0.0;
  double gamma = 1.0;
  double alpha = 0.0;
  double beta = 0.0;
  int j_defect = 0;

  // Hopping on the two bonds adjacent to the defect.
  double defect_hopping() const { return gamma + beta; }
};

// Throws InvalidParameterError for non-finite input or gamma == 0.
DefectLineParams make_params(double epsilon, double gamma, double alpha,
                             double beta, int j_defect);

// Symmetric finite window [center - radius, center + radius] of the line.
class LatticeWindow {
 public:
  LatticeWindow(int center, int radius);

  int center() const { return center_; }
  int radius() const { return radius_; }
  std::size_t size() const { return 2 * static_cast<std::size_t>(radius_) + 1; }
  int first() const { return center_ - radius_; }
  int last() const { return center_ + radius_; }

  bool contains(int j) const { return j >= first() && j <= last(); }

  // Index of node j in window-ordered storage. Throws WindowError if j is
  // outside the window.
  std::size_t offset(int j) const;
  int node(std::size_t offset) const { return first() + static_cast<int>(offset); }

  bool operator==(const LatticeWindow&) const = default;

 private:
  int center_;
  int radius_;
};

// Real-symmetric tridiagonal Hamiltonian on a window. offdiag[i] couples
// window offsets i and i + 1 in both directions; couplings leaving the
// window are dropped (hard wall).
struct TridiagonalHamiltonian {
  LatticeWindow window;
  std::vector<double> diag;
  std::vector<double> offdiag;

  // H * v for a vector laid out in window order.
  std::vector<Complex> apply(std::span<const Complex> v) const;
  double expectation(std::span<const Complex> v) const;
};

// The window must hold j_defect with at least two nodes on either side.
TridiagonalHamiltonian build_hamiltonian(const DefectLineParams& params,
                                         const LatticeWindow& window);

struct Band {
  double lower;
  double upper;

  bool contains(double lambda, double tolerance = 0.0) const {
    return lambda >= lower - tolerance && lambda <= upper + tolerance;
  }
};

// Continuous spectrum [epsilon - 2|gamma|, epsilon + 2|gamma|].
Band band_interval(const DefectLineParams& params);

inline constexpr int kDefaultBuffer = 40;

// ceil(2 (|gamma| + |beta|) t) + buffer.
int light_cone_radius(const DefectLineParams& params, double t, int buffer);

// Smallest window centered on j0 that covers the light cone for time t and
// keeps the defect two nodes away from the edge.
LatticeWindow evolution_window(const DefectLineParams& params, int j0, double t,
                               int buffer = kDefaultBuffer);

// Amplitudes a_j of |psi> = sum_j a_j |j> over a window.
struct NodeState {
  LatticeWindow window;
  std::vector<Complex> amplitudes;

  Complex at(int j) const {
    return window.contains(j) ? amplitudes[window.offset(j)] : Complex{};
  }
  double norm_squared() const;
};

NodeState basis_state(int j0, const LatticeWindow& window);

}  // namespace defectwalk

#endif  // DEFECTWALK_LATTICE_HPP
