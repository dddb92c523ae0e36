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

#ifndef DEFECTWALK_SPECTRAL_HPP
#define DEFECTWALK_SPECTRAL_HPP

#include <cmath>
#include <optional>
#include <vector>

#include "defectwalk/lattice.hpp"

namespace defectwalk {

// ||y| - 1| below this counts as on the unit circle.
inline constexpr double kCircleTolerance = 1e-12;
// |gamma + beta| at or below this disconnects the defect node.
inline constexpr double kDisconnectTolerance = 1e-12;
// Relative zero test for the branch condition on f and 1/f.
inline constexpr double kBranchTolerance = 1e-8;
// Candidates this close to a band edge are treated as traveling.
inline constexpr double kBandEdgeTolerance = 1e-12;

inline bool defect_disconnected(const DefectLineParams& params) {
  return !(std::abs(params.defect_hopping()) > kDisconnectTolerance);
}

// lambda_k = epsilon - 2 gamma cos k for k in [0, pi].
double lambda_of_k(double k, const DefectLineParams& params);

enum class MagnitudeClass { kOnCircle, kInside, kOutside };

// Root y of y + 1/y = (epsilon - lambda) / gamma.
struct YRoot {
  Complex value;
  MagnitudeClass magnitude_class;
};

// Always the "+" root with the principal square root. For gamma > 0 and
// lambda in the band this is exp(ik); above the band |y| < 1, below |y| > 1.
YRoot y_of_lambda(double lambda, const DefectLineParams& params);

// Parity factor f(lambda) of the even eigenvectors, held as a ratio so that
// zeros and poles can be tested separately. Both parts share y_of_lambda's
// branch of the square root.
struct FRatio {
  Complex numerator;
  Complex denominator;
  // Largest summand magnitude, the reference for relative zero tests.
  double scale;

  bool is_zero(double tolerance = kBranchTolerance) const;
  bool is_pole(double tolerance = kBranchTolerance) const;
  // Throws DomainError at a pole.
  Complex value() const;
};

FRatio f_of_lambda(double lambda, const DefectLineParams& params);

// f on the band, parameterised by the wave number k in (0, pi). Always unit
// modulus. Equals f_of_lambda(lambda_of_k(k)) for gamma > 0 and its complex
// conjugate for gamma < 0, where the principal root is exp(-ik).
Complex f_of_k(double k, const DefectLineParams& params);

enum class Parity { kOdd, kEven };

// Delta-normalized traveling eigenvector of wave number k with a definite
// parity about the defect node.
class TravelingMode {
 public:
  // Throws DomainError unless 0 < k < pi, and DisconnectedDefectError for an
  // even mode when |gamma + beta| <= kDisconnectTolerance.
  TravelingMode(double k, Parity parity, const DefectLineParams& params);

  double k() const { return k_; }
  Parity parity() const { return parity_; }
  double lambda() const { return lambda_; }
  // Present for even modes only.
  std::optional<Complex> f() const { return f_; }

  // <j|psi_k>.
  Complex amplitude(int j) const;

 private:
  double k_;
  Parity parity_;
  double lambda_;
  int j_defect_;
  std::optional<Complex> f_;
  // Even modes: (1 + f)/sqrt(4 pi), (1 - f)/sqrt(4 pi), gamma/(gamma + beta).
  Complex plus_;
  Complex minus_;
  double center_factor_ = 1.0;
};

// (i / sqrt(pi)) sin(k (j - j_d)); independent of alpha and beta.
Complex odd_amplitude(double k, int j, const DefectLineParams& params);

// Even eigenvector component at node j:
//   [(1 + f) cos(k|n|) + i (1 - f) sin(k|n|)] / sqrt(4 pi),  n = j - j_d,
// scaled by gamma / (gamma + beta) at the defect node.
Complex even_amplitude(double k, int j, const DefectLineParams& params);

// Normalizable even eigenstate localized at the defect.
struct BoundState {
  double lambda;
  // sign(1 - |y|): +1 above the band, -1 below.
  int branch;
  // y^branch; |decay_base| < 1, sign carries the staggering.
  double decay_base;
  // Normalization A_b.
  double norm;
  // Amplitudes at j_d and j_d +- 1.
  double c_center;
  double c_adjacent;
};

// Both closed-form roots when real, sorted ascending; empty if complex.
// Throws DegenerateDenominatorError when |(gamma+2beta)^2 - 2beta^2| <= 1e-10.
std::vector<double> bound_candidates(const DefectLineParams& params);

// Applies the branch condition (f = 0 when |y| < 1, 1/f = 0 when |y| > 1)
// and, on success, builds the normalized bound state. Throws DomainError if
// lambda lies within kBandEdgeTolerance of the band.
std::optional<BoundState> validate_bound(const DefectLineParams& params,
                                         double lambda);

// Zero, one or two bound states sorted by energy.
std::vector<BoundState> bound_states(const DefectLineParams& params);

double bound_amplitude(const BoundState& b, int j,
                       const DefectLineParams& params);

// Brackets sign changes of the numerator of f above the band and of its
// denominator below the band, within 10 (|gamma| + |beta| + |alpha|) of the
// edges, and bisects them. Candidates still need validate_bound.
std::vector<double> fallback_root_find(const DefectLineParams& params);

}  // namespace defectwalk

#endif  // DEFECTWALK_SPECTRAL_HPP
