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

#include "defectwalk/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "defectwalk/errors.hpp"

namespace defectwalk {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_connected(const DefectLineParams& params) {
  if (defect_disconnected(params)) {
    throw DisconnectedDefectError(
        "gamma + beta vanishes; the defect node is disconnected");
  }
}

// Real-valued branch function whose zeros are the bound energies on one side
// of the band: the numerator of f above (|y| < 1), its denominator below.
double branch_function(const DefectLineParams& params, double lambda,
                       int branch) {
  const FRatio r = f_of_lambda(lambda, params);
  return branch > 0 ? r.numerator.real() : r.denominator.real();
}

double branch_derivative(const DefectLineParams& params, double lambda,
                         int branch) {
  const double d = params.epsilon - lambda;
  const double s = std::sqrt(d * d - 4.0 * params.gamma * params.gamma);
  const double g2 = params.gamma * params.gamma;
  const double h2 = params.defect_hopping() * params.defect_hopping();
  if (branch > 0) return g2 + h2 * (-1.0 - d / s);
  return -g2 - h2 * (-1.0 + d / s);
}

// Few Newton steps on the branch function; keeps any step that lowers the
// residual and stays off the band.
double polish_root(const DefectLineParams& params, double lambda, int branch) {
  const Band band = band_interval(params);
  double q = std::abs(branch_function(params, lambda, branch));
  for (int iter = 0; iter < 6 && q > 0.0; ++iter) {
    const double dq = branch_derivative(params, lambda, branch);
    if (!std::isfinite(dq) || dq == 0.0) break;
    const double next = lambda - branch_function(params, lambda, branch) / dq;
    if (!std::isfinite(next) || band.contains(next, kBandEdgeTolerance)) break;
    const double qn = std::abs(branch_function(params, next, branch));
    if (!(qn < q)) break;
    lambda = next;
    q = qn;
  }
  return lambda;
}

// Residual of (H - lambda) psi on the infinite line. Only |n| <= 3 can be
// nonzero; further out the coefficients follow the free recurrence.
double bound_residual(const DefectLineParams& params, const BoundState& b) {
  const double d = params.epsilon - b.lambda;
  const double g = params.gamma;
  const double h = params.defect_hopping();
  auto c = [&](int n) {
    if (n == 0) return b.c_center;
    if (n == 1) return b.c_adjacent;
    return b.norm * std::pow(b.decay_base, n);
  };
  const double r0 = (d + params.alpha) * c(0) - 2.0 * h * c(1);
  const double r1 = d * c(1) - h * c(0) - g * c(2);
  const double r2 = d * c(2) - g * c(1) - g * c(3);
  const double r3 = d * c(3) - g * c(2) - g * c(4);
  // Adjacent nodes enter symmetrically, so the 2-norm counts them twice.
  return std::sqrt(r0 * r0 + 2.0 * (r1 * r1 + r2 * r2 + r3 * r3));
}

std::vector<double> bisect_sign_changes(
    const std::function<double(double)>& q, double edge, double reach,
    int direction) {
  constexpr int kSamples = 4096;
  std::vector<double> roots;
  const double start = 2.0 * kBandEdgeTolerance * std::max(1.0, std::abs(edge));
  auto at = [&](int i) {
    const double u = static_cast<double>(i) / kSamples;
    return edge + direction * std::max(start, reach * u * u);
  };
  double x_prev = at(0);
  double q_prev = q(x_prev);
  if (q_prev == 0.0) roots.push_back(x_prev);
  for (int i = 1; i <= kSamples; ++i) {
    const double x = at(i);
    const double qx = q(x);
    if (qx == 0.0) {
      roots.push_back(x);
    } else if (q_prev != 0.0 && std::signbit(qx) != std::signbit(q_prev)) {
      double lo = x_prev;
      double hi = x;
      double q_lo = q_prev;
      for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double qm = q(mid);
        if (qm == 0.0) {
          lo = hi = mid;
          break;
        }
        if (std::signbit(qm) == std::signbit(q_lo)) {
          lo = mid;
          q_lo = qm;
        } else {
          hi = mid;
        }
        if (std::abs(hi - lo) <= 1e-12 * std::max(1.0, std::abs(mid))) break;
      }
      roots.push_back(0.5 * (lo + hi));
    }
    x_prev = x;
    q_prev = qx;
  }
  return roots;
}

}  // namespace

double lambda_of_k(double k, const DefectLineParams& params) {
  if (!(k >= 0.0 && k <= std::numbers::pi)) {
    throw DomainError("wave number must lie in [0, pi]");
  }
  return params.epsilon - 2.0 * params.gamma * std::cos(k);
}

YRoot y_of_lambda(double lambda, const DefectLineParams& params) {
  const double d = params.epsilon - lambda;
  const Complex s = std::sqrt(Complex(d * d - 4.0 * params.gamma * params.gamma));
  const Complex y = (d + s) / (2.0 * params.gamma);
  const double m = std::abs(y);
  MagnitudeClass cls = MagnitudeClass::kOnCircle;
  if (std::abs(m - 1.0) > kCircleTolerance) {
    cls = m < 1.0 ? MagnitudeClass::kInside : MagnitudeClass::kOutside;
  }
  return YRoot{y, cls};
}

bool FRatio::is_zero(double tolerance) const {
  return std::abs(numerator) <= tolerance * scale;
}

bool FRatio::is_pole(double tolerance) const {
  return std::abs(denominator) <= tolerance * scale;
}

Complex FRatio::value() const {
  if (std::abs(denominator) <= 1e-300) {
    throw DomainError("f(lambda) has a pole here");
  }
  return numerator / denominator;
}

FRatio f_of_lambda(double lambda, const DefectLineParams& params) {
  const double d = params.epsilon - lambda;
  const double g2 = params.gamma * params.gamma;
  const double h2 = params.defect_hopping() * params.defect_hopping();
  const double u = params.alpha + d;
  const Complex s = std::sqrt(Complex(d * d - 4.0 * g2));
  FRatio r;
  r.numerator = -u * g2 + h2 * (d + s);
  r.denominator = u * g2 - h2 * (d - s);
  r.scale = std::abs(u) * g2 + h2 * (std::abs(d) + std::abs(s));
  return r;
}

Complex f_of_k(double k, const DefectLineParams& params) {
  const double h = params.defect_hopping();
  const Complex a = 2.0 * kI * h * h * std::sin(k);
  const double b = params.gamma * params.alpha -
                   2.0 * params.beta * (2.0 * params.gamma + params.beta) *
                       std::cos(k);
  return (a - b) / (a + b);
}

TravelingMode::TravelingMode(double k, Parity parity,
                             const DefectLineParams& params)
    : k_(k), parity_(parity), j_defect_(params.j_defect) {
  if (!(k > 0.0 && k < std::numbers::pi)) {
    throw DomainError("traveling modes need 0 < k < pi");
  }
  lambda_ = lambda_of_k(k, params);
  if (parity == Parity::kEven) {
    require_connected(params);
    const Complex f = f_of_k(k, params);
    const double inv = 1.0 / std::sqrt(4.0 * std::numbers::pi);
    f_ = f;
    plus_ = (1.0 + f) * inv;
    minus_ = (1.0 - f) * inv;
    center_factor_ = params.gamma / params.defect_hopping();
  }
}

Complex TravelingMode::amplitude(int j) const {
  const int n = j - j_defect_;
  if (parity_ == Parity::kOdd) {
    return kI * (std::sin(k_ * n) / std::sqrt(std::numbers::pi));
  }
  if (n == 0) return plus_ * center_factor_;
  const double kn = k_ * std::abs(n);
  return plus_ * std::cos(kn) + kI * minus_ * std::sin(kn);
}

Complex odd_amplitude(double k, int j, const DefectLineParams& params) {
  return TravelingMode(k, Parity::kOdd, params).amplitude(j);
}

Complex even_amplitude(double k, int j, const DefectLineParams& params) {
  return TravelingMode(k, Parity::kEven, params).amplitude(j);
}

std::vector<double> bound_candidates(const DefectLineParams& params) {
  const double g = params.gamma;
  const double b = params.beta;
  const double den = (g + 2.0 * b) * (g + 2.0 * b) - 2.0 * b * b;
  if (std::abs(den) <= 1e-10) {
    throw DegenerateDenominatorError(
        "closed-form bound energies are singular for these parameters");
  }
  const double radicand =
      4.0 * (g + 2.0 * b) * (g + 2.0 * b) - 8.0 * b * b + params.alpha * params.alpha;
  if (radicand < 0.0) return {};
  const double shift = params.epsilon + b * (2.0 * g + b) * params.alpha / den;
  const double spread =
      params.defect_hopping() * params.defect_hopping() / den * std::sqrt(radicand);
  std::vector<double> out{shift + spread, shift - spread};
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<BoundState> validate_bound(const DefectLineParams& params,
                                         double lambda) {
  const Band band = band_interval(params);
  if (band.contains(lambda, kBandEdgeTolerance)) {
    throw DomainError("bound-state candidate lies in the band");
  }
  require_connected(params);

  const YRoot y = y_of_lambda(lambda, params);
  const int branch = y.magnitude_class == MagnitudeClass::kInside ? 1 : -1;
  const FRatio f = f_of_lambda(lambda, params);
  const bool accepted = branch > 0 ? f.is_zero() : f.is_pole();
  if (!accepted) return std::nullopt;

  lambda = polish_root(params, lambda, branch);
  const double yr = y_of_lambda(lambda, params).value.real();
  const double base = branch > 0 ? yr : 1.0 / yr;
  const double h = params.defect_hopping();
  const double center = params.gamma / h;
  const double adjacent =
      params.gamma * (params.alpha + params.epsilon - lambda) / (2.0 * h * h);
  const double b2 = base * base;
  const double tail = 2.0 * b2 * b2 / (1.0 - b2);
  const double norm = 1.0 / std::sqrt(tail + center * center + 2.0 * adjacent * adjacent);

  BoundState b{lambda, branch, base, norm, norm * center, norm * adjacent};
  const double energy_scale =
      std::max({1.0, std::abs(params.epsilon) + 2.0 * std::abs(params.gamma) +
                         std::abs(params.alpha) + 2.0 * std::abs(params.beta) +
                         std::abs(lambda)});
  if (bound_residual(params, b) > 1e-10 * energy_scale) return std::nullopt;
  return b;
}

std::vector<BoundState> bound_states(const DefectLineParams& params) {
  require_connected(params);
  std::vector<double> candidates;
  try {
    candidates = bound_candidates(params);
  } catch (const DegenerateDenominatorError&) {
    candidates = fallback_root_find(params);
  }
  const Band band = band_interval(params);
  std::vector<BoundState> out;
  for (double lambda : candidates) {
    if (!std::isfinite(lambda) || band.contains(lambda, kBandEdgeTolerance)) {
      continue;
    }
    if (auto b = validate_bound(params, lambda)) out.push_back(*b);
  }
  std::sort(out.begin(), out.end(),
            [](const BoundState& a, const BoundState& b) { return a.lambda < b.lambda; });
  return out;
}

double bound_amplitude(const BoundState& b, int j,
                       const DefectLineParams& params) {
  const int n = std::abs(j - params.j_defect);
  if (n == 0) return b.c_center;
  if (n == 1) return b.c_adjacent;
  return b.norm * std::pow(b.decay_base, n);
}

std::vector<double> fallback_root_find(const DefectLineParams& params) {
  const Band band = band_interval(params);
  const double reach = 10.0 * (std::abs(params.gamma) + std::abs(params.beta) +
                               std::abs(params.alpha));
  std::vector<double> out = bisect_sign_changes(
      [&](double x) { return branch_function(params, x, 1); }, band.upper,
      reach, 1);
  const auto below = bisect_sign_changes(
      [&](double x) { return branch_function(params, x, -1); }, band.lower,
      reach, -1);
  out.insert(out.end(), below.begin(), below.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace defectwalk
