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

#include "defectwalk/observables.hpp"

#include <cmath>
#include <numbers>

#include "defectwalk/errors.hpp"

namespace defectwalk {

double ProbabilityDistribution::total() const {
  double acc = 0.0;
  for (double x : p) acc += x;
  return acc;
}

ProbabilityDistribution probability_distribution(const NodeState& state) {
  ProbabilityDistribution d{state.window, std::vector<double>(state.amplitudes.size())};
  for (std::size_t i = 0; i < d.p.size(); ++i) d.p[i] = std::norm(state.amplitudes[i]);
  return d;
}

double std_dev(const ProbabilityDistribution& dist) {
  double mean = 0.0;
  double second = 0.0;
  for (std::size_t i = 0; i < dist.p.size(); ++i) {
    const double j = dist.window.node(i);
    mean += j * dist.p[i];
    second += j * j * dist.p[i];
  }
  return std::sqrt(std::max(0.0, second - mean * mean));
}

DefectSiteDecomposition defect_site_decomposition(const DefectLineParams& params,
                                                  int j0, int j, double t,
                                                  const QuadratureSpec& quad) {
  if (defect_disconnected(params)) {
    throw DisconnectedDefectError("decomposition needs a connected defect");
  }
  DefectSiteDecomposition out;
  const auto rule = quad.rule();
  for (std::size_t i = 0; i < rule->nodes.size(); ++i) {
    const TravelingMode odd(rule->nodes[i], Parity::kOdd, params);
    const TravelingMode even(rule->nodes[i], Parity::kEven, params);
    const Complex c = rule->weights[i] * std::polar(1.0, -odd.lambda() * t);
    out.odd_term += c * odd.amplitude(j) * std::conj(odd.amplitude(j0));
    out.even_term += c * even.amplitude(j) * std::conj(even.amplitude(j0));
  }
  for (const auto& b : bound_states(params)) {
    out.bound_term += std::polar(1.0, -b.lambda * t) *
                      bound_amplitude(b, j, params) *
                      bound_amplitude(b, j0, params);
  }
  out.total_probability = std::norm(out.odd_term + out.even_term + out.bound_term);
  return out;
}

double bound_projection_probability(const DefectLineParams& params, int j,
                                    int j0, double t) {
  const auto bounds = bound_states(params);
  if (bounds.empty()) {
    throw NoBoundStateError("configuration has no bound state");
  }
  Complex acc{};
  for (const auto& b : bounds) {
    acc += std::polar(1.0, -b.lambda * t) * bound_amplitude(b, j, params) *
           bound_amplitude(b, j0, params);
  }
  return std::norm(acc);
}

double interference_period(std::span<const BoundState> bounds) {
  if (bounds.size() != 2) {
    throw DomainError("interference period needs exactly two bound states");
  }
  return 2.0 * std::numbers::pi / std::abs(bounds[1].lambda - bounds[0].lambda);
}

namespace {

struct TwoBound {
  BoundState lower;
  BoundState upper;
};

TwoBound require_two(const DefectLineParams& params) {
  const auto bounds = bound_states(params);
  if (bounds.size() != 2) {
    throw DomainError("configuration does not have two bound states");
  }
  return {bounds[0], bounds[1]};
}

}  // namespace

double two_bound_defect_probability(const DefectLineParams& params, double t) {
  const auto [m, p] = require_two(params);
  const double r = params.gamma / params.defect_hopping();
  const double ap2 = p.norm * p.norm;
  const double am2 = m.norm * m.norm;
  return std::pow(r, 4) *
         (ap2 * ap2 + am2 * am2 +
          2.0 * std::cos((p.lambda - m.lambda) * t) * ap2 * am2);
}

double two_bound_neighbor_probability(const DefectLineParams& params, double t) {
  const auto [m, p] = require_two(params);
  const double h = params.defect_hopping();
  const double r = params.gamma / h;
  const double sp = (params.alpha + params.epsilon - p.lambda) / (2.0 * h);
  const double sm = (params.alpha + params.epsilon - m.lambda) / (2.0 * h);
  const double ap2 = p.norm * p.norm;
  const double am2 = m.norm * m.norm;
  return std::pow(r, 4) *
         (ap2 * ap2 * sp * sp + am2 * am2 * sm * sm +
          2.0 * std::cos((p.lambda - m.lambda) * t) * ap2 * am2 * sp * sm);
}

}  // namespace defectwalk
