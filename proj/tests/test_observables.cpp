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

#include <cmath>
#include <numbers>

#include "defectwalk/errors.hpp"
#include "defectwalk/observables.hpp"
#include "defectwalk/propagator.hpp"
#include "defectwalk/spectral.hpp"
#include "doctest.h"

using namespace defectwalk;

namespace {

ProbabilityDistribution simulate(const DefectLineParams& p, int j0, double t) {
  const auto w = evolution_window(p, j0, t);
  return probability_distribution(evolve_spectral(basis_state(j0, w), t, p, {}, w).state);
}

}  // namespace

TEST_CASE("distribution basics") {
  const LatticeWindow w(5, 3);
  NodeState s{w, std::vector<Complex>(w.size())};
  s.amplitudes[w.offset(4)] = Complex(0, std::sqrt(0.5));
  s.amplitudes[w.offset(6)] = std::sqrt(0.5);
  const auto d = probability_distribution(s);
  CHECK(d.total() == doctest::Approx(1.0));
  CHECK(d.at(4) == doctest::Approx(0.5));
  CHECK(d.at(100) == 0.0);
  CHECK(std_dev(d) == doctest::Approx(1.0));
  CHECK(std_dev(probability_distribution(basis_state(7, w))) == 0.0);
}

TEST_CASE("free spreading is linear in time") {
  const auto p = make_params(2, 1, 0, 0, 0);
  for (double t : {5.0, 10.0, 30.0}) {
    CHECK(std_dev(simulate(p, 0, t)) == doctest::Approx(std::numbers::sqrt2 * t).epsilon(1e-10));
  }
  const auto q = make_params(2, -0.5, 0, 0, 3);
  CHECK(std_dev(simulate(q, 3, 10)) == doctest::Approx(std::numbers::sqrt2 * 5).epsilon(1e-10));
}

TEST_CASE("site defect at the start node traps most of the walker") {
  const auto p = make_params(2, 1, 3, 0, 0);
  const double full = simulate(p, 0, 30).at(0);
  CHECK(full == doctest::Approx(0.69242666).epsilon(1e-6));
  const double bound = bound_projection_probability(p, 0, 0, 30);
  CHECK(bound == doctest::Approx(9.0 / 13.0).epsilon(1e-12));
  CHECK(std::abs(full - bound) / full < 0.05);
}

TEST_CASE("site defect next to the start node") {
  const auto p = make_params(2, 1, 3, 0, 1);
  const double y = (3 - std::sqrt(13.0)) / 2;
  CHECK(simulate(p, 0, 30).at(1) == doctest::Approx(0.06375465).epsilon(1e-6));
  CHECK(bound_projection_probability(p, 1, 0, 30) ==
        doctest::Approx(9.0 / 13.0 * y * y).epsilon(1e-12));
}

TEST_CASE("bound projection decays geometrically with distance") {
  for (auto [alpha, beta] : {std::pair{3.0, 0.0}, {3.0, 0.3}, {-4.0, -0.2}}) {
    const auto base = make_params(2, 1, alpha, beta, 0);
    const auto bounds = bound_states(base);
    REQUIRE(bounds.size() == 1);
    const double y2 = bounds[0].decay_base * bounds[0].decay_base;
    for (int d = 2; d <= 8; ++d) {
      const auto p = make_params(2, 1, alpha, beta, d);
      const auto q = make_params(2, 1, alpha, beta, d - 1);
      const double ratio = bound_projection_probability(p, d, 0, 30) /
                           bound_projection_probability(q, d - 1, 0, 30);
      CHECK(ratio == doctest::Approx(y2).epsilon(1e-10));
    }
  }
}

TEST_CASE("coherent decomposition sums to the amplitude") {
  const auto p = make_params(2, 1, 1.0, 0.5, 2);
  const auto d = defect_site_decomposition(p, 0, 2, 20, {});
  const auto w = evolution_window(p, 0, 20);
  const Complex a = spectral_amplitude(basis_state(0, w), 2, 20, p, {});
  CHECK(std::abs(d.odd_term) < 1e-15);
  CHECK(std::abs(d.odd_term + d.even_term + d.bound_term - a) < 1e-13);
  CHECK(d.total_probability == doctest::Approx(std::norm(a)).epsilon(1e-12));
  CHECK_THROWS_AS(defect_site_decomposition(make_params(2, 1, 0, -1, 0), 0, 0, 1, {}),
                  DisconnectedDefectError);
}

TEST_CASE("alpha sign symmetry") {
  for (double alpha : {1.0, 3.0}) {
    for (int jd : {0, 2}) {
      const auto a = simulate(make_params(2, 1, alpha, 0, jd), 0, 30);
      const auto b = simulate(make_params(2, 1, -alpha, 0, jd), 0, 30);
      for (std::size_t i = 0; i < a.p.size(); ++i) CHECK(std::abs(a.p[i] - b.p[i]) < 1e-10);
    }
  }
}

TEST_CASE("defects slow the spreading, a weakened bond speeds it up") {
  auto sigma = [](double alpha, double beta, int jd) {
    return std_dev(simulate(make_params(2, 1, alpha, beta, jd), 0, 30));
  };
  const double free = sigma(0, 0, 0);
  CHECK(free > sigma(3, 0, 1));
  CHECK(sigma(3, 0, 1) > sigma(3, 0, 5));
  CHECK(sigma(3, 0, 5) > sigma(3, 0, 2));
  CHECK(sigma(3, 0, 2) > sigma(3, 0, 0));
  CHECK(sigma(0, -0.5, 0) > free);
}

TEST_CASE("two bound states beat at the predicted period") {
  const auto p = make_params(2, 1, 0, 0.5, 0);
  const auto bounds = bound_states(p);
  REQUIRE(bounds.size() == 2);
  const double period = interference_period(bounds);
  CHECK(period == doctest::Approx(2 * std::numbers::pi / (bounds[1].lambda - bounds[0].lambda)));
  CHECK(period == doctest::Approx(1.3061).epsilon(1e-4));
  // Closed forms repeat with the period.
  CHECK(two_bound_defect_probability(p, 30) ==
        doctest::Approx(two_bound_defect_probability(p, 30 + period)).epsilon(1e-12));

  // The full walk follows the closed forms once the traveling part has left.
  const auto w = evolution_window(p, 0, 30 + period);
  const OracleEigensystem sys(p, w);
  const auto psi0 = basis_state(0, w);
  double env_max = 0.0;
  for (int i = 0; i <= 40; ++i) {
    env_max = std::max(env_max, two_bound_defect_probability(p, 30 + period * i / 40));
  }
  for (int i = 0; i <= 40; ++i) {
    const double t = 30 + period * i / 40;
    const auto s = sys.evolve(psi0, t);
    CHECK(std::abs(std::norm(s.at(0)) - two_bound_defect_probability(p, t)) < 0.02 * env_max);
    const double side = two_bound_neighbor_probability(p, t);
    CHECK(std::abs(std::norm(s.at(1)) - side) < 0.02 * env_max);
    CHECK(std::abs(std::norm(s.at(-1)) - side) < 0.02 * env_max);
  }
}

TEST_CASE("the localized term dominates when starting on the defect") {
  for (auto [alpha, beta] : {std::pair{3.0, 0.0}, {0.0, 0.5}, {0.0, 2.0}}) {
    const auto p = make_params(2, 1, alpha, beta, 0);
    const auto d = defect_site_decomposition(p, 0, 0, 30, {});
    const double bound = std::norm(d.bound_term);
    CHECK(std::abs(bound - d.total_probability) / d.total_probability < 0.05);
  }
}

TEST_CASE("beating extrema sit on the two-state envelope") {
  const auto p = make_params(2, 1, 0, 0.5, 0);
  const auto bounds = bound_states(p);
  REQUIRE(bounds.size() == 2);
  const double a = bounds[0].c_center * bounds[0].c_center;
  const double b = bounds[1].c_center * bounds[1].c_center;
  const double upper = a * a + b * b + 2 * a * b;
  const double lower = a * a + b * b - 2 * a * b;
  const double period = interference_period(bounds);
  const auto w = evolution_window(p, 0, 30 + period);
  const OracleEigensystem sys(p, w);
  const auto psi0 = basis_state(0, w);
  double hi = 0.0, lo = 1.0;
  for (int i = 0; i <= 400; ++i) {
    const double pj = std::norm(sys.evolve(psi0, 30 + period * i / 400).at(0));
    hi = std::max(hi, pj);
    lo = std::min(lo, pj);
  }
  // The lower envelope is close to zero, so both sides use the upper one as scale.
  CHECK(std::abs(hi - upper) < 0.02 * upper);
  CHECK(std::abs(lo - lower) < 0.02 * upper);
}

TEST_CASE("transition defect projections") {
  const auto p = make_params(2, 1, 0, 0.5, 1);
  CHECK(bound_projection_probability(p, 1, 0, 30) == doctest::Approx(0.0030195).epsilon(1e-3));
  CHECK(bound_projection_probability(p, 0, 0, 30) == doctest::Approx(0.20891).epsilon(1e-3));
  CHECK(bound_projection_probability(p, 2, 0, 30) == doctest::Approx(0.20891).epsilon(1e-3));
}

TEST_CASE("observable errors") {
  CHECK_THROWS_AS(bound_projection_probability(make_params(2, 1, 0, 0, 0), 0, 0, 1),
                  NoBoundStateError);
  const auto one = bound_states(make_params(2, 1, 3, 0, 0));
  CHECK_THROWS_AS(interference_period(one), DomainError);
  CHECK_THROWS_AS(two_bound_defect_probability(make_params(2, 1, 3, 0, 0), 1), DomainError);
  CHECK_THROWS_AS(two_bound_neighbor_probability(make_params(2, 1, 0, 0, 0), 1), DomainError);
}
