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
#include <functional>
#include <numbers>
#include <random>

#include "defectwalk/errors.hpp"
#include "defectwalk/spectral.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using namespace defectwalk;

namespace {

// max_j |(H psi)_j - lambda psi_j| on the infinite line, |j - jd| <= reach.
double eigen_residual(const DefectLineParams& p, double lambda,
                      const std::function<Complex(int)>& psi, int reach) {
  auto hop = [&](int a) {  // bond (a, a + 1)
    return (a == p.j_defect || a + 1 == p.j_defect) ? -(p.gamma + p.beta) : -p.gamma;
  };
  double worst = 0.0;
  for (int j = p.j_defect - reach; j <= p.j_defect + reach; ++j) {
    const double d = p.epsilon + (j == p.j_defect ? p.alpha : 0.0);
    const Complex h = d * psi(j) + hop(j - 1) * psi(j - 1) + hop(j) * psi(j + 1);
    worst = std::max(worst, std::abs(h - lambda * psi(j)));
  }
  return worst;
}

int sturm_bound_count(const DefectLineParams& p, int radius, double margin) {
  std::vector<double> diag, off;
  oracle::defect_line_matrix(p.epsilon, p.gamma, p.alpha, p.beta, p.j_defect,
                             p.j_defect - radius, p.j_defect + radius, diag, off);
  const Band b = band_interval(p);
  return static_cast<int>(
      oracle::sturm_eigenvalues_outside(diag, off, b.lower - margin, b.upper + margin).size());
}

std::vector<double> sturm_bound_energies(const DefectLineParams& p, int radius) {
  std::vector<double> diag, off;
  oracle::defect_line_matrix(p.epsilon, p.gamma, p.alpha, p.beta, p.j_defect,
                             p.j_defect - radius, p.j_defect + radius, diag, off);
  const Band b = band_interval(p);
  auto e = oracle::sturm_eigenvalues_outside(diag, off, b.lower - 1e-9, b.upper + 1e-9);
  std::sort(e.begin(), e.end());
  return e;
}

}  // namespace

TEST_CASE("dispersion") {
  const auto p = make_params(2, 1, 0, 0, 0);
  CHECK(lambda_of_k(0, p) == doctest::Approx(0.0));
  CHECK(lambda_of_k(std::numbers::pi, p) == doctest::Approx(4.0));
  CHECK(lambda_of_k(std::numbers::pi / 2, p) == doctest::Approx(2.0));
  CHECK_THROWS_AS(lambda_of_k(-0.1, p), DomainError);
  CHECK_THROWS_AS(lambda_of_k(3.2, p), DomainError);
}

TEST_CASE("y roots and their magnitude class") {
  const auto p = make_params(2, 1, 0, 0, 0);
  const double k = 0.7;
  const auto in = y_of_lambda(lambda_of_k(k, p), p);
  CHECK(in.magnitude_class == MagnitudeClass::kOnCircle);
  CHECK(std::abs(in.value - std::polar(1.0, k)) < 1e-12);
  const auto above = y_of_lambda(5.5, p);
  CHECK(above.magnitude_class == MagnitudeClass::kInside);
  const auto below = y_of_lambda(-1.5, p);
  CHECK(below.magnitude_class == MagnitudeClass::kOutside);
  for (double lambda : {5.5, -1.5, 1.0}) {
    const Complex y = y_of_lambda(lambda, p).value;
    CHECK(std::abs(y + 1.0 / y - (p.epsilon - lambda) / p.gamma) < 1e-12);
  }
}

TEST_CASE("f on the band has unit modulus and matches the lambda form") {
  std::mt19937 rng(1234);
  std::uniform_real_distribution<double> u(-3, 3);
  std::uniform_real_distribution<double> uk(0.05, std::numbers::pi - 0.05);
  for (int trial = 0; trial < 200; ++trial) {
    const double gamma = (trial % 2 ? 1.0 : -1.0) * (0.5 + std::abs(u(rng)) / 3);
    const auto p = make_params(u(rng), gamma, u(rng), u(rng), 0);
    if (defect_disconnected(p)) continue;
    const double k = uk(rng);
    const Complex fk = f_of_k(k, p);
    CHECK(std::abs(std::abs(fk) - 1.0) < 1e-12);
    const auto ratio = f_of_lambda(lambda_of_k(k, p), p);
    if (ratio.is_pole()) continue;
    const Complex fl = ratio.value();
    CHECK(std::abs((gamma > 0 ? fl : std::conj(fl)) - fk) < 1e-9);
  }
}

TEST_CASE("f is one without a defect") {
  const auto p = make_params(2, 1, 0, 0, 0);
  for (double k : {0.1, 1.0, 2.5}) CHECK(std::abs(f_of_k(k, p) - 1.0) < 1e-15);
}

TEST_CASE("traveling modes reject bad input") {
  const auto p = make_params(2, 1, 0, 0, 0);
  CHECK_THROWS_AS(TravelingMode(0.0, Parity::kOdd, p), DomainError);
  CHECK_THROWS_AS(TravelingMode(std::numbers::pi, Parity::kEven, p), DomainError);
  const auto cut = make_params(2, 1, 0, -1, 0);
  CHECK_THROWS_AS(TravelingMode(1.0, Parity::kEven, cut), DisconnectedDefectError);
  CHECK_NOTHROW(TravelingMode(1.0, Parity::kOdd, cut));
  CHECK_FALSE(TravelingMode(1.0, Parity::kOdd, p).f().has_value());
  CHECK(TravelingMode(1.0, Parity::kEven, p).f().has_value());
}

TEST_CASE("traveling modes have definite parity and solve the eigen-equation") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> u(-3, 3);
  std::uniform_real_distribution<double> uk(0.05, std::numbers::pi - 0.05);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = make_params(2, 1, u(rng), u(rng), 3);
    if (std::abs(p.defect_hopping()) < 0.05) continue;
    const double k = uk(rng);
    const TravelingMode odd(k, Parity::kOdd, p);
    const TravelingMode even(k, Parity::kEven, p);
    for (int n = 0; n <= 6; ++n) {
      CHECK(std::abs(odd.amplitude(3 + n) + odd.amplitude(3 - n)) < 1e-14);
      CHECK(std::abs(even.amplitude(3 + n) - even.amplitude(3 - n)) < 1e-14);
    }
    CHECK(odd.amplitude(3) == Complex(0.0));
    const double lambda = lambda_of_k(k, p);
    CHECK(eigen_residual(p, lambda, [&](int j) { return odd.amplitude(j); }, 8) < 1e-12);
    CHECK(eigen_residual(p, lambda, [&](int j) { return even.amplitude(j); }, 8) < 1e-11);
    CHECK(even.amplitude(5) == even_amplitude(k, 5, p));
    CHECK(odd.amplitude(5) == odd_amplitude(k, 5, p));
  }
}

TEST_CASE("closed-form candidates") {
  const auto site = bound_candidates(make_params(2, 1, 3, 0, 0));
  REQUIRE(site.size() == 2);
  CHECK(site[0] == doctest::Approx(2 - std::sqrt(13.0)));
  CHECK(site[1] == doctest::Approx(2 + std::sqrt(13.0)));
  const auto hop = bound_candidates(make_params(2, 1, 0, 0.5, 0));
  REQUIRE(hop.size() == 2);
  CHECK(hop[0] == doctest::Approx(-0.40535117721182).epsilon(1e-12));
  CHECK(hop[1] == doctest::Approx(4.40535117721182).epsilon(1e-12));
  const double degenerate = -1.0 / (2.0 - std::sqrt(2.0));
  CHECK_THROWS_AS(bound_candidates(make_params(2, 1, 0, degenerate, 0)),
                  DegenerateDenominatorError);
}

TEST_CASE("site defect: one bound state on the side of alpha") {
  const auto up = bound_states(make_params(2, 1, 3, 0, 0));
  REQUIRE(up.size() == 1);
  CHECK(up[0].lambda == doctest::Approx(2 + std::sqrt(13.0)).epsilon(1e-13));
  CHECK(up[0].branch == 1);
  CHECK(up[0].decay_base == doctest::Approx((3 - std::sqrt(13.0)) / 2));
  CHECK(up[0].c_center * up[0].c_center == doctest::Approx(3 / std::sqrt(13.0)));
  const auto down = bound_states(make_params(2, 1, -3, 0, 0));
  REQUIRE(down.size() == 1);
  CHECK(down[0].lambda == doctest::Approx(2 - std::sqrt(13.0)).epsilon(1e-13));
  CHECK(down[0].branch == -1);
  CHECK(bound_states(make_params(2, 1, 0, 0, 0)).empty());
}

TEST_CASE("spurious candidates are rejected") {
  const auto p = make_params(2, 1, 0, -1.8, 0);
  const auto cands = bound_candidates(p);
  REQUIRE(cands.size() == 2);
  for (double c : cands) {
    CHECK_FALSE(band_interval(p).contains(c));
    CHECK_FALSE(validate_bound(p, c).has_value());
  }
  CHECK(bound_states(p).empty());
  CHECK(sturm_bound_count(p, 150, 1e-9) == 0);
  CHECK_THROWS_AS(validate_bound(p, 2.5), DomainError);
}

TEST_CASE("disconnected defect has no bound-state solver") {
  CHECK_THROWS_AS(bound_states(make_params(2, 1, 0, -1, 0)), DisconnectedDefectError);
}

TEST_CASE("fallback root finding agrees with the closed form") {
  const auto p = make_params(2, 1, 3, 0, 0);
  std::vector<double> found;
  for (double r : fallback_root_find(p)) {
    if (validate_bound(p, r)) found.push_back(r);
  }
  REQUIRE(found.size() == 1);
  CHECK(found[0] == doctest::Approx(2 + std::sqrt(13.0)).epsilon(1e-12));

  const auto q = make_params(2, 1, 1.5, 0.5, 0);
  const auto closed = bound_states(q);
  std::vector<double> roots;
  for (double r : fallback_root_find(q)) {
    if (auto b = validate_bound(q, r)) roots.push_back(b->lambda);
  }
  std::sort(roots.begin(), roots.end());
  REQUIRE(roots.size() == closed.size());
  for (std::size_t i = 0; i < roots.size(); ++i) {
    CHECK(roots[i] == doctest::Approx(closed[i].lambda).epsilon(1e-11));
  }
}

TEST_CASE("degenerate denominator falls back and still matches the spectrum") {
  const double degenerate = -1.0 / (2.0 - std::sqrt(2.0));
  for (double alpha : {0.0, 1.0, -2.0}) {
    const auto p = make_params(2, 1, alpha, degenerate, 0);
    const auto bounds = bound_states(p);
    const auto ref = sturm_bound_energies(p, 150);
    REQUIRE(bounds.size() == ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) {
      CHECK(bounds[i].lambda == doctest::Approx(ref[i]).epsilon(1e-10));
    }
  }
}

TEST_CASE("bound states: counts and energies against Sturm bisection") {
  std::mt19937 rng(2026);
  std::uniform_real_distribution<double> ua(-4, 4);
  std::uniform_real_distribution<double> ub(-3.5, 3);
  int checked = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const auto p = make_params(2, 1, ua(rng), ub(rng), 0);
    if (std::abs(p.defect_hopping()) < 0.05) continue;
    const auto bounds = bound_states(p);
    // Weakly bound states need windows beyond the Sturm radius; skip them.
    bool shallow = false;
    for (const auto& b : bounds) shallow = shallow || std::abs(b.decay_base) > 0.8;
    const auto ref = sturm_bound_energies(p, 150);
    const Band band = band_interval(p);
    for (double e : ref) shallow = shallow || std::min(std::abs(e - band.lower), std::abs(e - band.upper)) < 0.05;
    if (shallow) continue;
    ++checked;
    REQUIRE(bounds.size() == ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) {
      CHECK(bounds[i].lambda == doctest::Approx(ref[i]).epsilon(1e-10));
    }
  }
  CHECK(checked > 60);
}

TEST_CASE("bound states are normalized eigenvectors") {
  for (auto [alpha, beta] : {std::pair{3.0, 0.0}, {0.0, 0.5}, {0.0, 2.0}, {-1.0, -2.5}, {2.0, 0.7}}) {
    const auto p = make_params(2, 1, alpha, beta, 1);
    for (const auto& b : bound_states(p)) {
      auto psi = [&](int j) { return Complex(bound_amplitude(b, j, p)); };
      CHECK(eigen_residual(p, b.lambda, psi, 10) < 1e-11);
      double norm = 0.0;
      for (int j = -400; j <= 400; ++j) norm += std::norm(psi(j));
      CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(bound_amplitude(b, 1, p) == b.c_center);
      CHECK(bound_amplitude(b, 2, p) == doctest::Approx(b.c_adjacent));
      CHECK(bound_amplitude(b, 0, p) == doctest::Approx(b.c_adjacent));
      CHECK(std::abs(b.decay_base) < 1.0);
    }
  }
}

TEST_CASE("hopping mirror beta -> -2 gamma - beta keeps the bound energies") {
  for (double beta : {0.25, 0.5, 2.0, 3.0}) {
    const auto a = bound_states(make_params(2, 1, 0.7, beta, 0));
    const auto b = bound_states(make_params(2, 1, 0.7, -2 - beta, 0));
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].lambda == doctest::Approx(b[i].lambda).epsilon(1e-12));
    }
  }
}

TEST_CASE("flipping the sign of gamma and beta keeps the bound energies") {
  for (auto [alpha, beta] : {std::pair{3.0, 0.0}, {0.0, 0.5}, {1.0, -2.5}}) {
    const auto a = bound_states(make_params(2, 1, alpha, beta, 0));
    const auto b = bound_states(make_params(2, -1, alpha, -beta, 0));
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].lambda == doctest::Approx(b[i].lambda).epsilon(1e-12));
      CHECK(std::abs(a[i].c_center) == doctest::Approx(std::abs(b[i].c_center)));
    }
  }
}
