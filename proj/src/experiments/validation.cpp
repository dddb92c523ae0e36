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

#include "defectwalk/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "defectwalk/experiments.hpp"
#include "defectwalk/observables.hpp"
#include "defectwalk/propagator.hpp"
#include "defectwalk/spectral.hpp"

namespace defectwalk {

namespace {

constexpr double kEpsilon = 2.0;
constexpr double kGamma = 1.0;
constexpr double kFigureTime = 30.0;

DefectLineParams model(double alpha, double beta, int jd) {
  return make_params(kEpsilon, kGamma, alpha, beta, jd);
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

class Checker {
 public:
  Checker(int criterion, const ValidationOptions& options,
          std::vector<CheckResult>& sink)
      : criterion_(criterion), options_(options), sink_(sink) {}

  void within(const std::string& description, double measured, double target,
              double tolerance) {
    CheckResult r = base(description, measured, target, tolerance, Relation::kWithin);
    r.passed = std::abs(measured - target) <= tolerance * options_.tolerance_scale;
    sink_.push_back(r);
  }

  void greater(const std::string& description, double measured, double than) {
    CheckResult r = base(description, measured, than, 0.0, Relation::kGreater);
    r.passed = measured > than;
    sink_.push_back(r);
  }

 private:
  CheckResult base(const std::string& description, double measured, double target,
                   double tolerance, Relation relation) {
    CheckResult r;
    r.criterion = criterion_;
    r.id = std::to_string(criterion_) + "." + std::to_string(++count_);
    r.description = description;
    r.measured = measured;
    r.target = target;
    r.tolerance = tolerance;
    r.relation = relation;
    return r;
  }

  int criterion_;
  const ValidationOptions& options_;
  std::vector<CheckResult>& sink_;
  int count_ = 0;
};

double spectral_probability(const DefectLineParams& p, int j0, int j, double t,
                            const QuadratureSpec& quad = {}) {
  const LatticeWindow w = evolution_window(p, j0, t);
  return std::norm(evolve_spectral(basis_state(j0, w), t, p, quad, w).state.at(j));
}

ProbabilityDistribution oracle_distribution(const DefectLineParams& p, int j0, double t) {
  const LatticeWindow w = evolution_window(p, j0, t);
  return probability_distribution(evolve_oracle(basis_state(j0, w), t, p, w));
}

ProbabilityDistribution spectral_distribution(const DefectLineParams& p, int j0, double t,
                                              const QuadratureSpec& quad = {}) {
  const LatticeWindow w = evolution_window(p, j0, t);
  return probability_distribution(evolve_spectral(basis_state(j0, w), t, p, quad, w).state);
}

double oracle_sigma(const DefectLineParams& p, int j0, double t) {
  return std_dev(oracle_distribution(p, j0, t));
}

void peak_reproduction(Checker& c, int jd, double full_target, double bound_target) {
  const auto p = model(3.0, 0.0, jd);
  c.within(fmt("full evolution P_jd at t=30, jd=%g", jd),
           spectral_probability(p, 0, jd, kFigureTime), full_target, 1e-4);
  c.within(fmt("bound-projection P_jd, jd=%g", jd),
           bound_projection_probability(p, jd, 0, kFigureTime), bound_target, 1e-5);
}

void criterion_3(Checker& c) {
  const auto p = model(0.0, 0.5, 1);
  c.within("bound projection at j=1", bound_projection_probability(p, 1, 0, kFigureTime),
           0.003, 5e-4);
  for (int j : {0, 2}) {
    c.within(fmt("bound projection at j=%g", j),
             bound_projection_probability(p, j, 0, kFigureTime), 0.209, 1e-3);
  }
}

void count_check(Checker& c, double alpha, double beta, int expected) {
  const auto p = model(alpha, beta, 0);
  const auto oracle = oracle_out_of_band_eigenvalues(p, 128);
  c.within(fmt("oracle out-of-band eigenvalues, alpha=%g beta=%g", alpha, beta),
           static_cast<double>(oracle.size()), expected, 0.0);
  if (defect_disconnected(p)) return;
  const auto bounds = bound_states(p);
  c.within(fmt("validated bound states, alpha=%g beta=%g", alpha, beta),
           static_cast<double>(bounds.size()), expected, 0.0);
  double worst = 0.0;
  for (const auto& b : bounds) {
    double best = INFINITY;
    for (double mu : oracle) best = std::min(best, std::abs(mu - b.lambda));
    worst = std::max(worst, best);
  }
  if (!bounds.empty()) {
    c.within(fmt("bound energy vs oracle eigenvalue, alpha=%g beta=%g", alpha, beta),
             worst, 0.0, 1e-8);
  }
}

void criterion_4(Checker& c) {
  for (double beta : {-2.0, -1.75, -1.5, -1.25, -1.0, -0.75, -0.5, -0.25, 0.0}) {
    count_check(c, 0.0, beta, 0);
  }
  for (double beta : {0.25, 0.5, 2.0, -2.5}) count_check(c, 0.0, beta, 2);
  for (double alpha : {-3.0, -0.5, 0.5, 3.0}) count_check(c, alpha, 0.0, 1);
}

void criterion_5(Checker& c) {
  const auto p = model(0.0, -1.8, 0);
  const Band band = band_interval(p);
  int out_of_band = 0;
  for (double lambda : bound_candidates(p)) {
    if (!band.contains(lambda, kBandEdgeTolerance)) ++out_of_band;
  }
  c.within("real out-of-band closed-form candidates", out_of_band, 2, 0.0);
  c.within("validated bound states", static_cast<double>(bound_states(p).size()), 0, 0.0);
  c.within("oracle out-of-band eigenvalues",
           static_cast<double>(oracle_out_of_band_eigenvalues(p, 128).size()), 0, 0.0);
}

void criterion_6(Checker& c) {
  struct Job {
    double alpha, beta, t;
  };
  std::vector<Job> jobs;
  for (double alpha : {-3.0, 0.0, 3.0}) {
    for (double beta : {-0.9, -0.5, 0.0, 0.5, 2.0}) {
      for (double t : {5.0, 15.0, 30.0}) jobs.push_back({alpha, beta, t});
    }
  }
  for (const auto& job : jobs) {
    const auto p = model(job.alpha, job.beta, 0);
    if (defect_disconnected(p)) continue;
    c.within(fmt("max |P_spectral - P_oracle|, alpha=%g beta=%g t=%g", job.alpha,
                 job.beta, job.t),
             compare_backends(p, 0, job.t, QuadratureSpec{}, evolution_window(p, 0, job.t)),
             0.0, 1e-8);
  }
}

void criterion_7(Checker& c) {
  const auto p = model(0.0, -1.0, 0);
  for (double t : {1.0, 10.0, 30.0}) {
    c.within(fmt("oracle P_jd with the defect cut off, t=%g", t),
             oracle_distribution(p, 0, t).at(0), 1.0, 1e-12);
  }
}

void criterion_8(Checker& c) {
  for (double alpha : {1.0, 3.0, 5.0}) {
    for (int jd : {0, 2}) {
      const auto plus = spectral_distribution(model(alpha, 0.0, jd), 0, kFigureTime);
      const auto minus = spectral_distribution(model(-alpha, 0.0, jd), 0, kFigureTime);
      double worst = 0.0;
      for (std::size_t i = 0; i < plus.p.size(); ++i) {
        worst = std::max(worst, std::abs(plus.p[i] - minus.p[i]));
      }
      c.within(fmt("max |P(alpha) - P(-alpha)|, alpha=%g jd=%g", alpha, jd), worst, 0.0,
               1e-9);
    }
  }
}

void criterion_9(Checker& c) {
  const auto p = model(0.0, 0.0, 0);
  const double ts[] = {10.0, 20.0, 30.0};
  double st = 0, ss = 0, stt = 0, sts = 0;
  for (double t : ts) {
    const double s = oracle_sigma(p, 0, t);
    st += t;
    ss += s;
    stt += t * t;
    sts += t * s;
  }
  const double slope = (3 * sts - st * ss) / (3 * stt - st * st);
  c.within("relative error of sigma slope vs sqrt(2) gamma",
           slope / (std::numbers::sqrt2 * kGamma) - 1.0, 0.0, 1e-3);
}

void criterion_10(Checker& c) {
  const double free = oracle_sigma(model(0.0, 0.0, 0), 0, kFigureTime);
  const double d1 = oracle_sigma(model(3.0, 0.0, 1), 0, kFigureTime);
  const double d5 = oracle_sigma(model(3.0, 0.0, 5), 0, kFigureTime);
  const double d2 = oracle_sigma(model(3.0, 0.0, 2), 0, kFigureTime);
  const double d0 = oracle_sigma(model(3.0, 0.0, 0), 0, kFigureTime);
  const double b05 = oracle_sigma(model(0.0, -0.5, 0), 0, kFigureTime);
  c.greater("sigma(free) - sigma(|jd-j0|=1)", free - d1, 0.0);
  c.greater("sigma(|jd-j0|=1) - sigma(|jd-j0|=5)", d1 - d5, 0.0);
  c.greater("sigma(|jd-j0|=5) - sigma(|jd-j0|=2)", d5 - d2, 0.0);
  c.greater("sigma(|jd-j0|=2) - sigma(jd=j0)", d2 - d0, 0.0);
  c.greater("sigma(beta=-0.5) - sigma(free)", b05 - free, 0.0);
}

void criterion_11(Checker& c) {
  const std::pair<double, double> evolved[] = {{3.0, 0.0}, {0.0, 0.5}, {0.0, -0.9}, {-3.0, 2.0}};
  for (const auto& [alpha, beta] : evolved) {
    const auto p = model(alpha, beta, 0);
    const LatticeWindow w = evolution_window(p, 0, kFigureTime);
    const auto psi0 = basis_state(0, w);
    c.within(fmt("spectral norm deviation, alpha=%g beta=%g", alpha, beta),
             evolve_spectral(psi0, kFigureTime, p, {}, w).report.norm_deviation, 0.0, 1e-10);
    c.within(fmt("oracle norm deviation, alpha=%g beta=%g", alpha, beta),
             std::abs(evolve_oracle(psi0, kFigureTime, p, w).norm_squared() - 1.0), 0.0,
             1e-10);
  }
  const std::pair<double, double> complete[] = {
      {0.0, 0.0}, {3.0, 0.0}, {0.0, 2.0}, {0.0, 0.5}, {3.0, -0.5}};
  for (const auto& [alpha, beta] : complete) {
    c.within(fmt("completeness residual (2048 nodes, radius 40), alpha=%g beta=%g", alpha,
                 beta),
             completeness_residual(model(alpha, beta, 0), QuadratureSpec{2048}, 40), 0.0,
             1e-8);
  }
  const std::pair<double, double> ortho[] = {{3.0, 0.0}, {0.0, 0.5}, {0.0, 2.0}};
  for (const auto& [alpha, beta] : ortho) {
    const auto r = orthonormality_residuals(model(alpha, beta, 0), QuadratureSpec{}, 60);
    c.within(fmt("max |<odd_k|bound>|, alpha=%g beta=%g", alpha, beta), r.odd_bound, 0.0,
             1e-10);
    c.within(fmt("max |<even_k|bound>|, alpha=%g beta=%g", alpha, beta), r.even_bound, 0.0,
             1e-8);
    c.within(fmt("max |<b|b'> - delta|, alpha=%g beta=%g", alpha, beta), r.bound_bound, 0.0,
             1e-8);
  }
  const std::pair<double, double> doubled[] = {{3.0, 0.0}, {0.0, 0.5}, {0.0, -0.5}};
  for (const auto& [alpha, beta] : doubled) {
    const auto p = model(alpha, beta, 0);
    const auto coarse = spectral_distribution(p, 0, kFigureTime, QuadratureSpec{1024});
    const auto fine = spectral_distribution(p, 0, kFigureTime, QuadratureSpec{2048});
    double worst = 0.0;
    for (std::size_t i = 0; i < fine.p.size(); ++i) {
      worst = std::max(worst, std::abs(fine.p[i] - coarse.p[i]));
    }
    c.within(fmt("max |P(1024 nodes) - P(2048 nodes)|, alpha=%g beta=%g", alpha, beta),
             worst, 0.0, 1e-9);
  }
}

// Mean spacing of local maxima, each refined by a parabola through the
// neighbouring samples.
double mean_peak_spacing(const std::vector<double>& ts, const std::vector<double>& ps) {
  std::vector<double> peaks;
  for (std::size_t i = 1; i + 1 < ps.size(); ++i) {
    if (ps[i] > ps[i - 1] && ps[i] >= ps[i + 1]) {
      const double dt = ts[i + 1] - ts[i];
      const double denom = ps[i - 1] - 2 * ps[i] + ps[i + 1];
      const double shift = denom != 0.0 ? 0.5 * (ps[i - 1] - ps[i + 1]) / denom : 0.0;
      peaks.push_back(ts[i] + shift * dt);
    }
  }
  if (peaks.size() < 2) return NAN;
  return (peaks.back() - peaks.front()) / static_cast<double>(peaks.size() - 1);
}

void criterion_12(Checker& c) {
  const auto p = model(0.0, 0.5, 0);
  const auto bounds = bound_states(p);
  const double period = interference_period(bounds);
  const double t_end = kFigureTime + 10.0 * period;
  const OracleEigensystem oracle(p, evolution_window(p, 0, t_end));
  const auto psi0 = basis_state(0, oracle.window());
  std::vector<double> ts;
  std::vector<double> ps;
  const double dt = period / 200.0;
  for (double t = kFigureTime; t <= t_end; t += dt) {
    ts.push_back(t);
    ps.push_back(std::norm(oracle.evolve(psi0, t).at(0)));
  }
  c.within("relative error of simulated oscillation period vs 2pi/(l+ - l-)",
           mean_peak_spacing(ts, ps) / period - 1.0, 0.0, 0.01);
  const double full = std::norm(oracle.evolve(psi0, kFigureTime).at(0));
  c.within("relative gap, two-bound closed form vs full P_jd at t=30",
           two_bound_defect_probability(p, kFigureTime) / full - 1.0, 0.0, 0.05);
}

bool selected(const ValidationOptions& options, int criterion) {
  return options.only.empty() ||
         std::find(options.only.begin(), options.only.end(), criterion) != options.only.end();
}

}  // namespace

std::string criterion_title(int criterion) {
  switch (criterion) {
    case 1: return "peak reproduction, defect at the start node";
    case 2: return "peak reproduction, defect next to the start node";
    case 3: return "two-bound-state projections, transition defect";
    case 4: return "bound-state counting against the truncated spectrum";
    case 5: return "rejection of spurious closed-form roots";
    case 6: return "spectral vs oracle backend equivalence";
    case 7: return "disconnected defect keeps the walker";
    case 8: return "alpha-sign symmetry of distributions";
    case 9: return "free-line spreading rate";
    case 10: return "spreading-speed ordering";
    case 11: return "structural invariants";
    case 12: return "two-bound-state interference";
    default: return "unknown";
  }
}

std::vector<CheckResult> run_validation(const ValidationOptions& options) {
  std::vector<CheckResult> results;
  for (int n = 1; n <= kCriterionCount; ++n) {
    if (!selected(options, n)) continue;
    Checker c(n, options, results);
    switch (n) {
      case 1: peak_reproduction(c, 0, 0.692427, 0.692308); break;
      case 2: peak_reproduction(c, 1, 0.0637546, 0.063466); break;
      case 3: criterion_3(c); break;
      case 4: criterion_4(c); break;
      case 5: criterion_5(c); break;
      case 6: criterion_6(c); break;
      case 7: criterion_7(c); break;
      case 8: criterion_8(c); break;
      case 9: criterion_9(c); break;
      case 10: criterion_10(c); break;
      case 11: criterion_11(c); break;
      case 12: criterion_12(c); break;
    }
  }
  return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CheckResult& r) { return r.passed; });
}

nlohmann::json validation_report(const std::vector<CheckResult>& results) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& r : results) {
    checks.push_back({{"criterion", r.criterion},
                      {"id", r.id},
                      {"description", r.description},
                      {"measured", r.measured},
                      {"target", r.target},
                      {"tolerance", r.tolerance},
                      {"relation", r.relation == Relation::kWithin ? "within" : "greater"},
                      {"pass", r.passed}});
  }
  nlohmann::json criteria = nlohmann::json::array();
  for (int n = 1; n <= kCriterionCount; ++n) {
    bool any = false;
    bool pass = true;
    for (const auto& r : results) {
      if (r.criterion != n) continue;
      any = true;
      pass = pass && r.passed;
    }
    if (any) criteria.push_back({{"criterion", n}, {"title", criterion_title(n)}, {"pass", pass}});
  }
  return {{"code_version", code_version()},
          {"pass", all_passed(results)},
          {"criteria", criteria},
          {"checks", checks}};
}

}  // namespace defectwalk
