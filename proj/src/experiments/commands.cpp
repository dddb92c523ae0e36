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

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <optional>
#include <thread>

#include "defectwalk/errors.hpp"
#include "defectwalk/experiments.hpp"
#include "defectwalk/observables.hpp"
#include "defectwalk/propagator.hpp"
#include "defectwalk/spectral.hpp"

namespace defectwalk {

namespace {

using nlohmann::json;

// Runs fn(0..n-1) on a small pool; results come back in index order.
template <class Fn>
auto parallel_map(std::size_t n, Fn fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using R = decltype(fn(std::size_t{}));
  std::vector<std::optional<R>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        slots[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads =
      std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  std::vector<R> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

std::string short_number(double v) {
  if (v == 0.0) v = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string label(SweepVariable var, double v) {
  return to_string(var) + "_" + short_number(v);
}

json params_json(const DefectLineParams& p) {
  return json{{"epsilon", p.epsilon}, {"gamma", p.gamma}, {"alpha", p.alpha},
              {"beta", p.beta}, {"jd", p.j_defect}};
}

json window_json(const LatticeWindow& w) {
  return json{{"center", w.center()}, {"radius", w.radius()}};
}

json quadrature_json(const QuadratureSpec& q) {
  return json{{"rule", "gauss-legendre"}, {"interval", "(0, pi)"}, {"n_nodes", q.n_nodes}};
}

json bound_states_json(const DefectLineParams& p) {
  json out = json::array();
  if (defect_disconnected(p)) return out;
  for (const auto& b : bound_states(p)) {
    out.push_back(json{{"lambda", b.lambda}, {"branch", b.branch},
                       {"decay_base", b.decay_base}, {"norm", b.norm},
                       {"c_center", b.c_center}, {"c_adjacent", b.c_adjacent}});
  }
  return out;
}

json base_metadata(const std::string& command, const ExperimentConfig& c) {
  json m{{"command", command},
         {"code_version", code_version()},
         {"params", params_json(c.params)},
         {"j0", c.j0},
         {"times", c.times},
         {"backend_requested", to_string(c.backend)},
         {"quadrature", quadrature_json(c.quadrature)},
         {"window_buffer", c.window_buffer}};
  if (c.sweep) {
    m["sweep"] = json{{"variable", to_string(c.sweep->variable)}, {"grid", c.sweep->grid}};
  }
  return m;
}

struct Point {
  DefectLineParams params;
  std::vector<double> times;
  std::optional<double> sweep_value;
};

std::vector<Point> points_of(const ExperimentConfig& c) {
  if (!c.sweep) return {Point{c.params, c.times, std::nullopt}};
  std::vector<Point> out;
  for (double v : c.sweep->grid) {
    Point p{c.params, c.times, v};
    switch (c.sweep->variable) {
      case SweepVariable::kAlpha: p.params.alpha = v; break;
      case SweepVariable::kBeta: p.params.beta = v; break;
      case SweepVariable::kJd: p.params.j_defect = static_cast<int>(std::lround(v)); break;
      case SweepVariable::kT: p.times = {v}; break;
    }
    out.push_back(p);
  }
  return out;
}

void require_sweep(const ExperimentConfig& c, const char* command) {
  if (!c.sweep || (c.sweep->variable != SweepVariable::kAlpha &&
                   c.sweep->variable != SweepVariable::kBeta)) {
    throw ConfigError(std::string(command) + " needs --sweep alpha:... or beta:...");
  }
}

std::string prefixed(const std::string& prefix, const std::string& name) {
  return prefix.empty() ? name : prefix + "_" + name;
}

}  // namespace

std::vector<Dataset> run_bound_energy(const ExperimentConfig& config) {
  config.validate();
  require_sweep(config, "bound-energy");
  const auto points = points_of(config);

  struct Row {
    std::vector<double> energies;
    bool forced;
  };
  const auto rows = parallel_map(points.size(), [&](std::size_t i) {
    const auto& p = points[i].params;
    if (defect_disconnected(p)) return Row{oracle_out_of_band_eigenvalues(p), true};
    std::vector<double> e;
    for (const auto& b : bound_states(p)) e.push_back(b.lambda);
    return Row{e, false};
  });

  Dataset d;
  d.name = "bound_energy_" + to_string(config.sweep->variable);
  d.header = {to_string(config.sweep->variable), "count", "lambda_1", "lambda_2"};
  d.metadata = base_metadata("bound-energy", config);
  d.metadata["backend"] = "spectral";
  json forced = json::array();
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::vector<std::string> cells{format_real(*points[i].sweep_value),
                                   std::to_string(rows[i].energies.size())};
    for (std::size_t k = 0; k < 2; ++k) {
      cells.push_back(k < rows[i].energies.size() ? format_real(rows[i].energies[k]) : "");
    }
    d.rows.push_back(std::move(cells));
    if (rows[i].forced) forced.push_back(*points[i].sweep_value);
  }
  // Disconnected points are counted from the truncated Hamiltonian.
  d.metadata["oracle_forced_at"] = forced;
  return {d};
}

std::vector<Dataset> run_evolve(const ExperimentConfig& config) {
  config.validate();
  struct Job {
    Point point;
    double t;
  };
  std::vector<Job> jobs;
  for (const auto& p : points_of(config)) {
    for (double t : p.times) jobs.push_back({p, t});
  }

  auto datasets = parallel_map(jobs.size(), [&](std::size_t i) {
    const auto& job = jobs[i];
    const auto& params = job.point.params;
    const ResolvedBackend backend = resolve_backend(config.backend, params);
    const LatticeWindow window =
        evolution_window(params, config.j0, job.t, config.window_buffer);
    const NodeState psi0 = basis_state(config.j0, window);

    Dataset d;
    d.name = "evolve";
    if (config.sweep && config.sweep->variable != SweepVariable::kT) {
      d.name += "_" + label(config.sweep->variable, *job.point.sweep_value);
    }
    d.name += "_t_" + short_number(job.t);
    d.metadata = base_metadata("evolve", config);
    d.metadata["params"] = params_json(params);
    d.metadata["t"] = job.t;
    d.metadata["backend"] = backend.label;
    d.metadata["window"] = window_json(window);
    d.metadata["bound_states"] = bound_states_json(params);

    std::optional<SpectralEvolution> spectral;
    std::optional<NodeState> oracle;
    double runtime = 0.0;
    if (backend.spectral) {
      spectral = evolve_spectral(psi0, job.t, params, config.quadrature, window);
      d.metadata["norm_deviation"] = spectral->report.norm_deviation;
      d.metadata["bound_weight"] = spectral->report.bound_weight;
      runtime += spectral->report.runtime_seconds;
    }
    if (backend.oracle) {
      const auto start = std::chrono::steady_clock::now();
      oracle = evolve_oracle(psi0, job.t, params, window);
      runtime += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      d.metadata[spectral ? "oracle_norm_deviation" : "norm_deviation"] =
          std::abs(oracle->norm_squared() - 1.0);
    }
    d.metadata["runtime_seconds"] = runtime;

    if (spectral && oracle) {
      d.header = {"j", "P_spectral", "P_oracle"};
    } else {
      d.header = {"j", "P"};
    }
    double max_diff = 0.0;
    for (std::size_t n = 0; n < window.size(); ++n) {
      std::vector<std::string> row{std::to_string(window.node(n))};
      if (spectral) row.push_back(format_real(std::norm(spectral->state.amplitudes[n])));
      if (oracle) row.push_back(format_real(std::norm(oracle->amplitudes[n])));
      if (spectral && oracle) {
        max_diff = std::max(max_diff, std::abs(std::norm(spectral->state.amplitudes[n]) -
                                               std::norm(oracle->amplitudes[n])));
      }
      d.rows.push_back(std::move(row));
    }
    if (spectral && oracle) d.metadata["max_backend_difference"] = max_diff;
    return d;
  });
  return datasets;
}

std::vector<Dataset> run_defect_prob(const ExperimentConfig& config) {
  config.validate();
  require_sweep(config, "defect-prob");
  if (config.times.size() != 1) {
    throw ConfigError("defect-prob takes exactly one time");
  }
  const double t = config.times.front();
  const auto points = points_of(config);

  struct Row {
    std::optional<double> spectral;
    std::optional<double> oracle;
    bool forced;
  };
  const auto rows = parallel_map(points.size(), [&](std::size_t i) {
    const auto& params = points[i].params;
    const ResolvedBackend backend = resolve_backend(config.backend, params);
    Row row{std::nullopt, std::nullopt, backend.label == "oracle (forced)"};
    if (backend.spectral) {
      const int reach = std::abs(params.j_defect - config.j0) + 2;
      const NodeState psi0 = basis_state(config.j0, LatticeWindow(config.j0, reach));
      row.spectral = std::norm(
          spectral_amplitude(psi0, params.j_defect, t, params, config.quadrature));
    }
    if (backend.oracle) {
      const LatticeWindow window =
          evolution_window(params, config.j0, t, config.window_buffer);
      row.oracle = std::norm(evolve_oracle(basis_state(config.j0, window), t, params, window)
                                 .at(params.j_defect));
    }
    return row;
  });

  Dataset d;
  d.name = "defect_prob_" + to_string(config.sweep->variable);
  const bool both = config.backend == Backend::kBoth;
  d.header = {to_string(config.sweep->variable)};
  if (both) {
    d.header.push_back("P_jd_spectral");
    d.header.push_back("P_jd_oracle");
  } else {
    d.header.push_back("P_jd");
  }
  d.metadata = base_metadata("defect-prob", config);
  d.metadata["t"] = t;
  d.metadata["backend"] = to_string(config.backend);
  json forced = json::array();
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& r = rows[i];
    std::vector<std::string> cells{format_real(*points[i].sweep_value)};
    if (both) {
      cells.push_back(r.spectral ? format_real(*r.spectral) : "");
      cells.push_back(r.oracle ? format_real(*r.oracle) : "");
    } else {
      cells.push_back(format_real(r.spectral ? *r.spectral : *r.oracle));
    }
    if (r.forced) forced.push_back(*points[i].sweep_value);
    d.rows.push_back(std::move(cells));
  }
  d.metadata["oracle_forced_at"] = forced;
  return {d};
}

std::vector<Dataset> run_sigma(const ExperimentConfig& config) {
  config.validate();
  std::vector<double> times = config.times;
  std::vector<Point> series;
  std::vector<std::string> names;

  DefectLineParams free = config.params;
  free.alpha = 0.0;
  free.beta = 0.0;
  series.push_back({free, {}, std::nullopt});
  names.push_back("sigma_free");
  if (config.sweep && config.sweep->variable == SweepVariable::kT) {
    times = config.sweep->grid;
    series.push_back({config.params, {}, std::nullopt});
    names.push_back("sigma");
  } else if (config.sweep) {
    for (const auto& p : points_of(config)) {
      series.push_back(p);
      names.push_back("sigma_" + to_string(config.sweep->variable) + "=" +
                      short_number(*p.sweep_value));
    }
  } else {
    series.push_back({config.params, {}, std::nullopt});
    names.push_back("sigma");
  }
  const double t_max = *std::max_element(times.begin(), times.end());

  struct Series {
    std::vector<double> sigma;
    std::string backend;
    double backend_difference;
    LatticeWindow window;
  };
  const auto results = parallel_map(series.size(), [&](std::size_t s) {
    const auto& params = series[s].params;
    const ResolvedBackend backend = resolve_backend(config.backend, params);
    const LatticeWindow window =
        evolution_window(params, config.j0, t_max, config.window_buffer);
    const NodeState psi0 = basis_state(config.j0, window);
    Series out{{}, backend.label, 0.0, window};
    std::optional<OracleEigensystem> oracle;
    if (backend.oracle) oracle.emplace(params, window);
    for (double t : times) {
      std::optional<double> sigma_oracle;
      std::optional<double> sigma_spectral;
      if (oracle) sigma_oracle = std_dev(probability_distribution(oracle->evolve(psi0, t)));
      if (backend.spectral) {
        sigma_spectral = std_dev(probability_distribution(
            evolve_spectral(psi0, t, params, config.quadrature, window).state));
      }
      if (sigma_oracle && sigma_spectral) {
        out.backend_difference =
            std::max(out.backend_difference, std::abs(*sigma_oracle - *sigma_spectral));
      }
      out.sigma.push_back(sigma_oracle ? *sigma_oracle : *sigma_spectral);
    }
    return out;
  });

  Dataset d;
  d.name = "sigma";
  if (config.sweep && config.sweep->variable != SweepVariable::kT) {
    d.name += "_" + to_string(config.sweep->variable);
  }
  d.header = {"t"};
  d.header.insert(d.header.end(), names.begin(), names.end());
  d.metadata = base_metadata("sigma", config);
  d.metadata["times"] = times;
  json meta = json::array();
  for (std::size_t s = 0; s < series.size(); ++s) {
    json entry{{"column", names[s]},
               {"params", params_json(series[s].params)},
               {"backend", results[s].backend},
               {"window", window_json(results[s].window)},
               {"bound_states", bound_states_json(series[s].params)}};
    if (config.backend == Backend::kBoth && results[s].backend == "both") {
      entry["max_sigma_backend_difference"] = results[s].backend_difference;
    }
    meta.push_back(entry);
  }
  d.metadata["series"] = meta;
  for (std::size_t i = 0; i < times.size(); ++i) {
    std::vector<std::string> row{format_real(times[i])};
    for (const auto& r : results) row.push_back(format_real(r.sigma[i]));
    d.rows.push_back(std::move(row));
  }
  return {d};
}

std::vector<Dataset> run_figure(int figure, const ExperimentConfig& base) {
  ExperimentConfig c;
  c.quadrature = base.quadrature;
  c.window_buffer = base.window_buffer;
  c.backend = base.backend;
  c.out_dir = base.out_dir;
  c.params = make_params(2.0, 1.0, 0.0, 0.0, 0);
  c.j0 = 0;
  c.times = {30.0};

  const std::string prefix = "fig" + std::to_string(figure);
  std::vector<Dataset> out;
  auto collect = [&](std::vector<Dataset> ds, const std::string& tag = "") {
    for (auto& d : ds) {
      d.name = prefixed(prefix, prefixed(tag, d.name));
      d.metadata["figure"] = figure;
      out.push_back(std::move(d));
    }
  };
  const Sweep defect_positions{SweepVariable::kJd, {0, 1, 2, 5}};
  const Sweep transition_strengths{SweepVariable::kBeta, {-0.9, -0.5, 0.5, 2.0}};
  std::vector<double> sigma_times;
  for (int i = 0; i <= 60; ++i) sigma_times.push_back(0.5 * i);

  switch (figure) {
    case 1:
      c.sweep = parse_sweep("alpha:-6:6:0.1");
      collect(run_bound_energy(c));
      break;
    case 2: {
      collect(run_evolve(c), "free");
      c.params.alpha = 3.0;
      c.sweep = defect_positions;
      collect(run_evolve(c));
      c.sweep = parse_sweep("alpha:-6:6:0.1");
      for (int jd : {0, 1, 2, 5}) {
        c.params.j_defect = jd;
        collect(run_defect_prob(c), "jd_" + std::to_string(jd));
      }
      break;
    }
    case 3:
      c.params.alpha = 3.0;
      c.times = sigma_times;
      c.sweep = defect_positions;
      collect(run_sigma(c));
      break;
    case 4:
      c.sweep = parse_sweep("beta:-4:4:0.1");
      collect(run_bound_energy(c));
      break;
    case 5:
      collect(run_evolve(c), "free");
      c.sweep = transition_strengths;
      collect(run_evolve(c));
      break;
    case 6:
      c.sweep = parse_sweep("beta:-4:4:0.1");
      collect(run_defect_prob(c));
      break;
    case 7:
      c.times = sigma_times;
      c.sweep = transition_strengths;
      collect(run_sigma(c));
      break;
    case 8:
      c.sweep = Sweep{SweepVariable::kJd, {1, 2, 5}};
      for (double beta : {-0.5, 0.5}) {
        c.params.beta = beta;
        collect(run_evolve(c), "beta_" + short_number(beta));
      }
      break;
    default:
      throw ConfigError("figures are numbered 1 to 8");
  }
  return out;
}

}  // namespace defectwalk
