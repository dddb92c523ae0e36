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

#ifndef DEFECTWALK_EXPERIMENTS_HPP
#define DEFECTWALK_EXPERIMENTS_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "defectwalk/lattice.hpp"
#include "defectwalk/quadrature.hpp"
#include "json.hpp"

namespace defectwalk {

enum class Backend { kSpectral, kOracle, kBoth };
enum class SweepVariable { kAlpha, kBeta, kJd, kT };

std::string to_string(Backend backend);
std::string to_string(SweepVariable variable);

struct Sweep {
  SweepVariable variable;
  std::vector<double> grid;
};

// Parses "<var>:<start>:<stop>:<step>". Grid points are start + i * step
// snapped to 1e-12, so nominal values such as 0 are hit exactly.
Sweep parse_sweep(std::string_view text);

struct ExperimentConfig {
  DefectLineParams params{2.0, 1.0, 0.0, 0.0, 0};
  int j0 = 0;
  std::vector<double> times{30.0};
  std::optional<Sweep> sweep;
  QuadratureSpec quadrature;
  int window_buffer = kDefaultBuffer;
  Backend backend = Backend::kSpectral;
  std::filesystem::path out_dir = "out";

  // Throws ConfigError.
  void validate() const;
};

// One "key = value" setting, shared by config files and command-line flags.
// Keys: epsilon gamma alpha beta jd j0 t sweep nodes buffer backend out.
// "t" takes a comma-separated list. Throws ConfigError.
void apply_setting(ExperimentConfig& config, std::string_view key,
                   std::string_view value);

// Flat key-value file; '#' starts a comment. Throws ConfigError.
void load_config_file(ExperimentConfig& config, const std::filesystem::path& path);

// Tabular output plus its JSON sidecar.
struct Dataset {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  nlohmann::json metadata;
};

// 12 significant digits, scientific notation.
std::string format_real(double value);

std::string to_csv(const Dataset& dataset);
// Writes <dir>/<name>.csv and <dir>/<name>.json.
void write_dataset(const Dataset& dataset, const std::filesystem::path& dir);

std::string code_version();

// Backend actually used for a configuration: a disconnected defect forces the
// oracle and is labelled "oracle (forced)".
struct ResolvedBackend {
  bool spectral;
  bool oracle;
  std::string label;
};
ResolvedBackend resolve_backend(Backend requested, const DefectLineParams& params);

// Number of eigenvalues of the truncated Hamiltonian lying outside the band
// by more than `margin`.
std::vector<double> oracle_out_of_band_eigenvalues(const DefectLineParams& params,
                                                   int radius = 128,
                                                   double margin = 1e-9);

std::vector<Dataset> run_bound_energy(const ExperimentConfig& config);
std::vector<Dataset> run_evolve(const ExperimentConfig& config);
std::vector<Dataset> run_defect_prob(const ExperimentConfig& config);
std::vector<Dataset> run_sigma(const ExperimentConfig& config);

// Figure presets 1..8. Only the quadrature, buffer, backend and output
// directory of `base` are honored; model parameters are pinned.
std::vector<Dataset> run_figure(int figure, const ExperimentConfig& base);

}  // namespace defectwalk

#endif  // DEFECTWALK_EXPERIMENTS_HPP
