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

// Command-line front end: single experiments, figure presets and the
// acceptance suite.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "defectwalk/errors.hpp"
#include "defectwalk/experiments.hpp"
#include "defectwalk/validation.hpp"

namespace dw = defectwalk;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidationFailed = 1;
constexpr int kExitConfigError = 2;

// Raw flag values; applied on top of the config file so flags win.
struct Flags {
  std::string config;
  std::vector<std::pair<std::string, std::string>> settings;
  std::vector<std::string> times;
};

void add_model_flags(CLI::App& app, Flags& flags) {
  app.add_option("--config", flags.config, "key=value config file");
  for (const char* key : {"epsilon", "gamma", "alpha", "beta", "jd", "j0", "sweep",
                          "nodes", "buffer", "backend", "out"}) {
    const std::string name = std::string("--") + key;
    app.add_option_function<std::string>(
        name, [&flags, key](const std::string& v) { flags.settings.emplace_back(key, v); },
        std::string("set ") + key);
  }
  app.add_option("--t", flags.times, "evolution time (repeatable or comma list)");
}

dw::ExperimentConfig resolve(const Flags& flags) {
  dw::ExperimentConfig config;
  if (!flags.config.empty()) dw::load_config_file(config, flags.config);
  for (const auto& [key, value] : flags.settings) dw::apply_setting(config, key, value);
  if (!flags.times.empty()) {
    std::string joined;
    for (const auto& t : flags.times) joined += (joined.empty() ? "" : ",") + t;
    dw::apply_setting(config, "t", joined);
  }
  config.validate();
  return config;
}

void emit(const std::vector<dw::Dataset>& datasets, const std::filesystem::path& dir) {
  for (const auto& d : datasets) {
    dw::write_dataset(d, dir);
    std::printf("wrote %s\n", (dir / (d.name + ".csv")).string().c_str());
  }
}

int run_validate(const std::filesystem::path& out, double scale, const std::vector<int>& only) {
  dw::ValidationOptions options;
  options.tolerance_scale = scale;
  options.only = only;
  const auto results = dw::run_validation(options);
  for (const auto& r : results) {
    if (r.relation == dw::Relation::kWithin) {
      std::printf("%-5s %-6s %s: measured %.6e, target %.6e, tol %.1e\n",
                  r.passed ? "PASS" : "FAIL", r.id.c_str(), r.description.c_str(),
                  r.measured, r.target, r.tolerance * scale);
    } else {
      std::printf("%-5s %-6s %s: measured %.6e > %.6e\n", r.passed ? "PASS" : "FAIL",
                  r.id.c_str(), r.description.c_str(), r.measured, r.target);
    }
  }
  std::filesystem::create_directories(out);
  std::ofstream(out / "validation.json") << dw::validation_report(results).dump(2) << "\n";
  const bool ok = dw::all_passed(results);
  std::printf("%s (%zu checks)\n", ok ? "all checks passed" : "validation FAILED",
              results.size());
  return ok ? kExitOk : kExitValidationFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Continuous-time quantum walks on a line with a single defect"};
  app.set_version_flag("--version", dw::code_version());
  app.require_subcommand(1);

  Flags flags;
  using Runner = std::vector<dw::Dataset> (*)(const dw::ExperimentConfig&);
  std::vector<std::pair<CLI::App*, Runner>> runners;
  const std::pair<const char*, Runner> commands[] = {
      {"bound-energy", dw::run_bound_energy},
      {"evolve", dw::run_evolve},
      {"defect-prob", dw::run_defect_prob},
      {"sigma", dw::run_sigma},
  };
  const char* help[] = {"bound-state energies over a sweep",
                        "probability distribution at each time",
                        "defect-site probability over a sweep",
                        "standard deviation against time"};
  for (std::size_t i = 0; i < std::size(commands); ++i) {
    auto* sub = app.add_subcommand(commands[i].first, help[i]);
    add_model_flags(*sub, flags);
    runners.emplace_back(sub, commands[i].second);
  }

  std::vector<std::pair<CLI::App*, int>> figures;
  for (int n = 1; n <= 8; ++n) {
    auto* sub = app.add_subcommand("fig" + std::to_string(n),
                                   "datasets for figure preset " + std::to_string(n));
    add_model_flags(*sub, flags);
    figures.emplace_back(sub, n);
  }

  std::string validate_out = "out";
  double scale = 1.0;
  std::vector<int> only;
  auto* validate = app.add_subcommand("validate", "run the acceptance suite");
  validate->add_option("--out", validate_out, "directory for validation.json");
  validate->add_option("--tolerance-scale", scale, "multiply every tolerance")
      ->check(CLI::NonNegativeNumber);
  validate->add_option("--only", only, "criteria to run (1-12), repeatable or comma list")
      ->delimiter(',')
      ->check(CLI::Range(1, dw::kCriterionCount));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (validate->parsed()) return run_validate(validate_out, scale, only);
    for (const auto& [sub, runner] : runners) {
      if (!sub->parsed()) continue;
      const auto config = resolve(flags);
      emit(runner(config), config.out_dir);
    }
    for (const auto& [sub, n] : figures) {
      if (!sub->parsed()) continue;
      const auto config = resolve(flags);
      emit(dw::run_figure(n, config), config.out_dir / ("fig" + std::to_string(n)));
    }
  } catch (const dw::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfigError;
  } catch (const dw::InvalidParameterError& e) {
    std::fprintf(stderr, "invalid parameter: %s\n", e.what());
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidationFailed;
  }
  return kExitOk;
}
