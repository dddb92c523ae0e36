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
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <string>

#include "defectwalk/errors.hpp"
#include "defectwalk/experiments.hpp"

namespace defectwalk {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_real(std::string_view key, std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw ConfigError("invalid number for '" + std::string(key) + "': '" +
                      std::string(text) + "'");
  }
  return value;
}

int parse_int(std::string_view key, std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError("invalid integer for '" + std::string(key) + "': '" +
                      std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = s.find(sep, pos);
    out.push_back(s.substr(pos, next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

double snap(double v) { return std::round(v * 1e12) / 1e12 + 0.0; }

}  // namespace

std::string to_string(Backend backend) {
  switch (backend) {
    case Backend::kSpectral: return "spectral";
    case Backend::kOracle: return "oracle";
    case Backend::kBoth: return "both";
  }
  return "?";
}

std::string to_string(SweepVariable variable) {
  switch (variable) {
    case SweepVariable::kAlpha: return "alpha";
    case SweepVariable::kBeta: return "beta";
    case SweepVariable::kJd: return "jd";
    case SweepVariable::kT: return "t";
  }
  return "?";
}

Sweep parse_sweep(std::string_view text) {
  const auto parts = split(trim(text), ':');
  if (parts.size() != 4) {
    throw ConfigError("sweep must look like <var>:<start>:<stop>:<step>");
  }
  Sweep sweep;
  const std::string_view var = trim(parts[0]);
  if (var == "alpha") {
    sweep.variable = SweepVariable::kAlpha;
  } else if (var == "beta") {
    sweep.variable = SweepVariable::kBeta;
  } else if (var == "jd") {
    sweep.variable = SweepVariable::kJd;
  } else if (var == "t") {
    sweep.variable = SweepVariable::kT;
  } else {
    throw ConfigError("unknown sweep variable '" + std::string(var) + "'");
  }
  const double start = parse_real("sweep", parts[1]);
  const double stop = parse_real("sweep", parts[2]);
  const double step = parse_real("sweep", parts[3]);
  if (!(step > 0.0) || stop < start) {
    throw ConfigError("sweep needs step > 0 and stop >= start");
  }
  const double span = (stop - start) / step;
  if (span > 1e6) throw ConfigError("sweep grid too large");
  const int count = static_cast<int>(std::floor(span + 1e-9)) + 1;
  for (int i = 0; i < count; ++i) sweep.grid.push_back(snap(start + i * step));
  return sweep;
}

void apply_setting(ExperimentConfig& config, std::string_view key,
                   std::string_view value) {
  key = trim(key);
  value = trim(value);
  if (key == "epsilon") {
    config.params.epsilon = parse_real(key, value);
  } else if (key == "gamma") {
    config.params.gamma = parse_real(key, value);
  } else if (key == "alpha") {
    config.params.alpha = parse_real(key, value);
  } else if (key == "beta") {
    config.params.beta = parse_real(key, value);
  } else if (key == "jd") {
    config.params.j_defect = parse_int(key, value);
  } else if (key == "j0") {
    config.j0 = parse_int(key, value);
  } else if (key == "t") {
    config.times.clear();
    for (auto item : split(value, ',')) config.times.push_back(parse_real(key, item));
  } else if (key == "sweep") {
    config.sweep = parse_sweep(value);
  } else if (key == "nodes") {
    config.quadrature.n_nodes = parse_int(key, value);
  } else if (key == "buffer") {
    config.window_buffer = parse_int(key, value);
  } else if (key == "backend") {
    if (value == "spectral") {
      config.backend = Backend::kSpectral;
    } else if (value == "oracle") {
      config.backend = Backend::kOracle;
    } else if (value == "both") {
      config.backend = Backend::kBoth;
    } else {
      throw ConfigError("backend must be spectral, oracle or both");
    }
  } else if (key == "out") {
    config.out_dir = std::string(value);
  } else {
    throw ConfigError("unknown setting '" + std::string(key) + "'");
  }
}

void load_config_file(ExperimentConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                        ": expected key = value");
    }
    apply_setting(config, view.substr(0, eq), view.substr(eq + 1));
  }
}

void ExperimentConfig::validate() const {
  try {
    make_params(params.epsilon, params.gamma, params.alpha, params.beta,
                params.j_defect);
  } catch (const InvalidParameterError& e) {
    throw ConfigError(e.what());
  }
  if (times.empty()) throw ConfigError("at least one time is required");
  for (double t : times) {
    if (!(t >= 0.0)) throw ConfigError("times must be non-negative");
  }
  if (sweep) {
    if (sweep->grid.empty()) throw ConfigError("sweep grid is empty");
    for (double v : sweep->grid) {
      if (sweep->variable == SweepVariable::kT && v < 0.0) {
        throw ConfigError("swept times must be non-negative");
      }
      if (sweep->variable == SweepVariable::kJd && v != std::round(v)) {
        throw ConfigError("swept defect positions must be integers");
      }
    }
  }
  if (quadrature.n_nodes <= 0) throw ConfigError("nodes must be positive");
  if (window_buffer < 0) throw ConfigError("buffer must be non-negative");
}

}  // namespace defectwalk
