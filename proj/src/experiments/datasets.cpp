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

#include <cstdio>
#include <fstream>

#include "defectwalk/errors.hpp"
#include "defectwalk/experiments.hpp"
#include "defectwalk/propagator.hpp"

namespace defectwalk {

std::string format_real(double value) {
  if (value == 0.0) value = 0.0;  // no "-0"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.11e", value);
  return buf;
}

std::string to_csv(const Dataset& dataset) {
  std::string out;
  auto emit = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  emit(dataset.header);
  for (const auto& row : dataset.rows) emit(row);
  return out;
}

void write_dataset(const Dataset& dataset, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream csv(dir / (dataset.name + ".csv"), std::ios::binary);
    csv << to_csv(dataset);
    if (!csv) throw Error("failed writing " + dataset.name + ".csv");
  }
  std::ofstream json(dir / (dataset.name + ".json"), std::ios::binary);
  json << dataset.metadata.dump(2) << '\n';
  if (!json) throw Error("failed writing " + dataset.name + ".json");
}

std::string code_version() {
#ifdef DEFECTWALK_VERSION
  return DEFECTWALK_VERSION;
#else
  return "unknown";
#endif
}

ResolvedBackend resolve_backend(Backend requested, const DefectLineParams& params) {
  const bool want_spectral = requested != Backend::kOracle;
  const bool want_oracle = requested != Backend::kSpectral;
  if (want_spectral && defect_disconnected(params)) {
    return {false, true, "oracle (forced)"};
  }
  return {want_spectral, want_oracle, to_string(requested)};
}

std::vector<double> oracle_out_of_band_eigenvalues(const DefectLineParams& params,
                                                   int radius, double margin) {
  const OracleEigensystem system(params, LatticeWindow(params.j_defect, radius));
  const Band band = band_interval(params);
  std::vector<double> out;
  for (double lambda : system.eigenvalues()) {
    if (!band.contains(lambda, margin)) out.push_back(lambda);
  }
  return out;
}

}  // namespace defectwalk
