/*
 * Copyright 2026 The gqpe Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef GQPE_RUN_HPP_
#define GQPE_RUN_HPP_

#include <optional>
#include <string>
#include <vector>

#include "gqpe/common.hpp"
#include "gqpe/config.hpp"

namespace gqpe::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitTolerance = 3;
inline constexpr int kExitIo = 4;

int exit_code_for(ErrorCode code);

struct Artifact {
  std::string name;
  std::string content;
};

struct RunResult {
  int exit_code = kExitOk;
  std::vector<Artifact> files;
  // Human-readable table, one line per product.
  std::string summary;
  // compare mode: max |circuit - oracle|.
  std::optional<double> max_deviation;
};

// Runs the pipeline in memory. Throws gqpe::Error on invalid input or
// resource limits; a compare-mode tolerance failure is reported through
// exit_code, with the diff report still produced.
RunResult compute(const ExperimentConfig& config);

// Writes every artifact to <dir>/name.tmp, then renames; on failure removes
// the temporaries and throws IoError.
void write_artifacts(const std::string& dir, const std::vector<Artifact>& files);

// compute + write_artifacts into config.output.
RunResult run(const ExperimentConfig& config);

// Renders a grid CSV: SVG line plot for 1-D grids, PGM heat map of |value| for 2-D.
void plot(const std::string& csv_path, const std::string& image_path);

}  // namespace gqpe::cli

#endif  // GQPE_RUN_HPP_
