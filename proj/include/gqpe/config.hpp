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

#ifndef GQPE_CONFIG_HPP_
#define GQPE_CONFIG_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gqpe/common.hpp"
#include "gqpe/lineshape.hpp"
#include "gqpe/spectral.hpp"

namespace gqpe::cli {

enum class Mode { kOracle, kGqpe, kCompleteSquare, kRaman, kSingleAncilla, kKkCheck, kCompare };

const char* mode_name(Mode mode);
std::optional<Mode> mode_from_name(const std::string& name);

enum class NormKind { kSpectral, kPauli, kGiven };

struct OperatorSpec {
  std::string label;
  ComplexMatrix matrix;
  NormKind norm = NormKind::kSpectral;
  double given = 0.0;
};

inline constexpr std::size_t kDefaultN = 16;
inline constexpr std::uint64_t kDefaultSeed = 1234567;
inline constexpr double kDefaultTolerance = 1e-10;
inline constexpr double kDefaultEpsilon = 0.1;
inline constexpr double kDefaultKkEta = 0.2;

struct ExperimentConfig {
  Mode mode = Mode::kOracle;
  ComplexMatrix hamiltonian;
  // Unset: auto scaling.
  std::optional<double> tau;
  std::vector<OperatorSpec> operators;
  // Pure index, or mixed weights when non-empty.
  std::size_t pure_index = 0;
  std::vector<double> mixed;
  std::vector<std::string> chain;
  std::string dipole;
  std::vector<lineshape::Kind> lineshapes;
  std::size_t n = kDefaultN;
  int order = 1;
  double epsilon = kDefaultEpsilon;
  std::uint64_t shots = 0;
  std::uint64_t seed = kDefaultSeed;
  double tolerance = kDefaultTolerance;
  // Raman: apply e^{iH(t1+t2)} in the circuit; otherwise relabel after sampling.
  bool raman_energy_shift = true;
  bool raman_prepared_dipole = false;
  double kk_eta = kDefaultKkEta;
  std::string output = "gqpe_out";
};

// JSON text; relative file paths resolve against base_dir. Throws ParseError
// (with line or field) and ValidationError (naming the violated field).
ExperimentConfig parse_config(const std::string& text, const std::string& base_dir = ".");
ExperimentConfig load_config(const std::string& path);

// Re-applies the mode rules, e.g. after command-line overrides.
void validate_config(const ExperimentConfig& config);

// Canonical resolved form: sorted keys, every default explicit, matrices inline.
// Artifacts embed the form without the output directory so equal hashes mean equal bytes.
std::string resolved_json(const ExperimentConfig& config, int indent = 2, bool with_output = true);
// FNV-1a 64 of the compact resolved form without the output directory.
std::uint64_t config_hash(const ExperimentConfig& config);

// Built objects for a config.
struct Experiment {
  spectral::QuantumSystem system;
  spectral::EquilibriumState state;
  std::vector<spectral::PerturbationOperator> operators;
  std::vector<lineshape::Lineshape> shapes;
};

Experiment build_experiment(const ExperimentConfig& config);
const spectral::PerturbationOperator& find_operator(const Experiment& e, const std::string& label);

}  // namespace gqpe::cli

#endif  // GQPE_CONFIG_HPP_
