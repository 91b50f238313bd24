// Copyright 2026 The rmlab Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * JSON-configured experiments: evolution runs, estimator-accuracy sweeps
 * and the average-CFIM scale sweep. See README.md for the config schema.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rmlab/evolution.hpp"

namespace rmlab {

enum class ExperimentKind : std::uint8_t { Evolution, EstimatorAccuracy, ConjectureSweep };

struct MethodSpec {
    std::string label;
    EvolutionMethod method = EvolutionMethod::VarQite;
    EstimatorConfig estimator;
    std::uint64_t seed = 0;
};

struct LabeledEstimator {
    std::string label;
    EstimatorConfig config;
};

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::Evolution;
    std::uint64_t seed = 0;
    std::optional<std::filesystem::path> output_dir;
    PauliSumHamiltonian hamiltonian;
    ParameterizedCircuit circuit;
    StateVector initial;
    std::vector<double> theta0;

    // evolution
    double dt = 0.01;
    double total_time = 1.0;
    std::optional<std::size_t> steps{};
    double regularization = kDefaultRegularization;
    std::vector<MethodSpec> methods{};
    double band = 1e-3; ///< relative energy band used by compare

    // estimator-accuracy / conjecture-sweep
    std::vector<LabeledEstimator> estimators{};
    std::vector<std::size_t> k_values{};
    std::size_t repetitions = 1;
    UnitaryEnsemble sweep_ensemble{};

    nlohmann::json source{}; ///< the document as read
};

/// Parses and validates a config document. Relative file references resolve
/// against `base_dir`. Throws ConfigError (with the field path) or DataError.
ExperimentConfig parse_experiment_config(const nlohmann::json &doc,
                                         const std::filesystem::path &base_dir = {});
ExperimentConfig load_experiment_config(const std::filesystem::path &path);

/// EvolutionConfig for one method of an evolution experiment.
EvolutionConfig evolution_config_for(const ExperimentConfig &config, const MethodSpec &method);

struct RunOptions {
    std::optional<std::filesystem::path> out_dir;
    bool verbose = false;
    std::ostream *log = nullptr;
};

struct RunResult {
    std::filesystem::path out_dir;
    nlohmann::json summary;
};

/// Runs the configured experiment and writes CSV data, summary.json and
/// manifest.json below the output directory.
RunResult run_experiment(const std::filesystem::path &config_path, const RunOptions &options = {});

/// Runs every method of an evolution config (at least two) and writes
/// comparison.csv with energy against cumulative state preparations.
RunResult compare_methods(const std::filesystem::path &config_path,
                          const RunOptions &options = {});

/// Cumulative preparations at the first record within `band` (relative) of
/// the exact ground energy, if any.
std::optional<std::uint64_t> preps_to_band(const EvolutionTrace &trace, double band);

/// Environment variable naming the default output root.
inline constexpr const char *kOutputRootEnv = "RMLAB_OUTPUT_ROOT";

} // namespace rmlab
