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
 * Variational imaginary-time evolution loops.
 *
 * Both methods integrate  F theta_dot = -2 grad E  with explicit Euler steps
 * of size dt. VarQITE uses the exact QFIM for F; RMITE replaces it with a
 * randomized estimate drawn fresh at every step.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rmlab/circuit.hpp"
#include "rmlab/fisher.hpp"
#include "rmlab/hamiltonian.hpp"

namespace rmlab {

inline constexpr double kDefaultRegularization = 1e-6;
/// Eigenvalues of F below this fraction of the largest are treated as zero.
inline constexpr double kPseudoInverseCutoff = 1e-8;
/// ... as are eigenvalues below this absolute level (rounding noise).
inline constexpr double kPseudoInverseFloor = 1e-12;

/// Solves (F + lambda I) theta_dot = -2 grad on the numerically nonsingular
/// eigenspace of F; directions with eigenvalue below 1e-8 lambda_max(F) or
/// below 1e-12 are dropped (pseudo-inverse). Throws DataError on size mismatch.
RVector solve_update(const RMatrix &f, const RVector &grad, double lambda_reg);

enum class EvolutionMethod : std::uint8_t { VarQite, Rmite };

std::string to_string(EvolutionMethod method);

struct EvolutionConfig {
    PauliSumHamiltonian hamiltonian;
    ParameterizedCircuit circuit;
    StateVector initial;
    std::vector<double> theta0;
    double dt = 0.01;
    double total_time = 1.0;
    /// Overrides round(total_time / dt); required when dt == 0.
    std::optional<std::size_t> steps{};
    EvolutionMethod method = EvolutionMethod::VarQite;
    EstimatorConfig estimator{}; ///< RMITE only
    double regularization = kDefaultRegularization;
    std::uint64_t seed = 0;
    /// Diagonalize H for the summary (n <= 12).
    bool compute_exact_reference = true;

    [[nodiscard]] std::size_t iterations() const;
    void validate() const; // throws ConfigError
};

/// State after `iter` updates.
struct EvolutionRecord {
    std::size_t iter = 0;
    double tau = 0.0;
    double energy = 0.0;
    std::vector<double> theta;
    double update_norm = 0.0;       ///< |theta_dot| of the step that led here
    double min_eig = 0.0;           ///< of the preconditioner used; NaN for iter 0
    std::uint64_t state_preps = 0;  ///< cumulative
    double predicted_rate = 0.0;    ///< grad E . theta_dot for that step
};

struct EvolutionSummary {
    double final_energy = 0.0;
    std::optional<double> exact_ground_energy;
    std::optional<double> relative_error;
    std::uint64_t total_state_preps = 0;
};

struct EvolutionTrace {
    std::string label;
    std::vector<EvolutionRecord> records;
    EvolutionSummary summary;
};

/// Exact-QFIM imaginary-time evolution.
EvolutionTrace varqite_run(const EvolutionConfig &config);

/// Random-measurement imaginary-time evolution with the configured estimator.
/// The estimator at step t is seeded with child_seed(config.seed, {t}).
EvolutionTrace rmite_run(const EvolutionConfig &config);

/// Dispatches on config.method.
EvolutionTrace run_evolution(const EvolutionConfig &config);

struct DescentReport {
    std::vector<std::size_t> energy_violations; ///< record indices k with E_k > E_{k-1} + tol
    std::vector<std::size_t> rate_violations;   ///< k with grad E . theta_dot > tol
    [[nodiscard]] bool ok() const noexcept {
        return energy_violations.empty() && rate_violations.empty();
    }
};

DescentReport descent_check(const EvolutionTrace &trace, double tolerance = 1e-9);

struct ErrorBound {
    double observed; ///< |theta_dot_Q - theta_dot_tilde| / |theta_dot_Q|
    double bound;    ///< lambda_max(F_Q) / lambda_min(F_tilde) - 1
    /// |F_Q - F_tilde|_2 <= 0.01 min(lambda_min(F_Q), lambda_min(F_tilde)).
    bool perturbative;
};

/// Compares unregularized updates from the exact and estimated matrices.
/// Throws NumericError unless both have min eigenvalue > 1e-10.
ErrorBound relative_error_bound(const RMatrix &f_q, const RMatrix &f_tilde, const RVector &grad);

/// Deterministic preparation count: per iteration 2m for the gradient plus
/// 2m^2 (exact QFIM), 2mK (two-design) or (2m+1)K (average CFIM).
std::uint64_t count_state_preps(EvolutionMethod method, EstimatorKind estimator, std::uint64_t m,
                                std::uint64_t samples, std::uint64_t iterations);

/// CSV with header iter,tau,energy,update_norm,min_eig,state_preps.
void write_trace_csv(const EvolutionTrace &trace, std::ostream &out);
nlohmann::json trace_summary_json(const EvolutionTrace &trace);

/// Fixed-format number rendering shared by every CSV writer.
std::string format_number(double v);

} // namespace rmlab
