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
 * Fisher information of parameterized states: the exact quantum Fisher
 * information matrix (QFIM), the classical Fisher information of a rotated
 * computational-basis measurement (CFIM), and two randomized estimators of
 * the QFIM built from rotated measurements:
 *
 *  - two-design:   2 (2^n + 1) / K  sum_k sum_s  d_i p_s^{U_k} d_j p_s^{U_k}
 *  - average-cfim: 1 / K  sum_k  F_C^{U_k}   (optionally scaled by 2)
 *
 * All derivatives of probabilities come from the +-pi/2 shift rule.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "rmlab/circuit.hpp"
#include "rmlab/unitaries.hpp"

namespace rmlab {

enum class FisherSource : std::uint8_t { ExactQfim, Cfim, TwoDesign, AverageCfim };

std::string to_string(FisherSource source);

struct FisherProvenance {
    FisherSource source = FisherSource::ExactQfim;
    std::size_t samples = 0;            ///< K
    std::optional<std::uint64_t> shots; ///< empty means exact probabilities
    EnsembleKind ensemble = EnsembleKind::Identity;
    bool rescaled = false;
};

/// Symmetric m x m Fisher matrix with a record of how it was obtained.
struct FisherMatrix {
    RMatrix entries;
    FisherProvenance provenance;

    [[nodiscard]] std::size_t m() const noexcept { return static_cast<std::size_t>(entries.rows()); }
    /// Smallest eigenvalue (+inf for m = 0).
    [[nodiscard]] double min_eigenvalue() const;
    [[nodiscard]] double max_eigenvalue() const;
};

enum class EstimatorKind : std::uint8_t { TwoDesign, AverageCfim };

std::string to_string(EstimatorKind kind);

inline constexpr double kDefaultProbabilityFloor = 1e-12;

struct EstimatorConfig {
    EstimatorKind kind = EstimatorKind::AverageCfim;
    UnitaryEnsemble ensemble;
    std::size_t samples = 1;            ///< K
    std::optional<std::uint64_t> shots; ///< empty: exact probabilities
    double probability_floor = kDefaultProbabilityFloor;
    bool rescale_average_cfim = false;

    /// Throws ConfigError on K < 1, floor outside [0, 1e-3], zero shots, or an
    /// ensemble that does not fit the estimator.
    void validate() const;
};

/// [F_Q]_ij = 4 Re(<d_i phi|d_j phi> - <d_i phi|phi><phi|d_j phi>).
FisherMatrix exact_qfim(const ParameterizedCircuit &circuit, std::span<const double> theta,
                        const StateVector &initial);

/// Classical Fisher matrix of the measurement after `rotator`:
/// sum_s d_i p_s d_j p_s / p_s over outcomes with p_s above `floor` (exact)
/// or with nonzero counts (shots). Throws NumericError if every outcome is
/// dropped.
FisherMatrix cfim(const ParameterizedCircuit &circuit, std::span<const double> theta,
                  const SampledRotator &rotator, const StateVector &initial,
                  std::optional<std::uint64_t> shots = std::nullopt, std::uint64_t seed = 0,
                  double floor = kDefaultProbabilityFloor);

/// Reusable per-theta data: the 2m shifted states and the unshifted state.
struct ShiftedEvaluation {
    ShiftedStates shifted;
    StateVector center;
};

ShiftedEvaluation evaluate_shifts(const ParameterizedCircuit &circuit,
                                  std::span<const double> theta, const StateVector &initial);

/// Raw CFIM (not symmetrized) from cached shifted states.
RMatrix cfim_from_shifts(const ShiftedEvaluation &eval, const SampledRotator &rotator,
                         std::optional<std::uint64_t> shots, std::uint64_t seed, double floor);

/// sum_s d_i p_s d_j p_s for one rotator (not scaled, not symmetrized).
RMatrix derivative_gram_from_shifts(const ShiftedEvaluation &eval, const SampledRotator &rotator,
                                    std::optional<std::uint64_t> shots, std::uint64_t seed);

/// Two-design estimate; sample k uses rotator seed child_seed(seed, {k}).
FisherMatrix two_design_estimate(const ParameterizedCircuit &circuit,
                                 std::span<const double> theta, const EstimatorConfig &config,
                                 std::uint64_t seed, const StateVector &initial);
FisherMatrix two_design_estimate(const ShiftedEvaluation &eval, int n_qubits,
                                 const EstimatorConfig &config, std::uint64_t seed);

/// Average CFIM estimate, x2 when config.rescale_average_cfim is set.
FisherMatrix average_cfim_estimate(const ParameterizedCircuit &circuit,
                                   std::span<const double> theta, const EstimatorConfig &config,
                                   std::uint64_t seed, const StateVector &initial);
FisherMatrix average_cfim_estimate(const ShiftedEvaluation &eval, int n_qubits,
                                   const EstimatorConfig &config, std::uint64_t seed);

/// Dispatches on config.kind.
FisherMatrix estimate_fisher(const ShiftedEvaluation &eval, int n_qubits,
                             const EstimatorConfig &config, std::uint64_t seed);

/// Frobenius distance ||approx - exact||_F.
double estimator_error(const FisherMatrix &approx, const FisherMatrix &exact);

/// ||approx - exact||_F / ||exact||_F.
double relative_estimator_error(const FisherMatrix &approx, const FisherMatrix &exact);

enum class FidelityMode : std::uint8_t { ExactSecondMoment, CliffordEnumeration, MonteCarlo };

/// Tr(rho1 rho2) = 2^n sum_{s,s'} (-2^n)^{-D_G[s,s']} E_U[p_s^U(rho1) p_{s'}^U(rho2)],
/// with D_G the global Hamming distance (0 if s == s', else 1). The second
/// moment is taken analytically (n <= 5), by averaging over the full
/// Clifford group (n <= 2), or from `samples` Haar draws.
double fidelity_random_measurement(const StateVector &rho1, const StateVector &rho2,
                                   FidelityMode mode, std::size_t samples = 0,
                                   std::uint64_t seed = 0);

} // namespace rmlab
