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
 * Parameterized circuits theta -> |phi(theta)>, exact derivative states and
 * parameter-shift derivatives of measured probabilities.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rmlab/state.hpp"

namespace rmlab {

class SampledRotator;

/// Ordered gate list with m parameters. Each parameterized rotation owns one
/// parameter index; indices cover [0, m) exactly once.
class ParameterizedCircuit {
  public:
    ParameterizedCircuit(int n_qubits, std::vector<GateOp> gates);

    [[nodiscard]] int n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t num_params() const noexcept { return num_params_; }
    [[nodiscard]] const std::vector<GateOp> &gates() const noexcept { return gates_; }
    /// Position in gates() of the rotation bound to parameter i.
    [[nodiscard]] std::size_t gate_of_param(std::size_t i) const { return param_gate_.at(i); }

  private:
    int n_qubits_;
    std::vector<GateOp> gates_;
    std::size_t num_params_ = 0;
    std::vector<std::size_t> param_gate_;
};

enum class AxisPattern : std::uint8_t {
    YX,     ///< R_y then R_x on every qubit
    Random, ///< each rotation axis drawn uniformly from {X, Y, Z}
    Y,      ///< a single R_y per qubit (real amplitudes)
};

enum class Entangler : std::uint8_t {
    Ring,  ///< CZ on neighbours plus the wraparound pair (n > 2)
    Chain, ///< CZ on neighbours only
    CxChain, ///< CX(q, q+1) on neighbours only
};

/// Hardware-efficient layers: rotations on every qubit, then entanglers.
/// m = 2 n layers, or n layers with AxisPattern::Y.
ParameterizedCircuit hardware_efficient_ansatz(int n_qubits, int layers,
                                               AxisPattern axes = AxisPattern::YX,
                                               std::uint64_t axis_seed = 0,
                                               Entangler entangler = Entangler::Ring);

/// Parses {"n_qubits": n, "gates": [{"kind": "ry", "targets": [0], "param": 0}, ...]}.
/// Accepted kinds: rx, ry, rz, h, s, x, y, z, cx, cz, swap.
ParameterizedCircuit circuit_from_json(const nlohmann::json &doc);
nlohmann::json circuit_to_json(const ParameterizedCircuit &circuit);

/// Applies the circuit to `initial`. One state preparation.
StateVector prepare_state(const ParameterizedCircuit &circuit, std::span<const double> theta,
                          const StateVector &initial);

/// Exact d|phi>/d theta_i, obtained by inserting -(i/2) P right after the
/// rotation bound to parameter i. Generally unnormalized.
CVector derivative_state(const ParameterizedCircuit &circuit, std::span<const double> theta,
                         std::size_t i, const StateVector &initial);

/// All m derivative states as columns (2^n x m).
CMatrix derivative_states(const ParameterizedCircuit &circuit, std::span<const double> theta,
                          const StateVector &initial);

/// The 2m states |phi(theta +- pi/2 e_i)> used by every parameter-shift
/// estimate. They do not depend on the measurement rotator, so one set serves
/// all rotators drawn at the same theta.
struct ShiftedStates {
    std::vector<StateVector> plus;
    std::vector<StateVector> minus;

    [[nodiscard]] std::size_t num_params() const noexcept { return plus.size(); }
};

ShiftedStates shifted_states(const ParameterizedCircuit &circuit, std::span<const double> theta,
                             const StateVector &initial);

/// dp_s^U / d theta_i for every outcome s, by the +-pi/2 shift rule.
std::vector<double> probability_derivative(const ParameterizedCircuit &circuit,
                                           std::span<const double> theta, const SampledRotator &rotator,
                                           std::size_t i, const StateVector &initial);

/// Outcome-by-parameter Jacobian (2^n x m) of p^U from cached shifted states.
RMatrix probability_jacobian(const ShiftedStates &shifted, const SampledRotator &rotator);

} // namespace rmlab
