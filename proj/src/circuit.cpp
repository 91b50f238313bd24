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
#include "rmlab/circuit.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "rmlab/errors.hpp"
#include "rmlab/unitaries.hpp"

namespace rmlab {

namespace {

constexpr std::size_t kUnbound = std::numeric_limits<std::size_t>::max();

void check_theta(const ParameterizedCircuit &circuit, std::span<const double> theta) {
    if (theta.size() != circuit.num_params()) {
        throw DataError("parameter vector has length " + std::to_string(theta.size()) +
                        ", circuit expects " + std::to_string(circuit.num_params()));
    }
}

void check_initial(const ParameterizedCircuit &circuit, const StateVector &initial) {
    if (initial.n_qubits() != circuit.n_qubits()) {
        throw DataError("initial state qubit count does not match circuit");
    }
}

struct KindInfo {
    const char *name;
    GateKind kind;
    Pauli axis;
};

constexpr KindInfo kKinds[] = {
    {"rx", GateKind::Rotation, Pauli::X}, {"ry", GateKind::Rotation, Pauli::Y},
    {"rz", GateKind::Rotation, Pauli::Z}, {"h", GateKind::H, Pauli::I},
    {"s", GateKind::S, Pauli::I},         {"sdg", GateKind::Sdg, Pauli::I},
    {"x", GateKind::X, Pauli::I},         {"y", GateKind::Y, Pauli::I},
    {"z", GateKind::Z, Pauli::I},         {"cx", GateKind::CX, Pauli::I},
    {"cz", GateKind::CZ, Pauli::I},       {"swap", GateKind::Swap, Pauli::I},
};

} // namespace

ParameterizedCircuit::ParameterizedCircuit(int n_qubits, std::vector<GateOp> gates)
    : n_qubits_(n_qubits), gates_(std::move(gates)) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw DataError("circuit qubit count out of range");
    }
    std::size_t max_index = 0;
    std::size_t bound = 0;
    for (const auto &g : gates_) {
        if (g.is_parameterized()) {
            max_index = std::max(max_index, *g.param + 1);
            ++bound;
        }
    }
    num_params_ = max_index;
    if (bound != num_params_) {
        throw DataError("parameter indices must be contiguous from 0 and used exactly once");
    }
    param_gate_.assign(num_params_, kUnbound);
    for (std::size_t k = 0; k < gates_.size(); ++k) {
        const auto &g = gates_[k];
        validate_gate(g, n_qubits_, num_params_);
        if (g.is_parameterized()) {
            if (param_gate_[*g.param] != kUnbound) {
                throw DataError("parameter " + std::to_string(*g.param) +
                                " is shared by more than one rotation");
            }
            param_gate_[*g.param] = k;
        }
    }
}

ParameterizedCircuit hardware_efficient_ansatz(int n_qubits, int layers, AxisPattern axes,
                                               std::uint64_t axis_seed, Entangler entangler) {
    if (layers < 1) {
        throw DataError("hardware-efficient ansatz needs at least one layer");
    }
    Rng rng(axis_seed);
    constexpr Pauli kAxes[] = {Pauli::X, Pauli::Y, Pauli::Z};
    auto pick = [&](Pauli fallback) {
        return axes == AxisPattern::Random ? kAxes[rng() % 3] : fallback;
    };
    std::vector<GateOp> gates;
    std::size_t p = 0;
    for (int l = 0; l < layers; ++l) {
        for (int q = 0; q < n_qubits; ++q) {
            gates.push_back(GateOp::rotation(pick(Pauli::Y), q, p++));
            if (axes != AxisPattern::Y) {
                gates.push_back(GateOp::rotation(pick(Pauli::X), q, p++));
            }
        }
        for (int q = 0; q + 1 < n_qubits; ++q) {
            gates.push_back(entangler == Entangler::CxChain ? GateOp::cx(q, q + 1) : GateOp::cz(q, q + 1));
        }
        if (entangler == Entangler::Ring && n_qubits > 2) {
            gates.push_back(GateOp::cz(n_qubits - 1, 0));
        }
    }
    return {n_qubits, std::move(gates)};
}

ParameterizedCircuit circuit_from_json(const nlohmann::json &doc) {
    if (!doc.is_object() || !doc.contains("n_qubits") || !doc.contains("gates")) {
        throw DataError("circuit document needs \"n_qubits\" and \"gates\"");
    }
    if (!doc["n_qubits"].is_number_integer()) {
        throw DataError("circuit \"n_qubits\" must be an integer");
    }
    const int n = doc["n_qubits"].get<int>();
    std::vector<GateOp> gates;
    std::size_t idx = 0;
    for (const auto &jg : doc["gates"]) {
        const std::string where = "gates[" + std::to_string(idx++) + "]";
        if (!jg.contains("kind") || !jg["kind"].is_string() || !jg.contains("targets") ||
            !jg["targets"].is_array()) {
            throw DataError(where + ": needs string \"kind\" and array \"targets\"");
        }
        const auto kind = jg["kind"].get<std::string>();
        std::vector<int> targets;
        for (const auto &t : jg["targets"]) {
            if (!t.is_number_integer()) {
                throw DataError(where + ": targets must be integers");
            }
            targets.push_back(t.get<int>());
        }
        const KindInfo *info = nullptr;
        for (const auto &k : kKinds) {
            if (kind == k.name) {
                info = &k;
            }
        }
        if (info == nullptr) {
            throw DataError(where + ": unknown gate kind \"" + kind + "\"");
        }
        const bool has_param = jg.contains("param") && !jg["param"].is_null();
        if (info->kind == GateKind::Rotation) {
            if (targets.size() != 1) {
                throw DataError(where + ": rotations act on exactly one qubit");
            }
            if (has_param) {
                if (!jg["param"].is_number_integer() || jg["param"].get<long long>() < 0) {
                    throw DataError(where + ": \"param\" must be a non-negative integer");
                }
                gates.push_back(GateOp::rotation(info->axis, targets[0],
                                                 jg["param"].get<std::size_t>()));
            } else {
                gates.push_back(
                    GateOp::fixed_rotation(info->axis, targets[0], jg.value("angle", 0.0)));
            }
        } else {
            if (has_param) {
                throw DataError(where + ": gate kind \"" + kind + "\" takes no parameter");
            }
            gates.push_back(GateOp::named(info->kind, std::move(targets)));
        }
    }
    return {n, std::move(gates)};
}

nlohmann::json circuit_to_json(const ParameterizedCircuit &circuit) {
    nlohmann::json gates = nlohmann::json::array();
    for (const auto &g : circuit.gates()) {
        nlohmann::json jg;
        std::string name;
        for (const auto &k : kKinds) {
            if (k.kind == g.kind && (g.kind != GateKind::Rotation || k.axis == g.axis)) {
                name = k.name;
                break;
            }
        }
        if (name.empty()) {
            throw DataError("explicit-matrix gates have no JSON form");
        }
        jg["kind"] = name;
        jg["targets"] = g.targets;
        if (g.is_parameterized()) {
            jg["param"] = *g.param;
        } else {
            jg["param"] = nullptr;
            if (g.kind == GateKind::Rotation) {
                jg["angle"] = g.angle;
            }
        }
        gates.push_back(std::move(jg));
    }
    return {{"n_qubits", circuit.n_qubits()}, {"gates", std::move(gates)}};
}

StateVector prepare_state(const ParameterizedCircuit &circuit, std::span<const double> theta,
                          const StateVector &initial) {
    check_theta(circuit, theta);
    check_initial(circuit, initial);
    CVector amps = initial.amplitudes();
    for (const auto &g : circuit.gates()) {
        kernels::apply(amps, g, theta);
    }
    return StateVector::from_amplitudes(std::move(amps));
}

CVector derivative_state(const ParameterizedCircuit &circuit, std::span<const double> theta,
                         std::size_t i, const StateVector &initial) {
    check_theta(circuit, theta);
    check_initial(circuit, initial);
    if (i >= circuit.num_params()) {
        throw DataError("derivative index out of range");
    }
    const std::size_t at = circuit.gate_of_param(i);
    CVector amps = initial.amplitudes();
    const auto &gates = circuit.gates();
    for (std::size_t k = 0; k < gates.size(); ++k) {
        kernels::apply(amps, gates[k], theta);
        if (k == at) {
            // d/dθ exp(-iθP/2) = -(i/2) P exp(-iθP/2)
            kernels::apply_pauli(amps, gates[k].axis, gates[k].targets[0]);
            amps *= cplx(0.0, -0.5);
        }
    }
    return amps;
}

CMatrix derivative_states(const ParameterizedCircuit &circuit, std::span<const double> theta,
                          const StateVector &initial) {
    check_theta(circuit, theta);
    check_initial(circuit, initial);
    const auto m = static_cast<Eigen::Index>(circuit.num_params());
    CMatrix out(static_cast<Eigen::Index>(initial.dim()), m);
    // Shares the prefix up to each rotation: walk once, branching at every
    // parameterized gate and finishing each branch with the suffix.
    CVector prefix = initial.amplitudes();
    const auto &gates = circuit.gates();
    for (std::size_t k = 0; k < gates.size(); ++k) {
        kernels::apply(prefix, gates[k], theta);
        if (!gates[k].is_parameterized()) {
            continue;
        }
        CVector branch = prefix;
        kernels::apply_pauli(branch, gates[k].axis, gates[k].targets[0]);
        branch *= cplx(0.0, -0.5);
        for (std::size_t r = k + 1; r < gates.size(); ++r) {
            kernels::apply(branch, gates[r], theta);
        }
        out.col(static_cast<Eigen::Index>(*gates[k].param)) = branch;
    }
    return out;
}

ShiftedStates shifted_states(const ParameterizedCircuit &circuit, std::span<const double> theta,
                             const StateVector &initial) {
    check_theta(circuit, theta);
    ShiftedStates out;
    out.plus.reserve(theta.size());
    out.minus.reserve(theta.size());
    std::vector<double> shifted(theta.begin(), theta.end());
    constexpr double kShift = std::numbers::pi / 2.0;
    for (std::size_t i = 0; i < theta.size(); ++i) {
        shifted[i] = theta[i] + kShift;
        out.plus.push_back(prepare_state(circuit, shifted, initial));
        shifted[i] = theta[i] - kShift;
        out.minus.push_back(prepare_state(circuit, shifted, initial));
        shifted[i] = theta[i];
    }
    return out;
}

std::vector<double> probability_derivative(const ParameterizedCircuit &circuit,
                                           std::span<const double> theta,
                                           const SampledRotator &rotator, std::size_t i,
                                           const StateVector &initial) {
    check_theta(circuit, theta);
    if (rotator.n_qubits() != circuit.n_qubits()) {
        throw DataError("rotator acts on a different number of qubits than the circuit");
    }
    if (i >= circuit.num_params()) {
        throw DataError("derivative index out of range");
    }
    std::vector<double> shifted(theta.begin(), theta.end());
    shifted[i] = theta[i] + std::numbers::pi / 2.0;
    const auto plus = outcome_probabilities(rotator.apply(prepare_state(circuit, shifted, initial)));
    shifted[i] = theta[i] - std::numbers::pi / 2.0;
    const auto minus =
        outcome_probabilities(rotator.apply(prepare_state(circuit, shifted, initial)));
    std::vector<double> d(plus.probs.size());
    for (std::size_t s = 0; s < d.size(); ++s) {
        d[s] = 0.5 * (plus.probs[s] - minus.probs[s]);
    }
    return d;
}

RMatrix probability_jacobian(const ShiftedStates &shifted, const SampledRotator &rotator) {
    const std::size_t m = shifted.num_params();
    if (m == 0) {
        return RMatrix(std::size_t{1} << static_cast<unsigned>(rotator.n_qubits()), 0);
    }
    if (shifted.plus.front().n_qubits() != rotator.n_qubits()) {
        throw DataError("rotator acts on a different number of qubits than the circuit");
    }
    const auto dim = static_cast<Eigen::Index>(shifted.plus.front().dim());
    RMatrix jac(dim, static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i) {
        const CVector up = rotator.apply(shifted.plus[i].amplitudes());
        const CVector dn = rotator.apply(shifted.minus[i].amplitudes());
        for (Eigen::Index s = 0; s < dim; ++s) {
            jac(s, static_cast<Eigen::Index>(i)) = 0.5 * (std::norm(up(s)) - std::norm(dn(s)));
        }
    }
    return jac;
}

} // namespace rmlab
