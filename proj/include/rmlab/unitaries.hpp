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
 * Measurement-basis rotators: Haar-random unitaries, uniformly random
 * Cliffords, random hardware-efficient circuits, and the Haar moment
 * operators used to check them.
 *
 * Global phases are ignored throughout; they cancel in every measured
 * probability.
 */
#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "rmlab/random.hpp"
#include "rmlab/state.hpp"

namespace rmlab {

enum class EnsembleKind : std::uint8_t {
    Identity, ///< degenerate ensemble holding only U = I
    Haar,
    Clifford,
    HardwareEfficient,
    Fixed, ///< user-supplied rotator (tests, enumeration)
};

std::string to_string(EnsembleKind kind);
EnsembleKind ensemble_kind_from_string(const std::string &name); // throws ConfigError

struct UnitaryEnsemble {
    EnsembleKind kind = EnsembleKind::Haar;
    int n_qubits = 1;
    int layers = 1; ///< hardware-efficient only

    void validate() const;
};

/// A drawn rotator U, stored either densely or as a gate list.
class SampledRotator {
  public:
    static SampledRotator identity(int n_qubits);
    static SampledRotator from_dense(CMatrix u, EnsembleKind tag = EnsembleKind::Fixed,
                                     std::uint64_t seed = 0);
    static SampledRotator from_gates(int n_qubits, std::vector<GateOp> gates,
                                     EnsembleKind tag = EnsembleKind::Fixed,
                                     std::uint64_t seed = 0);

    [[nodiscard]] int n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] EnsembleKind ensemble() const noexcept { return tag_; }
    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
    [[nodiscard]] bool is_dense() const noexcept {
        return std::holds_alternative<CMatrix>(repr_);
    }
    [[nodiscard]] bool is_identity() const noexcept {
        return std::holds_alternative<std::monostate>(repr_);
    }
    /// Empty unless the rotator is a gate list.
    [[nodiscard]] const std::vector<GateOp> &gates() const;

    [[nodiscard]] CVector apply(const CVector &amps) const;
    [[nodiscard]] StateVector apply(const StateVector &state) const;
    /// Dense 2^n x 2^n matrix.
    [[nodiscard]] CMatrix dense() const;

  private:
    SampledRotator(int n, std::variant<std::monostate, CMatrix, std::vector<GateOp>> repr,
                   EnsembleKind tag, std::uint64_t seed)
        : n_qubits_(n), repr_(std::move(repr)), tag_(tag), seed_(seed) {}

    int n_qubits_;
    std::variant<std::monostate, CMatrix, std::vector<GateOp>> repr_;
    EnsembleKind tag_;
    std::uint64_t seed_;
};

/// Largest register the samplers accept.
inline constexpr int kMaxSamplerQubits = 12;

/// Haar-random U(2^n): QR of a complex Ginibre matrix with the phases of R's
/// diagonal moved into Q.
SampledRotator sample_haar(int n_qubits, std::uint64_t seed);
SampledRotator sample_haar(int n_qubits, Rng &rng);

/// Uniformly random n-qubit Clifford (modulo global phase) as an H/S/CX list.
SampledRotator sample_clifford(int n_qubits, std::uint64_t seed);
SampledRotator sample_clifford(int n_qubits, Rng &rng);

/// Every Clifford on n <= 2 qubits, one representative per global phase
/// class (24 for n = 1, 11520 for n = 2), as dense matrices.
std::vector<SampledRotator> enumerate_clifford_group(int n_qubits);

/// Random hardware-efficient rotator: per layer, each qubit gets a rotation
/// about a uniform axis in {X, Y, Z} with uniform angle in [0, 2 pi), then CZ
/// gates along an open nearest-neighbour chain.
SampledRotator sample_hardware_efficient(int n_qubits, int layers, std::uint64_t seed);
SampledRotator sample_hardware_efficient(int n_qubits, int layers, Rng &rng);

/// Draws from the ensemble with the given seed.
SampledRotator sample_rotator(const UnitaryEnsemble &ensemble, std::uint64_t seed);

/// True if U P U^dagger is +-(Pauli string) for every single-qubit X and Z
/// generator.
bool conjugates_paulis_to_paulis(const CMatrix &u, double tol = 1e-10);

/// SWAP on two copies of C^d; index of |i, j> is i d + j.
CMatrix swap_operator(int d);

/// E_Haar[U^{(x)2} O U^{dagger (x)2}] in closed form (identity/SWAP expansion).
CMatrix haar_second_moment(const CMatrix &op, int d);

/// E_Haar[U O U^dagger] = Tr(O)/d I.
CMatrix haar_first_moment(const CMatrix &op);

/// Average of U^{(x)2} O U^{dagger (x)2} over the given rotators.
CMatrix twirl_second_moment(const std::vector<SampledRotator> &rotators, const CMatrix &op);

} // namespace rmlab
