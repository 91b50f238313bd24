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
 * Dense statevectors, gates and computational-basis measurement.
 *
 * Bit convention: qubit q is bit q of the basis-state index (qubit 0 is the
 * least significant bit). Textual bitstrings and Pauli strings are written
 * with character k describing qubit k.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "rmlab/random.hpp"

namespace rmlab {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

inline constexpr int kMaxQubits = 14;
inline constexpr double kNormTolerance = 1e-10;

/// Single-qubit Pauli label.
enum class Pauli : std::uint8_t { I, X, Y, Z };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c); // throws DataError
CMatrix pauli_matrix(Pauli p);

/// Normalized pure state on n qubits. Immutable once built; every operation
/// returns a new value.
class StateVector {
  public:
    /// |0...0>
    static StateVector zero(int n_qubits);
    static StateVector basis(int n_qubits, std::uint64_t index);
    /// Character k of `bits` ('0' or '1') is qubit k.
    static StateVector from_bitstring(std::string_view bits);
    /// Takes ownership of `amps`; throws DataError unless the norm is one
    /// within `tol` and the length is a power of two.
    static StateVector from_amplitudes(CVector amps, double tol = kNormTolerance);
    /// Rescales to unit norm; throws NumericError for a zero vector.
    static StateVector normalized(CVector amps);

    [[nodiscard]] int n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t dim() const noexcept {
        return static_cast<std::size_t>(amps_.size());
    }
    [[nodiscard]] const CVector &amplitudes() const noexcept { return amps_; }
    [[nodiscard]] cplx operator[](std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }

  private:
    StateVector(int n, CVector amps) : n_qubits_(n), amps_(std::move(amps)) {}

    int n_qubits_;
    CVector amps_;
};

enum class GateKind : std::uint8_t {
    H,
    S,
    Sdg,
    X,
    Y,
    Z,
    CX,
    CZ,
    Swap,
    Unitary,  ///< explicit matrix over `targets`
    Rotation, ///< exp(-i angle P / 2) on one qubit
};

/// One gate of a circuit. A rotation is either bound to a parameter index
/// (angle taken from theta at application time) or carries a fixed angle.
///
/// For CX the targets are {control, target}. For explicit matrices the local
/// basis index is sum_k bit(targets[k]) << k.
struct GateOp {
    GateKind kind = GateKind::H;
    std::vector<int> targets;
    Pauli axis = Pauli::I;
    std::optional<std::size_t> param;
    double angle = 0.0;
    CMatrix matrix;

    static GateOp h(int q) { return named(GateKind::H, {q}); }
    static GateOp s(int q) { return named(GateKind::S, {q}); }
    static GateOp sdg(int q) { return named(GateKind::Sdg, {q}); }
    static GateOp x(int q) { return named(GateKind::X, {q}); }
    static GateOp y(int q) { return named(GateKind::Y, {q}); }
    static GateOp z(int q) { return named(GateKind::Z, {q}); }
    static GateOp cx(int control, int target) { return named(GateKind::CX, {control, target}); }
    static GateOp cz(int a, int b) { return named(GateKind::CZ, {a, b}); }
    static GateOp swap(int a, int b) { return named(GateKind::Swap, {a, b}); }
    static GateOp named(GateKind kind, std::vector<int> targets);
    /// Parameterized rotation exp(-i theta[param] P / 2).
    static GateOp rotation(Pauli axis, int qubit, std::size_t param);
    /// Rotation with a fixed angle.
    static GateOp fixed_rotation(Pauli axis, int qubit, double angle);
    /// Explicit unitary; throws DataError if not unitary within 1e-10.
    static GateOp unitary(CMatrix m, std::vector<int> targets);

    [[nodiscard]] bool is_parameterized() const noexcept {
        return kind == GateKind::Rotation && param.has_value();
    }
    /// Inverse gate (parameterized rotations become fixed rotations with
    /// the negated bound angle, so `theta` is needed for those).
    [[nodiscard]] GateOp inverse(std::span<const double> theta = {}) const;
    /// Dense matrix on the gate's own targets.
    [[nodiscard]] CMatrix local_matrix(std::span<const double> theta = {}) const;
};

/// Checks targets and parameter index against an n-qubit register.
void validate_gate(const GateOp &gate, int n_qubits, std::size_t n_params);

/// Returns U_gate |state>.
StateVector apply_gate(const StateVector &state, const GateOp &gate,
                       std::span<const double> theta = {});

/// In-place kernels used by the circuit code; `amps` must have length 2^n.
namespace kernels {
void apply(CVector &amps, const GateOp &gate, std::span<const double> theta);
void apply_local_matrix(CVector &amps, const CMatrix &m, std::span<const int> targets);
/// amps <- P_q amps for a single-qubit Pauli.
void apply_pauli(CVector &amps, Pauli p, int qubit);
} // namespace kernels

/// Probabilities of computational-basis outcomes.
struct OutcomeDistribution {
    int n_qubits = 0;
    std::vector<double> probs;
};

OutcomeDistribution outcome_probabilities(const StateVector &state);
/// |amps_s|^2 for an arbitrary vector (no normalization check).
std::vector<double> outcome_probabilities(const CVector &amps);

/// Empirical distribution from `shots` draws; deterministic for a given rng
/// state. Throws DataError when shots == 0.
OutcomeDistribution sample_outcomes(const OutcomeDistribution &dist, std::uint64_t shots,
                                    Rng &rng);

/// |<a|b>|^2.
double overlap_squared(const StateVector &a, const StateVector &b);

} // namespace rmlab
