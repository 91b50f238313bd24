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
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "rmlab/circuit.hpp"
#include "rmlab/state.hpp"

namespace rmlab {

/// Pauli string; character k acts on qubit k.
class PauliString {
  public:
    explicit PauliString(std::string_view ops); // throws DataError on bad characters

    [[nodiscard]] int n_qubits() const noexcept { return static_cast<int>(ops_.size()); }
    [[nodiscard]] const std::string &str() const noexcept { return ops_; }
    /// Bits set where the string has X or Y (flip mask).
    [[nodiscard]] std::uint64_t x_mask() const noexcept { return x_mask_; }
    /// Bits set where the string has Y or Z (sign mask).
    [[nodiscard]] std::uint64_t z_mask() const noexcept { return z_mask_; }
    [[nodiscard]] int y_count() const noexcept { return y_count_; }

    /// out += coeff * P |in>.
    void apply_add(const CVector &in, CVector &out, double coeff) const;

    friend bool operator==(const PauliString &a, const PauliString &b) { return a.ops_ == b.ops_; }

  private:
    std::string ops_;
    std::uint64_t x_mask_ = 0;
    std::uint64_t z_mask_ = 0;
    int y_count_ = 0;
};

struct PauliTerm {
    double coeff;
    PauliString pauli;
};

/// Real-weighted sum of Pauli strings (Hermitian by construction). Terms are
/// canonicalized: duplicates merged, first-occurrence order kept.
class PauliSumHamiltonian {
  public:
    PauliSumHamiltonian(int n_qubits, std::vector<PauliTerm> terms, std::string name = {});

    [[nodiscard]] int n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] const std::vector<PauliTerm> &terms() const noexcept { return terms_; }
    [[nodiscard]] const std::string &name() const noexcept { return name_; }

    /// H |v> without forming a matrix.
    [[nodiscard]] CVector apply(const CVector &v) const;
    /// Dense 2^n x 2^n matrix; n <= 12.
    [[nodiscard]] CMatrix dense() const;

  private:
    int n_qubits_;
    std::vector<PauliTerm> terms_;
    std::string name_;
};

/// {"name": ..., "n_qubits": n, "terms": [{"coeff": c, "pauli": "XZI"}, ...]}
PauliSumHamiltonian load_hamiltonian(const nlohmann::json &doc);
PauliSumHamiltonian load_hamiltonian_file(const std::string &path);
nlohmann::json hamiltonian_to_json(const PauliSumHamiltonian &h);

/// -J sum Z_i Z_{i+1} - g sum X_i; open chain unless `periodic`.
PauliSumHamiltonian transverse_field_ising(int n_qubits, double g, double coupling = 1.0,
                                          bool periodic = false);
/// J sum (X_i X_{i+1} + Y_i Y_{i+1} + Z_i Z_{i+1}) + h sum Z_i.
PauliSumHamiltonian heisenberg_chain(int n_qubits, double coupling = 1.0, double field = 0.0,
                                     bool periodic = false);

/// <state| H |state>; the imaginary residue is dropped.
double expectation(const PauliSumHamiltonian &h, const StateVector &state);

/// Parameter-shift gradient of <phi(theta)|H|phi(theta)>; 2m preparations.
RVector energy_gradient(const ParameterizedCircuit &circuit, std::span<const double> theta,
                        const PauliSumHamiltonian &h, const StateVector &initial);

/// 2 Re <d_i phi|H|phi> from exact derivative states.
RVector energy_gradient_exact(const ParameterizedCircuit &circuit, std::span<const double> theta,
                              const PauliSumHamiltonian &h, const StateVector &initial);

inline constexpr int kMaxDenseQubits = 12;

struct GroundState {
    double energy;
    StateVector state;
};

/// Lowest eigenpair of the dense matrix.
GroundState exact_ground_state(const PauliSumHamiltonian &h);

/// Full spectrum, ascending.
RVector exact_spectrum(const PauliSumHamiltonian &h);

/// e^{-H tau}|initial>, normalized, via the eigenbasis.
StateVector exact_imaginary_time_evolve(const PauliSumHamiltonian &h, const StateVector &initial,
                                        double tau);

/// Eigendecomposition reused across many tau values.
class ImaginaryTimePropagator {
  public:
    explicit ImaginaryTimePropagator(const PauliSumHamiltonian &h);
    [[nodiscard]] StateVector evolve(const StateVector &initial, double tau) const;
    [[nodiscard]] const RVector &eigenvalues() const noexcept { return evals_; }
    [[nodiscard]] const CMatrix &eigenvectors() const noexcept { return evecs_; }

  private:
    int n_qubits_;
    RVector evals_;
    CMatrix evecs_;
};

} // namespace rmlab
