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
#include "rmlab/hamiltonian.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "rmlab/errors.hpp"

namespace rmlab {

namespace {

constexpr cplx kIPow[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};

void check_dense_size(int n) {
    if (n > kMaxDenseQubits) {
        throw DataError("dense oracle limited to " + std::to_string(kMaxDenseQubits) +
                        " qubits, got " + std::to_string(n));
    }
}

std::string pauli_with(int n, std::initializer_list<std::pair<int, char>> ops) {
    std::string s(static_cast<std::size_t>(n), 'I');
    for (const auto &[q, c] : ops) {
        s[static_cast<std::size_t>(q)] = c;
    }
    return s;
}

} // namespace

PauliString::PauliString(std::string_view ops) : ops_(ops) {
    if (ops_.empty() || ops_.size() > static_cast<std::size_t>(kMaxQubits)) {
        throw DataError("Pauli string length out of range");
    }
    for (std::size_t k = 0; k < ops_.size(); ++k) {
        const Pauli p = pauli_from_char(ops_[k]);
        const std::uint64_t bit = std::uint64_t{1} << k;
        if (p == Pauli::X || p == Pauli::Y) {
            x_mask_ |= bit;
        }
        if (p == Pauli::Y || p == Pauli::Z) {
            z_mask_ |= bit;
        }
        if (p == Pauli::Y) {
            ++y_count_;
        }
    }
}

void PauliString::apply_add(const CVector &in, CVector &out, double coeff) const {
    // P|b> = i^{#Y} (-1)^{|b & z|} |b ^ x>
    const cplx front = coeff * kIPow[y_count_ % 4];
    const auto dim = static_cast<std::uint64_t>(in.size());
    for (std::uint64_t b = 0; b < dim; ++b) {
        const double sign = (std::popcount(b & z_mask_) & 1) != 0 ? -1.0 : 1.0;
        out(static_cast<Eigen::Index>(b ^ x_mask_)) += front * sign * in(static_cast<Eigen::Index>(b));
    }
}

PauliSumHamiltonian::PauliSumHamiltonian(int n_qubits, std::vector<PauliTerm> terms,
                                         std::string name)
    : n_qubits_(n_qubits), name_(std::move(name)) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw DataError("Hamiltonian qubit count out of range");
    }
    for (auto &t : terms) {
        if (t.pauli.n_qubits() != n_qubits) {
            throw DataError("Pauli string \"" + t.pauli.str() + "\" has length " +
                            std::to_string(t.pauli.n_qubits()) + ", expected " +
                            std::to_string(n_qubits));
        }
        if (!std::isfinite(t.coeff)) {
            throw DataError("non-finite coefficient for \"" + t.pauli.str() + "\"");
        }
        bool merged = false;
        for (auto &existing : terms_) {
            if (existing.pauli == t.pauli) {
                existing.coeff += t.coeff;
                merged = true;
                break;
            }
        }
        if (!merged) {
            terms_.push_back(std::move(t));
        }
    }
}

CVector PauliSumHamiltonian::apply(const CVector &v) const {
    if (v.size() != (Eigen::Index{1} << n_qubits_)) {
        throw DataError("vector dimension does not match Hamiltonian");
    }
    CVector out = CVector::Zero(v.size());
    for (const auto &t : terms_) {
        t.pauli.apply_add(v, out, t.coeff);
    }
    return out;
}

CMatrix PauliSumHamiltonian::dense() const {
    check_dense_size(n_qubits_);
    const Eigen::Index dim = Eigen::Index{1} << n_qubits_;
    CMatrix m = CMatrix::Zero(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c) {
        CVector e = CVector::Zero(dim);
        e(c) = 1.0;
        m.col(c) = apply(e);
    }
    return m;
}

PauliSumHamiltonian load_hamiltonian(const nlohmann::json &doc) {
    if (!doc.is_object()) {
        throw DataError("Hamiltonian document must be a JSON object");
    }
    if (!doc.contains("n_qubits") || !doc["n_qubits"].is_number_integer()) {
        throw DataError("Hamiltonian needs integer \"n_qubits\"");
    }
    if (!doc.contains("terms") || !doc["terms"].is_array()) {
        throw DataError("Hamiltonian needs array \"terms\"");
    }
    const int n = doc["n_qubits"].get<int>();
    std::vector<PauliTerm> terms;
    std::size_t idx = 0;
    for (const auto &jt : doc["terms"]) {
        const std::string where = "terms[" + std::to_string(idx++) + "]";
        if (!jt.is_object() || !jt.contains("pauli") || !jt["pauli"].is_string() ||
            !jt.contains("coeff")) {
            throw DataError(where + ": needs \"coeff\" and string \"pauli\"");
        }
        if (!jt["coeff"].is_number()) {
            throw DataError(where + ": coefficient must be a real number");
        }
        try {
            terms.push_back({jt["coeff"].get<double>(), PauliString(jt["pauli"].get<std::string>())});
        } catch (const DataError &e) {
            throw DataError(where + ": " + e.what());
        }
    }
    return {n, std::move(terms), doc.value("name", std::string{})};
}

PauliSumHamiltonian load_hamiltonian_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open Hamiltonian file \"" + path + "\"");
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception &e) {
        throw DataError("Hamiltonian file \"" + path + "\" is not valid JSON: " + e.what());
    }
    return load_hamiltonian(doc);
}

nlohmann::json hamiltonian_to_json(const PauliSumHamiltonian &h) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto &t : h.terms()) {
        terms.push_back({{"coeff", t.coeff}, {"pauli", t.pauli.str()}});
    }
    return {{"name", h.name()}, {"n_qubits", h.n_qubits()}, {"terms", std::move(terms)}};
}

PauliSumHamiltonian transverse_field_ising(int n_qubits, double g, double coupling,
                                          bool periodic) {
    std::vector<PauliTerm> terms;
    const int bonds = periodic && n_qubits > 2 ? n_qubits : n_qubits - 1;
    for (int i = 0; i < bonds; ++i) {
        terms.push_back({-coupling, PauliString(pauli_with(n_qubits, {{i, 'Z'}, {(i + 1) % n_qubits, 'Z'}}))});
    }
    for (int i = 0; i < n_qubits; ++i) {
        terms.push_back({-g, PauliString(pauli_with(n_qubits, {{i, 'X'}}))});
    }
    return {n_qubits, std::move(terms), "tfim-" + std::to_string(n_qubits)};
}

PauliSumHamiltonian heisenberg_chain(int n_qubits, double coupling, double field, bool periodic) {
    std::vector<PauliTerm> terms;
    const int bonds = periodic && n_qubits > 2 ? n_qubits : n_qubits - 1;
    for (int i = 0; i < bonds; ++i) {
        const int j = (i + 1) % n_qubits;
        for (char c : {'X', 'Y', 'Z'}) {
            terms.push_back({coupling, PauliString(pauli_with(n_qubits, {{i, c}, {j, c}}))});
        }
    }
    if (field != 0.0) {
        for (int i = 0; i < n_qubits; ++i) {
            terms.push_back({field, PauliString(pauli_with(n_qubits, {{i, 'Z'}}))});
        }
    }
    return {n_qubits, std::move(terms), "heisenberg-" + std::to_string(n_qubits)};
}

double expectation(const PauliSumHamiltonian &h, const StateVector &state) {
    if (state.n_qubits() != h.n_qubits()) {
        throw DataError("state and Hamiltonian qubit counts differ");
    }
    const cplx e = state.amplitudes().dot(h.apply(state.amplitudes()));
    return e.real();
}

RVector energy_gradient(const ParameterizedCircuit &circuit, std::span<const double> theta,
                        const PauliSumHamiltonian &h, const StateVector &initial) {
    if (circuit.n_qubits() != h.n_qubits()) {
        throw DataError("circuit and Hamiltonian qubit counts differ");
    }
    if (theta.size() != circuit.num_params()) {
        throw DataError("parameter vector length does not match circuit");
    }
    RVector grad(static_cast<Eigen::Index>(theta.size()));
    std::vector<double> shifted(theta.begin(), theta.end());
    for (std::size_t i = 0; i < theta.size(); ++i) {
        shifted[i] = theta[i] + std::numbers::pi / 2.0;
        const double up = expectation(h, prepare_state(circuit, shifted, initial));
        shifted[i] = theta[i] - std::numbers::pi / 2.0;
        const double dn = expectation(h, prepare_state(circuit, shifted, initial));
        shifted[i] = theta[i];
        grad(static_cast<Eigen::Index>(i)) = 0.5 * (up - dn);
    }
    return grad;
}

RVector energy_gradient_exact(const ParameterizedCircuit &circuit, std::span<const double> theta,
                              const PauliSumHamiltonian &h, const StateVector &initial) {
    if (circuit.n_qubits() != h.n_qubits()) {
        throw DataError("circuit and Hamiltonian qubit counts differ");
    }
    const StateVector phi = prepare_state(circuit, theta, initial);
    const CVector h_phi = h.apply(phi.amplitudes());
    const CMatrix d = derivative_states(circuit, theta, initial);
    return 2.0 * (d.adjoint() * h_phi).real();
}

namespace {

Eigen::SelfAdjointEigenSolver<CMatrix> diagonalize(const PauliSumHamiltonian &h) {
    check_dense_size(h.n_qubits());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h.dense());
    if (solver.info() != Eigen::Success) {
        throw NumericError("Hamiltonian diagonalization failed");
    }
    return solver;
}

} // namespace

GroundState exact_ground_state(const PauliSumHamiltonian &h) {
    const auto solver = diagonalize(h);
    CVector v = solver.eigenvectors().col(0);
    return {solver.eigenvalues()(0), StateVector::normalized(std::move(v))};
}

RVector exact_spectrum(const PauliSumHamiltonian &h) { return diagonalize(h).eigenvalues(); }

ImaginaryTimePropagator::ImaginaryTimePropagator(const PauliSumHamiltonian &h)
    : n_qubits_(h.n_qubits()) {
    const auto solver = diagonalize(h);
    evals_ = solver.eigenvalues();
    evecs_ = solver.eigenvectors();
}

StateVector ImaginaryTimePropagator::evolve(const StateVector &initial, double tau) const {
    if (initial.n_qubits() != n_qubits_) {
        throw DataError("initial state and Hamiltonian qubit counts differ");
    }
    if (tau < 0.0) {
        throw DataError("imaginary time must be non-negative");
    }
    CVector coeffs = evecs_.adjoint() * initial.amplitudes();
    // shift by the ground energy so the largest factor is 1
    const double e0 = evals_(0);
    for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
        coeffs(k) *= std::exp(-(evals_(k) - e0) * tau);
    }
    return StateVector::normalized(evecs_ * coeffs);
}

StateVector exact_imaginary_time_evolve(const PauliSumHamiltonian &h, const StateVector &initial,
                                        double tau) {
    if (initial.n_qubits() != h.n_qubits()) {
        throw DataError("initial state and Hamiltonian qubit counts differ");
    }
    if (tau < 0.0) {
        throw DataError("imaginary time must be non-negative");
    }
    return ImaginaryTimePropagator(h).evolve(initial, tau);
}

} // namespace rmlab
