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
#include "rmlab/unitaries.hpp"

#include <cmath>
#include <deque>
#include <map>
#include <numbers>

#include "rmlab/errors.hpp"

namespace rmlab {

namespace {

void check_sampler_qubits(int n) {
    if (n < 1 || n > kMaxSamplerQubits) {
        throw DataError("sampler qubit count " + std::to_string(n) + " outside [1, " +
                        std::to_string(kMaxSamplerQubits) + "]");
    }
}

double standard_normal(Rng &rng) {
    // Box-Muller; keeps the stream layout independent of the standard library.
    double u1 = uniform01(rng);
    while (u1 <= 0.0) {
        u1 = uniform01(rng);
    }
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

CMatrix kron(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

// --- symplectic bookkeeping for the Clifford sampler (signs dropped) --------

struct SymplecticPauli {
    std::vector<std::uint8_t> x;
    std::vector<std::uint8_t> z;
};

bool anticommute(const SymplecticPauli &a, const SymplecticPauli &b) {
    unsigned acc = 0;
    for (std::size_t j = 0; j < a.x.size(); ++j) {
        acc ^= static_cast<unsigned>((a.x[j] & b.z[j]) ^ (a.z[j] & b.x[j]));
    }
    return acc != 0;
}

void conjugate(SymplecticPauli &p, const GateOp &g) {
    switch (g.kind) {
    case GateKind::H:
        std::swap(p.x[g.targets[0]], p.z[g.targets[0]]);
        break;
    case GateKind::S:
        p.z[g.targets[0]] ^= p.x[g.targets[0]];
        break;
    case GateKind::CX: {
        const int c = g.targets[0];
        const int t = g.targets[1];
        p.x[t] ^= p.x[c];
        p.z[c] ^= p.z[t];
        break;
    }
    default:
        throw DataError("symplectic update only defined for H, S, CX");
    }
}

/// Records gates that move the anticommuting pair (p, q), supported on
/// qubits >= pivot, to (X_pivot, Z_pivot).
class Sweeper {
  public:
    Sweeper(SymplecticPauli &p, SymplecticPauli &q, std::vector<GateOp> &out)
        : p_(p), q_(q), out_(out) {}

    void run(int pivot) {
        const int n = static_cast<int>(p_.x.size());
        // P -> product of X's
        for (int j = pivot; j < n; ++j) {
            if (p_.z[j] != 0U) {
                emit(p_.x[j] != 0U ? GateOp::s(j) : GateOp::h(j));
            }
        }
        std::vector<int> support;
        for (int j = pivot; j < n; ++j) {
            if (p_.x[j] != 0U) {
                support.push_back(j);
            }
        }
        const int head = support.front();
        for (std::size_t k = 1; k < support.size(); ++k) {
            emit(GateOp::cx(head, support[k]));
        }
        if (head != pivot) {
            emit(GateOp::cx(pivot, head));
            emit(GateOp::cx(head, pivot));
            emit(GateOp::cx(pivot, head));
        }
        // P = X_pivot now; Q anticommutes with it so z_pivot(Q) = 1.
        if (is_single_z(q_, pivot)) {
            return;
        }
        emit(GateOp::h(pivot));
        for (int j = pivot; j < n; ++j) {
            if (q_.z[j] != 0U) {
                emit(q_.x[j] != 0U ? GateOp::s(j) : GateOp::h(j));
            }
        }
        for (int j = pivot + 1; j < n; ++j) {
            if (q_.x[j] != 0U) {
                emit(GateOp::cx(pivot, j));
            }
        }
        emit(GateOp::h(pivot));
    }

  private:
    static bool is_single_z(const SymplecticPauli &p, int pivot) {
        for (std::size_t j = 0; j < p.x.size(); ++j) {
            const auto want_z = static_cast<std::uint8_t>(static_cast<int>(j) == pivot);
            if (p.x[j] != 0U || p.z[j] != want_z) {
                return false;
            }
        }
        return true;
    }

    void emit(const GateOp &g) {
        conjugate(p_, g);
        conjugate(q_, g);
        out_.push_back(g);
    }

    SymplecticPauli &p_;
    SymplecticPauli &q_;
    std::vector<GateOp> &out_;
};

SymplecticPauli random_pauli(int n, int from, Rng &rng) {
    SymplecticPauli p{std::vector<std::uint8_t>(static_cast<std::size_t>(n), 0),
                      std::vector<std::uint8_t>(static_cast<std::size_t>(n), 0)};
    for (int j = from; j < n; ++j) {
        const auto bits = rng() >> 62U;
        p.x[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>(bits & 1U);
        p.z[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>((bits >> 1U) & 1U);
    }
    return p;
}

bool is_identity(const SymplecticPauli &p) {
    for (std::size_t j = 0; j < p.x.size(); ++j) {
        if (p.x[j] != 0U || p.z[j] != 0U) {
            return false;
        }
    }
    return true;
}

// Canonical key of a matrix modulo global phase.
std::vector<long long> phase_free_key(const CMatrix &u) {
    cplx ref = 0.0;
    for (Eigen::Index k = 0; k < u.size(); ++k) {
        if (std::abs(u.data()[k]) > 1e-6) {
            ref = std::conj(u.data()[k]) / std::abs(u.data()[k]);
            break;
        }
    }
    std::vector<long long> key;
    key.reserve(static_cast<std::size_t>(2 * u.size()));
    for (Eigen::Index k = 0; k < u.size(); ++k) {
        const cplx v = u.data()[k] * ref;
        key.push_back(std::llround(v.real() * 1e6));
        key.push_back(std::llround(v.imag() * 1e6));
    }
    return key;
}

CMatrix embed_1q(const CMatrix &m, int q, int n) {
    CMatrix out = CMatrix::Identity(1, 1);
    for (int j = n - 1; j >= 0; --j) {
        out = kron(out, j == q ? m : CMatrix::Identity(2, 2));
    }
    return out;
}

} // namespace

std::string to_string(EnsembleKind kind) {
    switch (kind) {
    case EnsembleKind::Identity:
        return "identity";
    case EnsembleKind::Haar:
        return "haar";
    case EnsembleKind::Clifford:
        return "clifford";
    case EnsembleKind::HardwareEfficient:
        return "hardware-efficient-random";
    case EnsembleKind::Fixed:
        return "fixed";
    }
    return "unknown";
}

EnsembleKind ensemble_kind_from_string(const std::string &name) {
    if (name == "identity") {
        return EnsembleKind::Identity;
    }
    if (name == "haar") {
        return EnsembleKind::Haar;
    }
    if (name == "clifford" || name == "clifford-group") {
        return EnsembleKind::Clifford;
    }
    if (name == "hardware-efficient-random" || name == "hardware-efficient") {
        return EnsembleKind::HardwareEfficient;
    }
    throw ConfigError("unknown unitary ensemble \"" + name + "\"");
}

void UnitaryEnsemble::validate() const {
    if (n_qubits < 1) {
        throw ConfigError("ensemble n_qubits must be >= 1");
    }
    if (kind == EnsembleKind::HardwareEfficient && layers < 1) {
        throw ConfigError("hardware-efficient ensemble needs layers >= 1");
    }
    if (kind == EnsembleKind::Fixed) {
        throw ConfigError("a fixed rotator cannot be sampled from");
    }
}

// --- SampledRotator --------------------------------------------------------

SampledRotator SampledRotator::identity(int n_qubits) {
    return {n_qubits, std::monostate{}, EnsembleKind::Identity, 0};
}

SampledRotator SampledRotator::from_dense(CMatrix u, EnsembleKind tag, std::uint64_t seed) {
    const auto dim = static_cast<std::size_t>(u.rows());
    int n = 0;
    while ((std::size_t{1} << static_cast<unsigned>(n)) < dim) {
        ++n;
    }
    if (u.rows() != u.cols() || (std::size_t{1} << static_cast<unsigned>(n)) != dim || n < 1) {
        throw DataError("rotator matrix must be square with power-of-two dimension");
    }
    return {n, std::move(u), tag, seed};
}

SampledRotator SampledRotator::from_gates(int n_qubits, std::vector<GateOp> gates,
                                          EnsembleKind tag, std::uint64_t seed) {
    for (const auto &g : gates) {
        if (g.is_parameterized()) {
            throw DataError("rotator gates must not be parameterized");
        }
        validate_gate(g, n_qubits, 0);
    }
    return {n_qubits, std::move(gates), tag, seed};
}

const std::vector<GateOp> &SampledRotator::gates() const {
    static const std::vector<GateOp> kEmpty;
    if (const auto *g = std::get_if<std::vector<GateOp>>(&repr_)) {
        return *g;
    }
    return kEmpty;
}

CVector SampledRotator::apply(const CVector &amps) const {
    if (amps.size() != (Eigen::Index{1} << n_qubits_)) {
        throw DataError("rotator dimension does not match state");
    }
    if (const auto *u = std::get_if<CMatrix>(&repr_)) {
        return *u * amps;
    }
    CVector out = amps;
    if (const auto *g = std::get_if<std::vector<GateOp>>(&repr_)) {
        for (const auto &gate : *g) {
            kernels::apply(out, gate, {});
        }
    }
    return out;
}

StateVector SampledRotator::apply(const StateVector &state) const {
    return StateVector::from_amplitudes(apply(state.amplitudes()), 1e-9);
}

CMatrix SampledRotator::dense() const {
    if (const auto *u = std::get_if<CMatrix>(&repr_)) {
        return *u;
    }
    const Eigen::Index dim = Eigen::Index{1} << n_qubits_;
    CMatrix out(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c) {
        CVector e = CVector::Zero(dim);
        e(c) = 1.0;
        out.col(c) = apply(e);
    }
    return out;
}

// --- samplers --------------------------------------------------------------

SampledRotator sample_haar(int n_qubits, std::uint64_t seed) {
    Rng rng(seed);
    auto r = sample_haar(n_qubits, rng);
    return SampledRotator::from_dense(r.dense(), EnsembleKind::Haar, seed);
}

SampledRotator sample_haar(int n_qubits, Rng &rng) {
    check_sampler_qubits(n_qubits);
    const Eigen::Index d = Eigen::Index{1} << n_qubits;
    CMatrix g(d, d);
    for (Eigen::Index c = 0; c < d; ++c) {
        for (Eigen::Index r = 0; r < d; ++r) {
            const double re = standard_normal(rng);
            const double im = standard_normal(rng);
            g(r, c) = cplx(re, im) * (1.0 / std::numbers::sqrt2);
        }
    }
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ();
    const CMatrix &packed = qr.matrixQR();
    for (Eigen::Index k = 0; k < d; ++k) {
        const cplx rkk = packed(k, k);
        const double mag = std::abs(rkk);
        q.col(k) *= mag > 0.0 ? rkk / mag : cplx(1.0);
    }
    return SampledRotator::from_dense(std::move(q), EnsembleKind::Haar, 0);
}

SampledRotator sample_clifford(int n_qubits, std::uint64_t seed) {
    Rng rng(seed);
    auto r = sample_clifford(n_qubits, rng);
    return SampledRotator::from_gates(n_qubits, r.gates(), EnsembleKind::Clifford, seed);
}

SampledRotator sample_clifford(int n_qubits, Rng &rng) {
    check_sampler_qubits(n_qubits);
    // W maps the sampled pair (P_q, Q_q) to (X_q, Z_q) for every q, qubit by
    // qubit; U = W^dagger R with R a uniform Pauli fixing the signs.
    std::vector<GateOp> forward;
    for (int q = 0; q < n_qubits; ++q) {
        SymplecticPauli p = random_pauli(n_qubits, q, rng);
        while (is_identity(p)) {
            p = random_pauli(n_qubits, q, rng);
        }
        SymplecticPauli qq = random_pauli(n_qubits, q, rng);
        while (!anticommute(p, qq)) {
            qq = random_pauli(n_qubits, q, rng);
        }
        Sweeper(p, qq, forward).run(q);
    }
    std::vector<GateOp> gates;
    for (int q = 0; q < n_qubits; ++q) {
        const auto bits = rng() >> 62U;
        if ((bits & 1U) != 0U) { // X = H Z H
            gates.push_back(GateOp::h(q));
            gates.push_back(GateOp::s(q));
            gates.push_back(GateOp::s(q));
            gates.push_back(GateOp::h(q));
        }
        if ((bits & 2U) != 0U) { // Z = S S
            gates.push_back(GateOp::s(q));
            gates.push_back(GateOp::s(q));
        }
    }
    for (auto it = forward.rbegin(); it != forward.rend(); ++it) {
        if (it->kind == GateKind::S) { // S^dagger = S^3
            for (int k = 0; k < 3; ++k) {
                gates.push_back(*it);
            }
        } else {
            gates.push_back(*it);
        }
    }
    return SampledRotator::from_gates(n_qubits, std::move(gates), EnsembleKind::Clifford, 0);
}

std::vector<SampledRotator> enumerate_clifford_group(int n_qubits) {
    if (n_qubits < 1 || n_qubits > 2) {
        throw DataError("Clifford enumeration supports n <= 2 only");
    }
    std::vector<CMatrix> gens;
    for (int q = 0; q < n_qubits; ++q) {
        gens.push_back(embed_1q(GateOp::h(0).local_matrix(), q, n_qubits));
        gens.push_back(embed_1q(GateOp::s(0).local_matrix(), q, n_qubits));
    }
    if (n_qubits == 2) {
        gens.push_back(GateOp::cx(0, 1).local_matrix());
    }
    const Eigen::Index d = Eigen::Index{1} << n_qubits;
    std::map<std::vector<long long>, std::size_t> seen;
    std::vector<CMatrix> elements;
    std::deque<std::size_t> frontier;
    const CMatrix id = CMatrix::Identity(d, d);
    seen.emplace(phase_free_key(id), 0);
    elements.push_back(id);
    frontier.push_back(0);
    while (!frontier.empty()) {
        const std::size_t cur = frontier.front();
        frontier.pop_front();
        for (const auto &g : gens) {
            CMatrix next = g * elements[cur];
            auto key = phase_free_key(next);
            if (seen.emplace(std::move(key), elements.size()).second) {
                elements.push_back(std::move(next));
                frontier.push_back(elements.size() - 1);
            }
        }
    }
    std::vector<SampledRotator> out;
    out.reserve(elements.size());
    for (std::size_t k = 0; k < elements.size(); ++k) {
        out.push_back(SampledRotator::from_dense(std::move(elements[k]), EnsembleKind::Clifford, k));
    }
    return out;
}

SampledRotator sample_hardware_efficient(int n_qubits, int layers, std::uint64_t seed) {
    Rng rng(seed);
    auto r = sample_hardware_efficient(n_qubits, layers, rng);
    return SampledRotator::from_gates(n_qubits, r.gates(), EnsembleKind::HardwareEfficient, seed);
}

SampledRotator sample_hardware_efficient(int n_qubits, int layers, Rng &rng) {
    check_sampler_qubits(n_qubits);
    if (layers < 1) {
        throw DataError("hardware-efficient rotator needs layers >= 1");
    }
    constexpr Pauli kAxes[] = {Pauli::X, Pauli::Y, Pauli::Z};
    std::vector<GateOp> gates;
    for (int l = 0; l < layers; ++l) {
        for (int q = 0; q < n_qubits; ++q) {
            const Pauli axis = kAxes[rng() % 3];
            const double angle = 2.0 * std::numbers::pi * uniform01(rng);
            gates.push_back(GateOp::fixed_rotation(axis, q, angle));
        }
        for (int q = 0; q + 1 < n_qubits; ++q) {
            gates.push_back(GateOp::cz(q, q + 1));
        }
    }
    return SampledRotator::from_gates(n_qubits, std::move(gates), EnsembleKind::HardwareEfficient,
                                      0);
}

SampledRotator sample_rotator(const UnitaryEnsemble &ensemble, std::uint64_t seed) {
    ensemble.validate();
    switch (ensemble.kind) {
    case EnsembleKind::Identity:
        return SampledRotator::identity(ensemble.n_qubits);
    case EnsembleKind::Haar:
        return sample_haar(ensemble.n_qubits, seed);
    case EnsembleKind::Clifford:
        return sample_clifford(ensemble.n_qubits, seed);
    case EnsembleKind::HardwareEfficient:
        return sample_hardware_efficient(ensemble.n_qubits, ensemble.layers, seed);
    case EnsembleKind::Fixed:
        break;
    }
    throw ConfigError("cannot sample from this ensemble");
}

// --- checks and moment operators -------------------------------------------

bool conjugates_paulis_to_paulis(const CMatrix &u, double tol) {
    const auto d = u.rows();
    int n = 0;
    while ((Eigen::Index{1} << n) < d) {
        ++n;
    }
    const std::size_t n_strings = std::size_t{1} << (2U * static_cast<unsigned>(n));
    std::vector<CMatrix> strings;
    strings.reserve(n_strings);
    for (std::size_t code = 0; code < n_strings; ++code) {
        CMatrix m = CMatrix::Identity(1, 1);
        for (int j = n - 1; j >= 0; --j) {
            const auto p = static_cast<Pauli>((code >> (2U * static_cast<unsigned>(j))) & 3U);
            m = kron(m, pauli_matrix(p));
        }
        strings.push_back(std::move(m));
    }
    for (int q = 0; q < n; ++q) {
        for (Pauli gen : {Pauli::X, Pauli::Z}) {
            const CMatrix img = u * embed_1q(pauli_matrix(gen), q, n) * u.adjoint();
            int hits = 0;
            for (const auto &s : strings) {
                const cplx c = (s * img).trace() / static_cast<double>(d);
                if (std::abs(std::abs(c.real()) - 1.0) < tol && std::abs(c.imag()) < tol) {
                    ++hits;
                } else if (std::abs(c) > tol) {
                    return false;
                }
            }
            if (hits != 1) {
                return false;
            }
        }
    }
    return true;
}

CMatrix swap_operator(int d) {
    const Eigen::Index dd = static_cast<Eigen::Index>(d) * d;
    CMatrix s = CMatrix::Zero(dd, dd);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            s(j * d + i, i * d + j) = 1.0;
        }
    }
    return s;
}

CMatrix haar_second_moment(const CMatrix &op, int d) {
    const Eigen::Index dd = static_cast<Eigen::Index>(d) * d;
    if (d < 2 || op.rows() != dd || op.cols() != dd) {
        throw DataError("second-moment operator must be d^2 x d^2 with d >= 2");
    }
    const cplx tr = op.trace();
    cplx tr_swap = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            tr_swap += op(j * d + i, i * d + j);
        }
    }
    const double dn = d;
    const cplx a = (tr - tr_swap / dn) / (dn * dn - 1.0);
    const cplx b = (tr_swap - tr / dn) / (dn * dn - 1.0);
    return a * CMatrix::Identity(dd, dd) + b * swap_operator(d);
}

CMatrix haar_first_moment(const CMatrix &op) {
    if (op.rows() != op.cols()) {
        throw DataError("first-moment operator must be square");
    }
    return op.trace() / static_cast<double>(op.rows()) * CMatrix::Identity(op.rows(), op.cols());
}

CMatrix twirl_second_moment(const std::vector<SampledRotator> &rotators, const CMatrix &op) {
    if (rotators.empty()) {
        throw DataError("twirl needs at least one rotator");
    }
    CMatrix acc = CMatrix::Zero(op.rows(), op.cols());
    for (const auto &r : rotators) {
        const CMatrix u = r.dense();
        if (u.rows() * u.rows() != op.rows()) {
            throw DataError("twirl operator dimension mismatch");
        }
        const CMatrix uu = kron(u, u);
        acc += uu * op * uu.adjoint();
    }
    return acc / static_cast<double>(rotators.size());
}

} // namespace rmlab
