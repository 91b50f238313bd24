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
#include "rmlab/state.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rmlab/errors.hpp"

namespace rmlab {

namespace {

constexpr cplx kI{0.0, 1.0};

bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

int log2_exact(std::size_t v) {
    int n = 0;
    while ((std::size_t{1} << static_cast<unsigned>(n)) < v) {
        ++n;
    }
    return n;
}

void check_qubit_count(int n) {
    if (n < 1 || n > kMaxQubits) {
        throw DataError("qubit count " + std::to_string(n) + " outside [1, " +
                        std::to_string(kMaxQubits) + "]");
    }
}

std::size_t expected_arity(GateKind kind) {
    switch (kind) {
    case GateKind::CX:
    case GateKind::CZ:
    case GateKind::Swap:
        return 2;
    case GateKind::Unitary:
        return 0; // decided by the matrix
    default:
        return 1;
    }
}

} // namespace

char pauli_char(Pauli p) {
    switch (p) {
    case Pauli::I:
        return 'I';
    case Pauli::X:
        return 'X';
    case Pauli::Y:
        return 'Y';
    case Pauli::Z:
        return 'Z';
    }
    return '?';
}

Pauli pauli_from_char(char c) {
    switch (c) {
    case 'I':
        return Pauli::I;
    case 'X':
        return Pauli::X;
    case 'Y':
        return Pauli::Y;
    case 'Z':
        return Pauli::Z;
    default:
        throw DataError(std::string("invalid Pauli character '") + c + "'");
    }
}

CMatrix pauli_matrix(Pauli p) {
    CMatrix m(2, 2);
    switch (p) {
    case Pauli::I:
        m << 1, 0, 0, 1;
        break;
    case Pauli::X:
        m << 0, 1, 1, 0;
        break;
    case Pauli::Y:
        m << 0, -kI, kI, 0;
        break;
    case Pauli::Z:
        m << 1, 0, 0, -1;
        break;
    }
    return m;
}

// --- StateVector -----------------------------------------------------------

StateVector StateVector::zero(int n_qubits) { return basis(n_qubits, 0); }

StateVector StateVector::basis(int n_qubits, std::uint64_t index) {
    check_qubit_count(n_qubits);
    const auto dim = std::size_t{1} << static_cast<unsigned>(n_qubits);
    if (index >= dim) {
        throw DataError("basis index out of range");
    }
    CVector amps = CVector::Zero(static_cast<Eigen::Index>(dim));
    amps(static_cast<Eigen::Index>(index)) = 1.0;
    return {n_qubits, std::move(amps)};
}

StateVector StateVector::from_bitstring(std::string_view bits) {
    std::uint64_t index = 0;
    for (std::size_t k = 0; k < bits.size(); ++k) {
        if (bits[k] == '1') {
            index |= std::uint64_t{1} << k;
        } else if (bits[k] != '0') {
            throw DataError("bitstring may only contain '0' and '1'");
        }
    }
    return basis(static_cast<int>(bits.size()), index);
}

StateVector StateVector::from_amplitudes(CVector amps, double tol) {
    const auto dim = static_cast<std::size_t>(amps.size());
    if (!is_power_of_two(dim) || dim < 2) {
        throw DataError("amplitude vector length must be a power of two >= 2");
    }
    const int n = log2_exact(dim);
    check_qubit_count(n);
    if (std::abs(amps.squaredNorm() - 1.0) > tol) {
        throw DataError("amplitude vector is not normalized");
    }
    return {n, std::move(amps)};
}

StateVector StateVector::normalized(CVector amps) {
    const double norm = amps.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw NumericError("cannot normalize a zero or non-finite vector");
    }
    amps /= norm;
    return from_amplitudes(std::move(amps));
}

// --- GateOp ----------------------------------------------------------------

GateOp GateOp::named(GateKind kind, std::vector<int> targets) {
    GateOp g;
    g.kind = kind;
    g.targets = std::move(targets);
    if (kind == GateKind::Unitary || kind == GateKind::Rotation) {
        throw DataError("use GateOp::unitary / GateOp::rotation for this gate kind");
    }
    if (g.targets.size() != expected_arity(kind)) {
        throw DataError("wrong number of targets for gate");
    }
    return g;
}

GateOp GateOp::rotation(Pauli axis, int qubit, std::size_t param) {
    if (axis == Pauli::I) {
        throw DataError("rotation axis must be X, Y or Z");
    }
    GateOp g;
    g.kind = GateKind::Rotation;
    g.targets = {qubit};
    g.axis = axis;
    g.param = param;
    return g;
}

GateOp GateOp::fixed_rotation(Pauli axis, int qubit, double angle) {
    if (axis == Pauli::I) {
        throw DataError("rotation axis must be X, Y or Z");
    }
    GateOp g;
    g.kind = GateKind::Rotation;
    g.targets = {qubit};
    g.axis = axis;
    g.angle = angle;
    return g;
}

GateOp GateOp::unitary(CMatrix m, std::vector<int> targets) {
    const auto dim = std::size_t{1} << targets.size();
    if (targets.empty() || static_cast<std::size_t>(m.rows()) != dim ||
        static_cast<std::size_t>(m.cols()) != dim) {
        throw DataError("explicit gate matrix must be 2^k x 2^k for k targets");
    }
    const CMatrix prod = m.adjoint() * m;
    const CMatrix id = CMatrix::Identity(m.rows(), m.cols());
    if ((prod - id).cwiseAbs().maxCoeff() > kNormTolerance) {
        throw DataError("explicit gate matrix is not unitary");
    }
    GateOp g;
    g.kind = GateKind::Unitary;
    g.targets = std::move(targets);
    g.matrix = std::move(m);
    return g;
}

GateOp GateOp::inverse(std::span<const double> theta) const {
    switch (kind) {
    case GateKind::S:
        return sdg(targets[0]);
    case GateKind::Sdg:
        return s(targets[0]);
    case GateKind::Unitary: {
        GateOp g = *this;
        g.matrix = matrix.adjoint();
        return g;
    }
    case GateKind::Rotation: {
        const double a = param ? theta[*param] : angle;
        return fixed_rotation(axis, targets[0], -a);
    }
    default:
        return *this; // self-inverse
    }
}

CMatrix GateOp::local_matrix(std::span<const double> theta) const {
    const double r = std::numbers::sqrt2 / 2.0;
    CMatrix m;
    switch (kind) {
    case GateKind::H:
        m.resize(2, 2);
        m << r, r, r, -r;
        return m;
    case GateKind::S:
        m.resize(2, 2);
        m << 1, 0, 0, kI;
        return m;
    case GateKind::Sdg:
        m.resize(2, 2);
        m << 1, 0, 0, -kI;
        return m;
    case GateKind::X:
        return pauli_matrix(Pauli::X);
    case GateKind::Y:
        return pauli_matrix(Pauli::Y);
    case GateKind::Z:
        return pauli_matrix(Pauli::Z);
    case GateKind::CX:
        // local index = bit(control) + 2 bit(target)
        m = CMatrix::Zero(4, 4);
        m(0, 0) = 1;
        m(3, 1) = 1;
        m(2, 2) = 1;
        m(1, 3) = 1;
        return m;
    case GateKind::CZ:
        m = CMatrix::Identity(4, 4);
        m(3, 3) = -1;
        return m;
    case GateKind::Swap:
        m = CMatrix::Zero(4, 4);
        m(0, 0) = 1;
        m(2, 1) = 1;
        m(1, 2) = 1;
        m(3, 3) = 1;
        return m;
    case GateKind::Unitary:
        return matrix;
    case GateKind::Rotation: {
        const double a = param ? theta[*param] : angle;
        return std::cos(a / 2.0) * CMatrix::Identity(2, 2) -
               kI * std::sin(a / 2.0) * pauli_matrix(axis);
    }
    }
    return m;
}

void validate_gate(const GateOp &gate, int n_qubits, std::size_t n_params) {
    for (std::size_t a = 0; a < gate.targets.size(); ++a) {
        const int t = gate.targets[a];
        if (t < 0 || t >= n_qubits) {
            throw DataError("gate target " + std::to_string(t) + " out of range for " +
                            std::to_string(n_qubits) + " qubits");
        }
        for (std::size_t b = a + 1; b < gate.targets.size(); ++b) {
            if (gate.targets[b] == t) {
                throw DataError("gate targets must be distinct");
            }
        }
    }
    if (gate.is_parameterized() && *gate.param >= n_params) {
        throw DataError("rotation parameter index " + std::to_string(*gate.param) +
                        " out of range (" + std::to_string(n_params) + " parameters)");
    }
}

// --- kernels ---------------------------------------------------------------

namespace kernels {

namespace {

void apply_1q(CVector &amps, const cplx m00, const cplx m01, const cplx m10, const cplx m11,
              int q) {
    const auto dim = static_cast<std::size_t>(amps.size());
    const std::size_t bit = std::size_t{1} << static_cast<unsigned>(q);
    cplx *a = amps.data();
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & bit) != 0) {
            continue;
        }
        const cplx v0 = a[i];
        const cplx v1 = a[i | bit];
        a[i] = m00 * v0 + m01 * v1;
        a[i | bit] = m10 * v0 + m11 * v1;
    }
}

} // namespace

void apply_pauli(CVector &amps, Pauli p, int qubit) {
    const auto dim = static_cast<std::size_t>(amps.size());
    const std::size_t bit = std::size_t{1} << static_cast<unsigned>(qubit);
    cplx *a = amps.data();
    switch (p) {
    case Pauli::I:
        return;
    case Pauli::X:
        for (std::size_t i = 0; i < dim; ++i) {
            if ((i & bit) == 0) {
                std::swap(a[i], a[i | bit]);
            }
        }
        return;
    case Pauli::Y:
        for (std::size_t i = 0; i < dim; ++i) {
            if ((i & bit) == 0) {
                const cplx v0 = a[i];
                a[i] = -kI * a[i | bit];
                a[i | bit] = kI * v0;
            }
        }
        return;
    case Pauli::Z:
        for (std::size_t i = 0; i < dim; ++i) {
            if ((i & bit) != 0) {
                a[i] = -a[i];
            }
        }
        return;
    }
}

void apply_local_matrix(CVector &amps, const CMatrix &m, std::span<const int> targets) {
    const auto k = targets.size();
    if (k == 1) {
        apply_1q(amps, m(0, 0), m(0, 1), m(1, 0), m(1, 1), targets[0]);
        return;
    }
    const auto dim = static_cast<std::size_t>(amps.size());
    const std::size_t local_dim = std::size_t{1} << k;
    std::size_t mask = 0;
    std::vector<std::size_t> offsets(local_dim, 0);
    for (std::size_t t = 0; t < k; ++t) {
        mask |= std::size_t{1} << static_cast<unsigned>(targets[t]);
    }
    for (std::size_t l = 0; l < local_dim; ++l) {
        for (std::size_t t = 0; t < k; ++t) {
            if ((l >> t) & 1U) {
                offsets[l] |= std::size_t{1} << static_cast<unsigned>(targets[t]);
            }
        }
    }
    std::vector<cplx> in(local_dim);
    cplx *a = amps.data();
    for (std::size_t base = 0; base < dim; ++base) {
        if ((base & mask) != 0) {
            continue;
        }
        for (std::size_t l = 0; l < local_dim; ++l) {
            in[l] = a[base | offsets[l]];
        }
        for (std::size_t r = 0; r < local_dim; ++r) {
            cplx acc = 0.0;
            for (std::size_t c = 0; c < local_dim; ++c) {
                acc += m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * in[c];
            }
            a[base | offsets[r]] = acc;
        }
    }
}

void apply(CVector &amps, const GateOp &gate, std::span<const double> theta) {
    const auto dim = static_cast<std::size_t>(amps.size());
    cplx *a = amps.data();
    switch (gate.kind) {
    case GateKind::X:
        apply_pauli(amps, Pauli::X, gate.targets[0]);
        return;
    case GateKind::Y:
        apply_pauli(amps, Pauli::Y, gate.targets[0]);
        return;
    case GateKind::Z:
        apply_pauli(amps, Pauli::Z, gate.targets[0]);
        return;
    case GateKind::S:
    case GateKind::Sdg: {
        const cplx phase = gate.kind == GateKind::S ? kI : -kI;
        const std::size_t bit = std::size_t{1} << static_cast<unsigned>(gate.targets[0]);
        for (std::size_t i = 0; i < dim; ++i) {
            if ((i & bit) != 0) {
                a[i] *= phase;
            }
        }
        return;
    }
    case GateKind::CX: {
        const std::size_t c = std::size_t{1} << static_cast<unsigned>(gate.targets[0]);
        const std::size_t t = std::size_t{1} << static_cast<unsigned>(gate.targets[1]);
        for (std::size_t i = 0; i < dim; ++i) {
            if ((i & c) != 0 && (i & t) == 0) {
                std::swap(a[i], a[i | t]);
            }
        }
        return;
    }
    case GateKind::CZ: {
        const std::size_t both = (std::size_t{1} << static_cast<unsigned>(gate.targets[0])) |
                                 (std::size_t{1} << static_cast<unsigned>(gate.targets[1]));
        for (std::size_t i = 0; i < dim; ++i) {
            if ((i & both) == both) {
                a[i] = -a[i];
            }
        }
        return;
    }
    case GateKind::Swap: {
        const std::size_t p = std::size_t{1} << static_cast<unsigned>(gate.targets[0]);
        const std::size_t q = std::size_t{1} << static_cast<unsigned>(gate.targets[1]);
        for (std::size_t i = 0; i < dim; ++i) {
            if ((i & p) != 0 && (i & q) == 0) {
                std::swap(a[i], a[(i & ~p) | q]);
            }
        }
        return;
    }
    case GateKind::Rotation: {
        const double ang = gate.param ? theta[*gate.param] : gate.angle;
        const double c = std::cos(ang / 2.0);
        const double s = std::sin(ang / 2.0);
        switch (gate.axis) {
        case Pauli::X:
            apply_1q(amps, c, -kI * s, -kI * s, c, gate.targets[0]);
            return;
        case Pauli::Y:
            apply_1q(amps, c, -s, s, c, gate.targets[0]);
            return;
        case Pauli::Z:
            apply_1q(amps, cplx(c, -s), 0.0, 0.0, cplx(c, s), gate.targets[0]);
            return;
        case Pauli::I:
            return;
        }
        return;
    }
    case GateKind::H:
    case GateKind::Unitary:
        apply_local_matrix(amps, gate.local_matrix(theta), gate.targets);
        return;
    }
}

} // namespace kernels

StateVector apply_gate(const StateVector &state, const GateOp &gate,
                       std::span<const double> theta) {
    validate_gate(gate, state.n_qubits(), theta.size());
    if (gate.kind == GateKind::Unitary) {
        // re-check in case the matrix was edited after construction
        const CMatrix prod = gate.matrix.adjoint() * gate.matrix;
        if ((prod - CMatrix::Identity(prod.rows(), prod.cols())).cwiseAbs().maxCoeff() >
            kNormTolerance) {
            throw DataError("explicit gate matrix is not unitary");
        }
    }
    CVector amps = state.amplitudes();
    kernels::apply(amps, gate, theta);
    return StateVector::from_amplitudes(std::move(amps));
}

// --- measurement -----------------------------------------------------------

std::vector<double> outcome_probabilities(const CVector &amps) {
    std::vector<double> p(static_cast<std::size_t>(amps.size()));
    for (Eigen::Index i = 0; i < amps.size(); ++i) {
        p[static_cast<std::size_t>(i)] = std::norm(amps(i));
    }
    return p;
}

OutcomeDistribution outcome_probabilities(const StateVector &state) {
    return {state.n_qubits(), outcome_probabilities(state.amplitudes())};
}

OutcomeDistribution sample_outcomes(const OutcomeDistribution &dist, std::uint64_t shots,
                                    Rng &rng) {
    if (shots == 0) {
        throw DataError("sample_outcomes requires at least one shot");
    }
    std::vector<double> cdf(dist.probs.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < dist.probs.size(); ++i) {
        acc += dist.probs[i];
        cdf[i] = acc;
    }
    std::vector<std::uint64_t> counts(dist.probs.size(), 0);
    for (std::uint64_t k = 0; k < shots; ++k) {
        const double u = uniform01(rng) * acc;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        auto idx = static_cast<std::size_t>(it - cdf.begin());
        idx = std::min(idx, cdf.size() - 1);
        // never land on a zero-probability outcome because of rounding
        while (idx > 0 && dist.probs[idx] == 0.0) {
            --idx;
        }
        ++counts[idx];
    }
    OutcomeDistribution out{dist.n_qubits, std::vector<double>(counts.size())};
    for (std::size_t i = 0; i < counts.size(); ++i) {
        out.probs[i] = static_cast<double>(counts[i]) / static_cast<double>(shots);
    }
    return out;
}

double overlap_squared(const StateVector &a, const StateVector &b) {
    if (a.n_qubits() != b.n_qubits()) {
        throw DataError("overlap of states with different qubit counts");
    }
    return std::norm(a.amplitudes().dot(b.amplitudes()));
}

} // namespace rmlab
