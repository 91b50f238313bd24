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
#include "rmlab/fisher.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "rmlab/errors.hpp"
#include "rmlab/random.hpp"

namespace rmlab {

namespace {

RMatrix symmetrized(const RMatrix &a) { return 0.5 * (a + a.transpose()); }

std::vector<double> measured(const CVector &amps, std::optional<std::uint64_t> shots, Rng *rng,
                             int n_qubits) {
    auto probs = outcome_probabilities(amps);
    if (!shots) {
        return probs;
    }
    return sample_outcomes({n_qubits, std::move(probs)}, *shots, *rng).probs;
}

/// Jacobian d_i p_s and, optionally, p_s for one rotator. In shot mode every
/// preparation is sampled independently.
struct RotatedData {
    RMatrix jac;
    std::vector<double> probs;
};

RotatedData rotated_data(const ShiftedEvaluation &eval, const SampledRotator &rotator,
                         std::optional<std::uint64_t> shots, std::uint64_t seed,
                         bool with_center) {
    const std::size_t m = eval.shifted.num_params();
    const int n = eval.center.n_qubits();
    if (rotator.n_qubits() != n) {
        throw DataError("rotator acts on a different number of qubits than the circuit");
    }
    const auto dim = static_cast<Eigen::Index>(eval.center.dim());
    Rng rng(child_seed(seed, {0xC0FFEEULL}));
    RotatedData out{RMatrix(dim, static_cast<Eigen::Index>(m)), {}};
    for (std::size_t i = 0; i < m; ++i) {
        const auto up = measured(rotator.apply(eval.shifted.plus[i].amplitudes()), shots, &rng, n);
        const auto dn = measured(rotator.apply(eval.shifted.minus[i].amplitudes()), shots, &rng, n);
        for (Eigen::Index s = 0; s < dim; ++s) {
            const auto su = static_cast<std::size_t>(s);
            out.jac(s, static_cast<Eigen::Index>(i)) = 0.5 * (up[su] - dn[su]);
        }
    }
    if (with_center) {
        out.probs = measured(rotator.apply(eval.center.amplitudes()), shots, &rng, n);
    }
    return out;
}

EnsembleKind ensemble_for(const EstimatorConfig &config) { return config.ensemble.kind; }

} // namespace

std::string to_string(FisherSource source) {
    switch (source) {
    case FisherSource::ExactQfim:
        return "exact-qfim";
    case FisherSource::Cfim:
        return "cfim";
    case FisherSource::TwoDesign:
        return "two-design";
    case FisherSource::AverageCfim:
        return "average-cfim";
    }
    return "unknown";
}

std::string to_string(EstimatorKind kind) {
    return kind == EstimatorKind::TwoDesign ? "two-design" : "average-cfim";
}

double FisherMatrix::min_eigenvalue() const {
    if (entries.rows() == 0) {
        return std::numeric_limits<double>::infinity();
    }
    Eigen::SelfAdjointEigenSolver<RMatrix> es(symmetrized(entries), Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

double FisherMatrix::max_eigenvalue() const {
    if (entries.rows() == 0) {
        return -std::numeric_limits<double>::infinity();
    }
    Eigen::SelfAdjointEigenSolver<RMatrix> es(symmetrized(entries), Eigen::EigenvaluesOnly);
    return es.eigenvalues()(es.eigenvalues().size() - 1);
}

void EstimatorConfig::validate() const {
    if (samples < 1) {
        throw ConfigError("estimator.K must be >= 1");
    }
    if (!(probability_floor >= 0.0 && probability_floor <= 1e-3)) {
        throw ConfigError("estimator.floor must lie in [0, 1e-3]");
    }
    if (shots && *shots == 0) {
        throw ConfigError("estimator.shots must be >= 1 (or null for exact probabilities)");
    }
    ensemble.validate();
    if (kind == EstimatorKind::TwoDesign && ensemble.kind != EnsembleKind::Haar &&
        ensemble.kind != EnsembleKind::Clifford) {
        throw ConfigError("two-design estimator needs a haar or clifford ensemble");
    }
}

FisherMatrix exact_qfim(const ParameterizedCircuit &circuit, std::span<const double> theta,
                        const StateVector &initial) {
    const StateVector phi = prepare_state(circuit, theta, initial);
    const CMatrix d = derivative_states(circuit, theta, initial);
    const CVector overlaps = d.adjoint() * phi.amplitudes(); // <d_i phi|phi>
    const CMatrix gram = d.adjoint() * d;
    const RMatrix f = 4.0 * (gram - overlaps * overlaps.adjoint()).real();
    return {symmetrized(f), {FisherSource::ExactQfim, 0, std::nullopt, EnsembleKind::Identity, false}};
}

ShiftedEvaluation evaluate_shifts(const ParameterizedCircuit &circuit,
                                  std::span<const double> theta, const StateVector &initial) {
    return {shifted_states(circuit, theta, initial), prepare_state(circuit, theta, initial)};
}

RMatrix cfim_from_shifts(const ShiftedEvaluation &eval, const SampledRotator &rotator,
                         std::optional<std::uint64_t> shots, std::uint64_t seed, double floor) {
    const auto data = rotated_data(eval, rotator, shots, seed, true);
    const auto m = data.jac.cols();
    RMatrix f = RMatrix::Zero(m, m);
    bool any = false;
    for (Eigen::Index s = 0; s < data.jac.rows(); ++s) {
        const double p = data.probs[static_cast<std::size_t>(s)];
        const bool keep = shots ? p > 0.0 : p > floor;
        if (!keep) {
            continue;
        }
        any = true;
        const auto row = data.jac.row(s);
        f.noalias() += (row.transpose() * row) / p;
    }
    if (!any) {
        throw NumericError("classical Fisher matrix is degenerate: every outcome probability is "
                           "below the floor");
    }
    return f;
}

RMatrix derivative_gram_from_shifts(const ShiftedEvaluation &eval, const SampledRotator &rotator,
                                    std::optional<std::uint64_t> shots, std::uint64_t seed) {
    const auto data = rotated_data(eval, rotator, shots, seed, false);
    return data.jac.transpose() * data.jac;
}

FisherMatrix cfim(const ParameterizedCircuit &circuit, std::span<const double> theta,
                  const SampledRotator &rotator, const StateVector &initial,
                  std::optional<std::uint64_t> shots, std::uint64_t seed, double floor) {
    if (rotator.n_qubits() != circuit.n_qubits()) {
        throw DataError("rotator acts on a different number of qubits than the circuit");
    }
    if (shots && *shots == 0) {
        throw DataError("shots must be >= 1");
    }
    const auto eval = evaluate_shifts(circuit, theta, initial);
    return {symmetrized(cfim_from_shifts(eval, rotator, shots, seed, floor)),
            {FisherSource::Cfim, 1, shots, rotator.ensemble(), false}};
}

FisherMatrix two_design_estimate(const ShiftedEvaluation &eval, int n_qubits,
                                 const EstimatorConfig &config, std::uint64_t seed) {
    config.validate();
    if (config.kind != EstimatorKind::TwoDesign) {
        throw ConfigError("two_design_estimate called with a non two-design config");
    }
    UnitaryEnsemble ens = config.ensemble;
    ens.n_qubits = n_qubits;
    const auto m = static_cast<Eigen::Index>(eval.shifted.num_params());
    RMatrix acc = RMatrix::Zero(m, m);
    for (std::size_t k = 0; k < config.samples; ++k) {
        const auto sample_seed = child_seed(seed, {k});
        const auto rotator = sample_rotator(ens, sample_seed);
        acc += derivative_gram_from_shifts(eval, rotator, config.shots, sample_seed);
    }
    const double scale = 2.0 * (std::ldexp(1.0, n_qubits) + 1.0) / static_cast<double>(config.samples);
    return {symmetrized(scale * acc),
            {FisherSource::TwoDesign, config.samples, config.shots, ensemble_for(config), false}};
}

FisherMatrix two_design_estimate(const ParameterizedCircuit &circuit,
                                 std::span<const double> theta, const EstimatorConfig &config,
                                 std::uint64_t seed, const StateVector &initial) {
    return two_design_estimate(evaluate_shifts(circuit, theta, initial), circuit.n_qubits(), config,
                               seed);
}

FisherMatrix average_cfim_estimate(const ShiftedEvaluation &eval, int n_qubits,
                                   const EstimatorConfig &config, std::uint64_t seed) {
    config.validate();
    if (config.kind != EstimatorKind::AverageCfim) {
        throw ConfigError("average_cfim_estimate called with a non average-cfim config");
    }
    UnitaryEnsemble ens = config.ensemble;
    ens.n_qubits = n_qubits;
    const auto m = static_cast<Eigen::Index>(eval.shifted.num_params());
    RMatrix acc = RMatrix::Zero(m, m);
    for (std::size_t k = 0; k < config.samples; ++k) {
        const auto sample_seed = child_seed(seed, {k});
        const auto rotator = sample_rotator(ens, sample_seed);
        acc += cfim_from_shifts(eval, rotator, config.shots, sample_seed, config.probability_floor);
    }
    double scale = 1.0 / static_cast<double>(config.samples);
    if (config.rescale_average_cfim) {
        scale *= 2.0;
    }
    return {symmetrized(scale * acc),
            {FisherSource::AverageCfim, config.samples, config.shots, ensemble_for(config),
             config.rescale_average_cfim}};
}

FisherMatrix average_cfim_estimate(const ParameterizedCircuit &circuit,
                                   std::span<const double> theta, const EstimatorConfig &config,
                                   std::uint64_t seed, const StateVector &initial) {
    return average_cfim_estimate(evaluate_shifts(circuit, theta, initial), circuit.n_qubits(),
                                 config, seed);
}

FisherMatrix estimate_fisher(const ShiftedEvaluation &eval, int n_qubits,
                             const EstimatorConfig &config, std::uint64_t seed) {
    return config.kind == EstimatorKind::TwoDesign
               ? two_design_estimate(eval, n_qubits, config, seed)
               : average_cfim_estimate(eval, n_qubits, config, seed);
}

double estimator_error(const FisherMatrix &approx, const FisherMatrix &exact) {
    if (approx.entries.rows() != exact.entries.rows() ||
        approx.entries.cols() != exact.entries.cols()) {
        throw DataError("Fisher matrices of different sizes");
    }
    return (approx.entries - exact.entries).norm();
}

double relative_estimator_error(const FisherMatrix &approx, const FisherMatrix &exact) {
    const double ref = exact.entries.norm();
    if (!(ref > 0.0)) {
        throw NumericError("relative error against a zero reference matrix");
    }
    return estimator_error(approx, exact) / ref;
}

// --- fidelity from random measurements --------------------------------------

namespace {

/// 2^n sum_{s,s'} (-2^n)^{-D_G} corr(s, s') for a matrix of correlations
/// E[p_s q_s'].
double hamming_weighted_sum(const RMatrix &corr) {
    const double d = static_cast<double>(corr.rows());
    double acc = 0.0;
    for (Eigen::Index s = 0; s < corr.rows(); ++s) {
        for (Eigen::Index t = 0; t < corr.cols(); ++t) {
            acc += (s == t ? 1.0 : -1.0 / d) * corr(s, t);
        }
    }
    return d * acc;
}

RMatrix outer_probs(const CVector &a, const CVector &b) {
    const auto pa = outcome_probabilities(a);
    const auto pb = outcome_probabilities(b);
    RMatrix c(a.size(), b.size());
    for (Eigen::Index s = 0; s < a.size(); ++s) {
        for (Eigen::Index t = 0; t < b.size(); ++t) {
            c(s, t) = pa[static_cast<std::size_t>(s)] * pb[static_cast<std::size_t>(t)];
        }
    }
    return c;
}

} // namespace

double fidelity_random_measurement(const StateVector &rho1, const StateVector &rho2,
                                   FidelityMode mode, std::size_t samples, std::uint64_t seed) {
    if (rho1.n_qubits() != rho2.n_qubits()) {
        throw DataError("fidelity of states with different qubit counts");
    }
    const int n = rho1.n_qubits();
    const auto d = static_cast<Eigen::Index>(rho1.dim());
    RMatrix corr = RMatrix::Zero(d, d);
    switch (mode) {
    case FidelityMode::ExactSecondMoment: {
        if (n > 5) {
            throw DataError("analytic second-moment mode supports n <= 5");
        }
        // rho1 (x) rho2 as a pure product |a>|b>
        CVector ab(d * d);
        for (Eigen::Index i = 0; i < d; ++i) {
            ab.segment(i * d, d) = rho1[static_cast<std::size_t>(i)] * rho2.amplitudes();
        }
        const CMatrix op = ab * ab.adjoint();
        const CMatrix moment = haar_second_moment(op, static_cast<int>(d));
        for (Eigen::Index s = 0; s < d; ++s) {
            for (Eigen::Index t = 0; t < d; ++t) {
                corr(s, t) = moment(s * d + t, s * d + t).real();
            }
        }
        break;
    }
    case FidelityMode::CliffordEnumeration: {
        if (n > 2) {
            throw DataError("Clifford enumeration mode supports n <= 2");
        }
        const auto group = enumerate_clifford_group(n);
        for (const auto &u : group) {
            corr += outer_probs(u.apply(rho1.amplitudes()), u.apply(rho2.amplitudes()));
        }
        corr /= static_cast<double>(group.size());
        break;
    }
    case FidelityMode::MonteCarlo: {
        if (samples < 1) {
            throw DataError("Monte Carlo fidelity needs at least one sample");
        }
        for (std::size_t k = 0; k < samples; ++k) {
            const auto u = sample_haar(n, child_seed(seed, {k}));
            corr += outer_probs(u.apply(rho1.amplitudes()), u.apply(rho2.amplitudes()));
        }
        corr /= static_cast<double>(samples);
        break;
    }
    }
    return hamming_weighted_sum(corr);
}

} // namespace rmlab
