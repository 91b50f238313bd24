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
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "oracles.hpp"
#include "rmlab/errors.hpp"
#include "rmlab/fisher.hpp"

using namespace rmlab;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

ParameterizedCircuit single_ry() { return {1, {GateOp::rotation(Pauli::Y, 0, 0)}}; }

double min_eig(const RMatrix &m) {
    return Eigen::SelfAdjointEigenSolver<RMatrix>(m, Eigen::EigenvaluesOnly).eigenvalues()(0);
}

/// 2 x Hessian of 1 - |<phi(t0)|phi(t)>|^2 at t = t0, central differences.
RMatrix infidelity_hessian(const ParameterizedCircuit &c, const std::vector<double> &t0, double h) {
    const CVector ref = oracle::prepare(c, t0);
    auto infid = [&](const std::vector<double> &t) {
        return 1.0 - std::norm(ref.dot(oracle::prepare(c, t)));
    };
    const auto m = t0.size();
    RMatrix out(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            auto pp = t0, pm = t0, mp = t0, mm = t0;
            pp[i] += h; pp[j] += h;
            pm[i] += h; pm[j] -= h;
            mp[i] -= h; mp[j] += h;
            mm[i] -= h; mm[j] -= h;
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                2.0 * (infid(pp) - infid(pm) - infid(mp) + infid(mm)) / (4 * h * h);
        }
    }
    return out;
}

EstimatorConfig config(EstimatorKind kind, EnsembleKind ens, int n, std::size_t k) {
    EstimatorConfig c;
    c.kind = kind;
    c.ensemble = {ens, n, 1};
    c.samples = k;
    return c;
}

} // namespace

TEST_SUITE("fisher") {

TEST_CASE("exact QFIM closed forms") {
    const auto c = single_ry();
    for (double t : {0.0, 0.4, 2.0}) {
        const std::vector<double> theta{t};
        const auto f = exact_qfim(c, theta, StateVector::zero(1));
        CHECK(f.entries(0, 0) == Approx(1.0));
        CHECK(f.provenance.source == FisherSource::ExactQfim);
    }
    const ParameterizedCircuit two(1, {GateOp::rotation(Pauli::Y, 0, 0), GateOp::rotation(Pauli::Y, 0, 1)});
    const std::vector<double> t2{0.3, -1.1};
    const auto f2 = exact_qfim(two, t2, StateVector::zero(1));
    CHECK((f2.entries - RMatrix::Ones(2, 2)).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(f2.min_eigenvalue() == Approx(0.0).epsilon(1e-12));

    const ParameterizedCircuit none(2, {GateOp::h(0)});
    CHECK(exact_qfim(none, {}, StateVector::zero(2)).m() == 0);
}

TEST_CASE("QFIM is twice the infidelity Hessian") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto c = oracle::random_circuit(3, 6, seed);
        const auto theta = oracle::random_theta(6, seed + 9);
        const auto f = exact_qfim(c, theta, StateVector::zero(3));
        CHECK((f.entries - infidelity_hessian(c, theta, 1e-3)).cwiseAbs().maxCoeff() < 1e-5);
        CHECK((f.entries - f.entries.transpose()).cwiseAbs().maxCoeff() < 1e-9);
        CHECK(f.min_eigenvalue() >= -1e-9);
    }
}

TEST_CASE("classical Fisher information") {
    const auto c = single_ry();
    const std::vector<double> half{kPi / 2};
    CHECK(cfim(c, half, SampledRotator::identity(1), StateVector::zero(1)).entries(0, 0) == Approx(1.0));
    const std::vector<double> quarter{kPi / 4};
    const auto h = SampledRotator::from_gates(1, {GateOp::h(0)});
    CHECK(cfim(c, quarter, h, StateVector::zero(1)).entries(0, 0) == Approx(1.0));

    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto rc = oracle::random_circuit(3, 6, seed);
        const auto theta = oracle::random_theta(6, seed);
        const auto u = sample_haar(3, seed);
        const auto fc = cfim(rc, theta, u, StateVector::zero(3));
        const auto fq = exact_qfim(rc, theta, StateVector::zero(3));
        CHECK(min_eig(fc.entries) >= -1e-9);
        CHECK(min_eig(fq.entries - fc.entries) >= -1e-9);
        CHECK((fc.entries - fc.entries.transpose()).cwiseAbs().maxCoeff() < 1e-9);
    }

    // finite shots: deterministic per seed, close to exact for many shots
    const auto u = sample_haar(1, 3);
    const std::vector<double> t{0.9};
    const auto a = cfim(c, t, u, StateVector::zero(1), 1000, 5);
    const auto b = cfim(c, t, u, StateVector::zero(1), 1000, 5);
    CHECK(a.entries(0, 0) == b.entries(0, 0));
    const auto exact = cfim(c, t, u, StateVector::zero(1));
    const auto many = cfim(c, t, u, StateVector::zero(1), 1000000, 6);
    CHECK(many.entries(0, 0) == Approx(exact.entries(0, 0)).epsilon(0.02));
}

TEST_CASE("estimators on one qubit") {
    const auto c = single_ry();
    const std::vector<double> t{0.7};
    const auto group = enumerate_clifford_group(1);
    const auto eval = evaluate_shifts(c, t, StateVector::zero(1));
    double avg = 0.0;
    for (const auto &u : group) {
        avg += derivative_gram_from_shifts(eval, u, std::nullopt, 0)(0, 0);
    }
    avg *= 6.0 / static_cast<double>(group.size());
    CHECK(std::abs(avg - 1.0) < 1e-10);

    auto ac = config(EstimatorKind::AverageCfim, EnsembleKind::Identity, 1, 1);
    const auto f = average_cfim_estimate(c, t, ac, 0, StateVector::zero(1));
    CHECK(f.entries(0, 0) == Approx(1.0));
    CHECK(f.provenance.source == FisherSource::AverageCfim);

    auto td = config(EstimatorKind::TwoDesign, EnsembleKind::Haar, 1, 3);
    const ParameterizedCircuit none(1, {GateOp::h(0)});
    CHECK(two_design_estimate(none, {}, td, 0, StateVector::zero(1)).m() == 0);
}

TEST_CASE("estimator configuration") {
    auto c = config(EstimatorKind::TwoDesign, EnsembleKind::Haar, 2, 0);
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.samples = 1;
    CHECK_NOTHROW(c.validate());
    c.probability_floor = 0.01;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.probability_floor = 1e-12;
    c.shots = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    auto d = config(EstimatorKind::TwoDesign, EnsembleKind::HardwareEfficient, 2, 1);
    CHECK_THROWS_AS(d.validate(), ConfigError);
}

TEST_CASE("randomized estimators are symmetric, PSD and reproducible") {
    const auto rc = oracle::random_circuit(2, 4, 1);
    const auto theta = oracle::random_theta(4, 2);
    const auto init = StateVector::zero(2);
    for (const auto ens : {EnsembleKind::Haar, EnsembleKind::Clifford}) {
        const auto td = config(EstimatorKind::TwoDesign, ens, 2, 5);
        const auto a = two_design_estimate(rc, theta, td, 11, init);
        const auto b = two_design_estimate(rc, theta, td, 11, init);
        CHECK((a.entries - b.entries).norm() == 0.0);
        CHECK((a.entries - a.entries.transpose()).norm() == 0.0);
        CHECK(a.min_eigenvalue() >= -1e-9);
        const auto ac = config(EstimatorKind::AverageCfim, ens, 2, 5);
        const auto f = average_cfim_estimate(rc, theta, ac, 11, init);
        CHECK(f.min_eigenvalue() >= -1e-9);
        auto rs = ac;
        rs.rescale_average_cfim = true;
        const auto g = average_cfim_estimate(rc, theta, rs, 11, init);
        CHECK((g.entries - 2.0 * f.entries).norm() < 1e-12);
        CHECK(g.provenance.rescaled);
    }
}

TEST_CASE("two-design estimator is unbiased") {
    const auto rc = oracle::random_circuit(2, 4, 3);
    const auto theta = oracle::random_theta(4, 4);
    const auto init = StateVector::zero(2);
    const auto eval = evaluate_shifts(rc, theta, init);
    const auto exact = exact_qfim(rc, theta, init).entries;
    const auto td = config(EstimatorKind::TwoDesign, EnsembleKind::Haar, 2, 1);
    const int draws = 4000;
    RMatrix sum = RMatrix::Zero(4, 4);
    RMatrix sq = RMatrix::Zero(4, 4);
    for (int k = 0; k < draws; ++k) {
        const RMatrix f = two_design_estimate(eval, 2, td, static_cast<std::uint64_t>(k)).entries;
        sum += f;
        sq += f.cwiseProduct(f);
    }
    const RMatrix mean = sum / draws;
    const RMatrix var = sq / draws - mean.cwiseProduct(mean);
    for (Eigen::Index i = 0; i < 4; ++i) {
        for (Eigen::Index j = 0; j < 4; ++j) {
            const double se = std::sqrt(std::max(var(i, j), 0.0) / draws);
            CHECK(std::abs(mean(i, j) - exact(i, j)) <= 3 * se + 1e-9);
        }
    }
}

TEST_CASE("estimator error") {
    FisherMatrix a{RMatrix::Ones(1, 1), {}};
    FisherMatrix z{RMatrix::Zero(1, 1), {}};
    CHECK(estimator_error(a, a) == 0.0);
    CHECK(estimator_error(a, z) == 1.0);
    FisherMatrix b{RMatrix::Ones(2, 2), {}};
    CHECK_THROWS_AS(estimator_error(a, b), DataError);

    const auto rc = oracle::random_circuit(2, 4, 8);
    const auto theta = oracle::random_theta(4, 8);
    const auto init = StateVector::zero(2);
    const auto eval = evaluate_shifts(rc, theta, init);
    const auto exact = exact_qfim(rc, theta, init);
    auto median_at = [&](std::size_t k) {
        std::vector<double> errs;
        for (std::uint64_t s = 0; s < 20; ++s) {
            errs.push_back(estimator_error(
                two_design_estimate(eval, 2, config(EstimatorKind::TwoDesign, EnsembleKind::Haar, 2, k),
                                    child_seed(k, {s})),
                exact));
        }
        std::sort(errs.begin(), errs.end());
        return 0.5 * (errs[9] + errs[10]);
    };
    CHECK(median_at(100) < median_at(10));
}

TEST_CASE("fidelity from random measurements") {
    const auto zero = StateVector::zero(1);
    const auto one = StateVector::basis(1, 1);
    CHECK(fidelity_random_measurement(zero, zero, FidelityMode::ExactSecondMoment) == Approx(1.0));
    CHECK(std::abs(fidelity_random_measurement(zero, one, FidelityMode::ExactSecondMoment)) < 1e-12);
    Rng rng(31);
    for (int k = 0; k < 10; ++k) {
        const auto a = StateVector::normalized(sample_haar(2, rng).dense().col(0));
        const auto b = StateVector::normalized(sample_haar(2, rng).dense().col(0));
        const double ref = overlap_squared(a, b);
        CHECK(std::abs(fidelity_random_measurement(a, b, FidelityMode::CliffordEnumeration) - ref) < 1e-10);
        CHECK(std::abs(fidelity_random_measurement(a, b, FidelityMode::ExactSecondMoment) - ref) < 1e-10);
    }
    const auto a = StateVector::normalized(sample_haar(1, 1).dense().col(0));
    const auto b = StateVector::normalized(sample_haar(1, 2).dense().col(0));
    CHECK(std::abs(fidelity_random_measurement(a, b, FidelityMode::MonteCarlo, 20000, 3) -
                   overlap_squared(a, b)) < 0.05);
    CHECK_THROWS_AS(fidelity_random_measurement(StateVector::zero(3), StateVector::zero(3),
                                                FidelityMode::CliffordEnumeration),
                    DataError);
    CHECK_THROWS_AS(fidelity_random_measurement(zero, StateVector::zero(2), FidelityMode::ExactSecondMoment),
                    DataError);
}

}
