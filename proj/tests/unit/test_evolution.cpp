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

#include <cmath>
#include <limits>
#include <sstream>

#include "oracles.hpp"
#include "rmlab/errors.hpp"
#include "rmlab/evolution.hpp"

using namespace rmlab;
using doctest::Approx;

namespace {

EvolutionConfig z_config(double theta0, EvolutionMethod method) {
    EvolutionConfig c{
        .hamiltonian = PauliSumHamiltonian(1, {{1.0, PauliString("Z")}}),
        .circuit = ParameterizedCircuit(1, {GateOp::rotation(Pauli::Y, 0, 0)}),
        .initial = StateVector::zero(1),
        .theta0 = {theta0},
    };
    c.method = method;
    c.estimator.ensemble = {EnsembleKind::Haar, 1, 1};
    return c;
}

} // namespace

TEST_SUITE("ite") {

TEST_CASE("solve_update") {
    RMatrix f1(1, 1);
    f1 << 1.0;
    RVector g1(1);
    g1 << 0.5;
    CHECK(solve_update(f1, g1, 0.0)(0) == Approx(-1.0));

    const RVector g = RVector::LinSpaced(3, -1.0, 2.0);
    CHECK((solve_update(RMatrix::Identity(3, 3), g, 0.0) + 2.0 * g).norm() < 1e-14);

    RVector ones = RVector::Ones(2);
    const RVector sing = solve_update(RMatrix::Ones(2, 2), ones, 0.0);
    CHECK(sing(0) == Approx(-1.0));
    CHECK(sing(1) == Approx(-1.0));

    CHECK_THROWS_AS(solve_update(RMatrix::Identity(2, 2), g, 0.0), DataError);
    CHECK_THROWS_AS(solve_update(RMatrix::Identity(3, 3), g, -1.0), DataError);
    CHECK(solve_update(RMatrix(0, 0), RVector(0), 0.0).size() == 0);
}

TEST_CASE("VarQITE one-qubit flow") {
    auto c = z_config(0.1, EvolutionMethod::VarQite);
    c.dt = 0.01;
    c.total_time = 3.0;
    c.regularization = 0.0;
    const auto trace = varqite_run(c);
    REQUIRE(trace.records.size() == 301);
    for (std::size_t k = 1; k < trace.records.size(); ++k) {
        const auto &prev = trace.records[k - 1];
        const auto &r = trace.records[k];
        CHECK(r.energy < prev.energy);
        CHECK(r.theta[0] - prev.theta[0] == Approx(c.dt * 2 * std::sin(prev.theta[0])).epsilon(1e-9));
        CHECK(r.energy == Approx(std::cos(r.theta[0])).epsilon(1e-12));
        CHECK(r.tau == Approx(static_cast<double>(k) * c.dt));
    }
    CHECK(std::isnan(trace.records[0].min_eig));
    CHECK_THROWS_AS(rmite_run(c), ConfigError);
}

TEST_CASE("frozen dynamics at dt = 0") {
    auto c = z_config(0.4, EvolutionMethod::VarQite);
    c.dt = 0.0;
    c.steps = 5;
    const auto trace = run_evolution(c);
    REQUIRE(trace.records.size() == 6);
    for (const auto &r : trace.records) {
        CHECK(r.energy == trace.records[0].energy);
        CHECK(r.theta == trace.records[0].theta);
    }
    c.steps.reset();
    CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("configuration checks") {
    auto c = z_config(0.4, EvolutionMethod::VarQite);
    c.total_time = 0.001;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.total_time = 1.0;
    c.regularization = -1.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.regularization = 0.0;
    c.theta0 = {0.1, 0.2};
    CHECK_THROWS_AS(c.validate(), ConfigError);
    CHECK(z_config(0.1, EvolutionMethod::VarQite).iterations() == 100);
}

TEST_CASE("RMITE on H = Z converges for any ensemble") {
    // Haar and random-axis rotators give single-shot CFIMs far below 1, so
    // the damping has to tame the step.
    for (const auto ens : {EnsembleKind::Haar, EnsembleKind::Clifford, EnsembleKind::HardwareEfficient}) {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            auto c = z_config(0.3, EvolutionMethod::Rmite);
            c.dt = 0.01;
            c.total_time = 8.0;
            c.regularization = 1e-2;
            c.estimator.ensemble = {ens, 1, 1};
            c.seed = seed;
            const auto trace = rmite_run(c);
            CHECK(trace.summary.final_energy == Approx(-1.0).epsilon(1e-6));
            for (std::size_t k = 1; k < trace.records.size(); ++k) {
                CHECK(trace.records[k].energy <= trace.records[k - 1].energy + 1e-12);
            }
            REQUIRE(trace.summary.exact_ground_energy);
            CHECK(*trace.summary.exact_ground_energy == Approx(-1.0));
        }
    }
}

TEST_CASE("Clifford RMITE on H = Z needs no damping") {
    auto c = z_config(0.3, EvolutionMethod::Rmite);
    c.dt = 0.01;
    c.total_time = 8.0;
    c.estimator.ensemble = {EnsembleKind::Clifford, 1, 1};
    c.seed = 4;
    CHECK(rmite_run(c).summary.final_energy == Approx(-1.0).epsilon(1e-6));
}

TEST_CASE("state preparation accounting") {
    CHECK(count_state_preps(EvolutionMethod::VarQite, EstimatorKind::AverageCfim, 10, 1, 1) == 220);
    CHECK(count_state_preps(EvolutionMethod::Rmite, EstimatorKind::TwoDesign, 10, 5, 1) == 120);
    CHECK(count_state_preps(EvolutionMethod::Rmite, EstimatorKind::AverageCfim, 100, 1, 800) == 320800);
    CHECK(count_state_preps(EvolutionMethod::VarQite, EstimatorKind::AverageCfim, 100, 1, 800) == 16160000);

    EvolutionConfig c{
        .hamiltonian = transverse_field_ising(3, 1.0),
        .circuit = hardware_efficient_ansatz(3, 1),
        .initial = StateVector::zero(3),
        .theta0 = oracle::random_theta(6, 1),
    };
    c.dt = 0.01;
    c.steps = 7;
    c.method = EvolutionMethod::Rmite;
    c.estimator.ensemble = {EnsembleKind::Haar, 3, 1};
    c.estimator.samples = 3;
    auto trace = run_evolution(c);
    for (const auto &r : trace.records) {
        CHECK(r.state_preps == count_state_preps(c.method, c.estimator.kind, 6, 3, r.iter));
    }
    c.estimator.kind = EstimatorKind::TwoDesign;
    trace = run_evolution(c);
    CHECK(trace.summary.total_state_preps == count_state_preps(c.method, c.estimator.kind, 6, 3, 7));
    c.method = EvolutionMethod::VarQite;
    trace = run_evolution(c);
    CHECK(trace.summary.total_state_preps == count_state_preps(c.method, c.estimator.kind, 6, 3, 7));
}

TEST_CASE("descent check") {
    EvolutionTrace t;
    for (int k = 0; k < 5; ++k) {
        EvolutionRecord r;
        r.iter = static_cast<std::size_t>(k);
        r.energy = -0.1 * k;
        r.predicted_rate = -1.0;
        t.records.push_back(r);
    }
    CHECK(descent_check(t).ok());
    t.records[3].energy += 0.1 + 0.1;
    const auto rep = descent_check(t);
    REQUIRE(rep.energy_violations.size() == 1);
    CHECK(rep.energy_violations[0] == 3);

    EvolutionConfig c{
        .hamiltonian = heisenberg_chain(3, 1.0, 0.2),
        .circuit = hardware_efficient_ansatz(3, 2),
        .initial = StateVector::zero(3),
        .theta0 = oracle::random_theta(12, 3),
    };
    c.dt = 0.005;
    c.steps = 100;
    c.method = EvolutionMethod::Rmite;
    c.estimator.ensemble = {EnsembleKind::Haar, 3, 1};
    c.seed = 9;
    CHECK(descent_check(run_evolution(c)).ok());
}

TEST_CASE("relative error bound") {
    const RMatrix id = RMatrix::Identity(3, 3);
    const RVector g = RVector::Ones(3);
    const auto same = relative_error_bound(id, id, g);
    CHECK(same.observed == 0.0);
    CHECK(same.bound == 0.0);
    CHECK(same.perturbative);
    RMatrix d(2, 2);
    d << 2, 0, 0, 1;
    const auto b = relative_error_bound(d, RMatrix::Identity(2, 2), RVector::Ones(2));
    CHECK(b.bound == Approx(1.0));
    CHECK_FALSE(b.perturbative);
    CHECK_THROWS_AS(relative_error_bound(RMatrix::Ones(2, 2), RMatrix::Identity(2, 2), RVector::Ones(2)),
                    NumericError);
}

TEST_CASE("trace serialization") {
    auto c = z_config(0.2, EvolutionMethod::VarQite);
    c.steps = 2;
    const auto trace = run_evolution(c);
    std::ostringstream a;
    std::ostringstream b;
    write_trace_csv(trace, a);
    write_trace_csv(run_evolution(c), b);
    CHECK(a.str() == b.str());
    std::istringstream in(a.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "iter,tau,energy,update_norm,min_eig,state_preps");
    std::getline(in, line);
    CHECK(line.find(",nan,0") != std::string::npos);
    const auto j = trace_summary_json(trace);
    CHECK(j["iterations"] == 2);
    CHECK(j["exact_ground_energy"].get<double>() == Approx(-1.0));
    CHECK(format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK(format_number(0.1) == "0.10000000000000001");
}

}
