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
#include "rmlab/evolution.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include <Eigen/Eigenvalues>

#include "rmlab/errors.hpp"
#include "rmlab/random.hpp"

namespace rmlab {

RVector solve_update(const RMatrix &f, const RVector &grad, double lambda_reg) {
    if (f.rows() != f.cols() || f.rows() != grad.size()) {
        throw DataError("preconditioner and gradient sizes disagree");
    }
    if (lambda_reg < 0.0) {
        throw DataError("regularization must be non-negative");
    }
    const auto m = grad.size();
    if (m == 0) {
        return RVector(0);
    }
    const RMatrix sym = 0.5 * (f + f.transpose());
    Eigen::SelfAdjointEigenSolver<RMatrix> es(sym);
    if (es.info() != Eigen::Success) {
        throw NumericError("eigendecomposition of the preconditioner failed");
    }
    const RVector &evals = es.eigenvalues();
    const RMatrix &evecs = es.eigenvectors();
    const double top = std::max(evals(m - 1), 0.0);
    const double cutoff = std::max(kPseudoInverseCutoff * top, kPseudoInverseFloor);
    const RVector proj = evecs.transpose() * grad;
    RVector coeffs = RVector::Zero(m);
    for (Eigen::Index k = 0; k < m; ++k) {
        if (evals(k) > cutoff) {
            coeffs(k) = proj(k) / (evals(k) + lambda_reg);
        }
    }
    RVector out = -2.0 * (evecs * coeffs);
    if (!out.allFinite()) {
        throw NumericError("non-finite parameter update");
    }
    return out;
}

std::string to_string(EvolutionMethod method) {
    return method == EvolutionMethod::VarQite ? "varqite" : "rmite";
}

std::size_t EvolutionConfig::iterations() const {
    if (steps) {
        return *steps;
    }
    return static_cast<std::size_t>(std::llround(total_time / dt));
}

void EvolutionConfig::validate() const {
    if (!(dt >= 0.0) || !std::isfinite(dt)) {
        throw ConfigError("evolution.dt must be a finite non-negative number");
    }
    if (!steps) {
        if (!(dt > 0.0)) {
            throw ConfigError("evolution.dt must be > 0 unless evolution.steps is given");
        }
        if (!(total_time >= dt)) {
            throw ConfigError("evolution.total_time must be >= evolution.dt");
        }
    }
    if (!(regularization >= 0.0)) {
        throw ConfigError("evolution.regularization must be >= 0");
    }
    if (theta0.size() != circuit.num_params()) {
        throw ConfigError("theta0 has " + std::to_string(theta0.size()) + " entries, circuit has " +
                          std::to_string(circuit.num_params()) + " parameters");
    }
    if (hamiltonian.n_qubits() != circuit.n_qubits() || initial.n_qubits() != circuit.n_qubits()) {
        throw DataError("Hamiltonian, circuit and initial state must act on the same qubits");
    }
    if (method == EvolutionMethod::Rmite) {
        estimator.validate();
    }
}

std::uint64_t count_state_preps(EvolutionMethod method, EstimatorKind estimator, std::uint64_t m,
                                std::uint64_t samples, std::uint64_t iterations) {
    std::uint64_t per_iter = 2 * m;
    if (method == EvolutionMethod::VarQite) {
        per_iter += 2 * m * m;
    } else if (estimator == EstimatorKind::TwoDesign) {
        per_iter += 2 * m * samples;
    } else {
        per_iter += (2 * m + 1) * samples;
    }
    return per_iter * iterations;
}

namespace {

EvolutionTrace run_loop(const EvolutionConfig &config) {
    config.validate();
    const auto &h = config.hamiltonian;
    const auto &circuit = config.circuit;
    const std::size_t n_iter = config.iterations();
    const std::uint64_t m = circuit.num_params();
    const std::uint64_t per_iter = count_state_preps(config.method, config.estimator.kind, m,
                                                     config.estimator.samples, 1);

    EvolutionTrace trace;
    trace.label = to_string(config.method);
    trace.records.reserve(n_iter + 1);

    std::vector<double> theta = config.theta0;
    auto eval = evaluate_shifts(circuit, theta, config.initial);
    EvolutionRecord rec;
    rec.theta = theta;
    rec.energy = expectation(h, eval.center);
    rec.min_eig = std::numeric_limits<double>::quiet_NaN();
    trace.records.push_back(rec);

    std::uint64_t preps = 0;
    for (std::size_t t = 0; t < n_iter; ++t) {
        RVector grad(static_cast<Eigen::Index>(m));
        for (std::size_t i = 0; i < m; ++i) {
            grad(static_cast<Eigen::Index>(i)) =
                0.5 * (expectation(h, eval.shifted.plus[i]) - expectation(h, eval.shifted.minus[i]));
        }
        FisherMatrix f = config.method == EvolutionMethod::VarQite
                             ? exact_qfim(circuit, theta, config.initial)
                             : estimate_fisher(eval, circuit.n_qubits(), config.estimator,
                                               child_seed(config.seed, {t}));
        const RVector theta_dot = solve_update(f.entries, grad, config.regularization);
        for (std::size_t i = 0; i < m; ++i) {
            theta[i] += config.dt * theta_dot(static_cast<Eigen::Index>(i));
        }
        preps += per_iter;
        eval = evaluate_shifts(circuit, theta, config.initial);

        EvolutionRecord r;
        r.iter = t + 1;
        r.tau = static_cast<double>(t + 1) * config.dt;
        r.energy = expectation(h, eval.center);
        r.theta = theta;
        r.update_norm = theta_dot.norm();
        r.min_eig = f.min_eigenvalue();
        r.state_preps = preps;
        r.predicted_rate = grad.dot(theta_dot);
        if (!std::isfinite(r.energy)) {
            throw NumericError("energy became non-finite at iteration " + std::to_string(t + 1));
        }
        trace.records.push_back(std::move(r));
    }

    trace.summary.final_energy = trace.records.back().energy;
    trace.summary.total_state_preps = preps;
    if (config.compute_exact_reference && h.n_qubits() <= kMaxDenseQubits) {
        const double e0 = exact_ground_state(h).energy;
        trace.summary.exact_ground_energy = e0;
        if (e0 != 0.0) {
            trace.summary.relative_error = std::abs(trace.summary.final_energy - e0) / std::abs(e0);
        }
    }
    return trace;
}

} // namespace

EvolutionTrace varqite_run(const EvolutionConfig &config) {
    if (config.method != EvolutionMethod::VarQite) {
        throw ConfigError("varqite_run needs method = varqite");
    }
    return run_loop(config);
}

EvolutionTrace rmite_run(const EvolutionConfig &config) {
    if (config.method != EvolutionMethod::Rmite) {
        throw ConfigError("rmite_run needs method = rmite");
    }
    return run_loop(config);
}

EvolutionTrace run_evolution(const EvolutionConfig &config) { return run_loop(config); }

DescentReport descent_check(const EvolutionTrace &trace, double tolerance) {
    DescentReport report;
    for (std::size_t k = 1; k < trace.records.size(); ++k) {
        if (trace.records[k].energy > trace.records[k - 1].energy + tolerance) {
            report.energy_violations.push_back(k);
        }
        if (trace.records[k].predicted_rate > tolerance) {
            report.rate_violations.push_back(k);
        }
    }
    return report;
}

ErrorBound relative_error_bound(const RMatrix &f_q, const RMatrix &f_tilde, const RVector &grad) {
    if (f_q.rows() != f_tilde.rows() || f_q.cols() != f_tilde.cols() || f_q.rows() != grad.size() ||
        f_q.rows() != f_q.cols()) {
        throw DataError("relative_error_bound: size mismatch");
    }
    const RMatrix a = 0.5 * (f_q + f_q.transpose());
    const RMatrix b = 0.5 * (f_tilde + f_tilde.transpose());
    Eigen::SelfAdjointEigenSolver<RMatrix> ea(a, Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<RMatrix> eb(b, Eigen::EigenvaluesOnly);
    const auto m = a.rows();
    const double a_min = ea.eigenvalues()(0);
    const double a_max = ea.eigenvalues()(m - 1);
    const double b_min = eb.eigenvalues()(0);
    if (!(a_min > 1e-10) || !(b_min > 1e-10)) {
        throw NumericError("relative_error_bound requires full-rank matrices");
    }
    const RVector dot_q = -2.0 * a.llt().solve(grad);
    const RVector dot_t = -2.0 * b.llt().solve(grad);
    const double base = dot_q.norm();
    const double observed = base > 0.0 ? (dot_q - dot_t).norm() / base : 0.0;
    Eigen::SelfAdjointEigenSolver<RMatrix> ed(a - b, Eigen::EigenvaluesOnly);
    const double delta = ed.eigenvalues().cwiseAbs().maxCoeff();
    return {observed, a_max / b_min - 1.0, delta <= 0.01 * std::min(a_min, b_min)};
}

std::string format_number(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_trace_csv(const EvolutionTrace &trace, std::ostream &out) {
    out << "iter,tau,energy,update_norm,min_eig,state_preps\n";
    for (const auto &r : trace.records) {
        out << r.iter << ',' << format_number(r.tau) << ',' << format_number(r.energy) << ','
            << format_number(r.update_norm) << ',' << format_number(r.min_eig) << ','
            << r.state_preps << '\n';
    }
}

nlohmann::json trace_summary_json(const EvolutionTrace &trace) {
    nlohmann::json j;
    j["label"] = trace.label;
    j["iterations"] = trace.records.empty() ? 0 : trace.records.size() - 1;
    j["final_energy"] = trace.summary.final_energy;
    j["total_state_preps"] = trace.summary.total_state_preps;
    j["exact_ground_energy"] = trace.summary.exact_ground_energy
                                   ? nlohmann::json(*trace.summary.exact_ground_energy)
                                   : nlohmann::json(nullptr);
    j["relative_error"] = trace.summary.relative_error
                              ? nlohmann::json(*trace.summary.relative_error)
                              : nlohmann::json(nullptr);
    if (!trace.records.empty()) {
        j["final_theta"] = trace.records.back().theta;
    }
    return j;
}

} // namespace rmlab
