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
#include "rmlab/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <ostream>
#include <set>

#include "rmlab/errors.hpp"
#include "rmlab/random.hpp"

namespace rmlab {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char *kVersion = "0.1.0";

const json &require(const json &obj, const std::string &key, const std::string &path) {
    if (!obj.is_object() || !obj.contains(key)) {
        throw ConfigError((path.empty() ? key : path + "." + key) + ": required field missing");
    }
    return obj[key];
}

std::string join(const std::string &path, const std::string &key) {
    return path.empty() ? key : path + "." + key;
}

double as_number(const json &j, const std::string &path) {
    if (!j.is_number()) {
        throw ConfigError(path + ": expected a number");
    }
    return j.get<double>();
}

std::int64_t as_integer(const json &j, const std::string &path) {
    if (!j.is_number_integer()) {
        throw ConfigError(path + ": expected an integer");
    }
    return j.get<std::int64_t>();
}

std::size_t as_count(const json &j, const std::string &path) {
    const auto v = as_integer(j, path);
    if (v < 0) {
        throw ConfigError(path + ": expected a non-negative integer");
    }
    return static_cast<std::size_t>(v);
}

std::string as_string(const json &j, const std::string &path) {
    if (!j.is_string()) {
        throw ConfigError(path + ": expected a string");
    }
    return j.get<std::string>();
}

bool as_bool(const json &j, const std::string &path) {
    if (!j.is_boolean()) {
        throw ConfigError(path + ": expected true or false");
    }
    return j.get<bool>();
}

double number_or(const json &obj, const std::string &key, double fallback, const std::string &path) {
    return obj.contains(key) ? as_number(obj[key], join(path, key)) : fallback;
}

json read_json_file(const fs::path &path, bool is_config) {
    std::ifstream in(path);
    if (!in) {
        const std::string msg = "cannot open \"" + path.string() + "\"";
        if (is_config) {
            throw ConfigError(msg);
        }
        throw DataError(msg);
    }
    try {
        json doc;
        in >> doc;
        return doc;
    } catch (const json::exception &e) {
        const std::string msg = "\"" + path.string() + "\" is not valid JSON: " + e.what();
        if (is_config) {
            throw ConfigError(msg);
        }
        throw DataError(msg);
    }
}

fs::path resolve(const fs::path &base, const std::string &p) {
    fs::path path(p);
    return path.is_relative() && !base.empty() ? base / path : path;
}

PauliSumHamiltonian parse_hamiltonian(const json &j, const fs::path &base) {
    const std::string path = "hamiltonian";
    if (!j.is_object()) {
        throw ConfigError(path + ": expected an object");
    }
    if (j.contains("file")) {
        return load_hamiltonian_file(resolve(base, as_string(j["file"], path + ".file")).string());
    }
    if (j.contains("builtin")) {
        const auto name = as_string(j["builtin"], path + ".builtin");
        if (name == "z") {
            return {1, {{1.0, PauliString("Z")}}, "z"};
        }
        if (name != "tfim" && name != "heisenberg") {
            throw ConfigError(path + ".builtin: unknown Hamiltonian \"" + name + "\"");
        }
        const auto n = static_cast<int>(as_integer(require(j, "n_qubits", path), path + ".n_qubits"));
        const bool periodic = j.contains("periodic") && as_bool(j["periodic"], path + ".periodic");
        if (name == "tfim") {
            return transverse_field_ising(n, number_or(j, "g", 1.0, path),
                                          number_or(j, "coupling", 1.0, path), periodic);
        }
        return heisenberg_chain(n, number_or(j, "coupling", 1.0, path),
                                number_or(j, "field", 0.0, path), periodic);
    }
    if (j.contains("terms")) {
        return load_hamiltonian(j);
    }
    throw ConfigError(path + ": give one of \"builtin\", \"file\" or inline \"terms\"");
}

ParameterizedCircuit parse_ansatz(const json &j, int n_qubits, const fs::path &base) {
    const std::string path = "ansatz";
    const auto family = as_string(require(j, "family", path), path + ".family");
    if (family == "hardware-efficient") {
        const auto layers = static_cast<int>(as_integer(require(j, "layers", path), path + ".layers"));
        AxisPattern axes = AxisPattern::YX;
        if (j.contains("axes")) {
            const auto a = as_string(j["axes"], path + ".axes");
            if (a == "random") {
                axes = AxisPattern::Random;
            } else if (a == "y") {
                axes = AxisPattern::Y;
            } else if (a != "yx") {
                throw ConfigError(path + ".axes: expected \"yx\", \"y\" or \"random\"");
            }
        }
        const auto axis_seed =
            j.contains("axis_seed") ? static_cast<std::uint64_t>(as_count(j["axis_seed"], path + ".axis_seed")) : 0;
        Entangler entangler = Entangler::Ring;
        if (j.contains("entangler")) {
            const auto e = as_string(j["entangler"], path + ".entangler");
            if (e == "chain") {
                entangler = Entangler::Chain;
            } else if (e == "cx-chain") {
                entangler = Entangler::CxChain;
            } else if (e != "ring") {
                throw ConfigError(path + ".entangler: expected \"ring\", \"chain\" or \"cx-chain\"");
            }
        }
        if (layers < 1) {
            throw ConfigError(path + ".layers: must be >= 1");
        }
        return hardware_efficient_ansatz(n_qubits, layers, axes, axis_seed, entangler);
    }
    if (family == "explicit") {
        ParameterizedCircuit c = j.contains("file")
                                     ? circuit_from_json(read_json_file(
                                           resolve(base, as_string(j["file"], path + ".file")), false))
                                     : circuit_from_json(j);
        if (c.n_qubits() != n_qubits) {
            throw DataError("ansatz acts on " + std::to_string(c.n_qubits()) +
                            " qubits but the Hamiltonian on " + std::to_string(n_qubits));
        }
        return c;
    }
    throw ConfigError(path + ".family: unknown family \"" + family + "\"");
}

std::vector<double> parse_theta0(const json &doc, std::size_t m, std::uint64_t seed) {
    const std::string path = "theta0";
    if (!doc.contains("theta0")) {
        return std::vector<double>(m, 0.0);
    }
    const json &j = doc["theta0"];
    if (j.is_array()) {
        std::vector<double> theta;
        for (std::size_t k = 0; k < j.size(); ++k) {
            theta.push_back(as_number(j[k], path + "[" + std::to_string(k) + "]"));
        }
        if (theta.size() != m) {
            throw ConfigError(path + ": has " + std::to_string(theta.size()) +
                              " entries, ansatz has " + std::to_string(m) + " parameters");
        }
        return theta;
    }
    const auto kind = as_string(require(j, "kind", path), path + ".kind");
    if (kind == "zeros") {
        return std::vector<double>(m, 0.0);
    }
    if (kind == "uniform") {
        const double scale = number_or(j, "scale", std::numbers::pi, path);
        Rng rng(child_seed(seed, {0x7E7A0ULL}));
        std::vector<double> theta(m);
        for (auto &t : theta) {
            t = scale * (2.0 * uniform01(rng) - 1.0);
        }
        return theta;
    }
    throw ConfigError(path + ".kind: expected \"zeros\" or \"uniform\"");
}

UnitaryEnsemble parse_ensemble(const json &j, const std::string &path, int n_qubits) {
    UnitaryEnsemble e;
    e.n_qubits = n_qubits;
    e.kind = ensemble_kind_from_string(as_string(require(j, "kind", path), path + ".kind"));
    if (j.contains("layers")) {
        e.layers = static_cast<int>(as_integer(j["layers"], path + ".layers"));
    }
    if (e.kind == EnsembleKind::HardwareEfficient && !j.contains("layers")) {
        e.layers = 2;
    }
    e.validate();
    return e;
}

EstimatorConfig parse_estimator(const json &j, const std::string &path, int n_qubits) {
    if (!j.is_object()) {
        throw ConfigError(path + ": expected an object");
    }
    EstimatorConfig c;
    const auto kind = as_string(require(j, "kind", path), path + ".kind");
    if (kind == "two-design") {
        c.kind = EstimatorKind::TwoDesign;
    } else if (kind == "average-cfim") {
        c.kind = EstimatorKind::AverageCfim;
    } else {
        throw ConfigError(path + ".kind: expected \"two-design\" or \"average-cfim\"");
    }
    c.ensemble = parse_ensemble(require(j, "ensemble", path), path + ".ensemble", n_qubits);
    c.samples = j.contains("K") ? as_count(j["K"], path + ".K") : 1;
    if (j.contains("shots") && !j["shots"].is_null()) {
        c.shots = as_count(j["shots"], path + ".shots");
    }
    c.probability_floor = number_or(j, "floor", kDefaultProbabilityFloor, path);
    if (j.contains("rescale")) {
        c.rescale_average_cfim = as_bool(j["rescale"], path + ".rescale");
    }
    try {
        c.validate();
    } catch (const ConfigError &e) {
        throw ConfigError(path + ": " + e.what());
    }
    return c;
}

std::vector<std::size_t> parse_k_values(const json &doc) {
    const auto &j = require(doc, "K_values", "");
    if (!j.is_array() || j.empty()) {
        throw ConfigError("K_values: expected a non-empty array");
    }
    std::vector<std::size_t> ks;
    for (std::size_t k = 0; k < j.size(); ++k) {
        const auto v = as_count(j[k], "K_values[" + std::to_string(k) + "]");
        if (v < 1) {
            throw ConfigError("K_values[" + std::to_string(k) + "]: must be >= 1");
        }
        ks.push_back(v);
    }
    return ks;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const auto n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

void write_text(const fs::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot write \"" + path.string() + "\"");
    }
    out << text;
}

fs::path output_dir_for(const ExperimentConfig &config, const fs::path &config_path,
                        const RunOptions &options) {
    if (options.out_dir) {
        return *options.out_dir;
    }
    if (config.output_dir) {
        return *config.output_dir;
    }
    fs::path root = "rmlab-out";
    if (const char *env = std::getenv(kOutputRootEnv); env != nullptr && *env != '\0') {
        root = env;
    }
    return root / config_path.stem();
}

json manifest_for(const ExperimentConfig &config, const std::string &command) {
    json m;
    m["tool"] = "rmlab";
    m["version"] = kVersion;
    m["command"] = command;
    m["seed"] = config.seed;
    m["config"] = config.source;
    m["resolved"] = {{"hamiltonian", hamiltonian_to_json(config.hamiltonian)},
                     {"theta0", config.theta0}};
    try {
        m["resolved"]["ansatz"] = circuit_to_json(config.circuit);
    } catch (const DataError &) {
        m["resolved"]["ansatz"] = nullptr;
    }
    return m;
}

void log_line(const RunOptions &options, const std::string &line) {
    if (options.verbose && options.log != nullptr) {
        *options.log << line << '\n';
    }
}

std::string safe_label(const std::string &label) {
    std::string out = label;
    for (auto &c : out) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.')) {
            c = '_';
        }
    }
    return out;
}

json run_evolution_methods(const ExperimentConfig &config, const fs::path &out,
                           const RunOptions &options, std::vector<EvolutionTrace> &traces) {
    json summary;
    summary["experiment"] = "evolution";
    summary["methods"] = json::array();
    for (const auto &method : config.methods) {
        log_line(options, "running " + method.label);
        auto trace = run_evolution(evolution_config_for(config, method));
        trace.label = method.label;
        const fs::path dir = out / safe_label(method.label);
        fs::create_directories(dir);
        std::ofstream csv(dir / "trace.csv", std::ios::binary);
        write_trace_csv(trace, csv);
        json s = trace_summary_json(trace);
        const auto hit = preps_to_band(trace, config.band);
        s["preps_to_band"] = hit ? json(*hit) : json(nullptr);
        summary["methods"].push_back(std::move(s));
        log_line(options, "  final energy " + format_number(trace.summary.final_energy));
        traces.push_back(std::move(trace));
    }
    summary["band"] = config.band;
    return summary;
}

json run_estimator_accuracy(const ExperimentConfig &config, const fs::path &out,
                            const RunOptions &options) {
    const auto exact = exact_qfim(config.circuit, config.theta0, config.initial);
    const auto eval = evaluate_shifts(config.circuit, config.theta0, config.initial);
    std::string csv = "estimator,K,rep,error,relative_error\n";
    json summary;
    summary["experiment"] = "estimator-accuracy";
    summary["qfim_frobenius_norm"] = exact.entries.norm();
    summary["estimators"] = json::array();
    for (std::size_t e = 0; e < config.estimators.size(); ++e) {
        const auto &est = config.estimators[e];
        json js;
        js["label"] = est.label;
        js["K"] = json::array();
        js["median_error"] = json::array();
        for (const auto k : config.k_values) {
            log_line(options, est.label + " K=" + std::to_string(k));
            EstimatorConfig c = est.config;
            c.samples = k;
            std::vector<double> errors;
            for (std::size_t r = 0; r < config.repetitions; ++r) {
                const auto f = estimate_fisher(eval, config.circuit.n_qubits(), c,
                                               child_seed(config.seed, {e, k, r}));
                const double err = estimator_error(f, exact);
                errors.push_back(err);
                csv += est.label + "," + std::to_string(k) + "," + std::to_string(r) + "," +
                       format_number(err) + "," +
                       format_number(exact.entries.norm() > 0 ? err / exact.entries.norm() : err) +
                       "\n";
            }
            js["K"].push_back(k);
            js["median_error"].push_back(median(errors));
        }
        summary["estimators"].push_back(std::move(js));
    }
    write_text(out / "errors.csv", csv);
    return summary;
}

json run_conjecture_sweep(const ExperimentConfig &config, const fs::path &out,
                          const RunOptions &options) {
    const auto exact = exact_qfim(config.circuit, config.theta0, config.initial);
    const auto eval = evaluate_shifts(config.circuit, config.theta0, config.initial);
    const double ref = exact.entries.norm();
    if (!(ref > 0.0)) {
        throw NumericError("QFIM vanishes at theta0; the sweep has no reference scale");
    }
    std::string csv = "K,rep,raw_relative_error,rescaled_relative_error,fitted_factor\n";
    json summary;
    summary["experiment"] = "conjecture-sweep";
    summary["ensemble"] = to_string(config.sweep_ensemble.kind);
    summary["K"] = json::array();
    summary["median_fitted_factor"] = json::array();
    summary["median_rescaled_relative_error"] = json::array();
    for (const auto k : config.k_values) {
        log_line(options, "sweep K=" + std::to_string(k));
        EstimatorConfig c;
        c.kind = EstimatorKind::AverageCfim;
        c.ensemble = config.sweep_ensemble;
        c.samples = k;
        std::vector<double> factors;
        std::vector<double> rescaled;
        for (std::size_t r = 0; r < config.repetitions; ++r) {
            const auto f = average_cfim_estimate(eval, config.circuit.n_qubits(), c,
                                                 child_seed(config.seed, {k, r}));
            const double raw = (f.entries - exact.entries).norm() / ref;
            const double res = (2.0 * f.entries - exact.entries).norm() / ref;
            const double denom = f.entries.squaredNorm();
            const double factor = denom > 0 ? (f.entries.cwiseProduct(exact.entries)).sum() / denom
                                            : std::numeric_limits<double>::quiet_NaN();
            factors.push_back(factor);
            rescaled.push_back(res);
            csv += std::to_string(k) + "," + std::to_string(r) + "," + format_number(raw) + "," +
                   format_number(res) + "," + format_number(factor) + "\n";
        }
        summary["K"].push_back(k);
        summary["median_fitted_factor"].push_back(median(factors));
        summary["median_rescaled_relative_error"].push_back(median(rescaled));
    }
    write_text(out / "conjecture.csv", csv);
    return summary;
}

} // namespace

ExperimentConfig parse_experiment_config(const json &doc, const fs::path &base_dir) {
    if (!doc.is_object()) {
        throw ConfigError("config: expected a JSON object");
    }
    const auto kind_name = as_string(require(doc, "experiment", ""), "experiment");
    ExperimentKind kind{};
    if (kind_name == "evolution") {
        kind = ExperimentKind::Evolution;
    } else if (kind_name == "estimator-accuracy") {
        kind = ExperimentKind::EstimatorAccuracy;
    } else if (kind_name == "conjecture-sweep") {
        kind = ExperimentKind::ConjectureSweep;
    } else {
        throw ConfigError("experiment: unknown kind \"" + kind_name + "\"");
    }
    const auto seed = static_cast<std::uint64_t>(as_count(require(doc, "seed", ""), "seed"));
    std::optional<fs::path> output_dir;
    if (doc.contains("output_dir")) {
        output_dir = resolve(base_dir, as_string(doc["output_dir"], "output_dir"));
    }

    auto hamiltonian = parse_hamiltonian(require(doc, "hamiltonian", ""), base_dir);
    const int n = hamiltonian.n_qubits();
    auto circuit = parse_ansatz(require(doc, "ansatz", ""), n, base_dir);
    StateVector initial = StateVector::zero(n);
    if (doc.contains("initial_state")) {
        const auto bits = as_string(doc["initial_state"], "initial_state");
        if (static_cast<int>(bits.size()) != n) {
            throw ConfigError("initial_state: expected " + std::to_string(n) + " bits");
        }
        try {
            initial = StateVector::from_bitstring(bits);
        } catch (const DataError &e) {
            throw ConfigError(std::string("initial_state: ") + e.what());
        }
    }
    auto theta0 = parse_theta0(doc, circuit.num_params(), seed);

    ExperimentConfig cfg{
        .kind = kind,
        .seed = seed,
        .output_dir = output_dir,
        .hamiltonian = std::move(hamiltonian),
        .circuit = std::move(circuit),
        .initial = std::move(initial),
        .theta0 = std::move(theta0),
    };
    cfg.source = doc;

    if (kind == ExperimentKind::Evolution) {
        const auto &ev = require(doc, "evolution", "");
        cfg.dt = as_number(require(ev, "dt", "evolution"), "evolution.dt");
        if (ev.contains("steps")) {
            cfg.steps = as_count(ev["steps"], "evolution.steps");
        }
        if (ev.contains("total_time")) {
            cfg.total_time = as_number(ev["total_time"], "evolution.total_time");
        } else if (!cfg.steps) {
            throw ConfigError("evolution.total_time: required field missing");
        }
        cfg.regularization = number_or(ev, "regularization", kDefaultRegularization, "evolution");
        cfg.band = number_or(doc, "band", 1e-3, "");
        const auto &methods = require(doc, "methods", "");
        if (!methods.is_array() || methods.empty()) {
            throw ConfigError("methods: expected a non-empty array");
        }
        for (std::size_t k = 0; k < methods.size(); ++k) {
            const std::string path = "methods[" + std::to_string(k) + "]";
            const auto &jm = methods[k];
            MethodSpec spec;
            const auto method = as_string(require(jm, "method", path), path + ".method");
            if (method == "varqite") {
                spec.method = EvolutionMethod::VarQite;
            } else if (method == "rmite") {
                spec.method = EvolutionMethod::Rmite;
                spec.estimator = parse_estimator(require(jm, "estimator", path), path + ".estimator", n);
            } else {
                throw ConfigError(path + ".method: expected \"varqite\" or \"rmite\"");
            }
            spec.label = jm.contains("label") ? as_string(jm["label"], path + ".label") : method;
            spec.seed = jm.contains("seed")
                            ? static_cast<std::uint64_t>(as_count(jm["seed"], path + ".seed"))
                            : seed;
            cfg.methods.push_back(std::move(spec));
        }
        // surface dt/total_time problems with config paths before running
        for (const auto &m : cfg.methods) {
            evolution_config_for(cfg, m).validate();
        }
    } else if (kind == ExperimentKind::EstimatorAccuracy) {
        cfg.k_values = parse_k_values(doc);
        cfg.repetitions = doc.contains("repetitions") ? as_count(doc["repetitions"], "repetitions") : 1;
        const auto &ests = require(doc, "estimators", "");
        if (!ests.is_array() || ests.empty()) {
            throw ConfigError("estimators: expected a non-empty array");
        }
        for (std::size_t k = 0; k < ests.size(); ++k) {
            const std::string path = "estimators[" + std::to_string(k) + "]";
            LabeledEstimator le{"", parse_estimator(ests[k], path, n)};
            le.label = ests[k].contains("label") ? as_string(ests[k]["label"], path + ".label")
                                                 : to_string(le.config.kind);
            cfg.estimators.push_back(std::move(le));
        }
    } else {
        cfg.k_values = parse_k_values(doc);
        cfg.repetitions = doc.contains("repetitions") ? as_count(doc["repetitions"], "repetitions") : 1;
        cfg.sweep_ensemble = doc.contains("ensemble")
                                 ? parse_ensemble(doc["ensemble"], "ensemble", n)
                                 : UnitaryEnsemble{EnsembleKind::Haar, n, 1};
    }
    if (cfg.repetitions < 1) {
        throw ConfigError("repetitions: must be >= 1");
    }
    return cfg;
}

ExperimentConfig load_experiment_config(const fs::path &path) {
    return parse_experiment_config(read_json_file(path, true), path.parent_path());
}

EvolutionConfig evolution_config_for(const ExperimentConfig &config, const MethodSpec &method) {
    EvolutionConfig ec{
        .hamiltonian = config.hamiltonian,
        .circuit = config.circuit,
        .initial = config.initial,
        .theta0 = config.theta0,
        .dt = config.dt,
        .total_time = config.total_time,
        .steps = config.steps,
        .method = method.method,
        .estimator = method.estimator,
        .regularization = config.regularization,
        .seed = method.seed,
    };
    if (ec.method == EvolutionMethod::Rmite) {
        ec.estimator.ensemble.n_qubits = config.circuit.n_qubits();
    }
    return ec;
}

std::optional<std::uint64_t> preps_to_band(const EvolutionTrace &trace, double band) {
    if (!trace.summary.exact_ground_energy) {
        return std::nullopt;
    }
    const double e0 = *trace.summary.exact_ground_energy;
    for (const auto &r : trace.records) {
        if (std::abs(r.energy - e0) <= band * std::abs(e0)) {
            return r.state_preps;
        }
    }
    return std::nullopt;
}

RunResult run_experiment(const fs::path &config_path, const RunOptions &options) {
    const auto config = load_experiment_config(config_path);
    const fs::path out = output_dir_for(config, config_path, options);
    fs::create_directories(out);
    json summary;
    switch (config.kind) {
    case ExperimentKind::Evolution: {
        std::vector<EvolutionTrace> traces;
        summary = run_evolution_methods(config, out, options, traces);
        break;
    }
    case ExperimentKind::EstimatorAccuracy:
        summary = run_estimator_accuracy(config, out, options);
        break;
    case ExperimentKind::ConjectureSweep:
        summary = run_conjecture_sweep(config, out, options);
        break;
    }
    write_text(out / "summary.json", summary.dump(2) + "\n");
    write_text(out / "manifest.json", manifest_for(config, "run").dump(2) + "\n");
    return {out, summary};
}

RunResult compare_methods(const fs::path &config_path, const RunOptions &options) {
    const auto config = load_experiment_config(config_path);
    if (config.kind != ExperimentKind::Evolution) {
        throw ConfigError("experiment: compare needs an evolution config");
    }
    if (config.methods.size() < 2) {
        throw ConfigError("methods: need >= 2 methods to compare");
    }
    const fs::path out = output_dir_for(config, config_path, options);
    fs::create_directories(out);
    std::vector<EvolutionTrace> traces;
    json summary = run_evolution_methods(config, out, options, traces);
    summary["experiment"] = "compare";
    std::string csv = "method,iter,state_preps,energy\n";
    for (const auto &t : traces) {
        for (const auto &r : t.records) {
            csv += t.label + "," + std::to_string(r.iter) + "," + std::to_string(r.state_preps) +
                   "," + format_number(r.energy) + "\n";
        }
    }
    write_text(out / "comparison.csv", csv);
    write_text(out / "summary.json", summary.dump(2) + "\n");
    write_text(out / "manifest.json", manifest_for(config, "compare").dump(2) + "\n");
    return {out, summary};
}

} // namespace rmlab
