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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <algorithm>
#include <sys/wait.h>
#include <unistd.h>

#include "rmlab/errors.hpp"
#include "rmlab/experiment.hpp"

using namespace rmlab;
using doctest::Approx;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() /
               ("rmlab_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

fs::path write_config(const fs::path &dir, const std::string &name, const json &doc) {
    const auto p = dir / name;
    std::ofstream(p) << doc.dump(2);
    return p;
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

json z_evolution() {
    return json::parse(R"({
        "experiment": "evolution",
        "seed": 3,
        "hamiltonian": {"builtin": "z"},
        "ansatz": {"family": "explicit", "n_qubits": 1,
                   "gates": [{"kind": "ry", "targets": [0], "param": 0}]},
        "theta0": [0.3],
        "evolution": {"dt": 0.01, "total_time": 8.0},
        "methods": [{"label": "rmite-k1", "method": "rmite",
                     "estimator": {"kind": "average-cfim", "ensemble": {"kind": "haar"}, "K": 1}}]
    })");
}

json tfim_compare() {
    return json::parse(R"({
        "experiment": "evolution",
        "seed": 11,
        "hamiltonian": {"builtin": "tfim", "n_qubits": 3, "g": 1.0},
        "ansatz": {"family": "hardware-efficient", "layers": 1},
        "theta0": {"kind": "uniform", "scale": 0.3},
        "evolution": {"dt": 0.01, "steps": 20},
        "methods": [
            {"label": "a", "method": "rmite",
             "estimator": {"kind": "average-cfim", "ensemble": {"kind": "clifford"}, "K": 1}},
            {"label": "b", "method": "rmite",
             "estimator": {"kind": "average-cfim", "ensemble": {"kind": "clifford"}, "K": 1}},
            {"label": "exact", "method": "varqite"}
        ]
    })");
}

int run_cli(const std::string &args) {
    const std::string cmd = std::string(RMLAB_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string error_of(const json &doc) {
    try {
        parse_experiment_config(doc);
    } catch (const ConfigError &e) {
        return e.what();
    } catch (const DataError &e) {
        return std::string("data: ") + e.what();
    }
    return {};
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("evolution run on H = Z") {
    TempDir tmp;
    const auto cfg = write_config(tmp.path, "z.json", z_evolution());
    RunOptions opts;
    opts.out_dir = tmp.path / "out";
    const auto result = run_experiment(cfg, opts);
    CHECK(result.summary["methods"][0]["final_energy"].get<double>() == Approx(-1.0).epsilon(1e-6));
    CHECK(fs::exists(tmp.path / "out" / "rmite-k1" / "trace.csv"));
    CHECK(fs::exists(tmp.path / "out" / "summary.json"));
    const auto manifest = json::parse(slurp(tmp.path / "out" / "manifest.json"));
    CHECK(manifest["seed"] == 3);
    CHECK(manifest["config"] == z_evolution());
    CHECK(manifest["resolved"]["hamiltonian"]["terms"][0]["pauli"] == "Z");
}

TEST_CASE("config errors name the field") {
    auto doc = z_evolution();
    doc["evolution"].erase("dt");
    CHECK(error_of(doc).find("dt") != std::string::npos);

    doc = z_evolution();
    doc.erase("seed");
    CHECK(error_of(doc).find("seed") != std::string::npos);

    doc = z_evolution();
    doc["hamiltonian"] = {{"builtin", "lih"}};
    CHECK(error_of(doc).find("hamiltonian.builtin") != std::string::npos);

    doc = z_evolution();
    doc["methods"][0]["estimator"]["K"] = 0;
    CHECK(error_of(doc).find("methods[0].estimator") != std::string::npos);

    doc = z_evolution();
    doc["theta0"] = json::array({0.1, 0.2});
    CHECK(error_of(doc).find("theta0") != std::string::npos);

    doc = z_evolution();
    doc["hamiltonian"] = {{"file", "/nonexistent/h.json"}};
    CHECK(error_of(doc).rfind("data:", 0) == 0);

    doc = z_evolution();
    doc["hamiltonian"] = {{"builtin", "tfim"}, {"n_qubits", 2}};
    CHECK(error_of(doc).rfind("data:", 0) == 0);
}

TEST_CASE("estimator-accuracy sweep") {
    TempDir tmp;
    const auto doc = json::parse(R"({
        "experiment": "estimator-accuracy",
        "seed": 5,
        "hamiltonian": {"builtin": "tfim", "n_qubits": 2},
        "ansatz": {"family": "hardware-efficient", "layers": 1},
        "theta0": {"kind": "uniform"},
        "K_values": [1, 10, 100],
        "repetitions": 20,
        "estimators": [{"label": "td", "kind": "two-design", "ensemble": {"kind": "haar"}}]
    })");
    RunOptions opts;
    opts.out_dir = tmp.path / "acc";
    const auto result = run_experiment(write_config(tmp.path, "acc.json", doc), opts);
    const auto med = result.summary["estimators"][0]["median_error"];
    CHECK(med[1].get<double>() < med[0].get<double>());
    CHECK(med[2].get<double>() < med[1].get<double>());
    const auto csv = slurp(tmp.path / "acc" / "errors.csv");
    CHECK(csv.rfind("estimator,K,rep,error,relative_error\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 61);
}

TEST_CASE("conjecture sweep") {
    TempDir tmp;
    const auto doc = json::parse(R"({
        "experiment": "conjecture-sweep",
        "seed": 5,
        "hamiltonian": {"builtin": "tfim", "n_qubits": 2},
        "ansatz": {"family": "hardware-efficient", "layers": 1},
        "theta0": {"kind": "uniform"},
        "K_values": [200],
        "repetitions": 3
    })");
    RunOptions opts;
    opts.out_dir = tmp.path / "c";
    const auto result = run_experiment(write_config(tmp.path, "c.json", doc), opts);
    CHECK(result.summary["median_fitted_factor"][0].get<double>() == Approx(2.0).epsilon(0.2));
    CHECK(fs::exists(tmp.path / "c" / "conjecture.csv"));
}

TEST_CASE("compare") {
    TempDir tmp;
    const auto cfg = write_config(tmp.path, "cmp.json", tfim_compare());
    RunOptions opts;
    opts.out_dir = tmp.path / "cmp";
    compare_methods(cfg, opts);
    CHECK(slurp(tmp.path / "cmp" / "a" / "trace.csv") == slurp(tmp.path / "cmp" / "b" / "trace.csv"));
    const auto csv = slurp(tmp.path / "cmp" / "comparison.csv");
    CHECK(csv.rfind("method,iter,state_preps,energy\n", 0) == 0);

    auto single = tfim_compare();
    single["methods"].erase(1);
    single["methods"].erase(1);
    try {
        compare_methods(write_config(tmp.path, "one.json", single), opts);
        FAIL("expected an error");
    } catch (const ConfigError &e) {
        CHECK(std::string(e.what()).find("need >= 2 methods") != std::string::npos);
    }
}

TEST_CASE("command line") {
    TempDir tmp;
    const auto good = write_config(tmp.path, "good.json", tfim_compare());
    const auto out1 = tmp.path / "o1";
    const auto out2 = tmp.path / "o2";
    CHECK(run_cli("run " + good.string() + " --out " + out1.string()) == 0);
    CHECK(run_cli("run " + good.string() + " --out " + out2.string() + " -v") == 0);
    for (const char *label : {"a", "b", "exact"}) {
        const auto rel = fs::path(label) / "trace.csv";
        CHECK(slurp(out1 / rel) == slurp(out2 / rel));
        CHECK_FALSE(slurp(out1 / rel).empty());
    }
    CHECK(slurp(out1 / "summary.json") == slurp(out2 / "summary.json"));

    auto no_dt = tfim_compare();
    no_dt["evolution"].erase("dt");
    CHECK(run_cli("run " + write_config(tmp.path, "nodt.json", no_dt).string()) == 2);
    std::ofstream(tmp.path / "broken.json") << "{ not json";
    CHECK(run_cli("run " + (tmp.path / "broken.json").string()) == 2);
    CHECK(run_cli("run " + (tmp.path / "missing.json").string()) == 2);
    CHECK(run_cli("bogus") == 2);

    auto bad_file = tfim_compare();
    bad_file["hamiltonian"] = {{"file", "nope.json"}};
    CHECK(run_cli("run " + write_config(tmp.path, "badfile.json", bad_file).string()) == 3);

    // the QFIM of a lone R_z on |0> vanishes, so the sweep has no scale
    std::ofstream(tmp.path / "h.json") << R"({"n_qubits":1,"terms":[{"coeff":1.0,"pauli":"Z"}]})";
    const json flat = {{"experiment", "conjecture-sweep"},
                       {"seed", 1},
                       {"hamiltonian", {{"file", "h.json"}}},
                       {"ansatz", {{"family", "explicit"},
                                   {"n_qubits", 1},
                                   {"gates", json::parse(R"([{"kind":"rz","targets":[0],"param":0}])")}}},
                       {"K_values", {1}}};
    CHECK(run_cli("run " + write_config(tmp.path, "flat.json", flat).string() + " --out " +
                  (tmp.path / "flat").string()) == 4);

    auto single = tfim_compare();
    single["methods"] = json::array({single["methods"][0]});
    CHECK(run_cli("compare " + write_config(tmp.path, "single.json", single).string()) == 2);

    // default output root from the environment
    const auto root = tmp.path / "root";
    const std::string env_cmd = "RMLAB_OUTPUT_ROOT=" + root.string() + " " + RMLAB_CLI_PATH + " compare " +
                                good.string() + " >/dev/null 2>&1";
    CHECK(std::system(env_cmd.c_str()) == 0);
    CHECK(fs::exists(root / "good" / "comparison.csv"));
}

}
