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

// rmlab: runs JSON-configured experiments.
//
//   rmlab run <config.json> [--out DIR] [-v]
//   rmlab compare <config.json> [--out DIR] [-v]
//
// Exit codes: 0 ok, 2 config error, 3 data error, 4 numeric failure.

#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rmlab/errors.hpp"
#include "rmlab/experiment.hpp"

namespace {

enum ExitCode : int { kOk = 0, kConfig = 2, kData = 3, kNumeric = 4 };

struct CommandArgs {
    std::string config;
    std::string out;
    bool verbose = false;
};

void add_common(CLI::App *cmd, CommandArgs &args) {
    cmd->add_option("config", args.config, "experiment config (JSON)")->required();
    cmd->add_option("--out", args.out, "output directory");
    cmd->add_flag("-v,--verbose", args.verbose, "progress on stderr");
}

int dispatch(bool compare, const CommandArgs &args) {
    rmlab::RunOptions opts;
    if (!args.out.empty()) {
        opts.out_dir = args.out;
    }
    opts.verbose = args.verbose;
    opts.log = &std::cerr;
    const auto result = compare ? rmlab::compare_methods(args.config, opts)
                                : rmlab::run_experiment(args.config, opts);
    std::cout << result.out_dir.string() << '\n';
    return kOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"rmlab: random-measurement imaginary-time evolution experiments"};
    app.require_subcommand(1);
    CommandArgs run_args;
    CommandArgs compare_args;
    auto *run = app.add_subcommand("run", "run an experiment config");
    add_common(run, run_args);
    auto *cmp = app.add_subcommand("compare", "compare the methods of an evolution config");
    add_common(cmp, compare_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    try {
        return run->parsed() ? dispatch(false, run_args) : dispatch(true, compare_args);
    } catch (const rmlab::ConfigError &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    } catch (const rmlab::DataError &e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kData;
    } catch (const rmlab::NumericError &e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return kNumeric;
    } catch (const nlohmann::json::exception &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    } catch (const std::filesystem::filesystem_error &e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kData;
    }
}
