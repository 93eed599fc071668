// Copyright 2026 The measrepro Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <functional>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "measrepro/cli.h"
#include "measrepro/errors.h"

namespace {

using measrepro::cli::CommandOptions;
using measrepro::cli::RunReport;

constexpr int kUsageError = 2;

struct GlobalFlags {
    bool json = false;
    std::string out;
};

int emit(const RunReport &report, const GlobalFlags &flags) {
    if (flags.json) {
        std::cout << measrepro::cli::report_json(report);
    } else {
        measrepro::cli::print_table(report, std::cout);
    }
    if (!flags.out.empty()) {
        std::ofstream out(flags.out, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write " << flags.out << "\n";
            return 1;
        }
        measrepro::cli::write_csv(report, out);
    }
    return measrepro::cli::exit_status(report);
}

void add_common(CLI::App *cmd, CommandOptions &options, GlobalFlags &flags) {
    cmd->add_option("--seed", options.seed, "64-bit seed");
    cmd->add_option("--samples", options.samples, "Monte Carlo samples or trials (0 = command default)");
    cmd->add_option("--tol", options.tol, "convergence tolerance");
    cmd->add_option("--max-n", options.max_n, "largest number of uses or copies");
    cmd->add_flag("--json", flags.json, "print the raw JSON report");
    cmd->add_option("--out", flags.out, "write the results as CSV");
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Reproduce one quantum measurement from uses of another."};
    app.require_subcommand(1);
    CommandOptions options;
    GlobalFlags flags;
    std::string first;
    std::string second;
    std::function<RunReport()> run;

    auto *validate = app.add_subcommand("validate", "load and validate a measurement");
    validate->add_option("measurement", first, "file or built-in name")->required();
    validate->callback([&] { run = [&] { return measrepro::cli::cmd_validate(first, options); }; });

    auto *synth = app.add_subcommand("synth", "partition search, quadratic program and state preparation");
    synth->add_option("measurement", first, "available measurement")->required();
    synth->add_option("--uses", options.uses, "uses of the available measurement");
    synth->add_option("--targets", options.targets, "outcomes of the target von Neumann measurement");
    synth->add_option("--restarts", options.restarts, "random restarts when the search is not exhaustive");
    synth->callback([&] { run = [&] { return measrepro::cli::cmd_synth(first, options); }; });

    auto *rms = app.add_subcommand("rms", "Haar-averaged error between two measurements");
    rms->add_option("implemented", first, "implemented measurement")->required();
    rms->add_option("target", second, "target measurement")->required();
    rms->callback([&] { run = [&] { return measrepro::cli::cmd_rms(first, second, options); }; });

    auto *postmeas = app.add_subcommand("postmeas", "check the post-measurement sub-routine");
    postmeas->add_option("measurement", first, "instrument, or a POVM (Lueders instrument)")->required();
    postmeas->callback([&] { run = [&] { return measrepro::cli::cmd_postmeas(first, options); }; });

    auto *clone = app.add_subcommand("clone", "cloning basis and error curve");
    clone->add_option("measurement", first, "available measurement")->required();
    clone->callback([&] { run = [&] { return measrepro::cli::cmd_clone(first, options); }; });

    auto *capacity = app.add_subcommand("capacity", "capacity of the associated classical channel");
    capacity->add_option("measurement", first, "available measurement")->required();
    capacity->callback([&] { run = [&] { return measrepro::cli::cmd_capacity(first, options); }; });

    auto *block = app.add_subcommand("block", "repetition and random block codes");
    block->add_option("measurement", first, "available measurement")->required();
    block->add_option("--k", options.k, "message length");
    block->callback([&] { run = [&] { return measrepro::cli::cmd_block(first, options); }; });

    auto *reproduce = app.add_subcommand("reproduce-paper", "check every closed-form constant");
    reproduce->add_option("--override", options.override_path, "measurement file used in place of the trine");
    reproduce->callback([&] { run = [&] { return measrepro::cli::cmd_reproduce_paper(options); }; });

    for (auto *cmd : app.get_subcommands({})) {
        add_common(cmd, options, flags);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kUsageError;
    }

    try {
        return emit(run(), flags);
    } catch (const measrepro::Error &e) {
        std::cerr << "error [" << measrepro::error_code_name(e.code()) << "]: " << e.what() << "\n";
        return e.code() == measrepro::ErrorCode::kInvalidArgument ? kUsageError : 1;
    }
}
