// Copyright 2026 The fermiref Authors
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


// fermiref command-line driver: property suites, the syndrome table and the exchange sweep.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "fermiref/harness.hpp"
#include "fermiref/qec.hpp"
#include "fermiref/verify.hpp"

#ifndef FERMIREF_VERSION
#define FERMIREF_VERSION "0.1.0-unknown"
#endif

namespace {

using fermiref::BlockSyndrome;
using fermiref::Correction;
using json = nlohmann::ordered_json;

constexpr int kExitPass = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

// Raised for bad flag values and unwritable paths; maps to the usage exit code.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr const char *kCsvHeader = "p,shots,layers,corrected,estimate,ci_lo,ci_hi,seed";

// Writes `text` to `path`, or to stdout for "-".
void write_output(const std::string &path, const std::string &text) {
    if (path == "-") {
        std::fwrite(text.data(), 1, text.size(), stdout);
        std::fflush(stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw UsageError(fmt::format("cannot open '{}' for writing", path));
    }
    out << text;
    out.flush();
    if (!out) {
        throw UsageError(fmt::format("failed writing '{}'", path));
    }
}

json record_header(const std::string &command) {
    json record;
    record["command"] = command;
    record["version"] = FERMIREF_VERSION;
    return record;
}

std::string dump(const json &record) {
    return record.dump(2) + "\n";
}

// ---------------------------------------------------------------------------------------
// verify

struct VerifyArgs {
    std::string suite = "all";
    fermiref::VerifyOptions options;
    std::string json_path;
    bool timings = false;
};

int cmd_verify(const VerifyArgs &args) {
    std::vector<std::string> suites;
    if (args.suite == "all") {
        suites = fermiref::suite_names();
    } else {
        suites.push_back(args.suite);
    }

    json record = record_header("verify");
    record["config"] = {
        {"suite", args.suite},
        {"seed", args.options.seed},
        {"samples", args.options.samples},
        {"steane_p", args.options.steane_p},
    };
    record["seed"] = args.options.seed;
    json results = json::array();

    bool all_pass = true;
    std::size_t failures = 0;
    std::size_t total = 0;
    for (const auto &name : suites) {
        const auto start = std::chrono::steady_clock::now();
        fermiref::SuiteReport report = fermiref::run_suite(name, args.options);
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        fmt::print("[{}]\n", name);
        json checks = json::array();
        for (const auto &check : report.checks) {
            ++total;
            if (!check.pass) {
                ++failures;
            }
            fmt::print(
                "  {}  {:<62} {:.3e} (tol {:.0e}){}\n",
                check.pass ? "PASS" : "FAIL",
                check.name,
                check.value,
                check.tolerance,
                check.detail.empty() ? "" : "  " + check.detail);
            checks.push_back({
                {"name", check.name},
                {"pass", check.pass},
                {"value", check.value},
                {"tolerance", check.tolerance},
                {"detail", check.detail},
            });
        }
        if (args.timings) {
            fmt::print("  ({:.2f} s)\n", seconds);
        }
        all_pass = all_pass && report.pass();
        json entry = {{"suite", name}, {"pass", report.pass()}, {"checks", checks}};
        if (args.timings) {
            entry["wall_seconds"] = seconds;
        }
        results.push_back(std::move(entry));
    }
    fmt::print("{} of {} checks passed\n", total - failures, total);

    record["results"] = results;
    record["pass"] = all_pass;
    if (!args.json_path.empty()) {
        write_output(args.json_path, dump(record));
    }
    return all_pass ? kExitPass : kExitFailure;
}

// ---------------------------------------------------------------------------------------
// syndrome-table

std::string fmt_sign(int s) {
    return s > 0 ? "+1" : "-1";
}

int cmd_syndrome_table(const std::string &json_path) {
    const auto regenerated = fermiref::brute_force_syndrome_table();
    bool match = true;

    fmt::print("{:<10} {:>6} {:>6}   {}\n", "error", "S12", "S23", "stored");
    json rows = json::array();
    for (std::size_t i = 0; i < regenerated.size(); ++i) {
        const auto &[correction, syndrome] = regenerated[i];
        const auto &[stored_c, stored_s] = fermiref::kDecodeTable[i];
        const bool same = correction == stored_c && syndrome == stored_s;
        match = match && same;
        fmt::print(
            "{:<10} {:>6} {:>6}   {}\n",
            fermiref::to_string(correction),
            fmt_sign(syndrome.s12),
            fmt_sign(syndrome.s23),
            same ? "match" : "MISMATCH");
        rows.push_back({
            {"error", fermiref::to_string(correction)},
            {"s12", syndrome.s12},
            {"s23", syndrome.s23},
            {"matches_stored", same},
        });
    }
    fmt::print("syndromes regenerated by brute force; {}\n", match ? "table matches" : "TABLE MISMATCH");

    if (!json_path.empty()) {
        json record = record_header("syndrome-table");
        record["results"] = rows;
        record["pass"] = match;
        write_output(json_path, dump(record));
    }
    return match ? kExitPass : kExitFailure;
}

// ---------------------------------------------------------------------------------------
// exchange

struct ExchangeArgs {
    fermiref::ExperimentConfig config;
    std::string out = "-";
    std::string json_path;
    bool timings = false;
};

std::string csv_row(const fermiref::PointResult &r, const fermiref::ExperimentConfig &c) {
    return fmt::format(
        "{},{},{},{},{},{},{},{}\n",
        r.p,
        r.shots,
        c.num_error_layers,
        c.correction_enabled ? "true" : "false",
        r.estimate,
        r.ci_lo,
        r.ci_hi,
        c.seed);
}

int cmd_exchange(const ExchangeArgs &args) {
    const auto &config = args.config;
    try {
        config.validate();
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }

    // Open the outputs before the (possibly long) run so a bad path fails fast.
    if (args.out != "-") {
        write_output(args.out, std::string(kCsvHeader) + "\n");
    }
    if (!args.json_path.empty()) {
        write_output(args.json_path, "");
    }

    const auto start = std::chrono::steady_clock::now();
    fermiref::ExperimentSummary summary = fermiref::run_experiment(config);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::string csv = std::string(kCsvHeader) + "\n";
    for (const auto &point : summary.points) {
        csv += csv_row(point, config);
    }
    write_output(args.out, csv);

    if (!args.json_path.empty()) {
        json record = record_header("exchange");
        record["config"] = {
            {"p", config.p_values},
            {"shots", config.shots},
            {"layers", config.num_error_layers},
            {"corrected", config.correction_enabled},
            {"reference_errors", config.include_reference_errors},
            {"seed", config.seed},
            {"confidence", config.confidence},
        };
        record["seed"] = config.seed;
        json results = json::array();
        for (const auto &point : summary.points) {
            json row = {
                {"p", point.p},
                {"shots", point.shots},
                {"layers", config.num_error_layers},
                {"corrected", config.correction_enabled},
                {"estimate", point.estimate},
                {"ci_lo", point.ci_lo},
                {"ci_hi", point.ci_hi},
                {"seed", config.seed},
                {"count_plus", point.count_plus},
                {"count_minus", point.count_minus},
            };
            if (args.timings) {
                row["wall_seconds"] = point.wall_seconds;
            }
            results.push_back(std::move(row));
        }
        record["results"] = results;
        if (args.timings) {
            record["timings"] = {{"total_seconds", seconds}, {"threads", config.threads}};
        }
        write_output(args.json_path, dump(record));
    }
    if (args.timings) {
        fmt::print(stderr, "exchange: {} points in {:.2f} s\n", summary.points.size(), seconds);
    }
    return kExitPass;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"fermiref: referenced-fermion simulator and error-correction experiments"};
    app.set_version_flag("--version", FERMIREF_VERSION);
    app.require_subcommand(1);

    VerifyArgs verify;
    auto *verify_cmd = app.add_subcommand("verify", "Run property-verification suites");
    std::vector<std::string> suite_choices = fermiref::suite_names();
    suite_choices.push_back("all");
    verify_cmd->add_option("--suite", verify.suite, "Suite to run")
        ->check(CLI::IsMember(suite_choices))
        ->capture_default_str();
    verify_cmd->add_option("--seed", verify.options.seed, "Seed for random test states")->capture_default_str();
    verify_cmd->add_option("--samples", verify.options.samples, "Random states per property")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    verify_cmd->add_option("--steane-p", verify.options.steane_p, "Loss probability of the Steane check")
        ->capture_default_str();
    verify_cmd->add_option("--json", verify.json_path, "Write a JSON report to this path");
    verify_cmd->add_flag("--timings", verify.timings, "Report wall time per suite");

    std::string table_json;
    auto *table_cmd = app.add_subcommand("syndrome-table", "Regenerate and print the phase-error decode table");
    table_cmd->add_option("--json", table_json, "Write the table as JSON to this path");

    ExchangeArgs exchange;
    exchange.config.threads = 0;
    auto *exchange_cmd = app.add_subcommand("exchange", "Monte-Carlo exchange-statistics sweep");
    exchange_cmd->add_option("--p", exchange.config.p_values, "Error probabilities, comma separated")
        ->delimiter(',')
        ->required();
    exchange_cmd->add_option("--shots", exchange.config.shots, "Shots per error probability")
        ->capture_default_str();
    exchange_cmd->add_option("--layers", exchange.config.num_error_layers, "Number of error layers")
        ->capture_default_str();
    exchange_cmd->add_flag(
        "--correct,!--no-correct", exchange.config.correction_enabled, "Run a QEC round after each error layer");
    exchange_cmd->add_flag(
        "--reference-errors", exchange.config.include_reference_errors, "Also inject phase errors on reference modes");
    exchange_cmd->add_option("--seed", exchange.config.seed, "Master seed")->capture_default_str();
    exchange_cmd->add_option("--confidence", exchange.config.confidence, "Clopper-Pearson confidence level")
        ->capture_default_str();
    exchange_cmd->add_option("--threads", exchange.config.threads, "Worker threads (0 = all cores)")
        ->capture_default_str();
    exchange_cmd->add_option("--out", exchange.out, "CSV output path ('-' for stdout)")->capture_default_str();
    exchange_cmd->add_option("--json", exchange.json_path, "Also write a JSON run record to this path");
    exchange_cmd->add_flag("--timings", exchange.timings, "Record wall times (output is then not reproducible)");
    exchange_cmd->footer(
        "CSV columns (header always written):\n"
        "  p,shots,layers,corrected,estimate,ci_lo,ci_hi,seed\n"
        "estimate is cos(Theta) = -<Y> of the exchange ancilla; ci_lo/ci_hi bound it at --confidence.\n"
        "Output does not depend on --threads.");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (*verify_cmd) {
            return cmd_verify(verify);
        }
        if (*table_cmd) {
            return cmd_syndrome_table(table_json);
        }
        return cmd_exchange(exchange);
    } catch (const UsageError &e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kExitUsage;
    } catch (const std::invalid_argument &e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kExitUsage;
    } catch (const std::exception &e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kExitFailure;
    }
}
