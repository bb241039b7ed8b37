// Experiment runner: builds an experiment config from a file and/or flags,
// runs it, and emits a JSON or CSV report. Exit code 0 iff every check in
// the report passed.

#include "hra/experiment.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using hra::Json;

struct GlobalOpts {
    std::string config_path;
    std::string out = "-";
    std::string format = "json";
    std::optional<std::uint64_t> seed;
    bool paper_exact = false;
    std::string scale;
};

void add_global_flags(CLI::App* cmd, GlobalOpts& opts) {
    cmd->add_option("--config", opts.config_path, "Config file (JSON)");
    cmd->add_option("--out", opts.out, "Output path, '-' for stdout");
    cmd->add_option("--format", opts.format, "Report format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--seed", opts.seed, "Master seed");
    cmd->add_flag("--paper-exact", opts.paper_exact, "Use the paper-exact parameter formulas");
    cmd->add_option("--scale", opts.scale,
                    "Scaled parameter overrides, e.g. d_prime=8,f=9,k=40,l=80,m=10");
}

Json base_config(const GlobalOpts& opts, const std::string& kind) {
    Json cfg = Json::object();
    if (!opts.config_path.empty()) {
        std::ifstream in(opts.config_path);
        if (!in) throw hra::IoError("cannot open config file: " + opts.config_path);
        in >> cfg;
    }
    cfg["kind"] = kind;
    if (opts.seed) cfg["seed"] = *opts.seed;
    if (opts.paper_exact) cfg["params"] = "paper";
    if (!opts.scale.empty()) {
        cfg["params"] = "scaled";
        std::stringstream ss(opts.scale);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto eq = item.find('=');
            if (eq == std::string::npos)
                throw hra::ConfigError("--scale entries must look like k=40");
            const std::string key = item.substr(0, eq);
            const std::string value = item.substr(eq + 1);
            if (key == "f")
                cfg["f"] = value;  // rational-capable field
            else
                cfg[key] = std::stoull(value);
        }
    }
    return cfg;
}

int run(const GlobalOpts& opts, const std::string& kind, const Json& extra) {
    Json cfg = base_config(opts, kind);
    for (const auto& [key, value] : extra.items()) cfg[key] = value;
    const auto config = hra::ExperimentConfig::parse(cfg);
    const auto report = hra::run_experiment(config);
    hra::emit_report(report, opts.out, opts.format);
    return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Randomized semidecision experiment runner"};
    app.require_subcommand(1);

    GlobalOpts opts;
    Json extra = Json::object();

    auto add_str = [&extra](CLI::App* cmd, const std::string& flag, const std::string& key,
                            const std::string& help) {
        cmd->add_option_function<std::string>(
            flag, [&extra, key](const std::string& v) { extra[key] = v; }, help);
    };
    auto add_u64 = [&extra](CLI::App* cmd, const std::string& flag, const std::string& key,
                            const std::string& help) {
        cmd->add_option_function<std::uint64_t>(
            flag, [&extra, key](std::uint64_t v) { extra[key] = v; }, help);
    };

    auto* certify = app.add_subcommand("certify", "Acceptance-sampling certification of a candidate");
    add_global_flags(certify, opts);
    add_str(certify, "--problem", "problem", "Problem name, e.g. PARITY or TAUT-2");
    add_str(certify, "--candidate", "candidate", "Candidate name, e.g. CoinLiar:1/8");
    add_u64(certify, "--n", "n", "Input length");
    add_u64(certify, "--d-prime", "d_prime", "Density parameter d'");
    add_u64(certify, "--T", "T", "Per-run step timeout");
    add_u64(certify, "--k", "k", "Sample count");
    add_u64(certify, "--l", "l", "Repetitions per sample");
    add_str(certify, "--f", "f", "Fault divisor (rational, e.g. 9 or 17/2)");
    add_u64(certify, "--trials", "trials", "Monte Carlo trials");

    auto* amplify = app.add_subcommand("amplify", "Exact amplified-error curves vs e^{-m/48}");
    add_global_flags(amplify, opts);

    auto* universal = app.add_subcommand("universal", "Universal automatizer runs");
    add_global_flags(universal, opts);
    add_str(universal, "--problem", "problem", "Problem name");
    add_str(universal, "--x", "x", "Explicit input bitstring");
    add_u64(universal, "--n", "n", "Input length (correctness sampling mode)");
    add_u64(universal, "--d", "d", "Density parameter d");
    add_u64(universal, "--budget", "budget", "Scheduler tick budget");
    add_u64(universal, "--runs", "runs", "Runs on the explicit input");
    add_u64(universal, "--samples", "samples", "Sampled inputs for correctness");
    add_u64(universal, "--runs-per-sample", "runs_per_sample", "Runs per sampled input");
    universal
        ->add_option_function<std::vector<std::string>>(
            "--pool",
            [&extra](const std::vector<std::string>& v) { extra["pool"] = v; },
            "Ordered candidate names")
        ->delimiter(',');

    auto* proofsys = app.add_subcommand("proofsys", "Proof-system completeness/soundness/votes");
    add_global_flags(proofsys, opts);
    add_str(proofsys, "--problem", "problem", "TAUT problem, e.g. TAUT-2");
    add_str(proofsys, "--system", "system", "Proof system: TruthTable or Verbatim");
    add_u64(proofsys, "--n", "n", "Formula length");
    add_u64(proofsys, "--d", "d", "Density parameter d");
    add_u64(proofsys, "--witness-bound", "witness_bound", "Max witness length");
    add_u64(proofsys, "--trials", "trials", "Verifier executions per (x, w)");
    add_u64(proofsys, "--copies", "copies", "Parallel search copies");
    add_u64(proofsys, "--votes", "votes", "Verifier votes per witness");
    add_u64(proofsys, "--threshold", "threshold", "Vote acceptance threshold");

    auto* verify = app.add_subcommand("verify-bounds", "Exact binomial tails vs concentration bounds");
    add_global_flags(verify, opts);

    auto* timetable = app.add_subcommand("timetable", "Median halting-time tables");
    add_global_flags(timetable, opts);
    add_str(timetable, "--problem", "problem", "Problem name");
    add_str(timetable, "--candidate", "candidate", "Candidate name");
    add_u64(timetable, "--trials", "trials", "Trials per cell");
    add_u64(timetable, "--budget", "budget", "Step budget per run");
    add_str(timetable, "--table-out", "table_out", "CSV path for the full quantile table");

    auto* reemit = app.add_subcommand("report", "Re-emit an existing JSON report");
    std::string report_in;
    reemit->add_option("input", report_in, "JSON report file")->required();
    add_global_flags(reemit, opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (reemit->parsed()) {
            std::ifstream in(report_in);
            if (!in) throw hra::IoError("cannot open report file: " + report_in);
            Json j;
            in >> j;
            const auto report = hra::ExperimentReport::from_json(j);
            hra::emit_report(report, opts.out, opts.format);
            return report.all_pass() ? 0 : 1;
        }
        for (auto* cmd : {certify, amplify, universal, proofsys, verify, timetable})
            if (cmd->parsed()) return run(opts, cmd->get_name(), extra);
        std::cerr << "no subcommand\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
