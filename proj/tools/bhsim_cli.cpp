#include "bhsim/harness.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <stdexcept>

namespace {

// Exit codes: 0 all-pass, 1 inequality/property violation, 2 input error.
constexpr int kExitViolation = 1;
constexpr int kExitInputError = 2;

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file " + path);
    out << text;
}

int cmd_run(const std::string& config_path, const std::string& out_path,
            bool timings) {
    const auto cfg = bhsim::load_config(config_path);
    const auto row = bhsim::run_experiment(cfg);
    const auto csv = bhsim::to_csv({row}, timings);
    if (!out_path.empty()) write_text(out_path, csv);
    std::cout << csv;
    std::cout << bhsim::sweep_summary({row}) << '\n';
    return 0;
}

int cmd_sweep(int instances, std::uint64_t master_seed, const bhsim::SweepRanges& ranges,
              const std::string& out_path, bool timings) {
    const auto rows = bhsim::sweep(instances, ranges, master_seed);
    const auto csv = bhsim::to_csv(rows, timings);
    if (!out_path.empty()) {
        write_text(out_path, csv);
    } else {
        std::cout << csv;
    }
    std::cout << bhsim::sweep_summary(rows) << '\n';
    return 0;
}

int cmd_verify(const std::string& suite, int instances) {
    const auto report = bhsim::verify(suite, instances);
    for (const auto& check : report.checks) {
        std::cout << (check.pass ? "PASS" : "FAIL") << ' ' << check.name
                  << " margin=" << check.margin << " (" << check.detail << ")\n";
    }
    return report.all_pass() ? 0 : kExitViolation;
}

int cmd_work_integral(const std::string& config_path) {
    const auto spec = bhsim::load_work_integral_spec(config_path);
    const auto res = bhsim::work_integral(spec);
    std::cout << "work=" << res.work << " delta_f=" << res.free_energy_delta
              << " rel_error=" << res.rel_error << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Truncated Hartle-Hawking measurement experiments: "
                 "generalized-second-law and Holevo-bound verification"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    bool timings = false;

    auto* run = app.add_subcommand("run", "Run a single configured experiment");
    run->add_option("--config", config_path, "JSON experiment config")->required();
    run->add_option("--out", out_path, "CSV output path");
    run->add_flag("--timings", timings, "Include wall-clock times in the CSV");

    int instances = 500;
    std::uint64_t master_seed = 0;
    bhsim::SweepRanges ranges;
    auto* sweep = app.add_subcommand("sweep", "Randomized verification sweep");
    sweep->add_option("--instances", instances, "Number of instances")->required();
    sweep->add_option("--master-seed", master_seed, "Master seed")->required();
    sweep->add_option("--dim-max", ranges.dim_max, "Maximum truncation dimension");
    sweep->add_option("--kraus-max", ranges.kraus_max, "Maximum outcome count");
    sweep->add_option("--slack", ranges.slack, "Dissipation slack (energy units)");
    sweep->add_option("--out", out_path, "CSV output path");
    sweep->add_flag("--timings", timings, "Include wall-clock times in the CSV");

    std::string suite = "all";
    int verify_instances = 0;
    auto* verify = app.add_subcommand("verify", "Run named property suites");
    verify->add_option("--suite", suite, "Suite name or 'all'");
    verify->add_option("--instances", verify_instances,
                       "Randomized sample count (0 = suite default)");

    auto* work = app.add_subcommand("work-integral",
                                    "Quasi-static work integral vs free energy");
    work->add_option("--config", config_path, "JSON work-integral spec")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInputError;
    }

    try {
        if (run->parsed()) return cmd_run(config_path, out_path, timings);
        if (sweep->parsed()) return cmd_sweep(instances, master_seed, ranges, out_path, timings);
        if (verify->parsed()) return cmd_verify(suite, verify_instances);
        if (work->parsed()) return cmd_work_integral(config_path);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    return 0;
}
