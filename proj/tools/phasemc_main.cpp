#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "phasemc/acceptance.hpp"
#include "phasemc/config.hpp"
#include "phasemc/run_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitAcceptance = 3;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw phasemc::ConfigError("cannot read config file " + path);
    std::ostringstream body;
    body << in.rdbuf();
    return body.str();
}

struct CommonOpts {
    std::string config_path;
    std::string out_dir = "out";
    std::int64_t seed_override = -1;
    int threads_override = -1;
};

phasemc::ScenarioConfig load(const CommonOpts& opts) {
    phasemc::ScenarioConfig cfg = phasemc::parse_config(slurp(opts.config_path));
    if (opts.seed_override >= 0) cfg.seed = static_cast<std::uint64_t>(opts.seed_override);
    if (opts.threads_override >= 0) cfg.threads = opts.threads_override;
    return cfg;
}

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("-c,--config", opts.config_path, "scenario config file")->required();
    cmd->add_option("-o,--out", opts.out_dir, "output directory");
    cmd->add_option("--seed", opts.seed_override, "override the config seed");
    cmd->add_option("--threads", opts.threads_override, "worker count (0 = hardware)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo interference from phase-carrying free particles"};
    app.require_subcommand(1);

    CommonOpts run_opts;
    auto* run_cmd = app.add_subcommand("run", "run one scenario and write profiles");
    add_common(run_cmd, run_opts);

    CommonOpts sweep_opts;
    std::vector<double> widths = {0.001, 0.01, 0.1, 0.2, 0.4};
    double sweep_time = 4.0;
    auto* sweep_cmd =
        app.add_subcommand("sweep-binsize", "replay one particle stream at several bin widths");
    add_common(sweep_cmd, sweep_opts);
    sweep_cmd->add_option("--widths", widths, "bin widths to sweep")->delimiter(',');
    sweep_cmd->add_option("--time", sweep_time, "snapshot time of the sweep");

    CommonOpts buildup_opts;
    std::vector<std::uint64_t> checkpoints = {100, 1000, 10000, 100000};
    auto* buildup_cmd =
        app.add_subcommand("sweep-buildup", "emit profiles after the first m particles");
    add_common(buildup_cmd, buildup_opts);
    buildup_cmd->add_option("--checkpoints", checkpoints, "ascending particle checkpoints")
        ->delimiter(',');

    auto* check_cmd = app.add_subcommand("check", "run the acceptance criteria");

    std::string init_kind = "single_packet";
    auto* init_cmd = app.add_subcommand("init-config", "print a default config for a scenario kind");
    init_cmd->add_option("--kind", init_kind,
                         "single_packet | two_packets | wall | double_slit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (run_cmd->parsed()) {
            const auto manifest = phasemc::run_and_write(load(run_opts), run_opts.out_dir);
            std::cout << "wrote " << manifest.files.size() << " files to " << run_opts.out_dir
                      << " in " << manifest.wall_seconds << "s\n";
        } else if (sweep_cmd->parsed()) {
            const auto manifest = phasemc::sweep_bin_size_and_write(load(sweep_opts), widths,
                                                                    sweep_time, sweep_opts.out_dir);
            std::cout << "wrote " << manifest.files.size() << " files to " << sweep_opts.out_dir
                      << "\n";
        } else if (buildup_cmd->parsed()) {
            const auto manifest = phasemc::sweep_buildup_and_write(load(buildup_opts), checkpoints,
                                                                   buildup_opts.out_dir);
            std::cout << "wrote " << manifest.files.size() << " files to " << buildup_opts.out_dir
                      << "\n";
        } else if (check_cmd->parsed()) {
            const bool ok = phasemc::acceptance::report(phasemc::acceptance::run_all());
            return ok ? kExitOk : kExitAcceptance;
        } else if (init_cmd->parsed()) {
            phasemc::ScenarioKind kind;
            if (init_kind == "single_packet") kind = phasemc::ScenarioKind::single_packet;
            else if (init_kind == "two_packets") kind = phasemc::ScenarioKind::two_packets;
            else if (init_kind == "wall") kind = phasemc::ScenarioKind::wall;
            else if (init_kind == "double_slit") kind = phasemc::ScenarioKind::double_slit;
            else throw phasemc::ConfigError("unknown scenario kind '" + init_kind + "'");
            std::cout << phasemc::emit_config(phasemc::default_config(kind));
        }
    } catch (const phasemc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}
