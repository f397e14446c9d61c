#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "wpnet/config.hpp"
#include "wpnet/errors.hpp"
#include "wpnet/experiments.hpp"
#include "wpnet/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumeric = 3;

int cmd_validate(const std::string& path) {
    const wpnet::ScenarioConfig cfg = wpnet::load_config(path);
    std::cout << wpnet::write_config(cfg);
    std::cerr << "ok: " << path << " is valid (" << cfg.clusters.count << " clusters)\n";
    return kExitOk;
}

int cmd_run(const std::string& path, const std::string& experiment, bool seed_set,
            std::uint64_t seed, const std::string& out_dir) {
    wpnet::ScenarioConfig cfg = wpnet::load_config(path);
    if (seed_set) cfg.seed = seed;
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    const wpnet::RunManifest manifest =
        wpnet::run_experiment(cfg, wpnet::parse_experiment(experiment));
    std::cout << "wrote " << manifest.checksums.size() + 1 << " files to " << cfg.output_dir
              << " (config " << manifest.config_hash << ", seed " << manifest.seed << ")\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Energy statistics and fair power allocation for clustered sensor networks"};
    app.set_version_flag("--version", std::string(wpnet::kVersion));
    app.require_subcommand(1);

    std::string validate_path;
    CLI::App* validate =
        app.add_subcommand("validate", "Check a scenario file and echo the resolved config");
    validate->add_option("config", validate_path, "scenario file (JSON)")->required();

    std::string run_path;
    std::string experiment = "all";
    std::uint64_t seed = 0;
    std::string out_dir;
    CLI::App* run = app.add_subcommand("run", "Run experiments and write CSV products");
    run->add_option("config", run_path, "scenario file (JSON)")->required();
    run->add_option("--experiment", experiment, "histogram | fairness | energy | all")
        ->default_str("all");
    CLI::Option* seed_opt = run->add_option("--seed", seed, "override the scenario master seed");
    run->add_option("--out", out_dir, "override the output directory");

    CLI::App* defaults =
        app.add_subcommand("default-config", "Print the shipped default scenario");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (validate->parsed()) return cmd_validate(validate_path);
        if (run->parsed()) return cmd_run(run_path, experiment, seed_opt->count() > 0, seed,
                                          out_dir);
        if (defaults->parsed()) {
            std::cout << wpnet::write_config(wpnet::default_config());
            return kExitOk;
        }
    } catch (const wpnet::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const wpnet::IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const wpnet::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << '\n';
        return 1;
    }
    return kExitOk;
}
