#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "skdv/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Coupled Schrodinger-KdV experiments"};
    app.set_version_flag("--version", std::string(skdv::kLibraryVersion));
    app.require_subcommand(1);

    std::string config_path, snapshot_path;
    std::vector<double> betas{0.6};
    double window = 0.5;
    bool record = false;

    auto* run = app.add_subcommand("run", "Run the experiment named in a config file");
    run->add_option("config", config_path, "Config file")->required()->check(CLI::ExistingFile);

    auto* diagnose = app.add_subcommand("diagnose", "Regularity diagnostics of a snapshot");
    diagnose->add_option("snapshot", snapshot_path, "Snapshot file")->required()->check(CLI::ExistingFile);
    diagnose->add_option("--beta", betas, "Holder exponents");
    diagnose->add_option("--window", window, "Holder window");

    auto* estimates = app.add_subcommand("estimates", "Run the estimates campaign");
    estimates->add_option("config", config_path, "Config file")->required()->check(CLI::ExistingFile);
    estimates->add_flag("--record", record, "Store worst ratios as the recorded constants");

    auto* grid = app.add_subcommand("grid-check", "Report contamination of the configured data");
    grid->add_option("config", config_path, "Config file")->required()->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    return skdv::guarded(std::cerr, [&] {
        if (*run) {
            skdv::run_experiment(skdv::load_config(config_path), std::cout);
            return 0;
        }
        if (*diagnose) {
            std::cout << skdv::diagnose_snapshot(snapshot_path, betas, window);
            return 0;
        }
        if (*estimates) {
            auto cfg = skdv::load_config(config_path);
            const int failures = skdv::run_estimates(cfg, std::cout, record);
            if (failures > 0) std::cerr << failures << " estimate(s) exceed the recorded constants\n";
            return failures > 0 ? 2 : 0;
        }
        std::cout << skdv::grid_check(skdv::load_config(config_path));
        return 0;
    });
}
