// Distributed under the MIT License.
// See LICENSE.txt for details.

#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "blowup/config.hpp"
#include "blowup/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{
        "Breakdown certification and radial finite-volume witness runs for\n"
        "relativistic fluid perturbations and spherically symmetric\n"
        "electron-fluid plasmas"};
    app.require_subcommand(0, 1);
    app.fallthrough();  // global options may follow the subcommand

    std::string config_path;
    std::string out_dir = ".";
    long seed = 0;  // reserved; the pipelines are deterministic
    bool quiet = false;
    app.add_option("--config", config_path, "JSON config file ('-' for stdin)");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--seed", seed, "reserved for future stochastic modes");
    app.add_flag("--quiet", quiet, "suppress progress output");

    // one subcommand per mode; each overrides the config's mode field
    std::string sub_mode;
    for (auto* name :
         {"eos-check", "fluid-certify", "fluid-simulate", "plasma-certify",
          "plasma-simulate", "scan-nbar", "scan-lambda"}) {
        auto* sub = app.add_subcommand(name);
        sub->callback([&sub_mode, name]() { sub_mode = name; });
    }

    CLI11_PARSE(app, argc, argv);

    try {
        blowup::ExperimentConfig config;
        if (!config_path.empty()) {
            config = blowup::parse_config(config_path);
        } else if (sub_mode.empty()) {
            std::cerr << "error: need a subcommand or --config\n";
            return 1;
        }
        if (!sub_mode.empty()) {
            config.mode = blowup::mode_from_string(sub_mode);
        }
        return blowup::run_experiment(config, out_dir, quiet);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
}
