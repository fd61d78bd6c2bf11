#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "loclab/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"loclab: 1D wave-packet localization laboratory"};
    app.set_version_flag("--version", std::string("loclab ") + loclab::kVersion);
    app.require_subcommand(1);

    std::string config_path, out_dir = "out", param_path;
    int jobs = 1;
    std::vector<std::string> value_tokens;
    bool as_json = false;

    CLI::App* run = app.add_subcommand("run", "run all experiments in a config");
    run->add_option("config", config_path, "experiment config JSON")->required();
    run->add_option("-o,--output", out_dir, "output directory");
    run->add_option("-j,--jobs", jobs, "experiment-level parallelism")
        ->check(CLI::PositiveNumber);

    CLI::App* list = app.add_subcommand("list", "list the experiment registry");
    list->add_flag("--json", as_json, "machine-readable output");

    CLI::App* sweep = app.add_subcommand("sweep", "run one experiment over parameter values");
    sweep->add_option("config", config_path, "single-experiment config JSON")->required();
    sweep->add_option("--param", param_path, "dotted parameter path, e.g. propagator.dt")
        ->required();
    sweep->add_option("--values", value_tokens, "comma-separated values")
        ->required()
        ->delimiter(',');
    sweep->add_option("-o,--output", out_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : loclab::kExitConfigError;
    }

    if (run->parsed()) return loclab::cmd_run(config_path, out_dir, jobs);
    if (list->parsed()) return loclab::cmd_list(as_json);

    std::vector<double> values;
    for (const std::string& token : value_tokens) {
        if (token.empty()) continue;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(token, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != token.size()) {
            std::cerr << "config error: bad sweep value '" << token << "'\n";
            return loclab::kExitConfigError;
        }
        values.push_back(v);
    }
    return loclab::cmd_sweep(config_path, param_path, values, out_dir);
}
