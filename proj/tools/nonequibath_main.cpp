#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "nonequibath/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"nonequibath: kinetics of an N-level atom in a structured photon bath"};
    app.require_subcommand(1);

    struct SubArgs {
        std::string config;
        std::string out;
    };
    std::map<std::string, SubArgs> args;
    for (const char* name : {"stationary", "evolve", "flux", "sweep"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", args[name].config, "JSON run configuration")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_option("--out", args[name].out, "write the CSV payload to this file");
    }
    app.get_subcommand("stationary")->description(
        "stationary state, residuals and Einstein quotients");
    app.get_subcommand("evolve")->description("fixed-step trajectory CSV");
    app.get_subcommand("flux")->description("per-line photon fluxes at the stationary state");
    app.get_subcommand("sweep")->description("stationary observables over a beta sweep");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const std::string name = app.get_subcommands().front()->get_name();
    const SubArgs& chosen = args[name];
    std::optional<std::filesystem::path> out_path;
    if (!chosen.out.empty()) out_path = chosen.out;
    return nonequibath::run_command(name, chosen.config, out_path, std::cerr);
}
