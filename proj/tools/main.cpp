#include "gcontract/bundled_configs.hpp"
#include "gcontract/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

// A readable file wins; otherwise the name of a bundled configuration.
std::optional<std::string> load_config(const std::string& name) {
    if (std::ifstream in{name}) {
        std::stringstream buffer;
        buffer << in.rdbuf();
        return buffer.str();
    }
    for (const auto& [stem, text] : gcontract::bundled::configs)
        if (stem == name) return std::string(text);
    return std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Banach G-contraction analysis on uniform spaces with a graph"};
    app.set_version_flag("--version", gcontract::version_string);

    gcontract::Options options;
    std::string config;
    app.add_option("--config", config, "Config file, or the name of a bundled config")
        ->required()
        ->envname("GCONTRACT_CONFIG");
    app.add_option("--command", options.command, "check | iterate | classify | validate | report")
        ->envname("GCONTRACT_COMMAND")
        ->check(CLI::IsMember({"check", "iterate", "classify", "validate", "report"}));
    app.add_option("--alpha", options.alpha, "Requested contraction constant in (0,1)")->envname("GCONTRACT_ALPHA");
    app.add_option("--eps", options.eps, "Probe entourage scale")->envname("GCONTRACT_EPS");
    app.add_option("--max-iter", options.max_iter, "Orbit budget")->envname("GCONTRACT_MAX_ITER");
    app.add_option("--window", options.window, "Cauchy window")->envname("GCONTRACT_WINDOW");
    app.add_option("--seed", options.seed, "Seed for randomized trials")->envname("GCONTRACT_SEED");
    app.add_option("--max-carrier", options.max_carrier, "Largest carrier enumerated by validate")
        ->envname("GCONTRACT_MAX_CARRIER");
    app.add_flag("--json", options.json, "Emit the structured report")->envname("GCONTRACT_JSON");
    bool list = false;
    app.add_flag("--list-bundled", list, "Print the bundled config names and exit");

    // --config is not needed for --list-bundled
    app.preparse_callback([&](std::size_t) {
        for (int i = 1; i < argc; ++i)
            if (std::string_view(argv[i]) == "--list-bundled") app.get_option("--config")->required(false);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Error& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    if (list) {
        for (const auto& [stem, text] : gcontract::bundled::configs) std::cout << stem << "\n";
        return 0;
    }

    auto text = load_config(config);
    if (!text) {
        std::cerr << "error: no config file or bundled config named '" << config << "'\n";
        return 2;
    }
    options.config_text = std::move(*text);
    options.config_source = config;
    const auto result = gcontract::run(options);
    for (const auto& e : result.errors) std::cerr << "error: " << e << "\n";
    std::cout << result.output;
    return result.exit_code;
}
