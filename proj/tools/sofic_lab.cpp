#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "sofic/error.hpp"
#include "sofic/experiment.hpp"
#include "sofic/parallel.hpp"

using nlohmann::json;

namespace {

constexpr int kExitSchema = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitResource = 4;

json read_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw sofic::ConfigError("cannot open config " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw sofic::ConfigError("config " + path + " is not valid JSON: " + e.what());
    }
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text) || !out.flush())
        throw sofic::ResourceError("cannot write " + path);
}

struct Args
{
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
    std::optional<std::size_t> trials;
    std::optional<int> max_size;
};

int run(sofic::ExperimentKind kind, const Args& args)
{
    if (args.threads)
        sofic::set_thread_count(*args.threads);
    json config = args.config.empty() ? json::object() : read_config(args.config);
    sofic::RunOptions options;
    options.seed = args.seed;
    options.trials = args.trials;
    options.max_size = args.max_size;
    const auto report = sofic::run_experiment(kind, config, options);
    write_file(args.out, report.data);
    write_file(args.out + ".meta.json", report.metadata.dump(2) + "\n");
    return 0;
}

int validate(const Args& args)
{
    const auto diagnostics = sofic::validate_config(read_config(args.config));
    for (const auto& d : diagnostics)
        std::cout << d << "\n";
    return diagnostics.empty() ? 0 : kExitSchema;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Sofic approximation and Gaussian action experiments"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "sofic-lab " + std::string(sofic::kToolVersion) + ", schema version " +
                                          std::to_string(sofic::kSchemaVersion));

    Args args;
    std::optional<sofic::ExperimentKind> chosen;
    bool validating = false;

    for (auto kind : {sofic::ExperimentKind::sofic, sofic::ExperimentKind::embed, sofic::ExperimentKind::gauss,
                      sofic::ExperimentKind::entropy, sofic::ExperimentKind::harmonic}) {
        const bool harmonic = kind == sofic::ExperimentKind::harmonic;
        auto* sub = app.add_subcommand(sofic::kind_name(kind), "Run the " + sofic::kind_name(kind) + " experiment");
        auto* cfg = sub->add_option("--config", args.config, "JSON config");
        if (!harmonic)
            cfg->required();
        sub->add_option("--out", args.out, "Output data file; metadata goes to <out>.meta.json")->required();
        sub->add_option("--seed", args.seed, "Seed, overrides the config");
        sub->add_option("--threads", args.threads, "Worker threads (default: SOFIC_LAB_THREADS or 1)")
            ->check(CLI::PositiveNumber);
        if (harmonic) {
            sub->add_option("--trials", args.trials, "Number of random pairs");
            sub->add_option("--max-size", args.max_size, "Largest group order")->check(CLI::Range(1, 24));
        }
        sub->callback([&chosen, kind] { chosen = kind; });
    }
    auto* val = app.add_subcommand("validate", "Check a config without running it");
    val->add_option("--config", args.config, "JSON config")->required();
    val->callback([&validating] { validating = true; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitSchema;
    }

    try {
        return validating ? validate(args) : run(*chosen, args);
    } catch (const sofic::NumericalError& e) {
        std::cerr << "sofic-lab: numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const sofic::ResourceError& e) {
        std::cerr << "sofic-lab: resource limit: " << e.what() << "\n";
        return kExitResource;
    } catch (const sofic::Error& e) {
        std::cerr << "sofic-lab: error: " << e.what() << "\n";
        return kExitSchema;
    } catch (const std::exception& e) {
        std::cerr << "sofic-lab: unexpected failure: " << e.what() << "\n";
        return 1;
    }
}
