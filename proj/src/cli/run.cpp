#include "possave/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace possave::cli {

namespace {

struct Options {
    std::string config_path;
    std::string out_path;
    std::string format = "csv";
    std::int64_t nodes = 0;
    std::uint64_t seed = 0;
    bool has_nodes = false;
    bool has_seed = false;
};

RunConfig load(const Options& opt) {
    std::ifstream in(opt.config_path);
    if (!in) throw ConfigError("cannot open config file '" + opt.config_path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(buffer.str());
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    if (opt.has_nodes) j["numerics"]["nodes"] = opt.nodes;
    if (opt.has_seed) j["numerics"]["seed"] = opt.seed;
    return parse_config(j);
}

int emit(const std::string& payload, const Options& opt, std::ostream& out, std::ostream& err) {
    if (opt.out_path.empty()) {
        out << payload;
        return exit_ok;
    }
    std::ofstream file(opt.out_path, std::ios::binary);
    if (!file) {
        err << "error: cannot write '" << opt.out_path << "'\n";
        return exit_config_error;
    }
    file << payload;
    return exit_ok;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Optimal saving under certain, random and fuzzy interest-rate risk", "possave"};
    app.require_subcommand(1);
    Options opt;

    std::vector<CLI::Option*> node_flags;
    std::vector<CLI::Option*> seed_flags;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config_path, "JSON run configuration")->required();
        sub->add_option("--out", opt.out_path, "write the primary output here instead of stdout");
        node_flags.push_back(sub->add_option("--nodes", opt.nodes, "Gauss-Legendre nodes (overrides numerics.nodes)"));
        seed_flags.push_back(sub->add_option("--seed", opt.seed, "Monte Carlo seed for verification checks"));
    };
    CLI::App* solve = app.add_subcommand("solve", "solve one model selected by 'model'");
    CLI::App* compare = app.add_subcommand("compare", "solve all three models and evaluate the saving predicates");
    CLI::App* sweep = app.add_subcommand("sweep", "comparison reports over a 1-D parameter grid");
    CLI::App* verify = app.add_subcommand("verify", "run invariant checks at the configured problem");
    for (CLI::App* sub : {solve, compare, sweep, verify}) add_common(sub);
    sweep->add_option("--format", opt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_config_error;
    }
    for (const CLI::Option* o : node_flags) opt.has_nodes = opt.has_nodes || o->count() > 0;
    for (const CLI::Option* o : seed_flags) opt.has_seed = opt.has_seed || o->count() > 0;

    try {
        const RunConfig config = load(opt);
        if (*solve) return emit(cmd_solve(config).dump(2) + "\n", opt, out, err);
        if (*compare) return emit(cmd_compare(config).dump(2) + "\n", opt, out, err);
        if (*sweep) {
            const SweepTable table = run_sweep(config);
            return emit(opt.format == "json" ? sweep_to_json(table).dump(2) + "\n" : sweep_to_csv(table), opt, out, err);
        }
        const VerifyOutcome outcome = cmd_verify(config);
        const int code = emit(outcome.summary.dump(2) + "\n", opt, out, err);
        if (code != exit_ok) return code;
        if (!outcome.passed()) {
            err << "verification failed: " << outcome.summary["first_failure"].get<std::string>() << "\n";
            return exit_verification_failed;
        }
        return exit_ok;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return exit_config_error;
    } catch (const InvalidParameter& e) {
        err << "config error: " << e.what() << "\n";
        return exit_config_error;
    } catch (const nlohmann::json::exception& e) {
        err << "config error: " << e.what() << "\n";
        return exit_config_error;
    } catch (const MeanMismatch& e) {
        err << "mean mismatch: " << e.what() << "\n";
        return exit_mean_mismatch;
    } catch (const Error& e) {
        err << "solver failure: " << e.what() << "\n";
        return exit_solver_failure;
    }
}

} // namespace possave::cli
