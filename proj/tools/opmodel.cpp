// Command-line front end: runs one pipeline from a JSON config, or prints generated example inputs.
// Exit status: 0 report passed, 1 report failed, 2 bad config or arguments, 3 unreadable or unwritable file.
#include "opmodel/scenario.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

using namespace opm;

namespace {

int exit_code_for(const Error& e) { return e.kind() == "IoError" ? 3 : 2; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"operator model toolkit"};
    app.require_subcommand(0, 1);

    std::string config_path, out = "-", format = "json", pipeline;
    std::optional<int> degree;
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
    app.add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
    app.add_option("--out", out, "report destination, - for stdout");
    app.add_option("--format", format, "json or table")->check(CLI::IsMember({"json", "table"}));
    app.add_option("--pipeline", pipeline, "overrides the config pipeline");
    app.add_option("--degree", degree, "overrides the truncation degree");
    app.add_option("--tol", tol, "overrides tolerances.check_abs");
    app.add_option("--seed", seed, "overrides the seed");

    auto* gen = app.add_subcommand("generate", "print a generated example fragment as JSON");
    std::string kind, params = "{}";
    std::uint64_t gen_seed = 1;
    gen->add_option("kind", kind, "nilpotent, contraction, commuting, identity_series, triangular_automorphism")
        ->required();
    gen->add_option("--seed", gen_seed, "random seed");
    gen->add_option("--params", params, "JSON object, e.g. {\"n\": 2, \"dim\": 3}");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            Json p;
            try {
                p = Json::parse(params);
            } catch (const Json::parse_error& e) {
                fail("SchemaError", std::string("--params is not JSON: ") + e.what());
            }
            std::cout << canonical_dump(generate_examples(kind, gen_seed, p));
            return 0;
        }

        Json j = Json::object();
        std::string base_dir = ".";
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) fail("IoError", "cannot read '" + config_path + "'");
            try {
                j = Json::parse(in);
            } catch (const Json::parse_error& e) {
                fail("SchemaError", "'" + config_path + "' is not valid JSON: " + e.what());
            }
            base_dir = std::filesystem::path(config_path).parent_path().string();
            if (base_dir.empty()) base_dir = ".";
        } else if (pipeline.empty()) {
            fail("SchemaError", "give --config or --pipeline");
        }
        Json overrides = Json::object();
        if (!pipeline.empty()) overrides["pipeline"] = pipeline;
        if (degree) overrides["degree"] = *degree;
        if (seed) overrides["seed"] = *seed;
        if (j.is_object()) {
            for (auto it = overrides.begin(); it != overrides.end(); ++it) j[it.key()] = it.value();
            if (tol) {
                if (!j.contains("tolerances") || !j["tolerances"].is_object()) j["tolerances"] = Json::object();
                j["tolerances"]["check_abs"] = *tol;
                overrides["tolerances.check_abs"] = *tol;
            }
        }
        Report r = run_scenario(config_from_json(j, base_dir));
        r.meta["cli_overrides"] = overrides;
        emit_report(r, out, report_format_from_string(format));
        return r.pass() ? 0 : 1;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return exit_code_for(e);
    }
}
