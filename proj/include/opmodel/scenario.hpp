#pragma once

#include "opmodel/report.hpp"

#include <cstdint>
#include <optional>

namespace opm {

// One run of one pipeline, as read from a JSON config file.
struct ScenarioConfig {
    std::string pipeline;
    int n = 0;
    int degree = 0;
    Tolerances tol;
    Json f = "identity";
    Json g;                        // optional claimed inverse, compared against the computed one
    Json tuple;                    // {"matrices": ...} | {"generate": {...}} | {"file": path}
    Json ideal;                    // null: no constraint
    Json params = Json::object();  // pipeline specific
    std::optional<std::uint64_t> seed;
    std::string base_dir = ".";    // tuple files resolve against this

    // the effective config, echoed into report meta; base_dir is left out
    Json to_json() const;
};

const std::vector<std::string>& pipeline_names();

// throws SchemaError for anything malformed
ScenarioConfig config_from_json(const Json& j, const std::string& base_dir = ".");
// throws IoError when unreadable, SchemaError when not JSON
ScenarioConfig load_config(const std::string& path);

// SchemaError propagates; every other failure becomes a failing "<pipeline>.error" check
Report run_scenario(const ScenarioConfig& cfg);

// config fragments for test inputs; each carries a "provenance" note saying how it was drawn.
// kinds: nilpotent, contraction, commuting, identity_series, triangular_automorphism
Json generate_examples(const std::string& kind, std::uint64_t seed, const Json& params);

}  // namespace opm
