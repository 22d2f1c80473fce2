#include <doctest.h>

#include "opmodel/scenario.hpp"

#include <filesystem>
#include <fstream>
#include <limits>

using namespace opm;

namespace {

std::string kind_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    return "";
}

Json base(const std::string& pipeline) { return {{"pipeline", pipeline}, {"n", 2}, {"degree", 3}}; }

std::string bytes(const Report& r) { return canonical_dump(report_to_json(r)); }

}  // namespace

TEST_CASE("config schema errors") {
    auto schema_error = [](Json j) { return kind_of([&] { config_from_json(j); }); };
    CHECK(schema_error(Json::array()) == "SchemaError");
    CHECK(schema_error({{"pipeline", "nope"}, {"n", 1}, {"degree", 2}}) == "SchemaError");
    CHECK(schema_error({{"pipeline", "model"}, {"degree", 2}}) == "SchemaError");

    Json j = base("model");
    j["colour"] = "blue";
    CHECK(schema_error(j) == "SchemaError");

    j = base("model");
    j["tolerances"] = {{"check_abs", -1.0}};
    CHECK(schema_error(j) == "SchemaError");
    j["tolerances"] = {{"slack", 1e-3}};
    CHECK(schema_error(j) == "SchemaError");

    j = base("model");
    j["f"] = Json::parse(R"({"components": [{"terms": [{"word": [1, 2, 1, 2], "coeff": 1}]}, {"terms": []}]})");
    CHECK(schema_error(j) == "SchemaError");  // word longer than the degree
    j["f"] = Json::parse(R"({"components": [{"terms": [{"word": [3], "coeff": 1}]}, {"terms": []}]})");
    CHECK(schema_error(j) == "SchemaError");  // letter out of range

    j = base("charfun");
    CHECK(schema_error(j) == "SchemaError");  // no tuple
    j["tuple"] = Json::parse(R"({"matrices": [[[0]]]})");
    CHECK(schema_error(j) == "SchemaError");  // one matrix for n = 2
    j["tuple"] = {{"generate", {{"kind", "nilpotent"}}}};
    CHECK(schema_error(j) == "SchemaError");  // random input without a seed
    j["seed"] = -3;
    CHECK(schema_error(j) == "SchemaError");
    j["seed"] = 3;
    CHECK(schema_error(j).empty());
    j["tuple"] = {{"generate", {{"kind", "spiral"}}}};
    CHECK(schema_error(j) == "SchemaError");

    j = base("variety");
    j["ideal"] = {{"kind", "bogus"}};
    CHECK(schema_error(j) == "SchemaError");

    j = base("model");
    j["n"] = 8;
    j["degree"] = 8;
    CHECK(schema_error(j) == "SchemaError");  // Fock space too large
}

TEST_CASE("canonical report json round trips") {
    // property: parse(dump(r)) dumps to the same bytes and restores every check
    Rng rng(77);
    std::uniform_real_distribution<double> u(-30.0, 30.0);
    std::uniform_int_distribution<int> pick(0, 5);
    for (int trial = 0; trial < 40; ++trial) {
        Report r;
        r.meta = {{"pipeline", "probe"}, {"trial", trial}};
        r.artifacts["vector"] = Json::array({u(rng), 3.0, -0.0});
        int count = pick(rng) + 1;
        for (int k = 0; k < count; ++k) {
            double v = std::pow(10.0, u(rng)) * (k % 2 ? -1.0 : 1.0);
            switch (pick(rng)) {
                case 0: v = std::round(v); break;
                case 1: v = std::numeric_limits<double>::infinity(); break;
                case 2: v = std::nextafter(1.0, 2.0); break;
                default: break;
            }
            r.add(at_most("probe." + std::to_string(trial) + "." + std::to_string(k), v, 1e-8, k, "note"));
        }
        std::string once = bytes(r);
        Report back = report_from_json(Json::parse(once));
        CHECK(bytes(back) == once);
        r.sort_checks();
        CHECK(back.checks == r.checks);
    }
    Report nan;
    nan.add(at_most("nan", std::numeric_limits<double>::quiet_NaN(), 1.0));
    CHECK_FALSE(nan.pass());
    std::string once = bytes(nan);
    CHECK(once.find("\"nan\"") != std::string::npos);
    CHECK(std::isnan(report_from_json(Json::parse(once)).checks[0].value));
}

TEST_CASE("empty report") {
    Report r;
    CHECK(r.pass());
    Json j = report_to_json(r);
    CHECK(j["checks"].empty());
    CHECK(j["pass"].get<bool>());
    CHECK(canonical_dump(j) == canonical_dump(report_to_json(report_from_json(j))));
    CHECK_FALSE(render(r, ReportFormat::Table).empty());
    r.add(holds("x", true));
    CHECK(kind_of([&] { r.add(holds("x", true)); }) == "DuplicateCheck");
}

TEST_CASE("invert pipeline on z + z^2") {
    Json j = Json::parse(R"({"pipeline": "invert", "n": 1, "degree": 6,
        "f": {"components": [{"terms": [{"word": [1], "coeff": 1}, {"word": [1, 1], "coeff": [1, 0]}]}]}})");
    Report r = run_scenario(config_from_json(j));
    CHECK(r.pass());
    REQUIRE(r.find("invert.f_after_g"));
    CHECK(r.find("invert.f_after_g")->value <= 1e-12);
    NcSeriesTuple g = series_tuple_from_json(r.artifacts["g"], 1, 6);
    CHECK(std::abs(g[0].coeff({1, 1, 1, 1}) + 5.0) < 1e-12);
    CHECK(std::abs(g[0].coeff({1, 1, 1, 1, 1}) - 14.0) < 1e-12);
    CHECK(r.meta["pipeline"] == "invert");
    CHECK(r.meta["config_hash"].get<std::string>().size() == 16);

    // a wrong claimed inverse is reported, not thrown
    j["g"] = "identity";
    Report bad = run_scenario(config_from_json(j));
    CHECK_FALSE(bad.pass());
    CHECK_FALSE(bad.find("invert.claimed_inverse_gap")->pass);
}

TEST_CASE("fundamental identity on the zero tuple") {
    Json j = base("fundamental_identity");
    j["tuple"] = Json::parse(R"({"matrices": [[[0, 0], [0, 0]], [[0, 0], [0, 0]]]})");
    Report r = run_scenario(config_from_json(j));
    CHECK(r.pass());
    REQUIRE(r.find("fundamental_identity.residual"));
    CHECK(r.find("fundamental_identity.residual")->value < 1e-12);
    CHECK(r.artifacts["defect_dim"] == 2);
}

TEST_CASE("runtime failures become failing checks") {
    Json j = base("dilate");
    j["tuple"] = Json::parse(R"({"matrices": [[[1]], [[0]]]})");
    Report r = run_scenario(config_from_json(j));
    CHECK_FALSE(r.pass());
    REQUIRE(r.find("dilate.error"));
    CHECK(r.find("dilate.error")->note.rfind("NotPure", 0) == 0);

    j = base("charfun");
    j["tuple"] = Json::parse(R"({"matrices": [[[2]], [[0]]]})");
    Report out = run_scenario(config_from_json(j));
    CHECK_FALSE(out.find("charfun.membership")->pass);
    CHECK(out.checks.size() == 1);
}

TEST_CASE("same config, same bytes") {
    Json gen = generate_examples("triangular_automorphism", 5, {{"n", 3}, {"degree", 4}});
    CHECK(gen.contains("provenance"));
    Json j = {{"pipeline", "invert"}, {"n", 3}, {"degree", 4}, {"f", gen["f"]}, {"g", gen["g"]}};
    auto cfg = config_from_json(j);
    CHECK(bytes(run_scenario(cfg)) == bytes(run_scenario(cfg)));
    CHECK(run_scenario(cfg).pass());

    Json k = base("kernel");
    k["seed"] = 11;
    k["params"] = {{"count", 6}};
    k["ideal"] = {{"kind", "commutator"}};
    k["tuple"] = {{"generate", {{"kind", "commuting"}, {"dim", 2}}}};
    auto kc = config_from_json(k);
    Report a = run_scenario(kc);
    CHECK(a.pass());
    CHECK(bytes(a) == bytes(run_scenario(kc)));
    k["seed"] = 12;
    CHECK(bytes(a) != bytes(run_scenario(config_from_json(k))));
}

TEST_CASE("generated examples and tuple files") {
    CHECK(kind_of([] { generate_examples("spiral", 1, Json::object()); }) == "SchemaError");
    Json frag = generate_examples("nilpotent", 4, {{"n", 2}, {"dim", 2}});
    CHECK(frag["provenance"].get<std::string>().find("seed 4") != std::string::npos);
    CHECK(generate_examples("identity_series", 1, {{"n", 2}})["f"]["components"].size() == 2);

    auto dir = std::filesystem::temp_directory_path() / "opmodel_scenario_test";
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "x.json") << frag.dump();
    std::ofstream(dir / "run.json") << Json{{"pipeline", "reconstruct"}, {"n", 2}, {"degree", 4},
                                            {"tuple", {{"file", "x.json"}}}}.dump();
    Report r = run_scenario(load_config((dir / "run.json").string()));
    CHECK(r.pass());
    CHECK(r.artifacts["dim_X"] == 2);
    CHECK(kind_of([&] { load_config((dir / "missing.json").string()); }) == "IoError");
    std::filesystem::remove_all(dir);
}
