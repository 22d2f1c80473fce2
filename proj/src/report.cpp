#include "opmodel/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

namespace opm {

Check at_most(std::string name, double value, double tol, int margin, std::string note) {
    return {std::move(name), value, tol, "<=", margin, value <= tol, std::move(note)};
}

Check at_least(std::string name, double value, double bound, int margin, std::string note) {
    return {std::move(name), value, bound, ">=", margin, value >= bound, std::move(note)};
}

Check holds(std::string name, bool ok, std::string note) {
    return {std::move(name), ok ? 1.0 : 0.0, 1.0, "==", 0, ok, std::move(note)};
}

bool Report::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

void Report::add(Check c) {
    if (find(c.name)) fail("DuplicateCheck", "check '" + c.name + "' recorded twice");
    checks.push_back(std::move(c));
}

void Report::sort_checks() {
    std::sort(checks.begin(), checks.end(), [](const Check& a, const Check& b) { return a.name < b.name; });
}

const Check* Report::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

namespace {

Json number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

double number_from(const Json& j) {
    if (j.is_string()) {
        auto s = j.get<std::string>();
        if (s == "nan") return std::nan("");
        if (s == "inf") return INFINITY;
        if (s == "-inf") return -INFINITY;
    }
    if (!j.is_number()) fail("SchemaError", "expected a number");
    return j.get<double>();
}

}  // namespace

Json report_to_json(const Report& r) {
    Report sorted = r;
    sorted.sort_checks();
    Json checks = Json::array();
    for (const auto& c : sorted.checks)
        checks.push_back({{"name", c.name},
                          {"value", number(c.value)},
                          {"tolerance", number(c.tolerance)},
                          {"relation", c.relation},
                          {"margin_used", c.margin_used},
                          {"pass", c.pass},
                          {"note", c.note}});
    return {{"meta", r.meta}, {"checks", checks}, {"artifacts", r.artifacts}, {"pass", r.pass()}};
}

Report report_from_json(const Json& j) {
    Report r;
    try {
        r.meta = j.at("meta");
        r.artifacts = j.at("artifacts");
        for (const auto& c : j.at("checks")) {
            Check k;
            k.name = c.at("name").get<std::string>();
            k.value = number_from(c.at("value"));
            k.tolerance = number_from(c.at("tolerance"));
            k.relation = c.at("relation").get<std::string>();
            k.margin_used = c.at("margin_used").get<int>();
            k.pass = c.at("pass").get<bool>();
            k.note = c.at("note").get<std::string>();
            r.add(std::move(k));
        }
    } catch (const Json::exception& e) {
        fail("SchemaError", std::string("malformed report: ") + e.what());
    }
    return r;
}

ReportFormat report_format_from_string(const std::string& s) {
    if (s == "json") return ReportFormat::Json;
    if (s == "table") return ReportFormat::Table;
    fail("SchemaError", "unknown report format '" + s + "'");
}

namespace {

std::string render_table(const Report& r) {
    Report sorted = r;
    sorted.sort_checks();
    std::size_t width = 5;
    for (const auto& c : sorted.checks) width = std::max(width, c.name.size());
    std::string out;
    char line[512];
    std::snprintf(line, sizeof line, "%-*s  %-12s %-2s %-12s %6s  %s\n", static_cast<int>(width), "check", "value", "",
                  "tolerance", "margin", "result");
    out += line;
    for (const auto& c : sorted.checks) {
        std::snprintf(line, sizeof line, "%-*s  %-12.4g %-2s %-12.4g %6d  %s", static_cast<int>(width), c.name.c_str(),
                      c.value, c.relation.c_str(), c.tolerance, c.margin_used, c.pass ? "PASS" : "FAIL");
        out += line;
        if (!c.note.empty()) out += "  (" + c.note + ")";
        out += "\n";
    }
    out += std::string("overall: ") + (r.pass() ? "PASS" : "FAIL") + " (" + std::to_string(r.checks.size()) + " checks)\n";
    for (const auto& [stage, ms] : r.timings_ms) {
        std::snprintf(line, sizeof line, "time %-20s %10.1f ms\n", stage.c_str(), ms);
        out += line;
    }
    return out;
}

}  // namespace

std::string render(const Report& r, ReportFormat format) {
    return format == ReportFormat::Json ? canonical_dump(report_to_json(r)) : render_table(r);
}

void emit_report(const Report& r, const std::string& path, ReportFormat format) {
    std::string text = render(r, format);
    if (path == "-") {
        std::cout << text << std::flush;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) fail("IoError", "cannot open '" + path + "' for writing");
    out << text;
    if (!out) fail("IoError", "write to '" + path + "' failed");
}

}  // namespace opm
