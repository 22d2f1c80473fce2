#pragma once

#include "opmodel/serialize.hpp"

namespace opm {

struct Check {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    std::string relation = "<=";  // "<=", ">=" or "==" (booleans carry 1 or 0)
    int margin_used = 0;          // interior margin of truncation-sensitive checks
    bool pass = false;
    std::string note;

    bool operator==(const Check&) const = default;
};

Check at_most(std::string name, double value, double tol, int margin = 0, std::string note = {});
Check at_least(std::string name, double value, double bound, int margin = 0, std::string note = {});
Check holds(std::string name, bool ok, std::string note = {});

struct Report {
    Json meta = Json::object();
    std::vector<Check> checks;
    Json artifacts = Json::object();
    // wall-clock per stage; shown in tables, never in the canonical json
    std::vector<std::pair<std::string, double>> timings_ms;

    bool pass() const;
    // names are unique within a report
    void add(Check c);
    void sort_checks();
    const Check* find(const std::string& name) const;
};

Json report_to_json(const Report& r);
Report report_from_json(const Json& j);

enum class ReportFormat { Json, Table };
ReportFormat report_format_from_string(const std::string& s);
std::string render(const Report& r, ReportFormat format);
// "-" writes to stdout; throws IoError
void emit_report(const Report& r, const std::string& path, ReportFormat format);

}  // namespace opm
