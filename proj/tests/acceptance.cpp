// Runs the acceptance suite twice and prints one PASS/FAIL line per criterion.
// Exit status 0 iff every criterion passes. An optional argument names a file for the JSON report.
#include "opmodel/acceptance.hpp"
#include "opmodel/scenario.hpp"

#include <cstdio>
#include <iostream>

using namespace opm;

int main(int argc, char** argv) {
    ScenarioConfig cfg = config_from_json({{"pipeline", "suite"}, {"seed", 1}});
    Report first = run_scenario(cfg);
    Report second = run_scenario(cfg);
    std::string bytes = canonical_dump(report_to_json(first));
    bool same = bytes == canonical_dump(report_to_json(second));
    first.add(holds("c14.suite_rerun_identical", same, "canonical JSON of two runs with seed 1"));
    if (argc > 1) emit_report(first, argv[1], ReportFormat::Json);

    bool all = true;
    for (const auto& crit : acceptance_criteria()) {
        bool ok = criterion_pass(first, crit.id);
        all = all && ok;
        int total = 0;
        std::vector<std::string> failed;
        for (const auto& c : first.checks)
            if (c.name.rfind(crit.id + ".", 0) == 0) {
                ++total;
                if (!c.pass) failed.push_back(c.name);
            }
        std::printf("%s %s %s (%d checks", ok ? "PASS" : "FAIL", crit.id.c_str(), crit.title.c_str(), total);
        if (!failed.empty()) {
            std::printf(", failing:");
            for (const auto& f : failed) std::printf(" %s", f.c_str());
        }
        std::printf(")\n");
    }
    std::printf("timings (ms):");
    for (const auto& [stage, t] : first.timings_ms) std::printf(" %s=%.0f", stage.c_str(), t);
    std::printf("\n");
    return all ? 0 : 1;
}
