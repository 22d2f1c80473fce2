#pragma once

#include "opmodel/report.hpp"

#include <cstdint>

namespace opm {

struct Criterion {
    std::string id;  // "c01" .. "c14"; checks of a criterion are named "<id>.*"
    std::string title;
};
const std::vector<Criterion>& acceptance_criteria();

// every criterion except c14, which compares two whole runs and lives in the acceptance driver
void acceptance_checks(std::uint64_t seed, Report& report);

// pass iff the criterion has at least one check and all of its checks pass
bool criterion_pass(const Report& report, const std::string& id);

}  // namespace opm
