#pragma once

#include <string>
#include <vector>

namespace reflectra::report {

enum class Status { Pass, Fail, Skip };

std::string to_string(Status s);

struct CheckResult {
    std::string check;   // <module>.<short-name>
    std::string anchor;  // statement being exercised
    Status status = Status::Skip;
    double observed = 0.0;
    double tolerance = 0.0;
    std::string detail;
    double runtime_ms = 0.0;
};

struct VerifyReport {
    std::vector<CheckResult> checks;

    bool passed() const;  // no failures
    std::size_t count(Status s) const;
    // Deterministic JSON; runtime_ms is included only when requested.
    std::string to_json(bool timings = false) const;
};

}  // namespace reflectra::report
