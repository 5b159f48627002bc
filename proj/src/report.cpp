#include "reflectra/report.hpp"

#include <cmath>

#include <json.hpp>

namespace reflectra::report {

std::string to_string(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::Skip: return "skip";
    }
    return "skip";
}

bool VerifyReport::passed() const { return count(Status::Fail) == 0; }

std::size_t VerifyReport::count(Status s) const {
    std::size_t n = 0;
    for (const auto& c : checks) n += c.status == s ? 1 : 0;
    return n;
}

namespace {

nlohmann::ordered_json number(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return nullptr;
    return v > 0 ? "inf" : "-inf";
}

}  // namespace

std::string VerifyReport::to_json(bool timings) const {
    nlohmann::ordered_json out;
    out["summary"] = {{"pass", count(Status::Pass)}, {"fail", count(Status::Fail)}, {"skip", count(Status::Skip)}};
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json j;
        j["check"] = c.check;
        j["anchor"] = c.anchor;
        j["status"] = to_string(c.status);
        j["observed"] = number(c.observed);
        j["tolerance"] = number(c.tolerance);
        if (!c.detail.empty()) j["detail"] = c.detail;
        if (timings) j["runtime_ms"] = std::round(c.runtime_ms);
        arr.push_back(std::move(j));
    }
    out["checks"] = std::move(arr);
    return out.dump(2) + "\n";
}

}  // namespace reflectra::report
