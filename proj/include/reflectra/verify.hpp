#pragma once

#include <string>
#include <vector>

#include "reflectra/chebli.hpp"
#include "reflectra/report.hpp"

namespace reflectra::verify {

struct NumericBlock {
    double xmax = 8.0;
    double step = 1.0 / 64.0;
    double lmax = 40.0;
    double tol = 1e-6;
};

// Throws ConfigError when the block is inconsistent.
void validate(const NumericBlock& n);

struct VerifyConfig {
    chebli::ChebliFamily family;
    double eps = 0.0;
    NumericBlock numeric{};
    // Multiplies the spectral density inside the Plancherel check only.
    double density_scale = 1.0;
};

struct CheckInfo {
    std::string id;
    std::string anchor;
};

// Registered checks in execution order.
const std::vector<CheckInfo>& registry();

report::VerifyReport verify_suite(const VerifyConfig& cfg);

}  // namespace reflectra::verify
