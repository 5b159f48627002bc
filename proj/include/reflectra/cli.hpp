#pragma once

#include <string>
#include <vector>

#include "reflectra/chebli.hpp"
#include "reflectra/sampled.hpp"

namespace reflectra::cli {

// Exit codes: 0 success, 1 failed checks or numerical failure, 2 usage or
// configuration error.
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args);

// A family block given inline ("{...}") or as a path to a JSON file holding
// either the block itself or a run config with a "family" member.
chebli::ChebliFamily load_family(const std::string& spec);

// CSV with header x,re[,im] on a symmetric uniform grid.
SampledFunction read_grid_csv(const std::string& path);
void write_grid_csv(const std::string& path, const SampledFunction& f, const std::string& first = "x");

}  // namespace reflectra::cli
