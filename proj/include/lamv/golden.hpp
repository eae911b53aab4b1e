#pragma once

#include <string>
#include <vector>

namespace lamv {

struct GoldenCase {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Runs every worked example the workbench reproduces.
std::vector<GoldenCase> run_golden_suite();

}  // namespace lamv
