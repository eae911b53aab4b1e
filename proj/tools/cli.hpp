#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lamv::cli {

enum Exit { kOk = 0, kNegative = 1, kUsage = 2, kUnknown = 3, kInternal = 4 };

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lamv::cli
