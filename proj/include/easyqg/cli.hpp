#pragma once

#include <string>
#include <vector>

namespace easyqg::cli {

struct Outcome {
    int exit_code = 0;
    std::string out;  // serialized report (or error object)
};

/// Runs one `wg` invocation; args excludes the program name. Exit codes:
/// 0 success, 1 a `verify` suite found a violation, 2 invalid input.
Outcome run(const std::vector<std::string>& args);

}  // namespace easyqg::cli
