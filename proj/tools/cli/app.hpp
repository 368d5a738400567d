// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cubicpt::cli {

// Exit codes: 0 all budgets met, 1 failed check or usage error, 2 precision ceiling,
// 3 solver failure, 4 geometry failure.
enum ExitCode { kOk = 0, kFailed = 1, kPrecision = 2, kSolver = 3, kGeometry = 4 };

// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cubicpt::cli
