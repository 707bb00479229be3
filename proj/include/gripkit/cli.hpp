#pragma once

#include <iosfwd>

#include "gripkit/error.hpp"

namespace gripkit::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kInfeasibleGeometry = 3,
  kNoPlan = 4,
  kEmptySearch = 5,
};

int exit_code_for(ErrorCode code);

// Entry point of the gripkit tool. "-" as an output path means `out`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gripkit::cli
