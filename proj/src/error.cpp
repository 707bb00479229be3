#include "gripkit/error.hpp"

namespace gripkit {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDegenerateInput: return "degenerate-input";
    case ErrorCode::kOutOfRange: return "out-of-range";
    case ErrorCode::kUnreachableRadius: return "unreachable-radius";
    case ErrorCode::kDeadPoint: return "dead-point";
    case ErrorCode::kClosureFailure: return "closure-failure";
    case ErrorCode::kFoldPoint: return "fold-point";
    case ErrorCode::kSingularConfiguration: return "singular-configuration";
    case ErrorCode::kMalformedInput: return "malformed-input";
    case ErrorCode::kNoSolution: return "no-solution";
    case ErrorCode::kInfeasibleContact: return "infeasible-contact";
    case ErrorCode::kUngraspable: return "ungraspable";
    case ErrorCode::kNoPlan: return "no-plan";
    case ErrorCode::kEmptyFeasibleSet: return "empty-feasible-set";
    case ErrorCode::kAlignment: return "alignment";
    case ErrorCode::kDomain: return "domain";
  }
  return "unknown";
}

}  // namespace gripkit
