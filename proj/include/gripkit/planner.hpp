#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gripkit/error.hpp"
#include "gripkit/immobility.hpp"
#include "gripkit/object.hpp"
#include "gripkit/quick_return.hpp"

namespace gripkit::planner {

using geom::Direction2;
using geom::Point2;
using immobility::StateLabel;

struct GraspCandidate {
  StateLabel state = StateLabel::E;
  std::array<int, 3> edges{-1, -1, -1};  // polygon edge per finger, -1 for cylinders
  std::array<Point2, 3> contacts{};      // fingertip centres
  std::array<Direction2, 3> normals{};   // inward edge normals
  double margin = 0.0;                   // smallest clearance to a virtual edge end
  double circumradius = 0.0;
};

struct GripperPose {
  Point2 center;
  double theta = 0.0;  // rad, counterclockwise from +y to the nearest contact
};

struct Plan {
  GripperPose pose;
  GraspCandidate grasp;
};

struct Enumeration {
  std::vector<GraspCandidate> candidates;
  int rejected_too_large = 0;  // circumradius beyond the fingers' reach
  int rejected_other = 0;      // off the edges, too small, colliding, no solution
};

// Geometric C, A and D candidates on the fingertip-offset edges of a
// counterclockwise simple polygon.
Enumeration enumerate_candidates(const geom::Polygon& poly, const quick_return::FingerGeometry& g);

// Preference C > A > D, then larger margin, then lexicographic edge tuple.
std::optional<GraspCandidate> select_plan(std::span<const GraspCandidate> candidates);

// Centroid and orientation of an equilateral contact triangle. Throws
// kMalformedInput if the triangle is not equilateral.
GripperPose gripper_pose(const std::array<Point2, 3>& contacts);

enum class NoPlanCause { kTooLarge, kFrictionOnly };
std::string_view to_string(NoPlanCause c);

class NoPlanError : public Error {
 public:
  NoPlanError(NoPlanCause cause, const std::string& what)
      : Error(ErrorCode::kNoPlan, what), cause_(cause) {}
  NoPlanCause cause() const noexcept { return cause_; }

 private:
  NoPlanCause cause_;
};

// Throws NoPlanError when nothing feasible remains.
Plan plan(const ObjectSpec& obj, const quick_return::FingerGeometry& g);

}  // namespace gripkit::planner
