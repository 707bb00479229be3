#pragma once

#include <array>
#include <functional>
#include <span>
#include <string_view>

#include "gripkit/geom.hpp"
#include "gripkit/object.hpp"

namespace gripkit::immobility {

using geom::Direction2;
using geom::Point2;

// Grasp states. A: two fingers on one edge, one on the antiparallel edge.
// B: two fingers on one edge otherwise. C: three edges forming a triangle
// with both angles at side 1 acute. D: three edges with an antiparallel pair.
// E: any other three-edge triple. F: cylinder held at its centre.
enum class StateLabel { A, B, C, D, E, F };

std::string_view to_string(StateLabel s);
// Lower rank is preferred by the planner: C, A, D, then the rest.
int preference_rank(StateLabel s);

// Angles (rad) between the virtual sides of a triple; s_ij is the interior
// angle where sides i and j meet when the three lines form a triangle.
struct AngleSet {
  double s12 = 0.0;
  double s13 = 0.0;
  double s23 = 0.0;

  double sum() const { return s12 + s13 + s23; }
  bool proper_triangle() const;
};

// pi minus the angle between each pair of inward normals.
AngleSet angles_from_normals(const Direction2& n1, const Direction2& n2, const Direction2& n3);

// Equilateral contact triangle inscribed in the virtual triangle. Canonical
// frame: side 1 runs from V31 at the origin to V12 on +x, the triangle lies
// above it, side 2 runs V12 -> V23 with length l2.
struct StateCSolution {
  double theta1 = 0.0;  // tilt of the contact triangle against side 2
  double l_o2 = 0.0;    // V12 to the side-2 contact
  double l_r = 0.0;     // contact triangle side
  std::array<Point2, 3> triangle{};  // V31, V12, V23
  std::array<Point2, 3> contacts{};  // on sides 1, 2, 3
  std::array<Direction2, 3> normals{};
};

// Throws kNoSolution if no inscribed equilateral triangle of this family
// exists, kInfeasibleContact if its contacts leave the sides, and
// kDegenerateInput for an improper angle set, s12 or s13 >= 90 deg, or l2 <= 0.
StateCSolution solve_state_c(const AngleSet& angles, double l2);

// Lines through the contacts along their normals meet within tol and the
// normals positively span the plane.
bool check_immobility(std::span<const Point2, 3> contacts, std::span<const Direction2, 3> normals,
                      double tol = 1e-6);

// finger_edge[k] indexes the edge finger k touches; at least two distinct
// edges are required (kMalformedInput otherwise).
StateLabel classify_triple(std::span<const geom::VirtualEdge> edges, std::array<int, 3> finger_edge);

// Cylinders within max_radius are state F (kUngraspable beyond); prisms are
// handed to the polygon classifier.
StateLabel classify_object(const ObjectSpec& obj, double max_radius,
                           const std::function<StateLabel(const geom::Polygon&)>& classify_polygon);

}  // namespace gripkit::immobility
