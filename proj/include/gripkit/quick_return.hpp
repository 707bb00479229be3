#pragma once

#include <vector>

#include "gripkit/geom.hpp"

namespace gripkit::quick_return {

using geom::Point2;

// One finger unit in its own frame: the base pin P_op sits on +y at r_op, the
// plate pin P_ip orbits the gripper centre at r_ip, and the fingertip centre
// P_ft is rigidly offset l_ft from P_ip at angle phi2 to the pin-to-pin line.
// The other two fingers are the same unit rotated by +-120 degrees.
struct FingerGeometry {
  double r_op = 35.0;
  double r_ip = 26.0;
  double l_ft = 26.2;
  double phi2 = geom::deg_to_rad(58.0);
  double r_ft = 3.5;
  double theta_closed = geom::deg_to_rad(74.5);
  double theta_open = geom::deg_to_rad(105.0);

  static FingerGeometry nominal() { return {}; }
  // Throws kMalformedInput naming the offending field.
  void validate() const;
};

enum class AngleWindow {
  kStroke,  // [theta_closed, theta_open]
  kScan,    // [0, 180] degrees, for design scans
};

// Intermediate points of the finger linkage at one plate angle.
struct FingerPose {
  double theta_ip = 0.0;
  Point2 p_ip;
  Point2 p_op;
  Point2 p_op_ip;  // p_ip - p_op
  double phi1 = 0.0;
  Point2 p_ft;
};

struct FingertipSample {
  double theta_ip = 0.0;
  Point2 p_ft;
  double radial_distance = 0.0;
  double speed_ratio = 0.0;  // mm/rad
};

inline constexpr double kSpeedRatioStep = 1e-6;  // rad

FingerPose finger_pose(const FingerGeometry& g, double theta_ip,
                       AngleWindow window = AngleWindow::kStroke);
Point2 fingertip_position(const FingerGeometry& g, double theta_ip,
                          AngleWindow window = AngleWindow::kStroke);
// |d p_ft / d theta_ip| by central difference.
double speed_ratio(const FingerGeometry& g, double theta_ip,
                   AngleWindow window = AngleWindow::kStroke);
// d |p_ft| / d theta_ip by central difference.
double radial_rate(const FingerGeometry& g, double theta_ip,
                   AngleWindow window = AngleWindow::kStroke);
FingertipSample sample(const FingerGeometry& g, double theta_ip,
                       AngleWindow window = AngleWindow::kStroke);
// Evenly spaced over the stroke, endpoints included.
std::vector<FingertipSample> trajectory(const FingerGeometry& g, int n_samples);

// Plate angle at which the fingertip centre is d from the gripper centre.
// Throws kUnreachableRadius outside the stroke's radial band.
double theta_for_radius(const FingerGeometry& g, double d);

struct RadialBand {
  double min = 0.0;  // |p_ft| at theta_closed
  double max = 0.0;  // |p_ft| at theta_open
};
RadialBand reach_band(const FingerGeometry& g);
// 2 * (|p_ft(open)| - r_ft).
double graspable_width(const FingerGeometry& g);
// Largest cylinder radius the fingers can close on.
double max_object_radius(const FingerGeometry& g);

// Position of finger k's fingertip (k = 0, 1, 2) in the gripper frame.
Point2 to_gripper_frame(const Point2& p_in_finger_frame, int finger_index);

}  // namespace gripkit::quick_return
