#pragma once

#include <array>

#include "gripkit/geom.hpp"

namespace gripkit::ls_cvt {

using geom::Point2;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
};

// Five-link load-sensitive CVT. Joints: P1 output pivot at the gripper
// centre, P2 motor axis at l_fix along ground_angle, P3 knee between the two
// separated input links, P4 input/floating joint, P5 floating/output joint.
// P2-P4 is the virtual input link of length lin_v.
struct CvtGeometry {
  double l_in1 = 8.5;
  double l_in2 = 11.0;
  double l_fix = 23.0;
  double l_flt = 24.0;
  double l_out = 9.0;
  double lambda = geom::deg_to_rad(4.3);
  double mount_offset = 0.0;  // extra constant in the output -> plate map
  double ground_angle = 0.0;  // direction of P1 -> P2
  double lin_v_max = 19.5;    // separated links collinear (spring rest)
  double lin_v_min = 2.5;     // stopper engaged: links fully folded
  // Assembly branch, as the sign of cross(p24, p45) for the input-side
  // closure and of cross(p45, p15) for the output-side closure.
  int input_branch = 1;
  int output_branch = -1;
  // Side of P2->P4 the knee P3 falls on when the input links fold.
  int knee_side = 1;
  // No-load operating interval of the virtual input link angle.
  Interval theta_in_range;

  // Nominal link lengths with theta_in_range derived from the finger stroke
  // [74.5, 105] deg.
  static CvtGeometry nominal();
  // Field-level checks (lengths, bounds, branch signs). Throws kMalformedInput.
  void validate() const;
  Point2 p1() const { return {0.0, 0.0}; }
  Point2 p2() const;
};

enum class LoadMode { kNoLoad, kStopperEngaged };

struct CvtState {
  LoadMode mode = LoadMode::kNoLoad;
  double theta_in_v = 0.0;
  double theta_out = 0.0;
  double lin_v = 0.0;
  double theta1 = 0.0;  // input transmission angle
  double theta2 = 0.0;  // output transmission angle
  double eps_amp = 0.0;
  std::array<Point2, 5> joints{};  // P1..P5

  // |(p24 + p45) - (p21 + p15)|
  double closure_residual() const;
};

struct Ratios {
  double torque = 0.0;  // tau_out / tau_in
  double speed = 0.0;   // omega_out / omega_in
};

// Ideal transmission ratios from the virtual input length, output length and
// the two transmission angles. Throws kDeadPoint when either cosine vanishes.
Ratios ideal_ratios(double lin_v, double l_out, double theta1, double theta2);

double lin_v_for(const CvtGeometry& g, LoadMode mode);

// Output link angle for a virtual input angle (four-bar closure).
// kClosureFailure if the links cannot meet, kFoldPoint at a tangency.
double solve_output_angle(const CvtGeometry& g, double theta_in_v, double lin_v);
// Virtual input angle that holds the output link at theta_out.
double solve_input_angle(const CvtGeometry& g, double theta_out, double lin_v);

// Torque amplification (e_n45 . p15) / (e_n45 . p24) at a virtual input angle.
double amplification_ratio(const CvtGeometry& g, double theta_in_v, double lin_v);

// Full state from the input side, or from the output side.
CvtState state_from_input(const CvtGeometry& g, double theta_in_v, LoadMode mode);
CvtState state_from_output(const CvtGeometry& g, double theta_out, LoadMode mode);

// Output link -> rotational plate angle.
double plate_angle(const CvtGeometry& g, double theta_out);
double output_angle_for_plate(const CvtGeometry& g, double theta_ip);

// No-load input interval that drives the plate over [plate_lo, plate_hi].
Interval operating_input_range(const CvtGeometry& g, double plate_lo, double plate_hi);

// Output angles at which the linkage assembles on its branch with the given
// virtual input length. Throws kAlignment when the output link turns fully
// (no bounded window) and kClosureFailure when it never assembles.
Interval output_window(const CvtGeometry& g, double lin_v);

// Throws kClosureFailure (or kFoldPoint) if either load mode fails to
// assemble somewhere on the plate range, sampled every step (rad).
void verify_assembly(const CvtGeometry& g, double plate_lo, double plate_hi, double step);

// Smallest amplification over the plate range sampled every step (rad) with
// the stopper engaged.
double min_amplification(const CvtGeometry& g, double plate_lo, double plate_hi, double step);

// Largest lin_v in [|l_in1 - l_in2|, lin_v_max] keeping the stopper-engaged
// amplification above threshold across the plate range.
double calibrate_lin_v_min(const CvtGeometry& g, double plate_lo, double plate_hi,
                           double threshold, double step);

}  // namespace gripkit::ls_cvt
