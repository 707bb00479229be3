#pragma once

#include <string>
#include <vector>

#include "gripkit/ls_cvt.hpp"
#include "gripkit/quick_return.hpp"

namespace gripkit::statics {

using geom::Point2;

// How the rotational plate loads the finger at P_ip.
enum class PinForceModel {
  // Plate force at P_ip is purely tangential to the plate, |f| = tau / r_ip,
  // and the finger is balanced in moment about P_op alone.
  kTangential,
  // Full finger equilibrium: the slot at P_op reacts normal to the pin line,
  // the plate pin carries whatever direction balances, and the plate torque
  // fixes its moment about the centre. Equivalent to virtual work.
  kSlotReaction,
};

struct TipForce {
  double magnitude = 0.0;  // along the outward radial direction of P_ft
  Point2 f_cnt;            // force on the fingertip from the object
  Point2 f_ip;             // force on the finger from the plate pin
  double slot_reaction = 0.0;
};

// Contact force on an object of radius r_ob centred at the gripper centre,
// for plate torque tau_out (N mm). Throws kUnreachableRadius when r_ob + r_ft
// is outside the stroke's radial band and kSingularConfiguration when the
// moment arm vanishes.
TipForce tip_force_detail(const quick_return::FingerGeometry& g, double tau_out, double r_ob,
                          PinForceModel model = PinForceModel::kTangential);
double tip_force(const quick_return::FingerGeometry& g, double tau_out, double r_ob,
                 PinForceModel model = PinForceModel::kTangential);

struct LoadCase {
  double tau_in = 1300.0;  // motor torque, N mm
  double loss_factor = 1.0;
  double r_ob_min = 0.5;
  double r_ob_max = 38.5;
  int n_samples = 77;
  PinForceModel model = PinForceModel::kTangential;

  void validate() const;
};

struct ForceSample {
  double r_ob = 0.0;
  double f_cnt = 0.0;
  double theta_ip = 0.0;
  double theta_out = 0.0;
  double theta_in_v = 0.0;
  double eps_amp = 0.0;
  double tau_out = 0.0;
};

struct ForceProfile {
  LoadCase load;
  std::vector<ForceSample> samples;

  double min_force() const;
  double max_force() const;
  // Header r_ob_mm,f_cnt_N; values to 6 significant digits.
  std::string to_csv() const;
};

// Contact force over object radii with the stopper engaged: the fingertip
// touches at r_ob + r_ft, the plate angle maps to the output link, and the
// amplified motor torque drives the plate.
ForceProfile force_profile(const quick_return::FingerGeometry& finger,
                           const ls_cvt::CvtGeometry& cvt, const LoadCase& load);

struct GripperSpec {
  std::string name;
  double closing_speed = 0.0;  // mm/s
  double tip_force = 0.0;      // N
  double weight = 0.0;         // kg
};

// speed * force / (weight * 1000). Throws kDomain unless all inputs are > 0.
double performance_score(double closing_speed, double tip_force, double weight);
double performance_score(const GripperSpec& spec);

}  // namespace gripkit::statics
