#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "gripkit/ls_cvt.hpp"
#include "gripkit/quick_return.hpp"

namespace gripkit::design_search {

struct Grid {
  double lo = 0.0;
  double hi = 0.0;
  double step = 1.0;

  // lo, lo + step, ... up to hi (inclusive when it lands on the grid).
  std::vector<double> values() const;
  void validate(const std::string& field) const;
};

struct FingerSearchSpace {
  double r_op = 35.0;
  double l_ft = 26.2;
  double r_ft = 3.5;
  Grid r_ip{20.0, 32.0, 0.5};
  Grid phi2_deg{45.0, 70.0, 0.5};
  double envelope_radius = 42.5;
  double min_pin_distance = 8.0;
  double min_graspable_width = 70.0;
  double stroke_reach = 42.0;  // |p_ft| at the open end of the stroke
  double scan_step_deg = 0.05;

  void validate() const;
};

enum class FingerObjective { kPeak, kMean };

struct FingerCell {
  double r_ip = 0.0;
  double phi2_deg = 0.0;
  bool feasible = false;
  std::string reason;  // empty when feasible
  double theta_closed = 0.0;
  double theta_open = 0.0;
  double peak_ratio = 0.0;  // mm/rad over the stroke
  double mean_ratio = 0.0;

  double score(FingerObjective o) const { return o == FingerObjective::kPeak ? peak_ratio : mean_ratio; }
};

struct FingerSearchResult {
  std::vector<FingerCell> cells;  // r_ip major, phi2 minor
  std::size_t best_peak = 0;
  std::size_t best_mean = 0;

  const FingerCell& best(FingerObjective o) const {
    return cells[o == FingerObjective::kPeak ? best_peak : best_mean];
  }
  // param1,param2,score,feasible,score_mean with score the peak ratio.
  std::string to_csv() const;
};

// Stroke of one cell: from the upward crossing of |p_ft| = r_ft after its
// minimum over [0, 180] deg, to where |p_ft| reaches the stroke reach.
FingerCell evaluate_finger(const FingerSearchSpace& space, double r_ip, double phi2_deg);
// Throws kEmptyFeasibleSet when no cell passes.
FingerSearchResult optimize_finger(const FingerSearchSpace& space);

struct CvtLengths {
  double l_in1 = 8.5;
  double l_in2 = 11.0;
  double l_fix = 23.0;
  double l_flt = 24.0;
  double l_out = 9.0;

  bool operator==(const CvtLengths&) const = default;
};

struct CvtSearchSpace {
  Grid l_in1{7.0, 10.0, 0.5};
  Grid l_in2{9.5, 12.5, 0.5};
  Grid l_fix{21.5, 24.5, 0.5};
  Grid l_flt{22.5, 25.5, 0.5};
  Grid l_out{7.5, 10.5, 0.5};
  double stroke_width_deg = 30.5;
  double envelope_radius = 35.0;
  double dead_point_limit_deg = 85.0;  // transmission angles must stay below
  double placement_step_deg = 0.25;
  double sweep_step_deg = 0.5;
  CvtLengths reference;

  void validate() const;
};

struct CvtCell {
  CvtLengths lengths;
  bool feasible = false;
  std::string reason;
  double stroke_start = 0.0;     // output angle at the closed end, rad
  double torque_objective = 0.0;  // l_out / lin_v_min, maximized
  double speed_objective = 0.0;   // l_out / lin_v_max, minimized
  bool pareto = false;
};

struct CvtSearchResult {
  std::vector<CvtCell> cells;
  std::vector<std::size_t> pareto;
  std::optional<std::size_t> reference;  // index of the reference tuple, if on the grid

  bool reference_feasible() const { return reference && cells[*reference].feasible; }
  bool reference_nondominated() const { return reference && cells[*reference].pareto; }
  std::string to_csv() const;
};

// Geometry built from a length tuple with the default branches and
// lin_v range [|l_in1 - l_in2|, l_in1 + l_in2].
ls_cvt::CvtGeometry cvt_from_lengths(const CvtLengths& l);
CvtCell evaluate_cvt(const CvtSearchSpace& space, const CvtLengths& l);
// Throws kEmptyFeasibleSet when no cell passes.
CvtSearchResult optimize_cvt(const CvtSearchSpace& space);

// True if a is at least as good as b in both objectives and better in one.
bool dominates(const CvtCell& a, const CvtCell& b);

// Plate offset that centres the plate stroke [target_lo, target_hi] in the
// stopper-engaged output window. Throws kAlignment if the window is narrower
// than the stroke by more than 1 deg.
double derive_lambda(const ls_cvt::CvtGeometry& g, double target_lo, double target_hi);

}  // namespace gripkit::design_search
