#include "gripkit/ls_cvt.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "gripkit/error.hpp"

namespace gripkit::ls_cvt {

namespace {

using geom::cross;
using geom::dot;
using geom::perp;

constexpr double kDeadCos = 1e-9;

Point2 unit(double angle) { return {std::cos(angle), std::sin(angle)}; }

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

std::string deg(double rad) { return std::to_string(geom::rad_to_deg(rad)); }

// Picks the intersection point whose branch test matches `want`.
template <typename BranchSign>
Point2 pick_branch(const std::vector<Point2>& pts, int want, BranchSign branch_sign,
                   const std::string& where) {
  if (pts.empty()) throw Error(ErrorCode::kClosureFailure, where + ": links cannot close");
  if (pts.size() == 1) throw Error(ErrorCode::kFoldPoint, where + ": linkage at a fold point");
  for (const Point2& p : pts) {
    if (branch_sign(p) == want) return p;
  }
  throw Error(ErrorCode::kClosureFailure, where + ": configured branch not available");
}

Point2 p4_for_output(const CvtGeometry& g, double theta_out, double lin_v) {
  const Point2 p2 = g.p2();
  const Point2 p5 = unit(theta_out) * g.l_out;
  const auto pts = geom::circle_circle_intersection(p2, lin_v, p5, g.l_flt);
  return pick_branch(
      pts, g.input_branch, [&](const Point2& p4) { return sign_of(cross(p4 - p2, p5 - p4)); },
      "output angle " + deg(theta_out) + " deg");
}

Point2 p5_for_input(const CvtGeometry& g, double theta_in_v, double lin_v) {
  const Point2 p4 = g.p2() + unit(theta_in_v) * lin_v;
  const auto pts = geom::circle_circle_intersection(g.p1(), g.l_out, p4, g.l_flt);
  return pick_branch(
      pts, g.output_branch, [&](const Point2& p5) { return sign_of(cross(p5 - p4, p5)); },
      "input angle " + deg(theta_in_v) + " deg");
}

Point2 knee(const CvtGeometry& g, const Point2& p4) {
  const Point2 p2 = g.p2();
  const auto pts = geom::circle_circle_intersection(p2, g.l_in1, p4, g.l_in2);
  if (pts.empty()) throw Error(ErrorCode::kClosureFailure, "input links cannot reach P4");
  if (pts.size() == 1) return pts.front();
  return sign_of(cross(p4 - p2, pts[0] - p2)) == g.knee_side ? pts[0] : pts[1];
}

CvtState build_state(const CvtGeometry& g, const Point2& p4, const Point2& p5, double lin_v,
                     LoadMode mode) {
  CvtState s;
  s.mode = mode;
  s.lin_v = lin_v;
  const Point2 p2 = g.p2();
  const Point2 p24 = p4 - p2;
  const Point2 p45 = p5 - p4;
  const Point2 p15 = p5;
  s.theta_in_v = std::atan2(p24.y, p24.x);
  s.theta_out = std::atan2(p15.y, p15.x);
  const Point2 e_n = perp(p45) / g.l_flt;
  const double num = dot(e_n, p15);
  const double den = dot(e_n, p24);
  if (std::abs(den) < 1e-12 || std::abs(num) < 1e-12) {
    throw Error(ErrorCode::kDeadPoint, "floating link normal to a crank at input angle " +
                                           deg(s.theta_in_v) + " deg");
  }
  s.eps_amp = num / den;
  s.theta1 = std::acos(std::clamp(den / lin_v, -1.0, 1.0));
  s.theta2 = std::acos(std::clamp(num / g.l_out, -1.0, 1.0));
  s.joints = {g.p1(), p2, knee(g, p4), p4, p5};
  return s;
}

}  // namespace

CvtGeometry CvtGeometry::nominal() {
  CvtGeometry g;
  g.theta_in_range =
      operating_input_range(g, geom::deg_to_rad(74.5), geom::deg_to_rad(105.0));
  return g;
}

Point2 CvtGeometry::p2() const { return unit(ground_angle) * l_fix; }

void CvtGeometry::validate() const {
  const auto positive = [](double v, const char* field) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::kMalformedInput, std::string("cvt.") + field + " must be > 0");
    }
  };
  positive(l_in1, "l_in1_mm");
  positive(l_in2, "l_in2_mm");
  positive(l_fix, "l_fix_mm");
  positive(l_flt, "l_flt_mm");
  positive(l_out, "l_out_mm");
  positive(lin_v_min, "lin_v_min_mm");
  positive(lin_v_max, "lin_v_max_mm");
  if (!std::isfinite(lambda) || !std::isfinite(mount_offset) || !std::isfinite(ground_angle)) {
    throw Error(ErrorCode::kMalformedInput, "cvt angles must be finite");
  }
  if (lin_v_max > l_in1 + l_in2 + geom::kLengthTol) {
    throw Error(ErrorCode::kMalformedInput, "cvt.lin_v_max_mm exceeds l_in1_mm + l_in2_mm");
  }
  if (lin_v_min < std::abs(l_in1 - l_in2) - geom::kLengthTol) {
    throw Error(ErrorCode::kMalformedInput, "cvt.lin_v_min_mm below |l_in1_mm - l_in2_mm|");
  }
  if (!(lin_v_min < lin_v_max)) {
    throw Error(ErrorCode::kMalformedInput, "cvt.lin_v_min_mm must be below cvt.lin_v_max_mm");
  }
  for (const auto& [v, field] : {std::pair{input_branch, "cvt.input_branch"},
                                 std::pair{output_branch, "cvt.output_branch"},
                                 std::pair{knee_side, "cvt.knee_side"}}) {
    if (v != 1 && v != -1) throw Error(ErrorCode::kMalformedInput, std::string(field) + " must be +1 or -1");
  }
  if (!(theta_in_range.lo < theta_in_range.hi)) {
    throw Error(ErrorCode::kMalformedInput, "cvt.theta_in_range_deg must be an increasing pair");
  }
}

double CvtState::closure_residual() const {
  const Point2 p24 = joints[3] - joints[1];
  const Point2 p45 = joints[4] - joints[3];
  const Point2 p21 = joints[0] - joints[1];
  const Point2 p15 = joints[4] - joints[0];
  return ((p24 + p45) - (p21 + p15)).norm();
}

Ratios ideal_ratios(double lin_v, double l_out, double theta1, double theta2) {
  const double c1 = std::cos(theta1);
  const double c2 = std::cos(theta2);
  if (std::abs(c1) < kDeadCos || std::abs(c2) < kDeadCos) {
    throw Error(ErrorCode::kDeadPoint, "transmission angle at 90 deg");
  }
  if (!(lin_v > 0.0) || !(l_out > 0.0)) throw Error(ErrorCode::kDomain, "link lengths must be > 0");
  const double torque = l_out * c2 / (lin_v * c1);
  return {torque, 1.0 / torque};
}

double lin_v_for(const CvtGeometry& g, LoadMode mode) {
  return mode == LoadMode::kNoLoad ? g.lin_v_max : g.lin_v_min;
}

double solve_output_angle(const CvtGeometry& g, double theta_in_v, double lin_v) {
  const Point2 p5 = p5_for_input(g, theta_in_v, lin_v);
  return std::atan2(p5.y, p5.x);
}

double solve_input_angle(const CvtGeometry& g, double theta_out, double lin_v) {
  const Point2 p24 = p4_for_output(g, theta_out, lin_v) - g.p2();
  return std::atan2(p24.y, p24.x);
}

double amplification_ratio(const CvtGeometry& g, double theta_in_v, double lin_v) {
  const Point2 p4 = g.p2() + unit(theta_in_v) * lin_v;
  const Point2 p5 = p5_for_input(g, theta_in_v, lin_v);
  const Point2 e_n = perp(p5 - p4) / g.l_flt;
  const double den = dot(e_n, p4 - g.p2());
  if (std::abs(den) < 1e-12) {
    throw Error(ErrorCode::kDeadPoint, "input crank at a dead point, input angle " + deg(theta_in_v));
  }
  return dot(e_n, p5) / den;
}

CvtState state_from_input(const CvtGeometry& g, double theta_in_v, LoadMode mode) {
  const double lin_v = lin_v_for(g, mode);
  const Point2 p4 = g.p2() + unit(theta_in_v) * lin_v;
  return build_state(g, p4, p5_for_input(g, theta_in_v, lin_v), lin_v, mode);
}

CvtState state_from_output(const CvtGeometry& g, double theta_out, LoadMode mode) {
  const double lin_v = lin_v_for(g, mode);
  const Point2 p4 = p4_for_output(g, theta_out, lin_v);
  return build_state(g, p4, unit(theta_out) * g.l_out, lin_v, mode);
}

double plate_angle(const CvtGeometry& g, double theta_out) {
  return theta_out + g.lambda + g.mount_offset;
}

double output_angle_for_plate(const CvtGeometry& g, double theta_ip) {
  return theta_ip - g.lambda - g.mount_offset;
}

Interval operating_input_range(const CvtGeometry& g, double plate_lo, double plate_hi) {
  const double a = solve_input_angle(g, output_angle_for_plate(g, plate_lo), g.lin_v_max);
  const double b = solve_input_angle(g, output_angle_for_plate(g, plate_hi), g.lin_v_max);
  return {std::min(a, b), std::max(a, b)};
}

Interval output_window(const CvtGeometry& g, double lin_v) {
  // |P5 - P2|^2 = l_out^2 + l_fix^2 - 2 l_out l_fix cos(a), a measured from the
  // ground line, must lie within [(l_flt - lin_v)^2, (l_flt + lin_v)^2].
  const double k = 2.0 * g.l_out * g.l_fix;
  const double base = g.l_out * g.l_out + g.l_fix * g.l_fix;
  const double far = g.l_flt + lin_v;
  const double near = std::abs(g.l_flt - lin_v);
  const double cos_lo = (base - far * far) / k;
  const double cos_hi = (base - near * near) / k;
  if (cos_lo > 1.0 || cos_hi < -1.0) {
    throw Error(ErrorCode::kClosureFailure, "linkage does not assemble for any output angle");
  }
  if (cos_lo <= -1.0 || cos_hi >= 1.0) {
    throw Error(ErrorCode::kAlignment, "output window is not bounded; stroke placement undetermined");
  }
  const double a_lo = std::acos(cos_hi);
  const double a_hi = std::acos(cos_lo);
  // The two mirror windows carry opposite output branches; keep ours.
  const Interval upper{g.ground_angle + a_lo, g.ground_angle + a_hi};
  const Interval lower{g.ground_angle - a_hi, g.ground_angle - a_lo};
  const Point2 p2 = g.p2();
  const Point2 p5 = unit(upper.mid()) * g.l_out;
  const auto pts = geom::circle_circle_intersection(p2, lin_v, p5, g.l_flt);
  if (pts.empty()) throw Error(ErrorCode::kClosureFailure, "output window probe failed");
  return sign_of(cross(p5 - pts.front(), p5)) == g.output_branch ? upper : lower;
}

void verify_assembly(const CvtGeometry& g, double plate_lo, double plate_hi, double step) {
  const int n = std::max(1, static_cast<int>(std::ceil((plate_hi - plate_lo) / step)));
  for (int i = 0; i <= n; ++i) {
    const double t = output_angle_for_plate(g, plate_lo + (plate_hi - plate_lo) * i / n);
    state_from_output(g, t, LoadMode::kNoLoad);
    state_from_output(g, t, LoadMode::kStopperEngaged);
  }
}

double min_amplification(const CvtGeometry& g, double plate_lo, double plate_hi, double step) {
  const int n = std::max(1, static_cast<int>(std::ceil((plate_hi - plate_lo) / step)));
  double lowest = INFINITY;
  for (int i = 0; i <= n; ++i) {
    const double t = output_angle_for_plate(g, plate_lo + (plate_hi - plate_lo) * i / n);
    lowest = std::min(lowest, state_from_output(g, t, LoadMode::kStopperEngaged).eps_amp);
  }
  return lowest;
}

double calibrate_lin_v_min(const CvtGeometry& g, double plate_lo, double plate_hi,
                           double threshold, double step) {
  const auto ok = [&](double lin_v) {
    CvtGeometry h = g;
    h.lin_v_min = lin_v;
    try {
      return min_amplification(h, plate_lo, plate_hi, step) > threshold;
    } catch (const Error&) {
      return false;
    }
  };
  double lo = std::max(std::abs(g.l_in1 - g.l_in2), 1e-6);
  double hi = g.lin_v_max;
  if (!ok(lo)) {
    throw Error(ErrorCode::kNoSolution, "no stopper length keeps the amplification above " +
                                            std::to_string(threshold));
  }
  if (ok(hi)) return hi;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace gripkit::ls_cvt
