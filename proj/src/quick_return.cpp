#include "gripkit/quick_return.hpp"

#include <cmath>
#include <string>

#include "gripkit/error.hpp"
#include "gripkit/numeric.hpp"

namespace gripkit::quick_return {

namespace {

void require_positive(double v, const char* field) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw Error(ErrorCode::kMalformedInput, std::string("finger.") + field + " must be > 0");
  }
}

void check_window(const FingerGeometry& g, double theta, AngleWindow window) {
  if (!std::isfinite(theta)) throw Error(ErrorCode::kOutOfRange, "plate angle is not finite");
  double lo = 0.0, hi = std::numbers::pi;
  if (window == AngleWindow::kStroke) {
    lo = g.theta_closed;
    hi = g.theta_open;
  }
  if (theta < lo - geom::kAngleTol || theta > hi + geom::kAngleTol) {
    throw Error(ErrorCode::kOutOfRange,
                "plate angle " + std::to_string(geom::rad_to_deg(theta)) + " deg outside [" +
                    std::to_string(geom::rad_to_deg(lo)) + ", " +
                    std::to_string(geom::rad_to_deg(hi)) + "] deg");
  }
}

FingerPose pose_unchecked(const FingerGeometry& g, double theta) {
  FingerPose p;
  p.theta_ip = theta;
  p.p_ip = Point2{std::cos(theta), std::sin(theta)} * g.r_ip;
  p.p_op = Point2{0.0, g.r_op};
  p.p_op_ip = p.p_ip - p.p_op;
  // Direction of the pin-to-pin line taken from P_ip towards P_op. The
  // two-argument form keeps the quadrant across theta_ip = 90 deg.
  p.phi1 = std::atan2(-p.p_op_ip.y, -p.p_op_ip.x);
  p.p_ft = p.p_ip - Point2{std::cos(p.phi1 - g.phi2), std::sin(p.phi1 - g.phi2)} * g.l_ft;
  return p;
}

}  // namespace

void FingerGeometry::validate() const {
  require_positive(r_op, "r_op_mm");
  require_positive(r_ip, "r_ip_mm");
  require_positive(l_ft, "l_ft_mm");
  require_positive(r_ft, "r_ft_mm");
  if (!std::isfinite(phi2)) throw Error(ErrorCode::kMalformedInput, "finger.phi2_deg must be finite");
  if (!(theta_closed < theta_open)) {
    throw Error(ErrorCode::kMalformedInput,
                "finger.theta_ip_closed_deg must be below finger.theta_ip_open_deg");
  }
  if (!(std::abs(r_op - r_ip) < l_ft)) {
    throw Error(ErrorCode::kMalformedInput, "finger.l_ft_mm must exceed |r_op - r_ip|");
  }
}

FingerPose finger_pose(const FingerGeometry& g, double theta_ip, AngleWindow window) {
  check_window(g, theta_ip, window);
  return pose_unchecked(g, theta_ip);
}

Point2 fingertip_position(const FingerGeometry& g, double theta_ip, AngleWindow window) {
  return finger_pose(g, theta_ip, window).p_ft;
}

double speed_ratio(const FingerGeometry& g, double theta_ip, AngleWindow window) {
  check_window(g, theta_ip, window);
  const double h = kSpeedRatioStep;
  const Point2 d = (pose_unchecked(g, theta_ip + h).p_ft - pose_unchecked(g, theta_ip - h).p_ft) /
                   (2.0 * h);
  return d.norm();
}

double radial_rate(const FingerGeometry& g, double theta_ip, AngleWindow window) {
  check_window(g, theta_ip, window);
  return numeric::central_difference(
      [&](double t) { return pose_unchecked(g, t).p_ft.norm(); }, theta_ip, kSpeedRatioStep);
}

FingertipSample sample(const FingerGeometry& g, double theta_ip, AngleWindow window) {
  const Point2 p = fingertip_position(g, theta_ip, window);
  return {theta_ip, p, p.norm(), speed_ratio(g, theta_ip, window)};
}

std::vector<FingertipSample> trajectory(const FingerGeometry& g, int n_samples) {
  if (n_samples < 2) throw Error(ErrorCode::kDomain, "trajectory needs at least 2 samples");
  std::vector<FingertipSample> out;
  out.reserve(static_cast<std::size_t>(n_samples));
  for (int i = 0; i < n_samples; ++i) {
    const double t = i == n_samples - 1
                         ? g.theta_open
                         : g.theta_closed + (g.theta_open - g.theta_closed) * i / (n_samples - 1);
    out.push_back(sample(g, t));
  }
  return out;
}

RadialBand reach_band(const FingerGeometry& g) {
  return {pose_unchecked(g, g.theta_closed).p_ft.norm(), pose_unchecked(g, g.theta_open).p_ft.norm()};
}

double graspable_width(const FingerGeometry& g) { return 2.0 * (reach_band(g).max - g.r_ft); }

double max_object_radius(const FingerGeometry& g) { return reach_band(g).max - g.r_ft; }

double theta_for_radius(const FingerGeometry& g, double d) {
  const RadialBand band = reach_band(g);
  if (!(d >= band.min - geom::kLengthTol && d <= band.max + geom::kLengthTol)) {
    throw Error(ErrorCode::kUnreachableRadius,
                "radial distance " + std::to_string(d) + " mm outside reachable band [" +
                    std::to_string(band.min) + ", " + std::to_string(band.max) + "] mm");
  }
  const auto residual = [&](double t) { return pose_unchecked(g, t).p_ft.norm() - d; };
  const auto root = numeric::bisect_secant(residual, g.theta_closed, g.theta_open, 1e-4, 1e-9);
  if (!root) {
    throw Error(ErrorCode::kUnreachableRadius, "radial map is not monotone over the stroke");
  }
  return *root;
}

Point2 to_gripper_frame(const Point2& p, int finger_index) {
  return geom::rotate(p, geom::deg_to_rad(120.0) * finger_index);
}

}  // namespace gripkit::quick_return
