#include "gripkit/statics.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "gripkit/error.hpp"
#include "gripkit/report.hpp"

namespace gripkit::statics {

namespace {

using geom::cross;
using geom::dot;

// Dense 4x4 solve with partial pivoting; false when singular.
bool solve4(std::array<std::array<double, 5>, 4>& m, std::array<double, 4>& x) {
  for (int c = 0; c < 4; ++c) {
    int piv = c;
    for (int r = c + 1; r < 4; ++r) {
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
    }
    if (std::abs(m[piv][c]) < 1e-12) return false;
    std::swap(m[c], m[piv]);
    for (int r = c + 1; r < 4; ++r) {
      const double k = m[r][c] / m[c][c];
      for (int j = c; j < 5; ++j) m[r][j] -= k * m[c][j];
    }
  }
  for (int r = 3; r >= 0; --r) {
    double s = m[r][4];
    for (int j = r + 1; j < 4; ++j) s -= m[r][j] * x[j];
    x[r] = s / m[r][r];
  }
  return true;
}

}  // namespace

TipForce tip_force_detail(const quick_return::FingerGeometry& g, double tau_out, double r_ob,
                          PinForceModel model) {
  if (!std::isfinite(tau_out)) throw Error(ErrorCode::kDomain, "torque must be finite");
  const double theta = quick_return::theta_for_radius(g, r_ob + g.r_ft);
  const auto pose = quick_return::finger_pose(g, theta);
  const Point2 u = pose.p_ft / pose.p_ft.norm();
  const Point2 p_op_cnt = u * r_ob - pose.p_op;
  const Point2& a = pose.p_op_ip;
  const double arm = cross(p_op_cnt, u);
  if (std::abs(arm) < 1e-9) {
    throw Error(ErrorCode::kSingularConfiguration, "contact force passes through the slot pin");
  }

  TipForce out;
  if (model == PinForceModel::kTangential) {
    out.f_ip = Point2{std::sin(theta), -std::cos(theta)} * (tau_out / g.r_ip);
    out.magnitude = -cross(a, out.f_ip) / arm;
    out.f_cnt = u * out.magnitude;
    const Point2 slot_dir = a / a.norm();
    out.slot_reaction = -dot(out.f_ip + out.f_cnt, geom::perp(slot_dir));
    return out;
  }

  // Unknowns: f_ip.x, f_ip.y, slot reaction N (normal to the pin line), F.
  const Point2 m = geom::perp(a / a.norm());
  const Point2& p = pose.p_ip;
  std::array<std::array<double, 5>, 4> sys{{
      {1.0, 0.0, m.x, u.x, 0.0},
      {0.0, 1.0, m.y, u.y, 0.0},
      {-a.y, a.x, 0.0, arm, 0.0},
      {-p.y, p.x, 0.0, 0.0, -tau_out},
  }};
  std::array<double, 4> x{};
  if (!solve4(sys, x)) {
    throw Error(ErrorCode::kSingularConfiguration, "finger equilibrium is singular");
  }
  out.f_ip = {x[0], x[1]};
  out.slot_reaction = x[2];
  out.magnitude = x[3];
  out.f_cnt = u * out.magnitude;
  return out;
}

double tip_force(const quick_return::FingerGeometry& g, double tau_out, double r_ob,
                 PinForceModel model) {
  return tip_force_detail(g, tau_out, r_ob, model).magnitude;
}

void LoadCase::validate() const {
  if (!(tau_in > 0.0) || !std::isfinite(tau_in)) {
    throw Error(ErrorCode::kMalformedInput, "load.tau_in_Nmm must be > 0");
  }
  if (!(loss_factor > 0.0 && loss_factor <= 1.0)) {
    throw Error(ErrorCode::kMalformedInput, "load.loss_factor must be in (0, 1]");
  }
  if (!(r_ob_min >= 0.0) || !(r_ob_max > r_ob_min) || !std::isfinite(r_ob_max)) {
    throw Error(ErrorCode::kMalformedInput, "load.r_ob_min_mm / load.r_ob_max_mm must satisfy 0 <= min < max");
  }
  if (n_samples < 2) throw Error(ErrorCode::kDomain, "load.n_samples must be >= 2");
}

double ForceProfile::min_force() const {
  double v = INFINITY;
  for (const auto& s : samples) v = std::min(v, s.f_cnt);
  return v;
}

double ForceProfile::max_force() const {
  double v = -INFINITY;
  for (const auto& s : samples) v = std::max(v, s.f_cnt);
  return v;
}

std::string ForceProfile::to_csv() const {
  std::string out = "r_ob_mm,f_cnt_N\n";
  for (const auto& s : samples) out += report::csv_row({s.r_ob, s.f_cnt});
  return out;
}

ForceProfile force_profile(const quick_return::FingerGeometry& finger,
                           const ls_cvt::CvtGeometry& cvt, const LoadCase& load) {
  load.validate();
  ForceProfile prof;
  prof.load = load;
  prof.samples.reserve(static_cast<std::size_t>(load.n_samples));
  for (int i = 0; i < load.n_samples; ++i) {
    ForceSample s;
    s.r_ob = i == load.n_samples - 1
                 ? load.r_ob_max
                 : load.r_ob_min + (load.r_ob_max - load.r_ob_min) * i / (load.n_samples - 1);
    s.theta_ip = quick_return::theta_for_radius(finger, s.r_ob + finger.r_ft);
    s.theta_out = ls_cvt::output_angle_for_plate(cvt, s.theta_ip);
    const auto st = ls_cvt::state_from_output(cvt, s.theta_out, ls_cvt::LoadMode::kStopperEngaged);
    s.theta_in_v = st.theta_in_v;
    s.eps_amp = st.eps_amp;
    s.tau_out = st.eps_amp * load.tau_in * load.loss_factor;
    s.f_cnt = tip_force(finger, s.tau_out, s.r_ob, load.model);
    prof.samples.push_back(s);
  }
  return prof;
}

double performance_score(double closing_speed, double tip_force, double weight) {
  if (!(weight > 0.0)) throw Error(ErrorCode::kDomain, "weight must be > 0");
  if (!(closing_speed > 0.0) || !(tip_force > 0.0)) {
    throw Error(ErrorCode::kDomain, "closing speed and tip force must be > 0");
  }
  return closing_speed * tip_force / (weight * 1000.0);
}

double performance_score(const GripperSpec& spec) {
  return performance_score(spec.closing_speed, spec.tip_force, spec.weight);
}

}  // namespace gripkit::statics
