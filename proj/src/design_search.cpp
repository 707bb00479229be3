#include "gripkit/design_search.hpp"

#include <algorithm>
#include <cmath>

#include "gripkit/error.hpp"
#include "gripkit/numeric.hpp"
#include "gripkit/report.hpp"

namespace gripkit::design_search {

namespace {

using geom::deg_to_rad;

void require_positive(double v, const std::string& field) {
  if (!(v > 0.0) || !std::isfinite(v)) throw Error(ErrorCode::kMalformedInput, field + " must be > 0");
}

double tip_radius(const quick_return::FingerGeometry& g, double theta) {
  return quick_return::fingertip_position(g, theta, quick_return::AngleWindow::kScan).norm();
}

// Root of |p_ft| = target between two scan samples.
double refine(const quick_return::FingerGeometry& g, double a, double b, double target) {
  const auto root = numeric::bisect_secant([&](double t) { return tip_radius(g, t) - target; }, a, b,
                                           1e-6, 1e-10);
  return root.value_or(b);
}

}  // namespace

std::vector<double> Grid::values() const {
  std::vector<double> out;
  const int n = static_cast<int>(std::floor((hi - lo) / step + 1e-9));
  out.reserve(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) out.push_back(lo + step * i);
  return out;
}

void Grid::validate(const std::string& field) const {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(hi >= lo)) {
    throw Error(ErrorCode::kMalformedInput, field + " needs min <= max");
  }
  require_positive(step, field + ".step");
}

void FingerSearchSpace::validate() const {
  require_positive(r_op, "r_op_mm");
  require_positive(l_ft, "l_ft_mm");
  require_positive(r_ft, "r_ft_mm");
  r_ip.validate("r_ip_mm");
  phi2_deg.validate("phi2_deg");
  if (!(r_ip.lo > 0.0)) throw Error(ErrorCode::kMalformedInput, "r_ip_mm.min must be > 0");
  require_positive(envelope_radius, "envelope_radius_mm");
  require_positive(min_pin_distance, "min_pin_distance_mm");
  require_positive(min_graspable_width, "min_graspable_width_mm");
  require_positive(stroke_reach, "stroke_reach_mm");
  require_positive(scan_step_deg, "scan_step_deg");
}

FingerCell evaluate_finger(const FingerSearchSpace& s, double r_ip, double phi2_deg) {
  FingerCell cell;
  cell.r_ip = r_ip;
  cell.phi2_deg = phi2_deg;
  quick_return::FingerGeometry g;
  g.r_op = s.r_op;
  g.r_ip = r_ip;
  g.l_ft = s.l_ft;
  g.r_ft = s.r_ft;
  g.phi2 = deg_to_rad(phi2_deg);

  const auto fail = [&](const char* why) {
    cell.reason = why;
    return cell;
  };
  if (s.r_op > s.envelope_radius || r_ip > s.envelope_radius) return fail("pin outside envelope");
  if (!(std::abs(s.r_op - r_ip) < s.l_ft)) return fail("degenerate linkage");

  const int n = static_cast<int>(std::round(180.0 / s.scan_step_deg));
  const double step = std::numbers::pi / n;
  std::vector<double> r(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) r[i] = tip_radius(g, step * i);
  const int i_min = static_cast<int>(std::min_element(r.begin(), r.end()) - r.begin());
  if (r[i_min] > s.r_ft) return fail("fingertip cannot reach the centre");

  int j = i_min;
  while (j < n && r[j] < s.r_ft) ++j;
  if (r[j] < s.r_ft) return fail("no closing crossing");
  int k = j;
  while (k < n && r[k] < s.stroke_reach && r[k + 1] > r[k]) ++k;
  if (r[k] < s.stroke_reach) return fail("stroke does not reach the opening radius");
  if (2.0 * (s.stroke_reach - s.r_ft) <= s.min_graspable_width) return fail("graspable width too small");
  if (s.stroke_reach > s.envelope_radius) return fail("fingertip outside envelope");

  cell.theta_closed = j > i_min ? refine(g, step * (j - 1), step * j, s.r_ft) : step * j;
  cell.theta_open = k > j ? refine(g, step * (k - 1), step * k, s.stroke_reach) : step * k;
  if (!(cell.theta_open > cell.theta_closed)) return fail("empty stroke");

  // |P_op - P_ip|^2 = r_op^2 + r_ip^2 - 2 r_op r_ip sin(theta); closest at 90 deg.
  const double half_pi = std::numbers::pi / 2.0;
  const double t_near = std::clamp(half_pi, cell.theta_closed, cell.theta_open);
  const double pin_gap =
      std::sqrt(s.r_op * s.r_op + r_ip * r_ip - 2.0 * s.r_op * r_ip * std::sin(t_near));
  if (!(pin_gap > s.min_pin_distance)) return fail("pins too close");

  const int m = std::max(2, static_cast<int>(std::ceil((cell.theta_open - cell.theta_closed) / step)));
  double sum = 0.0;
  for (int i = 0; i <= m; ++i) {
    const double t = cell.theta_closed + (cell.theta_open - cell.theta_closed) * i / m;
    const double v = quick_return::speed_ratio(g, t, quick_return::AngleWindow::kScan);
    cell.peak_ratio = std::max(cell.peak_ratio, v);
    sum += v;
  }
  cell.mean_ratio = sum / (m + 1);
  cell.feasible = true;
  return cell;
}

FingerSearchResult optimize_finger(const FingerSearchSpace& space) {
  space.validate();
  FingerSearchResult res;
  for (double r_ip : space.r_ip.values()) {
    for (double phi2 : space.phi2_deg.values()) res.cells.push_back(evaluate_finger(space, r_ip, phi2));
  }
  bool any = false;
  for (std::size_t i = 0; i < res.cells.size(); ++i) {
    const auto& c = res.cells[i];
    if (!c.feasible) continue;
    if (!any || c.peak_ratio > res.cells[res.best_peak].peak_ratio) res.best_peak = i;
    if (!any || c.mean_ratio > res.cells[res.best_mean].mean_ratio) res.best_mean = i;
    any = true;
  }
  if (!any) throw Error(ErrorCode::kEmptyFeasibleSet, "no finger design satisfies the constraints");
  return res;
}

std::string FingerSearchResult::to_csv() const {
  std::string out = "param1,param2,score,feasible,score_mean\n";
  for (const auto& c : cells) {
    out += report::fmt(c.r_ip) + ',' + report::fmt(c.phi2_deg) + ',' + report::fmt(c.peak_ratio) +
           ',' + (c.feasible ? "1" : "0") + ',' + report::fmt(c.mean_ratio) + '\n';
  }
  return out;
}

void CvtSearchSpace::validate() const {
  l_in1.validate("l_in1_mm");
  l_in2.validate("l_in2_mm");
  l_fix.validate("l_fix_mm");
  l_flt.validate("l_flt_mm");
  l_out.validate("l_out_mm");
  for (const Grid* gr : {&l_in1, &l_in2, &l_fix, &l_flt, &l_out}) {
    if (!(gr->lo > 0.0)) throw Error(ErrorCode::kMalformedInput, "link length grids must start above 0");
  }
  require_positive(stroke_width_deg, "stroke_width_deg");
  require_positive(envelope_radius, "envelope_radius_mm");
  require_positive(placement_step_deg, "placement_step_deg");
  require_positive(sweep_step_deg, "sweep_step_deg");
  if (!(dead_point_limit_deg > 0.0 && dead_point_limit_deg < 90.0)) {
    throw Error(ErrorCode::kMalformedInput, "dead_point_limit_deg must be in (0, 90)");
  }
}

ls_cvt::CvtGeometry cvt_from_lengths(const CvtLengths& l) {
  ls_cvt::CvtGeometry g;
  g.l_in1 = l.l_in1;
  g.l_in2 = l.l_in2;
  g.l_fix = l.l_fix;
  g.l_flt = l.l_flt;
  g.l_out = l.l_out;
  g.lin_v_max = l.l_in1 + l.l_in2;
  g.lin_v_min = std::abs(l.l_in1 - l.l_in2);
  return g;
}

CvtCell evaluate_cvt(const CvtSearchSpace& s, const CvtLengths& l) {
  CvtCell cell;
  cell.lengths = l;
  ls_cvt::CvtGeometry g = cvt_from_lengths(l);
  if (g.lin_v_min < 1e-9) {
    cell.reason = "input links of equal length";
    return cell;
  }
  cell.torque_objective = l.l_out / g.lin_v_min;
  cell.speed_objective = l.l_out / g.lin_v_max;

  ls_cvt::Interval window;
  try {
    window = ls_cvt::output_window(g, g.lin_v_min);
  } catch (const Error&) {
    cell.reason = "no bounded stopper window";
    return cell;
  }
  const double width = deg_to_rad(s.stroke_width_deg);
  if (window.width() < width) {
    cell.reason = "stopper window narrower than the stroke";
    return cell;
  }

  const double place = deg_to_rad(s.placement_step_deg);
  const int n_starts = static_cast<int>(std::floor((window.width() - width) / place + 1e-9));
  std::vector<double> starts;
  for (int i = 0; i <= n_starts; ++i) starts.push_back(window.lo + place * i);
  const double centred = window.mid() - width / 2.0;
  starts.push_back(centred);
  std::stable_sort(starts.begin(), starts.end(), [&](double a, double b) {
    return std::abs(a - centred) < std::abs(b - centred);
  });

  const int n_sweep = std::max(1, static_cast<int>(std::ceil(s.stroke_width_deg / s.sweep_step_deg)));
  // Ends first: they fail most often.
  std::vector<int> order{0, n_sweep};
  for (int i = 1; i < n_sweep; ++i) order.push_back(i);
  const double cos_limit = std::cos(deg_to_rad(s.dead_point_limit_deg));

  const auto ok_at = [&](double theta_out) {
    for (auto mode : {ls_cvt::LoadMode::kNoLoad, ls_cvt::LoadMode::kStopperEngaged}) {
      const auto st = ls_cvt::state_from_output(g, theta_out, mode);
      if (std::abs(std::cos(st.theta1)) <= cos_limit || std::abs(std::cos(st.theta2)) <= cos_limit) {
        return false;
      }
      for (const auto& p : st.joints) {
        if (p.norm() > s.envelope_radius) return false;
      }
    }
    return true;
  };

  for (double start : starts) {
    bool good = true;
    for (int i : order) {
      try {
        good = ok_at(start + width * i / n_sweep);
      } catch (const Error&) {
        good = false;
      }
      if (!good) break;
    }
    if (good) {
      cell.feasible = true;
      cell.stroke_start = start;
      return cell;
    }
  }
  cell.reason = "no stroke placement passes assembly, envelope and dead-point checks";
  return cell;
}

bool dominates(const CvtCell& a, const CvtCell& b) {
  const bool no_worse = a.torque_objective >= b.torque_objective && a.speed_objective <= b.speed_objective;
  const bool better = a.torque_objective > b.torque_objective || a.speed_objective < b.speed_objective;
  return no_worse && better;
}

CvtSearchResult optimize_cvt(const CvtSearchSpace& space) {
  space.validate();
  CvtSearchResult res;
  for (double a : space.l_in1.values())
    for (double b : space.l_in2.values())
      for (double c : space.l_fix.values())
        for (double d : space.l_flt.values())
          for (double e : space.l_out.values()) {
            const CvtLengths l{a, b, c, d, e};
            if (std::abs(a - space.reference.l_in1) < 1e-9 && std::abs(b - space.reference.l_in2) < 1e-9 &&
                std::abs(c - space.reference.l_fix) < 1e-9 && std::abs(d - space.reference.l_flt) < 1e-9 &&
                std::abs(e - space.reference.l_out) < 1e-9) {
              res.reference = res.cells.size();
            }
            res.cells.push_back(evaluate_cvt(space, l));
          }

  std::vector<std::size_t> feasible;
  for (std::size_t i = 0; i < res.cells.size(); ++i) {
    if (res.cells[i].feasible) feasible.push_back(i);
  }
  if (feasible.empty()) throw Error(ErrorCode::kEmptyFeasibleSet, "no CVT design satisfies the constraints");

  // Best torque first, ties by best speed; a cell is on the front when its
  // speed objective beats every earlier cell with strictly higher torque.
  std::sort(feasible.begin(), feasible.end(), [&](std::size_t x, std::size_t y) {
    const auto &a = res.cells[x], &b = res.cells[y];
    if (a.torque_objective != b.torque_objective) return a.torque_objective > b.torque_objective;
    return a.speed_objective < b.speed_objective;
  });
  double best_speed = INFINITY;
  for (std::size_t i = 0; i < feasible.size();) {
    std::size_t j = i;
    const double t = res.cells[feasible[i]].torque_objective;
    const double group_best = res.cells[feasible[i]].speed_objective;
    while (j < feasible.size() && res.cells[feasible[j]].torque_objective == t) {
      auto& c = res.cells[feasible[j]];
      c.pareto = c.speed_objective == group_best && c.speed_objective < best_speed;
      if (c.pareto) res.pareto.push_back(feasible[j]);
      ++j;
    }
    best_speed = std::min(best_speed, group_best);
    i = j;
  }
  std::sort(res.pareto.begin(), res.pareto.end());
  return res;
}

std::string CvtSearchResult::to_csv() const {
  std::string out =
      "l_in1_mm,l_in2_mm,l_fix_mm,l_flt_mm,l_out_mm,torque_objective,speed_objective,feasible,pareto\n";
  for (const auto& c : cells) {
    const auto& l = c.lengths;
    out += report::fmt(l.l_in1) + ',' + report::fmt(l.l_in2) + ',' + report::fmt(l.l_fix) + ',' +
           report::fmt(l.l_flt) + ',' + report::fmt(l.l_out) + ',' + report::fmt(c.torque_objective) +
           ',' + report::fmt(c.speed_objective) + ',' + (c.feasible ? "1" : "0") + ',' +
           (c.pareto ? "1" : "0") + '\n';
  }
  return out;
}

double derive_lambda(const ls_cvt::CvtGeometry& g, double target_lo, double target_hi) {
  if (!(target_hi > target_lo)) throw Error(ErrorCode::kDomain, "target stroke must be increasing");
  const ls_cvt::Interval window = ls_cvt::output_window(g, g.lin_v_min);
  const double width = target_hi - target_lo;
  if (window.width() < width - deg_to_rad(1.0)) {
    throw Error(ErrorCode::kAlignment,
                "stopper window of " + std::to_string(geom::rad_to_deg(window.width())) +
                    " deg cannot hold a " + std::to_string(geom::rad_to_deg(width)) + " deg stroke");
  }
  const double start = window.mid() - width / 2.0;
  return target_lo - start - g.mount_offset;
}

}  // namespace gripkit::design_search
