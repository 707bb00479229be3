#include "gripkit/immobility.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <set>
#include <vector>

#include "gripkit/error.hpp"
#include "gripkit/numeric.hpp"

namespace gripkit::immobility {

namespace {

using geom::deg_to_rad;
using std::numbers::pi;

constexpr double kSideTol = 1e-7;

double normal_gap(const Direction2& a, const Direction2& b) {
  return std::acos(std::clamp(geom::dot(a.vec(), b.vec()), -1.0, 1.0));
}

Point2 unit(double angle) { return {std::cos(angle), std::sin(angle)}; }

// Contacts for a root theta1 of the tilt equation, or nullopt when the
// triangle does not sit on the three sides.
std::optional<StateCSolution> place(const AngleSet& t, double l2, double theta1) {
  const double a11 = std::sin(t.s12), a12 = -std::cos(t.s12 - theta1);
  const double a21 = -std::sin(t.s23), a22 = -std::sin(deg_to_rad(150.0) - t.s23 - theta1);
  const double b2 = -l2 * std::sin(t.s23);
  const double det = a11 * a22 - a12 * a21;
  if (std::abs(det) < 1e-14) return std::nullopt;
  StateCSolution s;
  s.theta1 = theta1;
  s.l_o2 = (-a12 * b2) / det;
  s.l_r = (a11 * b2) / det;
  if (!(s.l_r > 0.0)) return std::nullopt;

  const double l1 = l2 * std::sin(t.s23) / std::sin(t.s13);
  const Point2 v31{0.0, 0.0};
  const Point2 v12{l1, 0.0};
  const Point2 d2{-std::cos(t.s12), std::sin(t.s12)};
  const Point2 v23 = v12 + d2 * l2;
  s.triangle = {v31, v12, v23};
  const double ang = -deg_to_rad(90.0) - t.s12 + theta1;
  const Point2 c2 = v12 + d2 * s.l_o2;
  s.contacts = {c2 + unit(ang) * s.l_r, c2, c2 + unit(ang - deg_to_rad(60.0)) * s.l_r};
  const geom::Segment sides[3] = {{v31, v12}, {v12, v23}, {v23, v31}};
  for (int i = 0; i < 3; ++i) {
    s.normals[i] = sides[i].inward_normal();
    const geom::Line line = sides[i].line();
    const double t_on = line.param_of(s.contacts[i]);
    const double len = sides[i].length();
    if (std::abs(line.signed_distance(s.contacts[i])) > kSideTol * std::max(1.0, l2) ||
        t_on < -kSideTol * len || t_on > len * (1.0 + kSideTol)) {
      return std::nullopt;
    }
  }
  return s;
}

}  // namespace

std::string_view to_string(StateLabel s) {
  switch (s) {
    case StateLabel::A: return "A";
    case StateLabel::B: return "B";
    case StateLabel::C: return "C";
    case StateLabel::D: return "D";
    case StateLabel::E: return "E";
    case StateLabel::F: return "F";
  }
  return "?";
}

int preference_rank(StateLabel s) {
  switch (s) {
    case StateLabel::C: return 0;
    case StateLabel::A: return 1;
    case StateLabel::D: return 2;
    default: return 3;
  }
}

bool AngleSet::proper_triangle() const {
  return s12 > geom::kAngleTol && s13 > geom::kAngleTol && s23 > geom::kAngleTol &&
         std::abs(sum() - pi) < 1e-7;
}

AngleSet angles_from_normals(const Direction2& n1, const Direction2& n2, const Direction2& n3) {
  return {pi - normal_gap(n1, n2), pi - normal_gap(n1, n3), pi - normal_gap(n2, n3)};
}

StateCSolution solve_state_c(const AngleSet& t, double l2) {
  if (!(l2 > 0.0) || !std::isfinite(l2)) throw Error(ErrorCode::kDegenerateInput, "side length must be > 0");
  if (!t.proper_triangle()) {
    throw Error(ErrorCode::kDegenerateInput, "angle set does not form a triangle");
  }
  if (t.s12 >= pi / 2.0 || t.s13 >= pi / 2.0) {
    throw Error(ErrorCode::kDegenerateInput, "angles at side 1 must both be acute");
  }
  const auto f = [&](double a) {
    return std::sin(t.s12 + t.s13) * std::sin(deg_to_rad(60.0) + a - t.s12) -
           std::sin(t.s12 + t.s23) * std::sin(deg_to_rad(60.0) - a);
  };
  // Scan (0, 60) deg in 0.5 deg cells, then polish each bracketed root.
  constexpr int kCells = 120;
  const double lo = 1e-9, hi = deg_to_rad(60.0) - 1e-9;
  bool any_root = false;
  double prev_x = lo, prev_f = f(lo);
  for (int i = 1; i <= kCells; ++i) {
    const double x = lo + (hi - lo) * i / kCells;
    const double fx = f(x);
    if ((prev_f > 0.0) != (fx > 0.0) || fx == 0.0) {
      const auto root = numeric::bisect_secant(f, prev_x, x, 1e-6, 1e-14);
      if (root) {
        any_root = true;
        if (auto s = place(t, l2, *root)) return *s;
      }
    }
    prev_x = x;
    prev_f = fx;
  }
  if (!any_root) throw Error(ErrorCode::kNoSolution, "no inscribed equilateral contact triangle");
  throw Error(ErrorCode::kInfeasibleContact, "equilateral contact triangle leaves the sides");
}

bool check_immobility(std::span<const Point2, 3> contacts, std::span<const Direction2, 3> normals,
                      double tol) {
  if (!geom::positively_spans(normals[0], normals[1], normals[2])) return false;
  const geom::Line l0{contacts[0], normals[0]};
  const geom::Line l1{contacts[1], normals[1]};
  const geom::Line l2{contacts[2], normals[2]};
  const auto x = geom::intersect(l0, l1);
  if (!x) return false;
  return std::abs(l2.signed_distance(*x)) <= tol;
}

StateLabel classify_triple(std::span<const geom::VirtualEdge> edges, std::array<int, 3> finger_edge) {
  for (int e : finger_edge) {
    if (e < 0 || static_cast<std::size_t>(e) >= edges.size()) {
      throw Error(ErrorCode::kMalformedInput, "finger edge index out of range");
    }
  }
  const std::set<int> distinct(finger_edge.begin(), finger_edge.end());
  const auto antiparallel = [&](int a, int b) {
    const auto& na = edges[a].inward_normal;
    const auto& nb = edges[b].inward_normal;
    return geom::are_parallel(na, nb) && geom::dot(na.vec(), nb.vec()) < 0.0;
  };
  if (distinct.size() == 1) {
    throw Error(ErrorCode::kMalformedInput, "three fingers on one edge is not a grasp");
  }
  if (distinct.size() == 2) {
    const int a = *distinct.begin();
    const int b = *std::next(distinct.begin());
    return antiparallel(a, b) ? StateLabel::A : StateLabel::B;
  }
  const int e1 = finger_edge[0], e2 = finger_edge[1], e3 = finger_edge[2];
  if (antiparallel(e1, e2) || antiparallel(e1, e3) || antiparallel(e2, e3)) return StateLabel::D;
  const auto& n1 = edges[e1].inward_normal;
  const auto& n2 = edges[e2].inward_normal;
  const auto& n3 = edges[e3].inward_normal;
  if (geom::are_parallel(n1, n2) || geom::are_parallel(n1, n3) || geom::are_parallel(n2, n3)) {
    return StateLabel::E;
  }
  const AngleSet t = angles_from_normals(n1, n2, n3);
  const double right = pi / 2.0;
  if (t.proper_triangle() && t.s12 < right && t.s13 < right) return StateLabel::C;
  return StateLabel::E;
}

StateLabel classify_object(const ObjectSpec& obj, double max_radius,
                           const std::function<StateLabel(const geom::Polygon&)>& classify_polygon) {
  validate_object(obj);
  if (const auto* c = std::get_if<Cylinder>(&obj)) {
    if (c->radius <= max_radius) return StateLabel::F;
    throw Error(ErrorCode::kUngraspable, "cylinder radius " + std::to_string(c->radius) +
                                             " mm exceeds " + std::to_string(max_radius) + " mm");
  }
  return classify_polygon(std::get<Prism>(obj).vertices);
}

}  // namespace gripkit::immobility
