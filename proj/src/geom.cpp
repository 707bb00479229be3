#include "gripkit/geom.hpp"

#include <algorithm>
#include <limits>

#include "gripkit/error.hpp"

namespace gripkit::geom {

double wrap_angle(double rad) {
  double w = std::remainder(rad, 2.0 * std::numbers::pi);
  if (w <= -std::numbers::pi) w += 2.0 * std::numbers::pi;
  return w;
}

Point2 rotate(const Point2& v, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

Direction2 Direction2::from_vector(const Point2& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw Error(ErrorCode::kDegenerateInput, "direction from zero-length or non-finite vector");
  }
  return Direction2(v.x / n, v.y / n);
}

Direction2 Direction2::rotated(double angle) const {
  const Point2 r = rotate(vec(), angle);
  return Direction2(r.x, r.y);
}

bool are_parallel(const Direction2& a, const Direction2& b) {
  return std::abs(cross(a.vec(), b.vec())) < kParallelTol;
}

std::optional<Point2> intersect(const Line& a, const Line& b) {
  const double denom = cross(a.dir.vec(), b.dir.vec());
  if (std::abs(denom) < kParallelTol) return std::nullopt;
  const double t = cross(b.point - a.point, b.dir.vec()) / denom;
  return a.at(t);
}

double VirtualEdge::margin(const Point2& p) const {
  const double t = param_of(p);
  return std::min(t, length() - t);
}

VirtualEdge offset_edge(const Segment& edge, double r_ft) {
  if (!(r_ft >= 0.0)) throw Error(ErrorCode::kDegenerateInput, "fingertip radius must be >= 0");
  if (edge.length() < kLengthTol) throw Error(ErrorCode::kDegenerateInput, "zero-length edge");
  const Direction2 n = edge.inward_normal();
  const Point2 shift = n.vec() * (-r_ft);
  VirtualEdge v{Line{edge.a + shift, edge.dir()}, n, edge.a + shift, edge.b + shift, r_ft};
  return v;
}

std::array<VirtualEdge, 3> virtual_edges(std::span<const Segment, 3> edges, double r_ft) {
  return {offset_edge(edges[0], r_ft), offset_edge(edges[1], r_ft), offset_edge(edges[2], r_ft)};
}

Triangle2 Triangle2::make(const Point2& a, const Point2& b, const Point2& c) {
  const double area2 = cross(b - a, c - a);
  const double scale = std::max({distance(a, b), distance(b, c), distance(c, a), 1.0});
  if (std::abs(area2) < kLengthTol * scale) {
    throw Error(ErrorCode::kDegenerateInput, "triangle has zero area");
  }
  return area2 > 0.0 ? Triangle2{{a, b, c}} : Triangle2{{a, c, b}};
}

double Triangle2::signed_area() const { return 0.5 * cross(v[1] - v[0], v[2] - v[0]); }

double Triangle2::circumradius() const {
  const double a = side(0), b = side(1), c = side(2);
  return a * b * c / (4.0 * std::abs(signed_area()));
}

std::vector<Point2> circle_circle_intersection(const Point2& c1, double r1, const Point2& c2,
                                               double r2) {
  if (!(r1 > 0.0) || !(r2 > 0.0)) {
    throw Error(ErrorCode::kDegenerateInput, "circle radii must be positive");
  }
  const Point2 delta = c2 - c1;
  const double d = delta.norm();
  if (d < kLengthTol) {
    throw Error(ErrorCode::kDegenerateInput, "coincident circle centres");
  }
  if (d > r1 + r2 + kLengthTol || d < std::abs(r1 - r2) - kLengthTol) return {};

  const Point2 u = delta / d;
  const double a = (r1 * r1 - r2 * r2 + d * d) / (2.0 * d);
  const Point2 mid = c1 + u * a;
  const double h2 = r1 * r1 - a * a;
  if (std::abs(d - (r1 + r2)) <= kLengthTol || std::abs(d - std::abs(r1 - r2)) <= kLengthTol ||
      h2 <= 0.0) {
    return {mid};
  }
  const Point2 off = perp(u) * std::sqrt(h2);
  return {mid + off, mid - off};
}

bool positively_spans(const Direction2& n1, const Direction2& n2, const Direction2& n3) {
  std::array<double, 3> ang{n1.angle(), n2.angle(), n3.angle()};
  std::sort(ang.begin(), ang.end());
  const double gaps[3] = {ang[1] - ang[0], ang[2] - ang[1], ang[0] + 2.0 * std::numbers::pi - ang[2]};
  const double widest = *std::max_element(std::begin(gaps), std::end(gaps));
  return widest < std::numbers::pi - kAngleTol;
}

RigidTransform2 RigidTransform2::inverse() const {
  return {-angle, rotate(-translation, -angle)};
}

RigidTransform2 RigidTransform2::aligning(const Point2& a, const Point2& b, const Point2& a_img,
                                          const Point2& b_img) {
  const double angle = std::atan2(cross(b - a, b_img - a_img), dot(b - a, b_img - a_img));
  return {angle, a_img - rotate(a, angle)};
}

double signed_area(std::span<const Point2> poly) {
  double s = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    s += cross(poly[i], poly[(i + 1) % poly.size()]);
  }
  return 0.5 * s;
}

Point2 area_centroid(std::span<const Point2> poly) {
  double a = 0.0;
  Point2 c;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point2& p = poly[i];
    const Point2& q = poly[(i + 1) % poly.size()];
    const double w = cross(p, q);
    a += w;
    c = c + (p + q) * w;
  }
  if (std::abs(a) < kLengthTol) throw Error(ErrorCode::kDegenerateInput, "polygon has zero area");
  return c / (3.0 * a);
}

std::vector<Segment> edges_of(std::span<const Point2> poly) {
  std::vector<Segment> out;
  out.reserve(poly.size());
  for (std::size_t i = 0; i < poly.size(); ++i) out.push_back({poly[i], poly[(i + 1) % poly.size()]});
  return out;
}

namespace {

int orientation(const Point2& a, const Point2& b, const Point2& c) {
  const double v = cross(b - a, c - a);
  if (std::abs(v) < kLengthTol) return 0;
  return v > 0 ? 1 : -1;
}

bool on_segment(const Point2& p, const Segment& s) {
  return p.x <= std::max(s.a.x, s.b.x) + kLengthTol && p.x >= std::min(s.a.x, s.b.x) - kLengthTol &&
         p.y <= std::max(s.a.y, s.b.y) + kLengthTol && p.y >= std::min(s.a.y, s.b.y) - kLengthTol;
}

bool segments_touch(const Segment& s, const Segment& t) {
  const int o1 = orientation(s.a, s.b, t.a), o2 = orientation(s.a, s.b, t.b);
  const int o3 = orientation(t.a, t.b, s.a), o4 = orientation(t.a, t.b, s.b);
  if (o1 != o2 && o3 != o4) return true;
  return (o1 == 0 && on_segment(t.a, s)) || (o2 == 0 && on_segment(t.b, s)) ||
         (o3 == 0 && on_segment(s.a, t)) || (o4 == 0 && on_segment(s.b, t));
}

}  // namespace

bool is_simple(std::span<const Point2> poly) {
  const std::size_t n = poly.size();
  if (n < 3) return false;
  const auto edges = edges_of(poly);
  for (const auto& e : edges) {
    if (e.length() < kLengthTol) return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent) continue;
      if (segments_touch(edges[i], edges[j])) return false;
    }
  }
  return true;
}

bool contains(std::span<const Point2> poly, const Point2& p) {
  bool inside = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const Point2& a = poly[i];
    const Point2& b = poly[j];
    if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) {
      inside = !inside;
    }
  }
  return inside;
}

double distance_to_segment(const Point2& p, const Segment& s) {
  const Point2 d = s.b - s.a;
  const double len2 = dot(d, d);
  if (len2 == 0.0) return distance(p, s.a);
  const double t = std::clamp(dot(p - s.a, d) / len2, 0.0, 1.0);
  return distance(p, s.a + d * t);
}

double distance_to_boundary(std::span<const Point2> poly, const Point2& p) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& e : edges_of(poly)) best = std::min(best, distance_to_segment(p, e));
  return best;
}

}  // namespace gripkit::geom
