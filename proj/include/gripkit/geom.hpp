#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

namespace gripkit::geom {

// Lengths are millimetres, angles radians unless a name says otherwise.
inline constexpr double kLengthTol = 1e-9;
inline constexpr double kAngleTol = 1e-9;
// |cross(d1, d2)| below this treats two unit directions as parallel.
inline constexpr double kParallelTol = 1e-7;

constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

// Wraps an angle into (-pi, pi].
double wrap_angle(double rad);

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Point2 operator+(const Point2& o) const { return {x + o.x, y + o.y}; }
  constexpr Point2 operator-(const Point2& o) const { return {x - o.x, y - o.y}; }
  constexpr Point2 operator-() const { return {-x, -y}; }
  constexpr Point2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Point2 operator/(double s) const { return {x / s, y / s}; }
  constexpr bool operator==(const Point2&) const = default;

  double norm() const { return std::hypot(x, y); }
  bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

constexpr Point2 operator*(double s, const Point2& p) { return p * s; }
constexpr double dot(const Point2& a, const Point2& b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(const Point2& a, const Point2& b) { return a.x * b.y - a.y * b.x; }
inline double distance(const Point2& a, const Point2& b) { return (a - b).norm(); }
// Counterclockwise quarter turn.
constexpr Point2 perp(const Point2& v) { return {-v.y, v.x}; }
Point2 rotate(const Point2& v, double angle);

// Unit vector. Construction normalizes; a zero or non-finite input throws.
class Direction2 {
 public:
  Direction2() = default;
  static Direction2 from_vector(const Point2& v);
  static Direction2 from_angle(double angle) { return Direction2(std::cos(angle), std::sin(angle)); }

  double ux() const { return ux_; }
  double uy() const { return uy_; }
  Point2 vec() const { return {ux_, uy_}; }
  double angle() const { return std::atan2(uy_, ux_); }
  Direction2 operator-() const { return Direction2(-ux_, -uy_); }
  Direction2 rotated(double angle) const;
  Direction2 left_normal() const { return Direction2(-uy_, ux_); }

 private:
  Direction2(double ux, double uy) : ux_(ux), uy_(uy) {}
  double ux_ = 1.0;
  double uy_ = 0.0;
};

bool are_parallel(const Direction2& a, const Direction2& b);

struct Line {
  Point2 point;
  Direction2 dir;

  Point2 at(double t) const { return point + dir.vec() * t; }
  double param_of(const Point2& p) const { return dot(p - point, dir.vec()); }
  // Signed distance, positive on the left of dir.
  double signed_distance(const Point2& p) const { return cross(dir.vec(), p - point); }
};

// Intersection of two infinite lines; nullopt when parallel.
std::optional<Point2> intersect(const Line& a, const Line& b);

// Directed edge of a counterclockwise polygon: the interior lies on the left.
struct Segment {
  Point2 a;
  Point2 b;

  double length() const { return distance(a, b); }
  Direction2 dir() const { return Direction2::from_vector(b - a); }
  Direction2 inward_normal() const { return dir().left_normal(); }
  Line line() const { return Line{a, dir()}; }
};

// Locus of fingertip-cylinder centres in contact with an object edge: the
// edge shifted away from the interior by the fingertip radius.
struct VirtualEdge {
  Line line;
  Direction2 inward_normal;
  Point2 a;  // offset image of the source start point
  Point2 b;  // offset image of the source end point
  double offset = 0.0;

  double length() const { return distance(a, b); }
  // Parameter of p along the edge measured from a; [0, length] is on the edge.
  double param_of(const Point2& p) const { return line.param_of(p) - line.param_of(a); }
  // Signed clearance to the nearer endpoint; negative when p projects off the edge.
  double margin(const Point2& p) const;
};

VirtualEdge offset_edge(const Segment& edge, double r_ft);
std::array<VirtualEdge, 3> virtual_edges(std::span<const Segment, 3> edges, double r_ft);

struct Triangle2 {
  std::array<Point2, 3> v;

  // Reorders to counterclockwise; throws on (near) zero area.
  static Triangle2 make(const Point2& a, const Point2& b, const Point2& c);
  double signed_area() const;
  Point2 centroid() const { return (v[0] + v[1] + v[2]) / 3.0; }
  double side(int i) const { return distance(v[i], v[(i + 1) % 3]); }
  double circumradius() const;
};

// Zero, one or two points. Two points are ordered with the one on the left of
// the c1->c2 centre line first. Throws kDegenerateInput for coincident centres
// or nonpositive radii.
std::vector<Point2> circle_circle_intersection(const Point2& c1, double r1, const Point2& c2,
                                               double r2);

// True iff every planar vector is a nonnegative combination of the inputs,
// i.e. no closed half-plane contains all three directions.
bool positively_spans(const Direction2& n1, const Direction2& n2, const Direction2& n3);

// Proper rigid motion: rotate about the origin, then translate.
struct RigidTransform2 {
  double angle = 0.0;
  Point2 translation;

  Point2 apply(const Point2& p) const { return rotate(p, angle) + translation; }
  Direction2 apply(const Direction2& d) const { return d.rotated(angle); }
  Segment apply(const Segment& s) const { return {apply(s.a), apply(s.b)}; }
  RigidTransform2 inverse() const;
  // Maps a -> a_img with direction a->b aligned to a_img->b_img.
  static RigidTransform2 aligning(const Point2& a, const Point2& b, const Point2& a_img,
                                  const Point2& b_img);
};

using Polygon = std::vector<Point2>;

double signed_area(std::span<const Point2> poly);
Point2 area_centroid(std::span<const Point2> poly);
std::vector<Segment> edges_of(std::span<const Point2> poly);
bool is_simple(std::span<const Point2> poly);
bool contains(std::span<const Point2> poly, const Point2& p);
double distance_to_segment(const Point2& p, const Segment& s);
double distance_to_boundary(std::span<const Point2> poly, const Point2& p);

}  // namespace gripkit::geom
