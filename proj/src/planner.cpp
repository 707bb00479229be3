#include "gripkit/planner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>

namespace gripkit::planner {

namespace {

using geom::VirtualEdge;
using std::numbers::pi;

constexpr double kEdgeTol = 1e-7;
constexpr double kCollisionTol = 1e-6;
constexpr int kFamilySamples = 240;

struct Context {
  const geom::Polygon& poly;
  const quick_return::FingerGeometry& g;
  quick_return::RadialBand band;
  std::vector<VirtualEdge> vedges;
  Enumeration out;
};

bool antiparallel(const VirtualEdge& a, const VirtualEdge& b) {
  return geom::are_parallel(a.inward_normal, b.inward_normal) &&
         geom::dot(a.inward_normal.vec(), b.inward_normal.vec()) < 0.0;
}

bool clear_of_object(const Context& ctx, const Point2& c) {
  return !geom::contains(ctx.poly, c) &&
         geom::distance_to_boundary(ctx.poly, c) >= ctx.g.r_ft - kCollisionTol;
}

enum class Verdict { kOk, kTooLarge, kOther };

// Reach and collision checks shared by every state.
Verdict vet(const Context& ctx, const std::array<Point2, 3>& contacts, double* circumradius) {
  double r = 0.0;
  try {
    r = geom::Triangle2::make(contacts[0], contacts[1], contacts[2]).circumradius();
  } catch (const Error&) {
    return Verdict::kOther;
  }
  *circumradius = r;
  if (r > ctx.band.max + geom::kLengthTol) return Verdict::kTooLarge;
  if (r < ctx.band.min - geom::kLengthTol) return Verdict::kOther;
  for (const Point2& c : contacts) {
    if (!clear_of_object(ctx, c)) return Verdict::kOther;
  }
  return Verdict::kOk;
}

void record(Context& ctx, Verdict v, GraspCandidate cand) {
  if (v == Verdict::kTooLarge) {
    ++ctx.out.rejected_too_large;
  } else if (v == Verdict::kOther) {
    ++ctx.out.rejected_other;
  } else {
    ctx.out.candidates.push_back(std::move(cand));
  }
}

void state_c(Context& ctx, int i, int j, int k) {
  const auto& E = ctx.vedges;
  for (const auto& [s, p, q] : {std::tuple{i, j, k}, std::tuple{j, k, i}, std::tuple{k, i, j}}) {
    int o1 = p, o2 = q;
    auto vertices = [&] {
      return std::array<std::optional<Point2>, 3>{geom::intersect(E[o2].line, E[s].line),
                                                  geom::intersect(E[s].line, E[o1].line),
                                                  geom::intersect(E[o1].line, E[o2].line)};
    };
    auto v = vertices();
    if (!v[0] || !v[1] || !v[2]) return;
    if (geom::cross(*v[1] - *v[0], *v[2] - *v[0]) < 0.0) {
      std::swap(o1, o2);
      v = vertices();
    }
    const auto angles = immobility::angles_from_normals(E[s].inward_normal, E[o1].inward_normal,
                                                        E[o2].inward_normal);
    if (!angles.proper_triangle() || angles.s12 >= pi / 2 || angles.s13 >= pi / 2) continue;
    immobility::StateCSolution sol;
    try {
      sol = immobility::solve_state_c(angles, geom::distance(*v[1], *v[2]));
    } catch (const Error&) {
      ++ctx.out.rejected_other;
      continue;
    }
    const auto xf = geom::RigidTransform2::aligning(sol.triangle[0], sol.triangle[1], *v[0], *v[1]);
    GraspCandidate cand;
    cand.state = StateLabel::C;
    cand.edges = {s, o1, o2};
    cand.margin = INFINITY;
    for (int f = 0; f < 3; ++f) {
      cand.contacts[f] = xf.apply(sol.contacts[f]);
      cand.normals[f] = E[cand.edges[f]].inward_normal;
      cand.margin = std::min(cand.margin, E[cand.edges[f]].margin(cand.contacts[f]));
    }
    if (cand.margin < -kEdgeTol) {
      ++ctx.out.rejected_other;
      continue;
    }
    record(ctx, vet(ctx, cand.contacts, &cand.circumradius), cand);
    return;
  }
}

// Two fingers on edge a, one on the antiparallel edge b.
void state_a(Context& ctx, int a, int b) {
  const VirtualEdge& va = ctx.vedges[a];
  const VirtualEdge& vb = ctx.vedges[b];
  const Point2 n = va.inward_normal.vec();
  const double h = geom::dot(vb.a - va.a, n);
  if (!(h > geom::kLengthTol)) return;
  const double side = 2.0 * h / std::sqrt(3.0);
  // Base midpoint parameter m along va keeps both base contacts on va and the
  // apex on vb.
  double lo = side / 2.0, hi = va.length() - side / 2.0;
  const double apex_at_zero = vb.param_of(va.a + n * h);
  const double dir = geom::dot(va.line.dir.vec(), vb.line.dir.vec());  // -1
  const double m1 = (0.0 - apex_at_zero) / dir;
  const double m2 = (vb.length() - apex_at_zero) / dir;
  lo = std::max(lo, std::min(m1, m2));
  hi = std::min(hi, std::max(m1, m2));
  if (lo > hi + kEdgeTol) {
    ++ctx.out.rejected_other;
    return;
  }
  const double want = va.param_of(geom::area_centroid(ctx.poly));
  const double m = std::clamp(want, lo, std::max(lo, hi));
  const Point2 mid = va.a + va.line.dir.vec() * m;
  GraspCandidate cand;
  cand.state = StateLabel::A;
  cand.edges = {a, a, b};
  cand.contacts = {mid - va.line.dir.vec() * (side / 2.0), mid + va.line.dir.vec() * (side / 2.0),
                   mid + n * h};
  cand.normals = {va.inward_normal, va.inward_normal, vb.inward_normal};
  cand.margin = std::min({va.margin(cand.contacts[0]), va.margin(cand.contacts[1]),
                          vb.margin(cand.contacts[2])});
  record(ctx, vet(ctx, cand.contacts, &cand.circumradius), cand);
}

// One finger on edge a crossing the antiparallel pair b, c.
void state_d(Context& ctx, int a, int b, int c) {
  const VirtualEdge& va = ctx.vedges[a];
  const VirtualEdge& vb = ctx.vedges[b];
  const VirtualEdge& vc = ctx.vedges[c];
  std::optional<GraspCandidate> best;
  bool too_large = false;
  for (double turn : {pi / 3.0, -pi / 3.0}) {
    const Point2 db = geom::rotate(vb.line.dir.vec(), turn);
    const double slope = geom::cross(vc.line.dir.vec(), db);
    if (std::abs(slope) < 1e-12) continue;
    for (int i = 0; i <= kFamilySamples; ++i) {
      const Point2 p1 = va.a + va.line.dir.vec() * (va.length() * i / kFamilySamples);
      const Point2 p3_at_zero = p1 + geom::rotate(vb.a - p1, turn);
      const double u = -vc.line.signed_distance(p3_at_zero) / slope;
      const Point2 p2 = vb.a + vb.line.dir.vec() * u;
      const Point2 p3 = p3_at_zero + db * u;
      GraspCandidate cand;
      cand.state = StateLabel::D;
      cand.edges = {a, b, c};
      cand.contacts = {p1, p2, p3};
      cand.normals = {va.inward_normal, vb.inward_normal, vc.inward_normal};
      cand.margin = std::min({va.margin(p1), vb.margin(p2), vc.margin(p3)});
      if (cand.margin < -kEdgeTol) continue;
      const Verdict v = vet(ctx, cand.contacts, &cand.circumradius);
      if (v == Verdict::kTooLarge) too_large = true;
      if (v != Verdict::kOk) continue;
      if (!best || cand.margin > best->margin) best = cand;
    }
  }
  if (best) {
    ctx.out.candidates.push_back(*best);
  } else if (too_large) {
    ++ctx.out.rejected_too_large;
  } else {
    ++ctx.out.rejected_other;
  }
}

}  // namespace

std::string_view to_string(NoPlanCause c) {
  return c == NoPlanCause::kTooLarge ? "too-large" : "friction-only-states";
}

Enumeration enumerate_candidates(const geom::Polygon& poly, const quick_return::FingerGeometry& g) {
  validate_object(Prism{poly});
  Context ctx{poly, g, quick_return::reach_band(g), {}, {}};
  for (const auto& e : geom::edges_of(poly)) ctx.vedges.push_back(geom::offset_edge(e, g.r_ft));
  const int n = static_cast<int>(ctx.vedges.size());
  const auto& E = ctx.vedges;
  const auto parallel = [&](int x, int y) {
    return geom::are_parallel(E[x].inward_normal, E[y].inward_normal);
  };

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        const bool pij = parallel(i, j), pik = parallel(i, k), pjk = parallel(j, k);
        if (!pij && !pik && !pjk) {
          if (geom::positively_spans(E[i].inward_normal, E[j].inward_normal, E[k].inward_normal)) {
            state_c(ctx, i, j, k);
          }
          continue;
        }
        if (pij + pik + pjk != 1) continue;
        if (pij && antiparallel(E[i], E[j])) state_d(ctx, k, i, j);
        if (pik && antiparallel(E[i], E[k])) state_d(ctx, j, i, k);
        if (pjk && antiparallel(E[j], E[k])) state_d(ctx, i, j, k);
      }
    }
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a != b && antiparallel(E[a], E[b])) state_a(ctx, a, b);
    }
  }
  return std::move(ctx.out);
}

std::optional<GraspCandidate> select_plan(std::span<const GraspCandidate> candidates) {
  const GraspCandidate* best = nullptr;
  for (const auto& c : candidates) {
    if (immobility::preference_rank(c.state) > 2) continue;
    if (!best) {
      best = &c;
      continue;
    }
    const int rc = immobility::preference_rank(c.state), rb = immobility::preference_rank(best->state);
    if (rc != rb) {
      if (rc < rb) best = &c;
    } else if (std::abs(c.margin - best->margin) > 1e-9) {
      if (c.margin > best->margin) best = &c;
    } else if (c.edges < best->edges) {
      best = &c;
    }
  }
  if (!best) return std::nullopt;
  return *best;
}

GripperPose gripper_pose(const std::array<Point2, 3>& contacts) {
  const auto tri = geom::Triangle2::make(contacts[0], contacts[1], contacts[2]);
  const double s0 = tri.side(0), s1 = tri.side(1), s2 = tri.side(2);
  const double longest = std::max({s0, s1, s2});
  if (longest - std::min({s0, s1, s2}) > 1e-6 * std::max(1.0, longest)) {
    throw Error(ErrorCode::kMalformedInput, "contact triangle is not equilateral");
  }
  GripperPose pose;
  pose.center = tri.centroid();
  double best = INFINITY;
  for (const Point2& v : contacts) {
    const Point2 d = v - pose.center;
    const double a = geom::wrap_angle(std::atan2(d.y, d.x) - pi / 2.0);
    if (std::abs(a) < std::abs(best) - 1e-12 ||
        (std::abs(std::abs(a) - std::abs(best)) <= 1e-12 && a > best)) {
      best = a;
    }
  }
  pose.theta = best;
  return pose;
}

Plan plan(const ObjectSpec& obj, const quick_return::FingerGeometry& g) {
  validate_object(obj);
  if (const auto* cyl = std::get_if<Cylinder>(&obj)) {
    const double max_r = quick_return::max_object_radius(g);
    if (cyl->radius > max_r) {
      throw NoPlanError(NoPlanCause::kTooLarge, "cylinder radius " + std::to_string(cyl->radius) +
                                                    " mm exceeds " + std::to_string(max_r) + " mm");
    }
    Plan p;
    p.grasp.state = StateLabel::F;
    const double d = cyl->radius + g.r_ft;
    for (int k = 0; k < 3; ++k) {
      const auto dir = geom::Direction2::from_angle(pi / 2.0 + k * 2.0 * pi / 3.0);
      p.grasp.contacts[k] = cyl->center + dir.vec() * d;
      p.grasp.normals[k] = -dir;
    }
    p.grasp.circumradius = d;
    p.pose = {cyl->center, 0.0};
    return p;
  }
  const auto& poly = std::get<Prism>(obj).vertices;
  const Enumeration en = enumerate_candidates(poly, g);
  const auto best = select_plan(en.candidates);
  if (!best) {
    if (en.rejected_too_large > 0) {
      throw NoPlanError(NoPlanCause::kTooLarge, "object exceeds the fingers' reach");
    }
    throw NoPlanError(NoPlanCause::kFrictionOnly, "only friction-dependent grasps exist");
  }
  return {gripper_pose(best->contacts), *best};
}

}  // namespace gripkit::planner
