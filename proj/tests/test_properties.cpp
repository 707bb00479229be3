#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "gripkit/cli.hpp"
#include "gripkit/design_search.hpp"
#include "gripkit/immobility.hpp"
#include "gripkit/planner.hpp"
#include "gripkit/statics.hpp"
#include "oracles.hpp"

using namespace gripkit;
using geom::deg_to_rad;
using geom::Direction2;
using geom::Point2;
using std::numbers::pi;

namespace {

std::vector<oracle::C> as_complex(std::initializer_list<Direction2> ns) {
  std::vector<oracle::C> out;
  for (const auto& n : ns) out.emplace_back(n.ux(), n.uy());
  return out;
}

std::string run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "gripkit");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return out.str();
}

}  // namespace

TEST_SUITE("properties") {
  TEST_CASE("circle intersections satisfy both circles") {
    std::mt19937 rng(1);
    int solved = 0;
    while (solved < 1000) {
      const Point2 c1{oracle::uniform(rng, -50, 50), oracle::uniform(rng, -50, 50)};
      const Point2 c2{oracle::uniform(rng, -50, 50), oracle::uniform(rng, -50, 50)};
      const double r1 = oracle::uniform(rng, 1, 60), r2 = oracle::uniform(rng, 1, 60);
      const auto pts = geom::circle_circle_intersection(c1, r1, c2, r2);
      if (pts.empty()) continue;
      ++solved;
      for (const auto& p : pts) {
        CHECK(std::abs(geom::distance(p, c1) - r1) < 1e-9);
        CHECK(std::abs(geom::distance(p, c2) - r2) < 1e-9);
      }
    }
  }

  TEST_CASE("positive spanning matches a sweep and ignores rotation") {
    std::mt19937 rng(2);
    for (int i = 0; i < 2000; ++i) {
      const auto a = Direction2::from_angle(oracle::uniform(rng, -pi, pi));
      const auto b = Direction2::from_angle(oracle::uniform(rng, -pi, pi));
      const auto c = Direction2::from_angle(oracle::uniform(rng, -pi, pi));
      const bool spans = geom::positively_spans(a, b, c);
      CHECK(spans == oracle::sweep_positive_span(as_complex({a, b, c}), 360 * 20));
      const double rot = oracle::uniform(rng, -pi, pi);
      CHECK(spans == geom::positively_spans(a.rotated(rot), b.rotated(rot), c.rotated(rot)));
    }
  }

  TEST_CASE("virtual edges: offset distance, orthogonality, rigid equivariance") {
    std::mt19937 rng(3);
    for (int i = 0; i < 300; ++i) {
      std::array<geom::Segment, 3> edges;
      for (auto& e : edges) {
        e.a = {oracle::uniform(rng, -40, 40), oracle::uniform(rng, -40, 40)};
        e.b = e.a + Point2{oracle::uniform(rng, 1, 30), oracle::uniform(rng, -30, 30)};
      }
      const double r_ft = oracle::uniform(rng, 0.5, 6);
      const auto v = geom::virtual_edges(edges, r_ft);
      const geom::RigidTransform2 t{oracle::uniform(rng, -pi, pi),
                                    {oracle::uniform(rng, -20, 20), oracle::uniform(rng, -20, 20)}};
      std::array<geom::Segment, 3> moved;
      for (int k = 0; k < 3; ++k) moved[k] = t.apply(edges[k]);
      const auto vm = geom::virtual_edges(moved, r_ft);
      for (int k = 0; k < 3; ++k) {
        CHECK(std::abs(geom::dot(v[k].line.dir.vec(), v[k].inward_normal.vec())) < 1e-12);
        CHECK(std::abs(edges[k].line().signed_distance(v[k].a) + r_ft) < 1e-9);
        CHECK(std::abs(edges[k].line().signed_distance(v[k].b) + r_ft) < 1e-9);
        CHECK(geom::distance(t.apply(v[k].a), vm[k].a) < 1e-9);
        CHECK(geom::distance(t.apply(v[k].b), vm[k].b) < 1e-9);
      }
    }
  }

  TEST_CASE("fingertip radial map: monotone, invertible, continuous") {
    const auto g = quick_return::FingerGeometry::nominal();
    double prev = -1, min_r = 1e9;
    Point2 prev_p;
    for (int i = 0; i <= 1000; ++i) {
      const double th = g.theta_closed + (g.theta_open - g.theta_closed) * i / 1000.0;
      const auto s = quick_return::sample(g, th);
      CHECK(s.radial_distance == doctest::Approx(s.p_ft.norm()).epsilon(1e-12));
      CHECK(s.radial_distance > prev);
      prev = s.radial_distance;
      min_r = std::min(min_r, prev);
      CHECK(std::abs(quick_return::theta_for_radius(g, prev) - th) < deg_to_rad(1e-6));
    }
    CHECK(min_r <= g.r_ft);
    for (double th = g.theta_closed; th <= g.theta_open; th += deg_to_rad(0.01)) {
      const Point2 p = quick_return::fingertip_position(g, th);
      if (th > g.theta_closed) CHECK(geom::distance(p, prev_p) < 0.1);
      prev_p = p;
    }
  }

  TEST_CASE("cvt: reciprocity, closure and stopper amplification dominance") {
    const auto g = ls_cvt::CvtGeometry::nominal();
    const auto f = quick_return::FingerGeometry::nominal();
    for (double th = f.theta_closed; th <= f.theta_open; th += deg_to_rad(0.1)) {
      const double t_out = ls_cvt::output_angle_for_plate(g, th);
      const auto lo = ls_cvt::state_from_output(g, t_out, ls_cvt::LoadMode::kNoLoad);
      const auto hi = ls_cvt::state_from_output(g, t_out, ls_cvt::LoadMode::kStopperEngaged);
      for (const auto* s : {&lo, &hi}) {
        CHECK(s->closure_residual() < 1e-9);
        const auto r = ls_cvt::ideal_ratios(s->lin_v, g.l_out, s->theta1, s->theta2);
        CHECK(std::abs(r.torque * r.speed - 1.0) < 1e-12);
      }
      CHECK(lo.lin_v == g.lin_v_max);
      CHECK(hi.lin_v == g.lin_v_min);
      CHECK(hi.eps_amp >= lo.eps_amp);
    }
  }

  TEST_CASE("cvt: output angle is continuous along the input sweep") {
    const auto g = ls_cvt::CvtGeometry::nominal();
    double prev = ls_cvt::solve_output_angle(g, g.theta_in_range.lo, g.lin_v_max);
    for (double th = g.theta_in_range.lo; th <= g.theta_in_range.hi; th += deg_to_rad(0.01)) {
      const double out = ls_cvt::solve_output_angle(g, th, g.lin_v_max);
      CHECK(std::abs(std::remainder(out - prev, 2 * pi)) < deg_to_rad(0.5));
      prev = out;
    }
  }

  TEST_CASE("statics: moment residual and score homogeneity") {
    const auto g = quick_return::FingerGeometry::nominal();
    const auto prof = statics::force_profile(g, ls_cvt::CvtGeometry::nominal(), {});
    double prev_r = -1;
    for (const auto& s : prof.samples) {
      CHECK(s.r_ob > prev_r);
      prev_r = s.r_ob;
      CHECK(std::isfinite(s.f_cnt));
      CHECK(s.f_cnt >= 0);
      const auto t = statics::tip_force_detail(g, s.tau_out, s.r_ob);
      const auto pose = quick_return::finger_pose(g, quick_return::theta_for_radius(g, s.r_ob + g.r_ft));
      const Point2 u = pose.p_ft / pose.p_ft.norm();
      const double m = geom::cross(pose.p_op_ip, t.f_ip) + geom::cross(u * s.r_ob - pose.p_op, t.f_cnt);
      CHECK(std::abs(m) < 1e-6);
    }
    std::mt19937 rng(4);
    for (int i = 0; i < 100; ++i) {
      const double v = oracle::uniform(rng, 1, 2000), fo = oracle::uniform(rng, 1, 300),
                   w = oracle::uniform(rng, 0.05, 3);
      CHECK(statics::performance_score(2 * v, fo, w / 2) ==
            doctest::Approx(4 * statics::performance_score(v, fo, w)).epsilon(1e-12));
    }
  }

  TEST_CASE("contact triangle: equations hold and the tilt root is unique") {
    std::mt19937 rng(5);
    int solved = 0;
    for (int trial = 0; trial < 400 && solved < 100; ++trial) {
      const double a12 = deg_to_rad(oracle::uniform(rng, 5, 89.5));
      const double a13 = deg_to_rad(oracle::uniform(rng, 5, 89.5));
      if (a12 + a13 > deg_to_rad(175)) continue;
      const immobility::AngleSet t{a12, a13, pi - a12 - a13};
      const double l2 = oracle::uniform(rng, 5, 100);
      const auto tilt = [&](double a) {
        return std::sin(t.s12 + t.s13) * std::sin(pi / 3 + a - t.s12) -
               std::sin(t.s12 + t.s23) * std::sin(pi / 3 - a);
      };
      int changes = 0;
      double prev = tilt(1e-9);
      for (int i = 1; i <= 10000; ++i) {
        const double cur = tilt(1e-9 + (pi / 3 - 2e-9) * i / 10000.0);
        changes += (cur > 0) != (prev > 0);
        prev = cur;
      }
      CHECK(changes <= 1);
      immobility::StateCSolution s;
      try {
        s = immobility::solve_state_c(t, l2);
      } catch (const Error&) {
        continue;
      }
      ++solved;
      CHECK(changes == 1);
      CHECK(std::abs(tilt(s.theta1)) < 1e-9);
      CHECK(std::abs(s.l_o2 * std::sin(t.s12) - s.l_r * std::cos(t.s12 - s.theta1)) / l2 < 1e-9);
      CHECK(std::abs((l2 - s.l_o2) * std::sin(t.s23) - s.l_r * std::sin(5 * pi / 6 - t.s23 - s.theta1)) / l2 <
            1e-9);
      // Contacts on the sides, equal sides, concurrent normals.
      const auto& v = s.triangle;
      for (int i = 0; i < 3; ++i) {
        const geom::Segment side{v[i], v[(i + 1) % 3]};
        CHECK(std::abs(side.line().signed_distance(s.contacts[i])) / l2 < 1e-9);
        CHECK(std::abs(geom::distance(s.contacts[i], s.contacts[(i + 1) % 3]) - s.l_r) / l2 < 1e-9);
      }
      CHECK(immobility::check_immobility(s.contacts, s.normals, 1e-6));
      CHECK(geom::positively_spans(s.normals[0], s.normals[1], s.normals[2]));
    }
    CHECK(solved >= 50);
  }

  TEST_CASE("classification ignores finger relabeling") {
    std::mt19937 rng(6);
    for (int i = 0; i < 200; ++i) {
      // Acute triangle: every labeling is C.
      const double a = deg_to_rad(oracle::uniform(rng, 35, 85)), b = deg_to_rad(oracle::uniform(rng, 35, 85));
      if (pi - a - b >= pi / 2 || pi - a - b <= 0.1) continue;
      const auto tri = oracle::canonical(a, b, oracle::uniform(rng, 10, 40));
      std::vector<geom::VirtualEdge> ve;
      for (int k = 0; k < 3; ++k) {
        const geom::Segment s{{tri.v[k].real(), tri.v[k].imag()},
                              {tri.v[(k + 1) % 3].real(), tri.v[(k + 1) % 3].imag()}};
        ve.push_back(geom::offset_edge(s, 3.5));
      }
      std::array<int, 3> perm{0, 1, 2};
      do {
        CHECK(immobility::classify_triple(ve, perm) == immobility::StateLabel::C);
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
    const geom::Polygon sq{{0, 0}, {30, 0}, {30, 30}, {0, 30}};
    std::vector<geom::VirtualEdge> ve;
    for (const auto& e : geom::edges_of(sq)) ve.push_back(geom::offset_edge(e, 3.5));
    for (std::array<int, 3> base : {std::array{0, 0, 2}, std::array{0, 1, 2}, std::array{0, 0, 1}}) {
      const auto label = immobility::classify_triple(ve, base);
      std::sort(base.begin(), base.end());
      do {
        CHECK(immobility::classify_triple(ve, base) == label);
      } while (std::next_permutation(base.begin(), base.end()));
    }
  }

  TEST_CASE("planner: pose equivariance and no friction-only states") {
    const auto g = quick_return::FingerGeometry::nominal();
    std::mt19937 rng(7);
    const geom::Polygon shapes[] = {
        {{0, 0}, {30, 0}, {30, 50}, {0, 50}},
        {{0, 0}, {40, 0}, {12, 30}},
        {{0, 0}, {20, 0}, {30, 10 * std::sqrt(3.0)}, {20, 20 * std::sqrt(3.0)}, {0, 20 * std::sqrt(3.0)},
         {-10, 10 * std::sqrt(3.0)}},
    };
    for (const auto& poly : shapes) {
      const auto p0 = planner::plan(Prism{poly}, g);
      for (int i = 0; i < 10; ++i) {
        const geom::RigidTransform2 t{oracle::uniform(rng, -pi, pi),
                                      {oracle::uniform(rng, -50, 50), oracle::uniform(rng, -50, 50)}};
        geom::Polygon moved;
        for (const auto& v : poly) moved.push_back(t.apply(v));
        const auto p = planner::plan(Prism{moved}, g);
        CHECK(p.grasp.state != immobility::StateLabel::B);
        CHECK(p.grasp.state != immobility::StateLabel::E);
        CHECK(geom::distance(p.pose.center, t.apply(p0.pose.center)) < 1e-6);
        const double shift = std::remainder(p.pose.theta - p0.pose.theta - t.angle, 2 * pi / 3);
        CHECK(std::abs(shift) < 1e-6);
      }
    }
  }

  TEST_CASE("search: deterministic and feasible cells re-check") {
    design_search::FingerSearchSpace s;
    s.r_ip = {24, 28, 0.5};
    s.phi2_deg = {54, 62, 0.5};
    const auto a = design_search::optimize_finger(s);
    const auto b = design_search::optimize_finger(s);
    CHECK(a.to_csv() == b.to_csv());
    for (const auto& c : a.cells) {
      const auto again = design_search::evaluate_finger(s, c.r_ip, c.phi2_deg);
      CHECK(again.feasible == c.feasible);
      if (!c.feasible) continue;
      quick_return::FingerGeometry g;
      g.r_op = s.r_op;
      g.r_ip = c.r_ip;
      g.l_ft = s.l_ft;
      g.r_ft = s.r_ft;
      g.phi2 = deg_to_rad(c.phi2_deg);
      g.theta_closed = c.theta_closed;
      g.theta_open = c.theta_open;
      CHECK(quick_return::graspable_width(g) >= s.min_graspable_width);
      CHECK(quick_return::fingertip_position(g, c.theta_open).norm() <= s.envelope_radius + 1e-9);
    }
  }

  TEST_CASE("cli output is byte-stable") {
    CHECK(run_cli({"defaults"}) == run_cli({"defaults"}));
    CHECK(run_cli({"analyze", "force-profile"}) == run_cli({"analyze", "force-profile"}));
  }
}
