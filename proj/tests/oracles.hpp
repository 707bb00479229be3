// Independent reference computations used only by the tests. None of these
// call into the library's solvers.
#pragma once

#include <array>
#include <complex>
#include <optional>
#include <random>
#include <vector>

namespace oracle {

using C = std::complex<double>;

struct Finger {
  double r_op, r_ip, l_ft, phi2;  // phi2 in rad
};

// Fingertip centre with complex arithmetic: the finger body hangs off P_ip,
// rotated by -phi2 from the direction P_ip -> P_op.
C fingertip(const Finger& f, double theta);
// |d p_ft / d theta| from the analytic derivative of the expression above.
double speed_ratio(const Finger& f, double theta);
// d|p_ft|/d theta, analytic.
double radial_rate(const Finger& f, double theta);

struct Cvt {
  double l_fix, l_flt, l_out;
  double ground = 0.0;
};

// Virtual input angle holding the output at theta_out, by the law of cosines
// in triangle P2-P4-P5; branch picks the sign of cross(p24, p45).
std::optional<double> input_angle(const Cvt& c, double lin_v, double theta_out, int branch);
// Output angle for a virtual input angle, law of cosines in triangle P1-P4-P5;
// branch picks the sign of cross(p45, p15).
std::optional<double> output_angle(const Cvt& c, double lin_v, double theta_in, int branch);
// d theta_in / d theta_out by a 5-point stencil on input_angle.
double amplification(const Cvt& c, double lin_v, double theta_out, int branch);

// Force along the outward radial direction from virtual work:
// tau = F * d|p_ft|/d theta.
double virtual_work_force(const Finger& f, double tau, double theta);

struct Tri {
  std::array<C, 3> v;  // V31, V12, V23 counterclockwise; side i runs v[i] -> v[i+1]
};

// Canonical triangle with side 1 from the origin along +x and side 2 of
// length l2; angles in rad at V12 (a12), V31 (a13).
Tri canonical(double a12, double a13, double l2);

// Equilateral triangles with one vertex on each side (in side order) whose
// side normals through the vertices meet at one point, found by scanning the
// one-parameter family of inscribed equilateral triangles.
std::vector<std::array<C, 3>> brute_force_placements(const Tri& t, int samples = 20000);

// Feet of the perpendiculars from the first isodynamic point.
std::array<C, 3> isodynamic_pedal(const Tri& t);

// True when every direction on a fine sweep has positive dot product with
// at least one of the vectors.
bool sweep_positive_span(const std::vector<C>& dirs, int samples = 7200);

template <typename Rng>
double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace oracle
