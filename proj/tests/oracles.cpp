#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace oracle {

namespace {

constexpr double kPi = std::numbers::pi;

double cross(C a, C b) { return a.real() * b.imag() - a.imag() * b.real(); }
double dot(C a, C b) { return a.real() * b.real() + a.imag() * b.imag(); }
int sgn(double v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

}  // namespace

C fingertip(const Finger& f, double theta) {
  const C z_ip = std::polar(f.r_ip, theta);
  const C z_op(0.0, f.r_op);
  const C u = z_op - z_ip;
  return z_ip - f.l_ft * (u / std::abs(u)) * std::polar(1.0, -f.phi2);
}

namespace {

C fingertip_derivative(const Finger& f, double theta) {
  const C z_ip = std::polar(f.r_ip, theta);
  const C dz_ip = C(0.0, 1.0) * z_ip;
  const C u = C(0.0, f.r_op) - z_ip;
  const C du = -dz_ip;
  const double m = std::abs(u);
  const double dm = dot(u, du) / m;
  const C dw = (du - (u / m) * dm) / m;
  return dz_ip - f.l_ft * std::polar(1.0, -f.phi2) * dw;
}

}  // namespace

double speed_ratio(const Finger& f, double theta) { return std::abs(fingertip_derivative(f, theta)); }

double radial_rate(const Finger& f, double theta) {
  const C z = fingertip(f, theta);
  return dot(z, fingertip_derivative(f, theta)) / std::abs(z);
}

std::optional<double> input_angle(const Cvt& c, double lin_v, double theta_out, int branch) {
  const C p2 = std::polar(c.l_fix, c.ground);
  const C p5 = std::polar(c.l_out, theta_out);
  const double d = std::abs(p5 - p2);
  const double cos_a = (lin_v * lin_v + d * d - c.l_flt * c.l_flt) / (2.0 * lin_v * d);
  if (std::abs(cos_a) > 1.0) return std::nullopt;
  const double base = std::arg(p5 - p2);
  for (double s : {1.0, -1.0}) {
    const double th = base + s * std::acos(cos_a);
    const C p4 = p2 + std::polar(lin_v, th);
    if (sgn(cross(p4 - p2, p5 - p4)) == branch) return std::atan2(std::sin(th), std::cos(th));
  }
  return std::nullopt;
}

std::optional<double> output_angle(const Cvt& c, double lin_v, double theta_in, int branch) {
  const C p4 = std::polar(c.l_fix, c.ground) + std::polar(lin_v, theta_in);
  const double d = std::abs(p4);
  const double cos_b = (c.l_out * c.l_out + d * d - c.l_flt * c.l_flt) / (2.0 * c.l_out * d);
  if (std::abs(cos_b) > 1.0) return std::nullopt;
  for (double s : {1.0, -1.0}) {
    const double th = std::arg(p4) + s * std::acos(cos_b);
    const C p5 = std::polar(c.l_out, th);
    if (sgn(cross(p5 - p4, p5)) == branch) return std::atan2(std::sin(th), std::cos(th));
  }
  return std::nullopt;
}

double amplification(const Cvt& c, double lin_v, double theta_out, int branch) {
  const double h = 1e-4;
  const auto f = [&](double t) {
    const double a = *input_angle(c, lin_v, t, branch);
    const double ref = *input_angle(c, lin_v, theta_out, branch);
    return ref + std::remainder(a - ref, 2.0 * kPi);  // unwrap near the centre value
  };
  return (-f(theta_out + 2 * h) + 8 * f(theta_out + h) - 8 * f(theta_out - h) + f(theta_out - 2 * h)) /
         (12 * h);
}

double virtual_work_force(const Finger& f, double tau, double theta) { return tau / radial_rate(f, theta); }

Tri canonical(double a12, double a13, double l2) {
  const double a23 = kPi - a12 - a13;
  const double l1 = l2 * std::sin(a23) / std::sin(a13);
  const C v12(l1, 0.0);
  return Tri{{C(0.0, 0.0), v12, v12 + l2 * C(-std::cos(a12), std::sin(a12))}};
}

std::vector<std::array<C, 3>> brute_force_placements(const Tri& t, int samples) {
  const C a1 = t.v[0], b1 = t.v[1], a2 = t.v[1], b2 = t.v[2], a3 = t.v[2], b3 = t.v[0];
  const C d3 = b3 - a3;
  // Inward normals of a counterclockwise triangle are left normals.
  const C n1 = C(0, 1) * (b1 - a1), n2 = C(0, 1) * (b2 - a2), n3 = C(0, 1) * d3;
  std::vector<std::array<C, 3>> found;

  for (double turn : {kPi / 3.0, -kPi / 3.0}) {
    const C rot = std::polar(1.0, turn);
    // Vertex positions for P1 at fraction s along side 1, or nullopt when the
    // other two vertices leave their sides.
    const auto place = [&](double s) -> std::optional<std::array<C, 3>> {
      const C p1 = a1 + s * (b1 - a1);
      // P2 = a2 + u (b2 - a2); P3 = p1 + rot (P2 - p1) on line 3.
      const C base = p1 + rot * (a2 - p1);
      const C slope = rot * (b2 - a2);
      const double k = cross(d3, slope);
      if (std::abs(k) < 1e-14) return std::nullopt;
      const double u = -cross(d3, base - a3) / k;
      const C p3 = base + u * slope;
      const double w = dot(p3 - a3, d3) / std::norm(d3);
      if (u < -1e-12 || u > 1 + 1e-12 || w < -1e-12 || w > 1 + 1e-12) return std::nullopt;
      return std::array<C, 3>{p1, a2 + u * (b2 - a2), p3};
    };
    // Signed miss distance of the third normal line from the meeting point of
    // the first two.
    const auto miss = [&](const std::array<C, 3>& p) -> std::optional<double> {
      const double den = cross(n1, n2);
      if (std::abs(den) < 1e-14) return std::nullopt;
      const double s = cross(p[1] - p[0], n2) / den;
      const C x = p[0] + s * n1;
      return cross(n3 / std::abs(n3), x - p[2]);
    };

    std::optional<double> prev_s, prev_g;
    for (int i = 0; i <= samples; ++i) {
      const double s = static_cast<double>(i) / samples;
      const auto p = place(s);
      const auto g = p ? miss(*p) : std::nullopt;
      if (g && prev_g && sgn(*g) != sgn(*prev_g)) {
        double lo = *prev_s, hi = s, glo = *prev_g;
        for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
          const double mid = 0.5 * (lo + hi);
          const auto pm = place(mid);
          const auto gm = pm ? miss(*pm) : std::nullopt;
          if (!gm) break;
          if (sgn(*gm) == sgn(glo)) {
            lo = mid;
            glo = *gm;
          } else {
            hi = mid;
          }
        }
        if (auto root = place(0.5 * (lo + hi))) found.push_back(*root);
      }
      prev_s = g ? std::optional<double>(s) : std::nullopt;
      prev_g = g;
    }
  }
  return found;
}

std::array<C, 3> isodynamic_pedal(const Tri& t) {
  const auto angle_at = [&](int i) {
    const C a = t.v[(i + 2) % 3] - t.v[i], b = t.v[(i + 1) % 3] - t.v[i];
    return std::abs(std::arg(b / a));
  };
  // Weight of vertex i: opposite side length times sin(angle_i + 60 deg).
  std::array<double, 3> w{};
  double total = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double opposite = std::abs(t.v[(i + 2) % 3] - t.v[(i + 1) % 3]);
    w[i] = opposite * std::sin(angle_at(i) + kPi / 3.0);
    total += w[i];
  }
  C o(0.0, 0.0);
  for (int i = 0; i < 3; ++i) o += (w[i] / total) * t.v[i];
  std::array<C, 3> feet{};
  for (int i = 0; i < 3; ++i) {
    const C a = t.v[i], b = t.v[(i + 1) % 3];
    const C u = (b - a) / std::abs(b - a);
    feet[i] = a + u * dot(o - a, u);
  }
  return feet;
}

bool sweep_positive_span(const std::vector<C>& dirs, int samples) {
  for (int k = 0; k < samples; ++k) {
    const C v = std::polar(1.0, 2.0 * kPi * k / samples);
    double best = -1.0;
    for (const C& n : dirs) best = std::max(best, dot(n / std::abs(n), v));
    if (best <= 1e-12) return false;
  }
  return true;
}

}  // namespace oracle
