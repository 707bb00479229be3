#include "gripkit/numeric.hpp"

#include <utility>

namespace gripkit::numeric {

std::optional<double> bisect_secant(const std::function<double(double)>& f, double lo, double hi,
                                    double coarse_tol, double fine_tol, int max_iter) {
  double f_lo = f(lo);
  double f_hi = f(hi);
  if (std::abs(f_lo) <= fine_tol) return lo;
  if (std::abs(f_hi) <= fine_tol) return hi;
  if ((f_lo > 0.0) == (f_hi > 0.0)) return std::nullopt;

  double mid = 0.5 * (lo + hi);
  double f_mid = f(mid);
  for (int i = 0; i < max_iter && std::abs(f_mid) > coarse_tol; ++i) {
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
    mid = 0.5 * (lo + hi);
    f_mid = f(mid);
  }

  // Secant polish from the two bracket ends nearest the root.
  double x0 = std::abs(f_lo) < std::abs(f_hi) ? lo : hi;
  double f0 = x0 == lo ? f_lo : f_hi;
  double x1 = mid;
  double f1 = f_mid;
  for (int i = 0; i < max_iter && std::abs(f1) > fine_tol; ++i) {
    if (f1 == f0) break;
    double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
    if (!(x2 > lo && x2 < hi)) x2 = 0.5 * (lo + hi);
    const double f2 = f(x2);
    if ((f2 > 0.0) == (f_lo > 0.0)) {
      lo = x2;
      f_lo = f2;
    } else {
      hi = x2;
      f_hi = f2;
    }
    x0 = std::exchange(x1, x2);
    f0 = std::exchange(f1, f2);
  }
  // Bisection fallback if the secant stalled.
  for (int i = 0; i < max_iter && std::abs(f1) > fine_tol && hi - lo > 0.0; ++i) {
    x1 = 0.5 * (lo + hi);
    f1 = f(x1);
    if ((f1 > 0.0) == (f_lo > 0.0)) {
      lo = x1;
      f_lo = f1;
    } else {
      hi = x1;
    }
  }
  return x1;
}

}  // namespace gripkit::numeric
