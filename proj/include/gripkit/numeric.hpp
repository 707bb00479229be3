#pragma once

#include <cmath>
#include <functional>
#include <optional>

namespace gripkit::numeric {

// Root of f on a sign-changing bracket [lo, hi]: bisection until
// |f| <= coarse_tol, then secant steps (kept inside the bracket) until
// |f| <= fine_tol. Returns nullopt if the bracket does not change sign.
std::optional<double> bisect_secant(const std::function<double(double)>& f, double lo, double hi,
                                    double coarse_tol, double fine_tol, int max_iter = 200);

// Central-difference derivative.
inline double central_difference(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace gripkit::numeric
