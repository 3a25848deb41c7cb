#pragma once

#include "qdiscord/types.hpp"

#include <boost/math/tools/roots.hpp>

#include <cstdint>
#include <utility>

namespace qdiscord::detail {

struct Minimum {
  double x;
  double fx;
};

/// Golden-section search on [lo, hi] until the bracket is narrower than tol.
/// Boost's Brent minimizer caps its tolerance at sqrt(epsilon), which is
/// coarser than the angle resolution the discord refinement asks for.
template <class F>
Minimum golden_section(F &&f, double lo, double hi, double tol) {
  constexpr double inv_phi = 0.6180339887498948482;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  while (hi - lo > tol) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? Minimum{x1, f1} : Minimum{x2, f2};
}

/// Root of f on [lo, hi] by bisection to width tol. Throws NoSignChange when
/// f(lo) and f(hi) do not bracket a root.
template <class F>
double bisect_root(F &&f, double lo, double hi, double tol) {
  const double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0))
    throw Error(ErrorCode::no_sign_change, "function does not change sign on the bracket");
  std::uintmax_t max_iter = 200;
  auto done = [tol](double a, double b) { return std::abs(b - a) <= tol; };
  const auto [a, b] = boost::math::tools::bisect(f, lo, hi, done, max_iter);
  return 0.5 * (a + b);
}

}  // namespace qdiscord::detail
