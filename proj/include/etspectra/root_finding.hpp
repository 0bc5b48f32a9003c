#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "etspectra/error.hpp"

namespace etspectra {

struct RootResult {
  double x = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

// Newton iteration kept inside a sign-changing bracket [lo, hi]; any step that leaves the
// bracket, or fails to halve |f|, is replaced by bisection. Stops when |f| <= ftol or the
// bracket has shrunk to a few ulps.
template <class F, class DF>
RootResult newton_bisect(F&& f, DF&& df, double lo, double hi, double ftol, int max_iter) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return {lo, 0.0, 0};
  if (fhi == 0.0) return {hi, 0.0, 0};
  if ((flo < 0.0) == (fhi < 0.0))
    throw Error(ErrorKind::RootNotBracketed, "no sign change on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");

  double x = 0.5 * (lo + hi);
  double fx = f(x);
  for (int it = 1; it <= max_iter; ++it) {
    if (std::abs(fx) <= ftol) return {x, std::abs(fx), it};
    if ((fx < 0.0) == (flo < 0.0)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(x)) return {x, std::abs(fx), it};

    const double slope = df(x);
    double next = (slope != 0.0 && std::isfinite(slope)) ? x - fx / slope : lo - 1.0;
    bool newton_ok = next > lo && next < hi;
    double fnext = 0.0;
    if (newton_ok) {
      fnext = f(next);
      newton_ok = std::abs(fnext) < 0.5 * std::abs(fx);
    }
    if (!newton_ok) {
      // Newton went astray; take the bisection point instead.
      if (next > lo && next < hi) {
        if ((fnext < 0.0) == (flo < 0.0)) {
          lo = next;
          flo = fnext;
        } else {
          hi = next;
        }
      }
      next = 0.5 * (lo + hi);
      fnext = f(next);
    }
    x = next;
    fx = fnext;
  }
  throw Error(ErrorKind::NoConvergence, "root not converged after " + std::to_string(max_iter) + " iterations");
}

}  // namespace etspectra
