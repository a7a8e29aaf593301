#pragma once

#include <algorithm>
#include <cmath>
#include <utility>

namespace glacier {

/// Bisection on a sign-changing bracket [a, b]. Stops when the bracket can no
/// longer shrink in floating point or its width drops below xtol.
template <class Fn>
double bisect(Fn&& f, double a, double b, double xtol = 0.0, int max_iter = 400) {
  double fa = f(a);
  if (fa == 0.0) return a;
  const double fb = f(b);
  if (fb == 0.0) return b;
  for (int i = 0; i < max_iter; ++i) {
    const double m = 0.5 * (a + b);
    if (m <= std::min(a, b) || m >= std::max(a, b) || std::abs(b - a) <= xtol) break;
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm < 0.0) == (fa < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return std::abs(f(a)) <= std::abs(f(b)) ? a : b;
}

/// Golden-section search for a maximum of a unimodal function on [a, b].
/// Returns (argmax, value).
template <class Fn>
std::pair<double, double> golden_max(Fn&& f, double a, double b, double xtol = 1e-14) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (std::abs(b - a) > xtol * (1.0 + std::abs(a) + std::abs(b))) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
    if (c >= d) break;
  }
  const double x = 0.5 * (a + b);
  return {x, f(x)};
}

}  // namespace glacier
