#pragma once

// Independent reference computations for the unit tests. Nothing here calls
// into aclab, so a test that compares the library against these functions
// compares two separate derivations.

#include <cmath>
#include <functional>
#include <numbers>

namespace oracle {

inline double adaptive_simpson_step(const std::function<double(double)>& f, double a, double b,
                                    double fa, double fm, double fb, double whole, double tol,
                                    int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return adaptive_simpson_step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         adaptive_simpson_step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

/// Adaptive Simpson quadrature of f over [a, b].
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-14) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson_step(f, a, b, fa, fm, fb, whole, tol, 50);
}

/// Classical RK4 for the scalar ODE y' = f(y) over [0, t] with n steps.
inline double rk4(const std::function<double(double)>& f, double y, double t, int n) {
  const double dt = t / n;
  for (int i = 0; i < n; ++i) {
    const double k1 = f(y);
    const double k2 = f(y + 0.5 * dt * k1);
    const double k3 = f(y + 0.5 * dt * k2);
    const double k4 = f(y + dt * k3);
    y += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return y;
}

/// Quartic well (1 - s^2)^2 / 2 and its derivative.
inline double quartic(double s) { return 0.5 * (1.0 - s * s) * (1.0 - s * s); }
inline double quartic_prime(double s) { return -2.0 * s * (1.0 - s * s); }

/// Radius of a sphere shrinking by mean curvature: r^2 = r0^2 - 2 (n - 1) t.
inline double sphere_radius(double r0, int n, double t) {
  const double sq = r0 * r0 - 2.0 * (n - 1) * t;
  return sq > 0.0 ? std::sqrt(sq) : 0.0;
}

inline double ball_volume(int n, double r) {
  if (n == 1) return 2.0 * r;
  if (n == 2) return std::numbers::pi * r * r;
  return 4.0 / 3.0 * std::numbers::pi * r * r * r;
}

inline double sphere_area(int n, double r) {
  if (n == 1) return 2.0;
  if (n == 2) return 2.0 * std::numbers::pi * r;
  return 4.0 * std::numbers::pi * r * r;
}

}  // namespace oracle
