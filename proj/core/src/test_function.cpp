#include "aclab/test_function.hpp"

#include <cmath>
#include <stdexcept>

namespace aclab {

namespace {

// 1 - (3u^2 - 2u^3) on [0, 1]: C^1 step from 1 down to 0.
void smooth_down(double u, double& s, double& ds) {
  if (u <= 0.0) {
    s = 1.0;
    ds = 0.0;
  } else if (u >= 1.0) {
    s = 0.0;
    ds = 0.0;
  } else {
    s = 1.0 - u * u * (3.0 - 2.0 * u);
    ds = -6.0 * u * (1.0 - u);
  }
}

double distance(const Point& a, const Point& b) {
  const double dx = a[0] - b[0];
  const double dy = a[1] - b[1];
  const double dz = a[2] - b[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

}  // namespace

TestFunction::TestFunction(Kind kind, const Point& center, double radius, double spatial_ramp,
                           double amplitude, std::optional<TimeWindow> window)
    : kind_(kind),
      center_(center),
      radius_(radius),
      spatial_ramp_(spatial_ramp),
      amplitude_(amplitude),
      window_(window) {
  if (!(radius_ > 0.0) || !std::isfinite(radius_)) {
    throw std::invalid_argument("TestFunction: radius must be positive");
  }
  if (kind_ == Kind::constant_on_window && !(spatial_ramp_ > 0.0)) {
    throw std::invalid_argument("TestFunction: constant-on-window needs a positive spatial ramp");
  }
  if (!std::isfinite(amplitude_)) throw std::invalid_argument("TestFunction: amplitude not finite");
  if (window_) {
    if (!(window_->ramp > 0.0) || !(window_->end >= window_->start)) {
      throw std::invalid_argument("TestFunction: time window needs start <= end and ramp > 0");
    }
  }
}

TestFunction TestFunction::gaussian_bump(const Point& center, double radius, double amplitude,
                                         std::optional<TimeWindow> window) {
  return {Kind::gaussian_bump, center, radius, 0.0, amplitude, window};
}

TestFunction TestFunction::polynomial_bump(const Point& center, double radius, double amplitude,
                                           std::optional<TimeWindow> window) {
  return {Kind::polynomial_bump, center, radius, 0.0, amplitude, window};
}

TestFunction TestFunction::constant_on_window(const Point& center, double radius,
                                              double spatial_ramp, double amplitude,
                                              std::optional<TimeWindow> window) {
  return {Kind::constant_on_window, center, radius, spatial_ramp, amplitude, window};
}

void TestFunction::radial(double dist, double& s, double& ds) const {
  switch (kind_) {
    case Kind::gaussian_bump: {
      const double rho = dist / radius_;
      if (rho >= 1.0) {
        s = ds = 0.0;
        return;
      }
      const double q = 1.0 - rho * rho;
      s = std::exp(1.0 - 1.0 / q);
      ds = s * (-2.0 * rho / (q * q)) / radius_;
      return;
    }
    case Kind::polynomial_bump: {
      const double rho = dist / radius_;
      if (rho >= 1.0) {
        s = ds = 0.0;
        return;
      }
      const double q = 1.0 - rho * rho;
      s = q * q;
      ds = -4.0 * rho * q / radius_;
      return;
    }
    case Kind::constant_on_window: {
      smooth_down((dist - radius_) / spatial_ramp_, s, ds);
      ds /= spatial_ramp_;
      return;
    }
  }
}

void TestFunction::temporal(double t, double& tau, double& dtau) const {
  if (!window_) {
    tau = 1.0;
    dtau = 0.0;
    return;
  }
  const auto& w = *window_;
  if (t < w.start) {
    smooth_down((w.start - t) / w.ramp, tau, dtau);
    dtau = -dtau / w.ramp;
  } else if (t > w.end) {
    smooth_down((t - w.end) / w.ramp, tau, dtau);
    dtau /= w.ramp;
  } else {
    tau = 1.0;
    dtau = 0.0;
  }
}

double TestFunction::value(const Point& x, double t) const {
  double s = 0.0, ds = 0.0, tau = 0.0, dtau = 0.0;
  radial(distance(x, center_), s, ds);
  if (s == 0.0) return 0.0;
  temporal(t, tau, dtau);
  return amplitude_ * s * tau;
}

Point TestFunction::gradient(const Point& x, double t) const {
  const double d = distance(x, center_);
  double s = 0.0, ds = 0.0, tau = 0.0, dtau = 0.0;
  radial(d, s, ds);
  if (ds == 0.0 || d == 0.0) return {0.0, 0.0, 0.0};
  temporal(t, tau, dtau);
  const double f = amplitude_ * ds * tau / d;
  return {f * (x[0] - center_[0]), f * (x[1] - center_[1]), f * (x[2] - center_[2])};
}

double TestFunction::time_derivative(const Point& x, double t) const {
  double s = 0.0, ds = 0.0, tau = 0.0, dtau = 0.0;
  radial(distance(x, center_), s, ds);
  if (s == 0.0) return 0.0;
  temporal(t, tau, dtau);
  return amplitude_ * s * dtau;
}

double TestFunction::sup_norm() const { return std::abs(amplitude_); }

double TestFunction::support_radius() const {
  return kind_ == Kind::constant_on_window ? radius_ + spatial_ramp_ : radius_;
}

bool TestFunction::support_inside(const Grid& grid) const {
  return grid.contains_ball(center_, support_radius());
}

TestFunction TestFunction::scaled(double factor) const {
  TestFunction copy = *this;
  copy.amplitude_ *= factor;
  return copy;
}

}  // namespace aclab
