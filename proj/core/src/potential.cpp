#include "aclab/potential.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace aclab {

namespace {

// 5-point Gauss-Legendre rule on [-1, 1].
constexpr std::array<double, 5> kNodes = {
    -0.9061798459386639927976269, -0.5384693101056830910363144, 0.0,
    0.5384693101056830910363144, 0.9061798459386639927976269};
constexpr std::array<double, 5> kWeights = {
    0.2369268850561890875142640, 0.4786286704993664680412915, 0.5688888888888888888888889,
    0.4786286704993664680412915, 0.2369268850561890875142640};

void require_finite(double s, const char* what) {
  if (!std::isfinite(s)) {
    throw std::domain_error(std::string(what) + ": non-finite argument");
  }
}

}  // namespace

std::optional<double> QuarticWell::profile_closed_form(double r) const { return std::tanh(r); }

Potential::Potential(std::shared_ptr<const DoubleWell> well, int panels)
    : well_(std::move(well)), panels_(panels) {
  if (!well_) throw std::invalid_argument("Potential: null double well");
  if (panels_ < 1) throw std::invalid_argument("Potential: panel count must be positive");
  quartic_ = dynamic_cast<const QuarticWell*>(well_.get()) != nullptr;
  sigma_ = integrate_sqrt_2W(-1.0, 1.0, panels_);
  if (!well_->profile_closed_form(0.0)) tabulate_profile();
}

double Potential::W(double s) const {
  require_finite(s, "W");
  return well_->value(s);
}

double Potential::W_prime(double s) const {
  require_finite(s, "W'");
  return well_->derivative(s);
}

double Potential::sqrt_2W(double s) const {
  require_finite(s, "sqrt(2W)");
  return std::sqrt(2.0 * std::max(0.0, well_->value(s)));
}

double Potential::integrate_sqrt_2W(double a, double b, int panels) const {
  const double width = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * width;
    double panel = 0.0;
    for (std::size_t q = 0; q < kNodes.size(); ++q) {
      const double s = mid + 0.5 * width * kNodes[q];
      panel += kWeights[q] * std::sqrt(2.0 * std::max(0.0, well_->value(s)));
    }
    total += 0.5 * width * panel;
  }
  return total;
}

double Potential::w(double r) const {
  require_finite(r, "w");
  if (r < -1.0 || r > 1.0) throw std::domain_error("w: argument outside [-1, 1]");
  if (r == -1.0) return 0.0;
  // Panel width matches the sigma rule so that w(1) reproduces sigma exactly.
  const int panels = std::max(1, static_cast<int>(std::ceil(panels_ * (r + 1.0) / 2.0)));
  return integrate_sqrt_2W(-1.0, r, panels);
}

void Potential::tabulate_profile() {
  const auto n = static_cast<std::size_t>(std::lround(kTableRange / kTableStep));
  table_.assign(2 * n + 1, 0.0);
  auto slope = [this](double psi) {
    return std::sqrt(2.0 * std::max(0.0, well_->value(std::clamp(psi, -1.0, 1.0))));
  };
  constexpr int kSub = 8;
  const double dr = kTableStep / kSub;
  // Integrate outward from Psi(0) = 0 in both directions; the profile is odd
  // only for symmetric wells, so both halves are integrated.
  for (int dir : {1, -1}) {
    double psi = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
      for (int k = 0; k < kSub; ++k) {
        const double k1 = slope(psi);
        const double k2 = slope(psi + 0.5 * dr * dir * k1);
        const double k3 = slope(psi + 0.5 * dr * dir * k2);
        const double k4 = slope(psi + dr * dir * k3);
        psi += dir * dr * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
        psi = std::clamp(psi, -1.0, 1.0);
      }
      table_[dir > 0 ? n + i : n - i] = psi;
    }
  }
}

double Potential::profile(double r) const {
  require_finite(r, "profile");
  if (auto closed = well_->profile_closed_form(r)) return *closed;
  const auto n = static_cast<std::ptrdiff_t>((table_.size() - 1) / 2);
  const double x = r / kTableStep;
  if (x <= -static_cast<double>(n)) return table_.front();
  if (x >= static_cast<double>(n)) return table_.back();
  const auto i = static_cast<std::ptrdiff_t>(std::floor(x));
  const double u = x - static_cast<double>(i);
  const double p0 = table_[static_cast<std::size_t>(i + n)];
  const double p1 = table_[static_cast<std::size_t>(i + n + 1)];
  const double m0 = sqrt_2W(p0) * kTableStep;
  const double m1 = sqrt_2W(p1) * kTableStep;
  const double u2 = u * u;
  const double u3 = u2 * u;
  return (2 * u3 - 3 * u2 + 1) * p0 + (u3 - 2 * u2 + u) * m0 + (-2 * u3 + 3 * u2) * p1 +
         (u3 - u2) * m1;
}

double Potential::profile_slope(double r) const { return sqrt_2W(profile(r)); }

}  // namespace aclab
