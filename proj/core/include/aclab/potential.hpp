#pragma once

#include <memory>
#include <optional>
#include <vector>

namespace aclab {

/// A double-well potential with minima at -1 and +1.
///
/// Implementations provide W, W' and a bound on |W''| over [-1, 1]. Closed
/// forms for the optimal profile and for the partial primitive are optional;
/// Potential falls back to tabulation and quadrature when they are absent.
class DoubleWell {
 public:
  virtual ~DoubleWell() = default;

  virtual double value(double s) const = 0;
  virtual double derivative(double s) const = 0;
  /// max |W''(s)| for s in [-1, 1].
  virtual double curvature_bound() const = 0;

  virtual std::optional<double> profile_closed_form(double /*r*/) const {
    return std::nullopt;
  }
};

/// W(s) = (1 - s^2)^2 / 2, with profile tanh(r).
class QuarticWell final : public DoubleWell {
 public:
  double value(double s) const override {
    const double a = 1.0 - s * s;
    return 0.5 * a * a;
  }
  double derivative(double s) const override { return -2.0 * s * (1.0 - s * s); }
  double curvature_bound() const override { return 4.0; }
  std::optional<double> profile_closed_form(double r) const override;
};

/// Evaluation front end for a double well: W, W', sqrt(2W), the surface
/// energy constant sigma, the partial primitive w and the 1-D optimal profile.
///
/// All members are const after construction, so one instance can be shared
/// across threads.
class Potential {
 public:
  static constexpr int kDefaultPanels = 1024;

  explicit Potential(std::shared_ptr<const DoubleWell> well = std::make_shared<QuarticWell>(),
                     int panels = kDefaultPanels);

  double W(double s) const;
  double W_prime(double s) const;
  double sqrt_2W(double s) const;

  /// sigma = int_{-1}^{1} sqrt(2 W(s)) ds.
  double sigma() const { return sigma_; }

  /// w(r) = int_{-1}^{r} sqrt(2 W(s)) ds, r in [-1, 1].
  double w(double r) const;

  /// Psi with Psi' = sqrt(2 W(Psi)), Psi(0) = 0.
  double profile(double r) const;
  /// Psi'(r).
  double profile_slope(double r) const;

  double curvature_bound() const { return well_->curvature_bound(); }
  int panels() const { return panels_; }
  const DoubleWell& well() const { return *well_; }
  /// True when the well is the standard quartic, which lets hot loops inline it.
  bool is_quartic() const { return quartic_; }

  /// Composite 5-point Gauss-Legendre quadrature of sqrt(2W) over [a, b]
  /// with `panels` equal panels.
  double integrate_sqrt_2W(double a, double b, int panels) const;

 private:
  void tabulate_profile();

  std::shared_ptr<const DoubleWell> well_;
  int panels_;
  bool quartic_ = false;
  double sigma_ = 0.0;

  // Hermite table of Psi on [-kTableRange, kTableRange] for wells without a
  // closed-form profile.
  static constexpr double kTableRange = 24.0;
  static constexpr double kTableStep = 1.0 / 256.0;
  std::vector<double> table_;
};

}  // namespace aclab
