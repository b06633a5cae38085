#include <gtest/gtest.h>

#include <cmath>

#include "aclab/potential.hpp"
#include "support/oracles.hpp"

namespace {

TEST(Potential, SigmaMatchesClosedFormIntegral) {
  // int_{-1}^{1} (1 - s^2) ds = 4/3.
  const aclab::Potential pot;
  EXPECT_NEAR(pot.sigma(), 4.0 / 3.0, 1e-12);
  const double simpson = oracle::integrate([](double s) { return std::sqrt(2.0 * oracle::quartic(s)); }, -1.0, 1.0);
  EXPECT_NEAR(pot.sigma(), simpson, 1e-12);
}

TEST(Potential, WellValuesAndDerivative) {
  const aclab::Potential pot;
  for (double s : {-1.3, -1.0, -0.4, 0.0, 0.25, 0.9, 1.0, 1.2}) {
    EXPECT_NEAR(pot.W(s), oracle::quartic(s), 1e-15);
    EXPECT_NEAR(pot.W_prime(s), oracle::quartic_prime(s), 1e-15);
    EXPECT_NEAR(pot.sqrt_2W(s), std::abs(1.0 - s * s), 1e-15);
  }
  EXPECT_EQ(pot.W(1.0), 0.0);
  EXPECT_EQ(pot.W(-1.0), 0.0);
  EXPECT_DOUBLE_EQ(pot.W(0.0), 0.5);
}

TEST(Potential, ProfileIsTanh) {
  const aclab::Potential pot;
  for (double r : {-6.0, -2.0, -0.5, 0.0, 0.3, 1.0, 4.0, 12.0}) {
    EXPECT_NEAR(pot.profile(r), std::tanh(r), 1e-13);
    EXPECT_NEAR(pot.profile_slope(r), 1.0 - std::tanh(r) * std::tanh(r), 1e-13);
  }
}

TEST(Potential, PrimitiveMatchesQuadrature) {
  const aclab::Potential pot;
  EXPECT_NEAR(pot.w(-1.0), 0.0, 1e-15);
  EXPECT_NEAR(pot.w(1.0), pot.sigma(), 1e-12);
  for (double r : {-0.7, 0.0, 0.45, 0.99}) {
    const double ref = oracle::integrate([](double s) { return 1.0 - s * s; }, -1.0, r);
    EXPECT_NEAR(pot.w(r), ref, 1e-12);
  }
}

// A non-quartic well exercises the tabulated profile: W = (1 - s^2)^2 (1 + s^2) / 2.
class SexticWell final : public aclab::DoubleWell {
 public:
  double value(double s) const override { return 0.5 * (1 - s * s) * (1 - s * s) * (1 + s * s); }
  double derivative(double s) const override {
    const double a = 1 - s * s;
    return 0.5 * (-4.0 * s * a * (1 + s * s) + 2.0 * s * a * a);
  }
  double curvature_bound() const override { return 8.0; }
};

TEST(Potential, TabulatedProfileSolvesProfileOde) {
  const aclab::Potential pot(std::make_shared<SexticWell>());
  const double sigma = oracle::integrate(
      [](double s) { return std::sqrt((1 - s * s) * (1 - s * s) * (1 + s * s)); }, -1.0, 1.0);
  EXPECT_NEAR(pot.sigma(), sigma, 1e-10);
  EXPECT_NEAR(pot.profile(0.0), 0.0, 1e-14);
  // Psi' = sqrt(2 W(Psi)), checked by an RK4 integration of the same ODE from 0.
  const double psi_rk4 = oracle::rk4(
      [](double y) { return std::sqrt((1 - y * y) * (1 - y * y) * (1 + y * y)); }, 0.0, 0.8, 4000);
  EXPECT_NEAR(pot.profile(0.8), psi_rk4, 1e-8);
  EXPECT_LT(pot.profile(-3.0), 0.0);
  EXPECT_GT(pot.profile(3.0), pot.profile(2.0));
}

}  // namespace
