#include <gtest/gtest.h>

#include <cmath>

#include "aclab/test_function.hpp"

namespace {

using aclab::Point;
using aclab::TestFunction;
using aclab::TimeWindow;

double fd_time(const TestFunction& f, const Point& x, double t) {
  const double d = 1e-6;
  return (f.value(x, t + d) - f.value(x, t - d)) / (2 * d);
}

TEST(TestFunction, GradientMatchesFiniteDifferences) {
  const TestFunction fs[] = {
      TestFunction::gaussian_bump({0.1, -0.2, 0.3}, 0.7, 1.5),
      TestFunction::polynomial_bump({0.0, 0.0, 0.0}, 0.5),
      TestFunction::constant_on_window({0.0, 0.1, 0.0}, 0.2, 0.3, 2.0),
  };
  const Point x{0.15, 0.05, 0.2};
  const double d = 1e-6;
  for (const auto& f : fs) {
    const Point g = f.gradient(x, 0.0);
    for (int a = 0; a < 3; ++a) {
      Point xp = x, xm = x;
      xp[static_cast<std::size_t>(a)] += d;
      xm[static_cast<std::size_t>(a)] -= d;
      EXPECT_NEAR(g[static_cast<std::size_t>(a)], (f.value(xp, 0) - f.value(xm, 0)) / (2 * d), 1e-6);
    }
  }
}

TEST(TestFunction, SupportAndValues) {
  const auto g = TestFunction::gaussian_bump({0, 0, 0}, 0.5);
  EXPECT_DOUBLE_EQ(g.value({0, 0, 0}, 0.0), 1.0);
  EXPECT_EQ(g.value({0.5, 0, 0}, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(g.support_radius(), 0.5);
  const auto c = TestFunction::constant_on_window({0, 0, 0}, 0.3, 0.2, 3.0);
  EXPECT_DOUBLE_EQ(c.value({0.29, 0, 0}, 7.0), 3.0);
  EXPECT_EQ(c.value({0.51, 0, 0}, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(c.support_radius(), 0.5);
  EXPECT_DOUBLE_EQ(c.sup_norm(), 3.0);
  EXPECT_DOUBLE_EQ(c.scaled(10.0).sup_norm(), 30.0);
}

TEST(TestFunction, TimeWindowRampsAreC1) {
  const auto f = TestFunction::polynomial_bump({0, 0, 0}, 1.0, 1.0, TimeWindow{0.2, 0.4, 0.1});
  const Point x{0.1, 0, 0};
  EXPECT_EQ(f.value(x, 0.05), 0.0);
  EXPECT_EQ(f.value(x, 0.55), 0.0);
  EXPECT_DOUBLE_EQ(f.value(x, 0.3), f.value(x, 0.25));
  for (double t : {0.12, 0.15, 0.19, 0.45}) EXPECT_NEAR(f.time_derivative(x, t), fd_time(f, x, t), 1e-6);
  EXPECT_NEAR(f.time_derivative(x, 0.1), 0.0, 1e-12);
  EXPECT_NEAR(f.time_derivative(x, 0.2), 0.0, 1e-12);
}

TEST(TestFunction, RefusesDegenerateParameters) {
  EXPECT_THROW(TestFunction::gaussian_bump({0, 0, 0}, 0.0), std::invalid_argument);
  EXPECT_THROW(TestFunction::constant_on_window({0, 0, 0}, 0.2, 0.0), std::invalid_argument);
  EXPECT_THROW(TestFunction::polynomial_bump({0, 0, 0}, 1.0, 1.0, TimeWindow{0.5, 0.2, 0.1}), std::invalid_argument);
}

TEST(TestFunction, SupportInsideGrid) {
  const auto g = aclab::Grid::cube(2, 16, 1.0);
  EXPECT_TRUE(TestFunction::gaussian_bump({0.5, 0.5, 0}, 0.3).support_inside(g));
  EXPECT_FALSE(TestFunction::gaussian_bump({0.5, 0.5, 0}, 0.5).support_inside(g));
}

}  // namespace
