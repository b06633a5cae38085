#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "aclab/operators.hpp"

namespace {

using aclab::Grid;
using aclab::Point;
using aclab::ScalarField;
constexpr double kPi = std::numbers::pi;

ScalarField wave(const Grid& g) {
  return ScalarField::sample(g, [](const Point& x) { return std::sin(2 * kPi * x[0]) * std::cos(2 * kPi * x[1]); });
}

TEST(Operators, LaplacianIsSecondOrderOnPeriodicWave) {
  double prev = 0.0;
  for (int n : {32, 64, 128}) {
    const Grid g = Grid::cube(2, n, 1.0);
    const auto lap = aclab::laplacian(wave(g));
    double err = 0.0;
    for (std::size_t c = 0; c < g.size(); ++c) {
      const Point x = g.center(c);
      const double exact = -8 * kPi * kPi * std::sin(2 * kPi * x[0]) * std::cos(2 * kPi * x[1]);
      err = std::max(err, std::abs(lap[c] - exact));
    }
    if (prev > 0.0) EXPECT_NEAR(prev / err, 4.0, 0.1);
    prev = err;
  }
}

TEST(Operators, BackwardDivergenceOfForwardGradientIsLaplacian) {
  for (auto b : {aclab::Boundary::periodic, aclab::Boundary::reflective}) {
    const Grid g = Grid::cube(2, 16, 1.0, b);
    const auto f = ScalarField::sample(g, [](const Point& x) { return x[0] * x[0] - std::exp(x[1]); });
    const auto grad = aclab::forward_gradient(f);
    const auto div = aclab::backward_divergence(grad);
    const auto lap = aclab::laplacian(f);
    for (std::size_t c = 0; c < g.size(); ++c) EXPECT_NEAR(div[c], lap[c], 1e-9);
  }
}

TEST(Operators, FaceAveragedGradientIntegratesToDirichletEnergy) {
  const Grid g = Grid::cube(2, 24, 1.0, aclab::Boundary::reflective);
  const auto f = ScalarField::sample(g, [](const Point& x) { return std::tanh((x[0] - 0.4) / 0.05) + x[1]; });
  const auto g2 = aclab::face_averaged_gradient_sq(f);
  const auto fwd = aclab::forward_gradient(f);
  double faces = 0.0;
  for (std::size_t c = 0; c < g.size(); ++c) faces += fwd[0][c] * fwd[0][c] + fwd[1][c] * fwd[1][c];
  EXPECT_NEAR(aclab::integrate(g2), faces * g.cell_volume(), 1e-10 * faces);
}

TEST(Operators, CentralGradientOfLinearFieldIsExactInside) {
  const Grid g = Grid::cube(3, 8, 1.0, aclab::Boundary::reflective);
  const auto f = ScalarField::sample(g, [](const Point& x) { return 2 * x[0] - x[1] + 0.5 * x[2]; });
  const auto grad = aclab::spatial_gradient(f);
  const std::size_t c = g.flat({3, 4, 5});
  EXPECT_NEAR(grad[0][c], 2.0, 1e-12);
  EXPECT_NEAR(grad[1][c], -1.0, 1e-12);
  EXPECT_NEAR(grad[2][c], 0.5, 1e-12);
}

TEST(Operators, IntegrateConstantAndBall) {
  const Grid g = Grid::cube(2, 200, 2.0, aclab::Boundary::periodic, -1.0);
  const ScalarField one(g, 1.0);
  EXPECT_NEAR(aclab::integrate(one), 4.0, 1e-12);
  EXPECT_NEAR(aclab::integrate(one, aclab::Region::ball({0, 0, 0}, 0.5)), kPi * 0.25, 2e-3);
}

TEST(Operators, WeightedIntegralUsesTestFunction) {
  const Grid g = Grid::cube(1, 400, 1.0, aclab::Boundary::reflective);
  const ScalarField one(g, 1.0);
  const auto test = aclab::TestFunction::polynomial_bump({0.5, 0, 0}, 0.25);
  // int (1 - (x/R)^2)^2 over [-R, R] = 16 R / 15.
  EXPECT_NEAR(aclab::integrate(one, test, 0.0), 16.0 * 0.25 / 15.0, 1e-5);
}

}  // namespace
