#include <cmath>
#include <gtest/gtest.h>

#include "aclab/field_io.hpp"
#include "aclab/grid.hpp"
#include "aclab/parallel.hpp"
#include "aclab/scalar_field.hpp"

#include <sstream>

namespace {

using aclab::Boundary;
using aclab::Grid;

TEST(Grid, IndexRoundTripAndCenters) {
  const Grid g(3, {8, 10, 12}, {1.0, 1.25, 1.5}, {Boundary::periodic, Boundary::reflective, Boundary::periodic},
               {-0.5, 0.0, 1.0});
  EXPECT_DOUBLE_EQ(g.spacing(), 0.125);
  EXPECT_EQ(g.size(), 8u * 10u * 12u);
  for (std::size_t c = 0; c < g.size(); c += 37) EXPECT_EQ(g.flat(g.index(c)), c);
  const auto p = g.center(g.flat({0, 0, 0}));
  EXPECT_DOUBLE_EQ(p[0], -0.5 + 0.0625);
  EXPECT_DOUBLE_EQ(p[2], 1.0 + 0.0625);
}

TEST(Grid, RejectsNonSquareCells) {
  EXPECT_THROW(Grid(2, {8, 8}, {1.0, 2.0}, {Boundary::periodic, Boundary::periodic}), std::invalid_argument);
}

TEST(Grid, NeighborsWrapOrMirror) {
  const Grid g(1, {8}, {1.0}, {Boundary::periodic});
  EXPECT_EQ(g.neighbor(7, 0, +1), 0u);
  EXPECT_EQ(g.neighbor(0, 0, -1), 7u);
  EXPECT_TRUE(g.has_neighbor(7, 0, +1));
  const Grid r(1, {8}, {1.0}, {Boundary::reflective});
  EXPECT_EQ(r.neighbor(7, 0, +1), 7u);
  EXPECT_EQ(r.neighbor(0, 0, -1), 0u);
  EXPECT_FALSE(r.has_neighbor(7, 0, +1));
  EXPECT_TRUE(r.has_neighbor(6, 0, +1));
}

TEST(Grid, ContainsBallIsStrict) {
  const Grid g = Grid::cube(2, 16, 1.0);
  EXPECT_TRUE(g.contains_ball({0.5, 0.5, 0.0}, 0.4));
  EXPECT_FALSE(g.contains_ball({0.5, 0.5, 0.0}, 0.5));
}

TEST(ScalarField, SampleAndSum) {
  const Grid g = Grid::cube(2, 16, 2.0);
  const auto f = aclab::ScalarField::sample(g, [](const aclab::Point& x) { return x[0] + 2.0 * x[1]; });
  EXPECT_DOUBLE_EQ(f[g.flat({1, 2, 0})], 0.1875 + 2.0 * 0.3125);
  EXPECT_THROW(aclab::ScalarField(g, std::vector<double>(3, 0.0)), std::invalid_argument);
}

TEST(Parallel, PairwiseSumIsIndependentOfThreadCount) {
  std::vector<double> v(100003);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = 1.0 / (1.0 + static_cast<double>(i % 977)) * (i % 2 ? 1 : -1.1);
  const double one = aclab::pairwise_sum(v);
  double eight = 0.0;
  {
    aclab::ThreadCountScope scope(8);
    eight = aclab::pairwise_sum(v);
  }
  EXPECT_EQ(one, eight);
}

TEST(FieldIo, RoundTripPreservesBits) {
  const Grid g(2, {8, 12}, {1.0, 1.5}, {Boundary::periodic, Boundary::periodic});
  const auto f = aclab::ScalarField::sample(g, [](const aclab::Point& x) { return std::sin(7.0 * x[0]) * x[1]; });
  std::stringstream buf;
  aclab::write_field_dump(buf, f, 0.05, 0.125);
  const auto back = aclab::read_field_dump(buf);
  EXPECT_EQ(back.eps, 0.05);
  EXPECT_EQ(back.time, 0.125);
  ASSERT_TRUE(back.field.grid().same_shape(g));
  for (std::size_t c = 0; c < g.size(); ++c) EXPECT_EQ(back.field[c], f[c]);
}

TEST(FieldIo, RejectsBadMagicAndTruncation) {
  std::stringstream bad("ACF2xxxxxxxx");
  EXPECT_THROW(aclab::read_field_dump(bad), std::runtime_error);
  const Grid g = Grid::cube(1, 8, 1.0);
  std::stringstream buf;
  aclab::write_field_dump(buf, aclab::ScalarField(g, 0.5), 0.1, 0.0);
  std::string bytes = buf.str();
  std::stringstream cut(bytes.substr(0, bytes.size() - 4));
  EXPECT_THROW(aclab::read_field_dump(cut), std::runtime_error);
}

}  // namespace
