#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "aclab/report.hpp"

namespace {

using namespace aclab;

ReportRow row(std::string scenario, std::optional<double> eps, std::string check, double value) {
  return {std::move(scenario), eps, std::move(check),
          CheckOutcome::make(value, 1.0, 0.5, Sided::upper), 1.25};
}

TEST(Passes, ComparisonModes) {
  EXPECT_TRUE(passes(1.5, 1.0, 0.5, Sided::upper));
  EXPECT_FALSE(passes(1.5, 1.0, 0.5, Sided::upper_strict));
  EXPECT_TRUE(passes(0.5, 1.0, 0.5, Sided::lower));
  EXPECT_FALSE(passes(0.4, 1.0, 0.5, Sided::two));
  EXPECT_TRUE(passes(1.4, 1.0, 0.5, Sided::two));
}

TEST(Passes, NanNeverPasses) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (auto s : {Sided::upper, Sided::upper_strict, Sided::lower, Sided::two}) {
    EXPECT_FALSE(passes(nan, 1.0, 0.5, s));
    EXPECT_FALSE(passes(0.0, nan, 0.5, s));
  }
}

TEST(Sided, StringRoundTrip) {
  for (auto s : {Sided::upper, Sided::upper_strict, Sided::lower, Sided::two}) {
    EXPECT_EQ(sided_from_string(to_string(s)), s);
  }
  EXPECT_THROW(sided_from_string("sideways"), std::exception);
}

TEST(Report, CsvHeaderAndEmptySeconds) {
  VerificationReport r;
  r.add(row("a", 0.05, "energy_dissipation", 0.25));
  std::ostringstream out;
  r.write_csv(out);
  EXPECT_EQ(out.str(),
            "scenario,epsilon,check,value,target,tolerance,sided,pass,seconds\n"
            "a,0.05,energy_dissipation,0.25,1,0.5,upper,true,\n");
}

TEST(Report, SortPutsSweepRowsFirst) {
  VerificationReport r;
  r.add(row("b", 0.01, "x", 0));
  r.add(row("a", 0.02, "y", 0));
  r.add(row("a", std::nullopt, "z", 0));
  r.add(row("a", 0.01, "y", 0));
  r.sort();
  ASSERT_EQ(r.rows().size(), 4u);
  EXPECT_FALSE(r.rows()[0].epsilon.has_value());
  EXPECT_EQ(*r.rows()[1].epsilon, 0.01);
  EXPECT_EQ(*r.rows()[2].epsilon, 0.02);
  EXPECT_EQ(r.rows()[3].scenario, "b");
}

TEST(Report, CsvRoundTripIsExact) {
  VerificationReport r;
  r.add(row("a", 0.1, "l2_flow", 1.0 / 3.0));
  r.add(row("a", std::nullopt, "discrepancy_ratio", 2.0 / 7.0));
  std::ostringstream first;
  r.write_csv(first);
  std::istringstream in(first.str());
  const auto back = VerificationReport::read_csv(in);
  ASSERT_EQ(back.rows().size(), 2u);
  EXPECT_EQ(back.rows()[0].outcome.value, 1.0 / 3.0);
  EXPECT_FALSE(back.rows()[1].epsilon.has_value());
  std::ostringstream second;
  back.write_csv(second);
  EXPECT_EQ(first.str(), second.str());
}

TEST(Report, NanWrittenAsFailure) {
  VerificationReport r;
  r.add({"a", 0.1, "brakke", CheckOutcome::make(std::nan(""), 0.0, 1.0, Sided::upper), 0.0});
  EXPECT_FALSE(r.all_pass());
  std::ostringstream out;
  r.write_csv(out);
  EXPECT_NE(out.str().find("false"), std::string::npos);
}

TEST(Report, MustDetectRows) {
  EXPECT_TRUE(row("a", 0.1, "bv_jump_detect", 0).must_detect());
  EXPECT_FALSE(row("a", 0.1, "bv_residual", 0).must_detect());
}

TEST(Report, TimingSidecarCarriesSeconds) {
  VerificationReport r;
  r.add(row("a", 0.05, "x", 0));
  std::ostringstream out;
  r.write_timing_csv(out);
  EXPECT_NE(out.str().find("1.25"), std::string::npos);
}

TEST(Report, JsonMirrorHasRowsAndMetadata) {
  VerificationReport r;
  r.add(row("a", 0.05, "x", 0));
  r.add_metadata("scenario", "a");
  std::ostringstream out;
  r.write_json(out);
  EXPECT_NE(out.str().find("\"rows\""), std::string::npos);
  EXPECT_NE(out.str().find("\"scenario\""), std::string::npos);
}

TEST(FormatNumber, ShortestRoundTrip) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(std::stod(format_number(1.0 / 3.0)), 1.0 / 3.0);
}

}  // namespace
