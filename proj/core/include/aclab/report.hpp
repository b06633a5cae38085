#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace aclab {

/// How a measured value is compared with its target.
enum class Sided {
  upper,         ///< value <= target + tolerance
  upper_strict,  ///< value < target + tolerance
  lower,         ///< value >= target - tolerance
  two,           ///< |value - target| <= tolerance
};

const char* to_string(Sided sided);
Sided sided_from_string(const std::string& text);

/// Pass flag implied by the comparison; NaN values never pass.
bool passes(double value, double target, double tolerance, Sided sided);

using Details = std::vector<std::pair<std::string, double>>;

/// Outcome of one check before it is attached to a scenario.
struct CheckOutcome {
  double value = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  Sided sided = Sided::upper;
  bool pass = false;
  Details details;

  static CheckOutcome make(double value, double target, double tolerance, Sided sided,
                           Details details = {});
};

struct ReportRow {
  std::string scenario;
  /// Absent for rows that summarize a sweep or an analytic flow.
  std::optional<double> epsilon;
  std::string check;
  CheckOutcome outcome;
  /// Wall time; written to the timing sidecar only.
  double seconds = 0.0;

  /// Rows whose check name ends in "_detect" pass when a known violation is found.
  bool must_detect() const;
};

/// Rows of one verify run plus free-form metadata.
class VerificationReport {
 public:
  static constexpr const char* kHeader =
      "scenario,epsilon,check,value,target,tolerance,sided,pass,seconds";

  void add(ReportRow row) { rows_.push_back(std::move(row)); }
  void add_metadata(std::string key, std::string value);
  void merge(const VerificationReport& other);

  /// Sorts rows by (scenario, epsilon, check); rows without epsilon come first.
  void sort();

  const std::vector<ReportRow>& rows() const { return rows_; }
  const std::vector<std::pair<std::string, std::string>>& metadata() const { return metadata_; }
  bool all_pass() const;

  /// CSV with an empty seconds column, so reruns are byte-identical.
  void write_csv(std::ostream& out) const;
  /// scenario,epsilon,check,seconds.
  void write_timing_csv(std::ostream& out) const;
  /// JSON mirror with details and metadata (no wall times).
  void write_json(std::ostream& out) const;

  void write_files(const std::filesystem::path& dir) const;

  /// Parses a CSV written by write_csv. Details and metadata are not stored in it.
  static VerificationReport read_csv(std::istream& in);
  static VerificationReport read_csv(const std::filesystem::path& path);

  /// Human-readable summary: counts, then one line per row.
  void write_summary(std::ostream& out) const;

 private:
  std::vector<ReportRow> rows_;
  std::vector<std::pair<std::string, std::string>> metadata_;
};

/// Shortest round-trip decimal form, used by every report writer.
std::string format_number(double value);

}  // namespace aclab
