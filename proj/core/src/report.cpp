#include "aclab/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <tuple>

#include "json.hpp"

namespace aclab {

const char* to_string(Sided sided) {
  switch (sided) {
    case Sided::upper:
      return "upper";
    case Sided::upper_strict:
      return "upper-strict";
    case Sided::lower:
      return "lower";
    case Sided::two:
      return "two";
  }
  return "two";
}

Sided sided_from_string(const std::string& text) {
  if (text == "upper") return Sided::upper;
  if (text == "upper-strict") return Sided::upper_strict;
  if (text == "lower") return Sided::lower;
  if (text == "two") return Sided::two;
  throw std::invalid_argument("unknown sided value '" + text + "'");
}

bool passes(double value, double target, double tolerance, Sided sided) {
  if (std::isnan(value) || std::isnan(target) || std::isnan(tolerance)) return false;
  switch (sided) {
    case Sided::upper:
      return value <= target + tolerance;
    case Sided::upper_strict:
      return value < target + tolerance;
    case Sided::lower:
      return value >= target - tolerance;
    case Sided::two:
      return std::abs(value - target) <= tolerance;
  }
  return false;
}

CheckOutcome CheckOutcome::make(double value, double target, double tolerance, Sided sided,
                                Details details) {
  return {value, target, tolerance, sided, passes(value, target, tolerance, sided),
          std::move(details)};
}

bool ReportRow::must_detect() const {
  constexpr std::string_view suffix = "_detect";
  return check.size() >= suffix.size() &&
         std::string_view(check).substr(check.size() - suffix.size()) == suffix;
}

std::string format_number(double value) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return {buf, res.ptr};
}

void VerificationReport::add_metadata(std::string key, std::string value) {
  metadata_.emplace_back(std::move(key), std::move(value));
}

void VerificationReport::merge(const VerificationReport& other) {
  rows_.insert(rows_.end(), other.rows_.begin(), other.rows_.end());
  metadata_.insert(metadata_.end(), other.metadata_.begin(), other.metadata_.end());
}

void VerificationReport::sort() {
  auto key = [](const ReportRow& r) {
    return std::make_tuple(r.scenario, r.epsilon.has_value(), r.epsilon.value_or(0.0), r.check);
  };
  std::stable_sort(rows_.begin(), rows_.end(),
                   [&](const ReportRow& a, const ReportRow& b) { return key(a) < key(b); });
  std::stable_sort(metadata_.begin(), metadata_.end());
}

bool VerificationReport::all_pass() const {
  return std::all_of(rows_.begin(), rows_.end(), [](const ReportRow& r) { return r.outcome.pass; });
}

namespace {

std::string epsilon_text(const std::optional<double>& eps) {
  return eps ? format_number(*eps) : std::string();
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

void VerificationReport::write_csv(std::ostream& out) const {
  out << kHeader << '\n';
  for (const auto& r : rows_) {
    const auto& o = r.outcome;
    out << r.scenario << ',' << epsilon_text(r.epsilon) << ',' << r.check << ','
        << format_number(o.value) << ',' << format_number(o.target) << ','
        << format_number(o.tolerance) << ',' << to_string(o.sided) << ','
        << (o.pass ? "true" : "false") << ",\n";
  }
}

void VerificationReport::write_timing_csv(std::ostream& out) const {
  out << "scenario,epsilon,check,seconds\n";
  for (const auto& r : rows_) {
    out << r.scenario << ',' << epsilon_text(r.epsilon) << ',' << r.check << ','
        << format_number(r.seconds) << '\n';
  }
}

void VerificationReport::write_json(std::ostream& out) const {
  using nlohmann::ordered_json;
  ordered_json doc;
  ordered_json meta = ordered_json::object();
  for (const auto& [k, v] : metadata_) meta[k] = v;
  doc["metadata"] = meta;
  ordered_json rows = ordered_json::array();
  for (const auto& r : rows_) {
    const auto& o = r.outcome;
    ordered_json row;
    row["scenario"] = r.scenario;
    row["epsilon"] = r.epsilon ? ordered_json(*r.epsilon) : ordered_json(nullptr);
    row["check"] = r.check;
    row["value"] = o.value;
    row["target"] = o.target;
    row["tolerance"] = o.tolerance;
    row["sided"] = to_string(o.sided);
    row["pass"] = o.pass;
    row["must_detect"] = r.must_detect();
    ordered_json details = ordered_json::object();
    for (const auto& [k, v] : o.details) {
      details[k] = std::isfinite(v) ? ordered_json(v) : ordered_json(format_number(v));
    }
    row["details"] = details;
    rows.push_back(row);
  }
  doc["rows"] = rows;
  out << doc.dump(2) << '\n';
}

void VerificationReport::write_files(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  auto open = [&](const char* name) {
    std::ofstream f(dir / name, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
    return f;
  };
  {
    auto f = open("report.csv");
    write_csv(f);
  }
  {
    auto f = open("report.json");
    write_json(f);
  }
  {
    auto f = open("report.timing.csv");
    write_timing_csv(f);
  }
}

VerificationReport VerificationReport::read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kHeader) {
    throw std::runtime_error("report: missing or unexpected CSV header");
  }
  VerificationReport report;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != 9) {
      throw std::runtime_error("report: line " + std::to_string(lineno) + " has " +
                               std::to_string(cells.size()) + " fields, expected 9");
    }
    ReportRow row;
    row.scenario = cells[0];
    if (!cells[1].empty()) row.epsilon = std::stod(cells[1]);
    row.check = cells[2];
    row.outcome.value = std::stod(cells[3]);
    row.outcome.target = std::stod(cells[4]);
    row.outcome.tolerance = std::stod(cells[5]);
    row.outcome.sided = sided_from_string(cells[6]);
    if (cells[7] != "true" && cells[7] != "false") {
      throw std::runtime_error("report: line " + std::to_string(lineno) + " has a bad pass flag");
    }
    row.outcome.pass = cells[7] == "true";
    if (!cells[8].empty()) row.seconds = std::stod(cells[8]);
    report.add(std::move(row));
  }
  return report;
}

VerificationReport VerificationReport::read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_csv(in);
}

void VerificationReport::write_summary(std::ostream& out) const {
  std::size_t failed = 0;
  std::size_t detect = 0;
  for (const auto& r : rows_) {
    if (!r.outcome.pass) ++failed;
    if (r.must_detect()) ++detect;
  }
  out << rows_.size() << " checks, " << rows_.size() - failed << " passed, " << failed
      << " failed";
  if (detect > 0) out << " (" << detect << " must-detect)";
  out << '\n';
  for (const auto& r : rows_) {
    const auto& o = r.outcome;
    char line[256];
    std::snprintf(line, sizeof(line), "  %-4s %-28s eps=%-8s %-26s value=%-12.5g target=%-10.4g tol=%-9.3g %s\n",
                  o.pass ? "ok" : "FAIL", r.scenario.c_str(),
                  r.epsilon ? format_number(*r.epsilon).c_str() : "-", r.check.c_str(), o.value,
                  o.target, o.tolerance, to_string(o.sided));
    out << line;
  }
}

}  // namespace aclab
