#pragma once

#include <filesystem>
#include <iosfwd>

#include "aclab/scalar_field.hpp"

namespace aclab {

/// Contents of an ACF1 dump. The format stores no origin or boundary
/// conditions; read_field_dump restores a periodic grid at the origin.
struct FieldDump {
  ScalarField field;
  double eps;
  double time;
};

/// ACF1 layout, all little-endian:
///   "ACF1" | u32 dim | u32 resolution[dim] | f64 extent[dim] | f64 eps |
///   f64 time | f64 values[prod(resolution)] (row-major)
void write_field_dump(std::ostream& out, const ScalarField& field, double eps, double time);
FieldDump read_field_dump(std::istream& in);

void write_field_dump(const std::filesystem::path& path, const ScalarField& field, double eps,
                      double time);
FieldDump read_field_dump(const std::filesystem::path& path);

}  // namespace aclab
