#include "aclab/field_io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace aclab {

namespace {

constexpr std::array<char, 4> kMagic = {'A', 'C', 'F', '1'};

template <class T>
void put_le(std::ostream& out, T value) {
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
  const U bits = std::bit_cast<U>(value);
  std::array<char, sizeof(U)> bytes{};
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xFFu);
  }
  out.write(bytes.data(), bytes.size());
}

template <class T>
T get_le(std::istream& in) {
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
  std::array<unsigned char, sizeof(U)> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (!in) throw std::runtime_error("ACF1: truncated input");
  U bits = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) bits |= static_cast<U>(bytes[i]) << (8 * i);
  return std::bit_cast<T>(bits);
}

}  // namespace

void write_field_dump(std::ostream& out, const ScalarField& field, double eps, double time) {
  const Grid& g = field.grid();
  out.write(kMagic.data(), kMagic.size());
  put_le(out, static_cast<std::uint32_t>(g.dim()));
  for (int a = 0; a < g.dim(); ++a) put_le(out, static_cast<std::uint32_t>(g.resolution(a)));
  for (int a = 0; a < g.dim(); ++a) put_le(out, g.extent(a));
  put_le(out, eps);
  put_le(out, time);
  for (double v : field.values()) put_le(out, v);
  if (!out) throw std::runtime_error("ACF1: write failed");
}

FieldDump read_field_dump(std::istream& in) {
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw std::runtime_error("ACF1: bad magic");
  const auto dim = get_le<std::uint32_t>(in);
  if (dim < 1 || dim > 3) throw std::runtime_error("ACF1: dimension out of range");
  std::vector<int> res(dim);
  std::vector<double> extent(dim);
  for (auto& r : res) r = static_cast<int>(get_le<std::uint32_t>(in));
  for (auto& e : extent) e = get_le<double>(in);
  const double eps = get_le<double>(in);
  const double time = get_le<double>(in);
  Grid grid(static_cast<int>(dim), res, extent, std::vector<Boundary>(dim, Boundary::periodic));
  std::vector<double> values(grid.size());
  for (auto& v : values) v = get_le<double>(in);
  return {ScalarField(grid, std::move(values)), eps, time};
}

void write_field_dump(const std::filesystem::path& path, const ScalarField& field, double eps,
                      double time) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("ACF1: cannot open " + path.string());
  write_field_dump(out, field, eps, time);
}

FieldDump read_field_dump(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("ACF1: cannot open " + path.string());
  return read_field_dump(in);
}

}  // namespace aclab
