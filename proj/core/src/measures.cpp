#include "aclab/measures.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "aclab/operators.hpp"

namespace aclab {

namespace {

// Per-cell e and xi from the face-averaged squared gradient.
void energy_parts(const PhaseField& phase, const Potential& potential, std::vector<double>& e,
                  std::vector<double>& xi) {
  const ScalarField g2 = face_averaged_gradient_sq(phase.field());
  const auto v = phase.values();
  const double eps = phase.eps();
  e.resize(v.size());
  xi.resize(v.size());
  parallel_for(v.size(), [&](std::size_t c) {
    const double grad_part = 0.5 * eps * g2[c];
    const double well_part = potential.W(v[c]) / eps;
    e[c] = grad_part + well_part;
    xi[c] = grad_part - well_part;
  });
}

}  // namespace

DensitySnapshot density_snapshot(const PhaseField& phase, const Potential& potential) {
  std::vector<double> e, xi;
  energy_parts(phase, potential, e, xi);
  const double inv_sigma = 1.0 / potential.sigma();
  std::vector<double> normalized(e.size());
  std::vector<double> abs_xi(e.size());
  parallel_for(e.size(), [&](std::size_t c) {
    normalized[c] = e[c] * inv_sigma;
    abs_xi[c] = std::abs(xi[c]);
  });
  const Grid& g = phase.grid();
  const double total = pairwise_sum(e) * g.cell_volume() * inv_sigma;
  const double disc = pairwise_sum(abs_xi) * g.cell_volume() * inv_sigma;
  return DensitySnapshot{phase.time(),
                         phase.eps(),
                         ScalarField(g, std::move(e)),
                         ScalarField(g, std::move(normalized)),
                         ScalarField(g, std::move(xi)),
                         total,
                         disc};
}

double normalized_energy(const PhaseField& phase, const Potential& potential) {
  std::vector<double> e, xi;
  energy_parts(phase, potential, e, xi);
  return pairwise_sum(e) * phase.grid().cell_volume() / potential.sigma();
}

InterfaceFields interface_fields(const Snapshot& snapshot, const Potential& potential,
                                 const BandOptions& options) {
  const PhaseField& phase = snapshot.phase;
  const Grid& g = phase.grid();
  const int dim = g.dim();
  const double h = g.spacing();
  const auto v = phase.values();
  const VectorField grad = spatial_gradient(phase.field());
  const double floor = options.floor_fraction * potential.profile_slope(0.0) / phase.eps();

  std::vector<double> norm(g.size());
  parallel_for(g.size(), [&](std::size_t c) {
    double sq = 0.0;
    for (const auto& comp : grad) sq += comp[c] * comp[c];
    norm[c] = std::sqrt(sq);
  });

  InterfaceFields out;
  for (std::size_t c = 0; c < g.size(); ++c) {
    if (std::abs(v[c]) < options.level && norm[c] > floor) out.cells.push_back(c);
  }
  out.empty = out.cells.empty();
  const std::size_t m = out.cells.size();
  out.normal.resize(m);
  out.velocity.resize(m);
  out.curvature.resize(m);
  out.grad_norm.resize(m);

  // Unit gradient n = grad phi / |grad phi| wherever the gradient clears the floor.
  auto unit = [&](std::size_t c, int a) { return grad[static_cast<std::size_t>(a)][c] / norm[c]; };
  auto usable = [&](std::size_t c) { return norm[c] > floor; };

  parallel_for(m, [&](std::size_t k) {
    const std::size_t c = out.cells[k];
    Point nu{0.0, 0.0, 0.0};
    double div = 0.0;
    for (int a = 0; a < dim; ++a) {
      nu[static_cast<std::size_t>(a)] = -unit(c, a);
      const bool has_up = g.has_neighbor(c, a, +1) && usable(g.neighbor(c, a, +1));
      const bool has_dn = g.has_neighbor(c, a, -1) && usable(g.neighbor(c, a, -1));
      if (has_up && has_dn) {
        div += (unit(g.neighbor(c, a, +1), a) - unit(g.neighbor(c, a, -1), a)) / (2.0 * h);
      } else if (has_up) {
        div += (unit(g.neighbor(c, a, +1), a) - unit(c, a)) / h;
      } else if (has_dn) {
        div += (unit(c, a) - unit(g.neighbor(c, a, -1), a)) / h;
      }
    }
    out.normal[k] = nu;
    out.velocity[k] = snapshot.rate[c] / norm[c];
    out.curvature[k] = div;
    out.grad_norm[k] = norm[c];
  });
  return out;
}

std::vector<DensityRatio> density_ratio(const DensitySnapshot& snapshot, const Point& center,
                                        const std::vector<double>& radii) {
  return density_ratio(snapshot.normalized, center, radii);
}

std::vector<DensityRatio> density_ratio(const ScalarField& normalized, const Point& center,
                                        const std::vector<double>& radii) {
  const Grid& g = normalized.grid();
  std::vector<DensityRatio> out;
  out.reserve(radii.size());
  for (double r : radii) {
    DensityRatio row;
    row.radius = r;
    if (!(r >= 2.0 * g.spacing())) {
      std::ostringstream msg;
      msg << "radius " << r << " below 2h = " << 2.0 * g.spacing();
      row.refusal = msg.str();
    } else if (!g.contains_ball(center, r)) {
      std::ostringstream msg;
      msg << "ball of radius " << r << " leaves the domain";
      row.refusal = msg.str();
    } else {
      const double mass = integrate(normalized, Region::ball(center, r));
      row.ratio = mass / std::pow(r, g.dim() - 1);
    }
    out.push_back(std::move(row));
  }
  return out;
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median: empty input");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower =
      *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

}  // namespace aclab
