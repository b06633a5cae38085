#include "aclab/operators.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace aclab {

namespace {

bool in_ball(const Point& x, const Region& region) {
  if (!region.ball_center) return true;
  const Point& c = *region.ball_center;
  const double dx = x[0] - c[0];
  const double dy = x[1] - c[1];
  const double dz = x[2] - c[2];
  return dx * dx + dy * dy + dz * dz <= region.ball_radius * region.ball_radius;
}

void check_region(const Grid& grid, const Region& region) {
  if (region.ball_center && region.ball_radius < 2.0 * grid.spacing()) {
    throw std::invalid_argument("integrate: ball radius " + std::to_string(region.ball_radius) +
                                " is below 2h = " + std::to_string(2.0 * grid.spacing()));
  }
}

}  // namespace

VectorField spatial_gradient(const ScalarField& f) {
  const Grid& g = f.grid();
  const double inv = 1.0 / (2.0 * g.spacing());
  const auto v = f.values();
  VectorField out;
  out.reserve(static_cast<std::size_t>(g.dim()));
  for (int a = 0; a < g.dim(); ++a) {
    std::vector<double> d(g.size());
    parallel_for(g.size(), [&](std::size_t c) {
      d[c] = (v[g.neighbor(c, a, +1)] - v[g.neighbor(c, a, -1)]) * inv;
    });
    out.emplace_back(g, std::move(d));
  }
  return out;
}

ScalarField laplacian(const ScalarField& f) {
  const Grid& g = f.grid();
  const double inv = 1.0 / (g.spacing() * g.spacing());
  const auto v = f.values();
  std::vector<double> out(g.size());
  parallel_for(g.size(), [&](std::size_t c) {
    double s = 0.0;
    for (int a = 0; a < g.dim(); ++a) {
      s += v[g.neighbor(c, a, +1)] + v[g.neighbor(c, a, -1)] - 2.0 * v[c];
    }
    out[c] = s * inv;
  });
  return {g, std::move(out)};
}

VectorField forward_gradient(const ScalarField& f) {
  const Grid& g = f.grid();
  const double inv = 1.0 / g.spacing();
  const auto v = f.values();
  VectorField out;
  for (int a = 0; a < g.dim(); ++a) {
    std::vector<double> d(g.size());
    parallel_for(g.size(), [&](std::size_t c) { d[c] = (v[g.neighbor(c, a, +1)] - v[c]) * inv; });
    out.emplace_back(g, std::move(d));
  }
  return out;
}

ScalarField backward_divergence(std::span<const ScalarField> flux) {
  if (flux.empty()) throw std::invalid_argument("backward_divergence: empty vector field");
  const Grid& g = flux.front().grid();
  if (flux.size() != static_cast<std::size_t>(g.dim())) {
    throw std::invalid_argument("backward_divergence: component count does not match dimension");
  }
  const double inv = 1.0 / g.spacing();
  std::vector<double> out(g.size());
  parallel_for(g.size(), [&](std::size_t c) {
    double s = 0.0;
    for (int a = 0; a < g.dim(); ++a) {
      const auto comp = flux[static_cast<std::size_t>(a)].values();
      // The face on a reflective wall carries zero flux.
      const double behind = g.has_neighbor(c, a, -1) ? comp[g.neighbor(c, a, -1)] : 0.0;
      s += comp[c] - behind;
    }
    out[c] = s * inv;
  });
  return {g, std::move(out)};
}

ScalarField face_averaged_gradient_sq(const ScalarField& f) {
  const Grid& g = f.grid();
  const double inv2 = 1.0 / (g.spacing() * g.spacing());
  const auto v = f.values();
  std::vector<double> out(g.size());
  parallel_for(g.size(), [&](std::size_t c) {
    double s = 0.0;
    for (int a = 0; a < g.dim(); ++a) {
      const double fwd = v[g.neighbor(c, a, +1)] - v[c];
      const double bwd = v[c] - v[g.neighbor(c, a, -1)];
      s += 0.5 * (fwd * fwd + bwd * bwd);
    }
    out[c] = s * inv2;
  });
  return {g, std::move(out)};
}

double integrate(const ScalarField& f, const Region& region) {
  const Grid& g = f.grid();
  check_region(g, region);
  const auto v = f.values();
  if (!region.ball_center) return pairwise_sum(v) * g.cell_volume();
  std::vector<double> terms(g.size());
  parallel_for(g.size(), [&](std::size_t c) {
    terms[c] = in_ball(g.center(c), region) ? v[c] : 0.0;
  });
  return pairwise_sum(terms) * g.cell_volume();
}

double integrate(const ScalarField& f, const TestFunction& weight, double t,
                 const Region& region) {
  const Grid& g = f.grid();
  check_region(g, region);
  const auto v = f.values();
  std::vector<double> terms(g.size());
  parallel_for(g.size(), [&](std::size_t c) {
    const Point x = g.center(c);
    terms[c] = in_ball(x, region) ? v[c] * weight.value(x, t) : 0.0;
  });
  return pairwise_sum(terms) * g.cell_volume();
}

}  // namespace aclab
