#include "aclab/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "aclab/field_io.hpp"
#include "aclab/measures.hpp"

namespace aclab {

namespace {

// Flat-index offsets to the +/- neighbor, tabulated per axis coordinate.
// Grids of lower dimension are padded to three axes of length 1.
struct Stencil {
  std::array<int, 3> n{1, 1, 1};
  std::array<std::size_t, 3> stride{0, 0, 0};
  std::array<std::vector<std::ptrdiff_t>, 3> up;
  std::array<std::vector<std::ptrdiff_t>, 3> down;
  double inv_h2 = 0.0;
};

Stencil make_stencil(const Grid& g) {
  Stencil s;
  s.inv_h2 = 1.0 / (g.spacing() * g.spacing());
  for (int a = 0; a < 3; ++a) {
    const auto ua = static_cast<std::size_t>(a);
    if (a >= g.dim()) {
      s.up[ua] = {0};
      s.down[ua] = {0};
      continue;
    }
    const int len = g.resolution(a);
    const auto stride = static_cast<std::ptrdiff_t>(g.stride(a));
    const bool periodic = g.boundary(a) == Boundary::periodic;
    s.n[ua] = len;
    s.stride[ua] = g.stride(a);
    s.up[ua].assign(static_cast<std::size_t>(len), stride);
    s.down[ua].assign(static_cast<std::size_t>(len), -stride);
    s.up[ua].back() = periodic ? -(len - 1) * stride : 0;
    s.down[ua].front() = periodic ? (len - 1) * stride : 0;
  }
  return s;
}

// Calls emit(cell, lap_h phi - W'(phi) / eps^2) for every cell, one axis-0
// slab per parallel task.
template <bool Quartic, class Emit>
void sweep_rhs(const Stencil& s, const double* phi, double eps, const DoubleWell& well,
               Emit&& emit) {
  const double inv_eps2 = 1.0 / (eps * eps);
  parallel_for(static_cast<std::size_t>(s.n[0]), [&](std::size_t i0) {
    const std::ptrdiff_t u0 = s.up[0][i0], d0 = s.down[0][i0];
    for (int i1 = 0; i1 < s.n[1]; ++i1) {
      const std::ptrdiff_t u1 = s.up[1][static_cast<std::size_t>(i1)];
      const std::ptrdiff_t d1 = s.down[1][static_cast<std::size_t>(i1)];
      const std::size_t row = i0 * s.stride[0] + static_cast<std::size_t>(i1) * s.stride[1];
      for (int i2 = 0; i2 < s.n[2]; ++i2) {
        const std::size_t c = row + static_cast<std::size_t>(i2) * s.stride[2];
        const auto ci = static_cast<std::ptrdiff_t>(c);
        const double p = phi[c];
        const double lap = (phi[ci + u0] + phi[ci + d0] + phi[ci + u1] + phi[ci + d1] +
                            phi[ci + s.up[2][static_cast<std::size_t>(i2)]] +
                            phi[ci + s.down[2][static_cast<std::size_t>(i2)]] - 6.0 * p) *
                           s.inv_h2;
        double wp;
        if constexpr (Quartic) {
          wp = -2.0 * p * (1.0 - p * p);
        } else {
          wp = well.derivative(p);
        }
        emit(c, lap - wp * inv_eps2);
      }
    }
  });
}

template <class Emit>
void for_each_rhs(const Stencil& s, const double* phi, double eps, const Potential& potential,
                  Emit&& emit) {
  if (potential.is_quartic()) {
    sweep_rhs<true>(s, phi, eps, potential.well(), emit);
  } else {
    sweep_rhs<false>(s, phi, eps, potential.well(), emit);
  }
}

// Face-based normalized energy on raw values; matches normalized_energy().
double raw_energy(const Grid& g, const std::vector<double>& phi, double eps,
                  const Potential& potential) {
  std::vector<double> e(phi.size());
  const double inv_h2 = 1.0 / (g.spacing() * g.spacing());
  parallel_for(phi.size(), [&](std::size_t c) {
    double s = 0.0;
    for (int a = 0; a < g.dim(); ++a) {
      const double fwd = phi[g.neighbor(c, a, +1)] - phi[c];
      const double bwd = phi[c] - phi[g.neighbor(c, a, -1)];
      s += 0.5 * (fwd * fwd + bwd * bwd);
    }
    e[c] = 0.5 * eps * s * inv_h2 + potential.well().value(phi[c]) / eps;
  });
  return pairwise_sum(e) * g.cell_volume() / potential.sigma();
}

void check_finite(const std::vector<double>& v, double time) {
  for (std::size_t c = 0; c < v.size(); ++c) {
    if (!std::isfinite(v[c])) {
      std::ostringstream msg;
      msg << "solver: non-finite value at cell " << c << " after step to t = " << time;
      throw std::runtime_error(msg.str());
    }
  }
}

std::filesystem::path dump_path(const EvolveOptions& options, std::size_t index) {
  char name[32];
  std::snprintf(name, sizeof(name), "_%05zu.acf", index);
  return *options.dump_dir / (options.dump_stem + name);
}

}  // namespace

double stable_dt(int dim, double eps, double h, double safety, double curvature_bound) {
  if (!(safety > 0.0 && safety <= 1.0)) throw std::invalid_argument("stable_dt: safety must lie in (0, 1]");
  if (!(eps > 0.0) || !(h > 0.0)) throw std::invalid_argument("stable_dt: eps and h must be positive");
  if (dim < 1 || dim > 3) throw std::invalid_argument("stable_dt: dimension must be 1, 2 or 3");
  const double diffusion = h * h / (4.0 * dim);
  const double reaction = eps * eps / (2.0 * curvature_bound);
  return safety * std::min(diffusion, reaction);
}

double AllenCahnSolver::stable_dt(const PhaseField& phase, double safety) const {
  return aclab::stable_dt(phase.grid().dim(), phase.eps(), phase.grid().spacing(), safety,
                          potential_.curvature_bound());
}

ScalarField AllenCahnSolver::rhs(const PhaseField& phase) const {
  const Stencil s = make_stencil(phase.grid());
  std::vector<double> out(phase.grid().size());
  for_each_rhs(s, phase.values().data(), phase.eps(), potential_,
               [&](std::size_t c, double r) { out[c] = r; });
  return {phase.grid(), std::move(out)};
}

PhaseField AllenCahnSolver::step(const PhaseField& phase, double dt) const {
  const double limit = stable_dt(phase, 1.0);
  if (!(dt > 0.0) || dt > limit * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "step: dt = " << dt << " outside (0, " << limit << "]";
    throw std::invalid_argument(msg.str());
  }
  const Stencil s = make_stencil(phase.grid());
  const double* phi = phase.values().data();
  std::vector<double> next(phase.grid().size());
  for_each_rhs(s, phi, phase.eps(), potential_,
               [&](std::size_t c, double r) { next[c] = phi[c] + dt * r; });
  check_finite(next, phase.time() + dt);
  return {ScalarField(phase.grid(), std::move(next)), phase.eps(), phase.time() + dt};
}

PhaseTrajectory AllenCahnSolver::evolve(const PhaseField& initial, double t_end,
                                        double snapshot_every, const EvolveOptions& options) const {
  const double t0 = initial.time();
  if (!(t_end >= t0)) throw std::invalid_argument("evolve: t_end precedes the initial time");
  const double dt_max = stable_dt(initial, options.safety);
  const bool single = t_end == t0;
  if (!single && !(snapshot_every >= dt_max * (1.0 - 1e-12))) {
    std::ostringstream msg;
    msg << "evolve: snapshot cadence " << snapshot_every << " is below the step " << dt_max;
    throw std::invalid_argument(msg.str());
  }

  std::vector<double> targets;
  if (!single) {
    for (long k = 1;; ++k) {
      const double t = t0 + static_cast<double>(k) * snapshot_every;
      if (t >= t_end - 1e-9 * snapshot_every) break;
      targets.push_back(t);
    }
    targets.push_back(t_end);
  }
  auto substeps = [&](double span) {
    return std::max<long>(1, static_cast<long>(std::ceil(span / dt_max - 1e-9)));
  };
  const double regular_dt =
      single ? 0.0 : (targets.front() - t0) / static_cast<double>(substeps(targets.front() - t0));

  const Grid& grid = initial.grid();
  const double eps = initial.eps();
  const Stencil s = make_stencil(grid);
  PhaseTrajectory traj("forward-euler", regular_dt);
  traj.step_energy_monitored = options.monitor_energy;
  if (options.dump_dir) std::filesystem::create_directories(*options.dump_dir);

  auto record = [&](PhaseField phase) {
    if (options.dump_dir) write_field_dump(dump_path(options, traj.size()), phase.field(), eps, phase.time());
    ScalarField rate = rhs(phase);
    const double energy = normalized_energy(phase, potential_);
    traj.append({std::move(phase), std::move(rate)}, energy);
  };
  record(initial);

  std::vector<double> phi(initial.values().begin(), initial.values().end());
  std::vector<double> next(phi.size());
  double energy = options.monitor_energy ? raw_energy(grid, phi, eps, potential_) : 0.0;
  double t = t0;
  for (double target : targets) {
    const long n = substeps(target - t);
    const double dt = (target - t) / static_cast<double>(n);
    for (long k = 0; k < n; ++k) {
      const double* cur = phi.data();
      for_each_rhs(s, cur, eps, potential_,
                   [&](std::size_t c, double r) { next[c] = cur[c] + dt * r; });
      phi.swap(next);
      const double now = k + 1 == n ? target : t + static_cast<double>(k + 1) * dt;
      check_finite(phi, now);
      if (options.monitor_energy) {
        const double e = raw_energy(grid, phi, eps, potential_);
        traj.max_step_energy_increase = std::max(traj.max_step_energy_increase, e - energy);
        energy = e;
      }
    }
    t = target;
    record(PhaseField(ScalarField(grid, phi), eps, t));
  }
  return traj;
}

}  // namespace aclab
