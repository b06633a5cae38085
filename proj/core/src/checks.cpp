#include "aclab/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace aclab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Deterministic cell reduction: terms filled in parallel, summed in fixed order.
template <class F>
double cell_sum(std::size_t n, F&& term) {
  std::vector<double> t(n);
  parallel_for(n, [&](std::size_t i) { t[i] = term(i); });
  return pairwise_sum(t);
}

void require_support(const TestFunction& test, const Grid& grid) {
  if (!test.support_inside(grid)) {
    std::ostringstream msg;
    msg << "test function support (center " << test.center()[0] << ", " << test.center()[1]
        << ", " << test.center()[2] << "; radius " << test.support_radius()
        << ") touches the domain boundary";
    throw std::invalid_argument(msg.str());
  }
}

void require_sweep(const Sweep& sweep, const char* what) {
  if (sweep.size() < 3) {
    throw std::invalid_argument(std::string(what) + ": needs a sweep of at least three eps values");
  }
  for (std::size_t i = 1; i < sweep.size(); ++i) {
    if (!(sweep[i]->eps() < sweep[i - 1]->eps())) {
      throw std::invalid_argument(std::string(what) + ": sweep must be ordered by decreasing eps");
    }
  }
}

double dot(const Point& a, const Point& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

// mu(phi(., t_k)) over all cells.
double measure_pairing(const AnalyzedTrajectory& traj, std::size_t k, const TestFunction& test) {
  const Grid& g = traj.grid();
  const auto mu = traj[k].normalized.values();
  const double t = traj.time(k);
  return cell_sum(g.size(), [&](std::size_t c) {
           return mu[c] == 0.0 ? 0.0 : mu[c] * test.value(g.center(c), t);
         }) *
         g.cell_volume();
}

// int d phi/dt d mu over all cells at snapshot k.
double time_derivative_pairing(const AnalyzedTrajectory& traj, std::size_t k,
                               const TestFunction& test) {
  const Grid& g = traj.grid();
  const auto mu = traj[k].normalized.values();
  const double t = traj.time(k);
  return cell_sum(g.size(), [&](std::size_t c) {
           return mu[c] == 0.0 ? 0.0 : mu[c] * test.time_derivative(g.center(c), t);
         }) *
         g.cell_volume();
}

// Band sum of term(band index, cell, x) times h^n.
template <class F>
double band_sum(const AnalyzedTrajectory& traj, std::size_t k, F&& term) {
  const auto& band = traj[k].band;
  const Grid& g = traj.grid();
  return cell_sum(band.cells.size(),
                  [&](std::size_t i) { return term(i, band.cells[i], g.center(band.cells[i])); }) *
         g.cell_volume();
}

std::vector<double> cumulative_trapezoid(const AnalyzedTrajectory& traj,
                                         const std::vector<double>& values) {
  std::vector<double> out(values.size(), 0.0);
  for (std::size_t k = 1; k < values.size(); ++k) {
    out[k] = out[k - 1] + 0.5 * (traj.time(k) - traj.time(k - 1)) * (values[k] + values[k - 1]);
  }
  return out;
}

}  // namespace

// ---- energy and discrepancy ------------------------------------------------

CheckOutcome energy_dissipation_check(const AnalyzedTrajectory& traj, double slack) {
  if (traj.size() < 2) throw std::invalid_argument("energy_dissipation: needs two snapshots");
  std::vector<double> rate(traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k) rate[k] = traj[k].dissipation;
  const auto dissipated = cumulative_trapezoid(traj, rate);
  double lhs = 0.0;
  double max_increase = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < traj.size(); ++k) {
    lhs = std::max(lhs, traj[k].normalized_total + dissipated[k]);
    if (k > 0) max_increase = std::max(max_increase, traj[k].normalized_total - traj[k - 1].normalized_total);
  }
  const double mu0 = traj.initial_energy();
  Details details{{"mu0", mu0},
                  {"mu_end", traj[traj.size() - 1].normalized_total},
                  {"dissipation", dissipated.back()},
                  {"max_snapshot_energy_increase", max_increase}};
  if (traj.trajectory().step_energy_monitored) {
    details.emplace_back("max_step_energy_increase", traj.trajectory().max_step_energy_increase);
  }
  return CheckOutcome::make(lhs, mu0, slack * mu0, Sided::upper, std::move(details));
}

double discrepancy_integral(const AnalyzedTrajectory& traj) {
  std::vector<double> d(traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k) d[k] = traj[k].discrepancy_total;
  return cumulative_trapezoid(traj, d).back();
}

CheckOutcome discrepancy_decay_check(const Sweep& sweep) {
  require_sweep(sweep, "discrepancy_decay");
  Details details;
  std::vector<double> d;
  for (const auto* t : sweep) {
    d.push_back(discrepancy_integral(*t));
    details.emplace_back("D(eps=" + format_number(t->eps()) + ")", d.back());
  }
  double violations = 0.0;
  for (std::size_t i = 1; i < d.size(); ++i) {
    const double ratio = d[i] / d[i - 1];
    details.emplace_back("ratio(" + format_number(sweep[i]->eps()) + "/" +
                             format_number(sweep[i - 1]->eps()) + ")",
                         ratio);
    if (!(d[i] < d[i - 1])) violations += 1.0;
  }
  return CheckOutcome::make(violations, 0.0, 0.0, Sided::upper, std::move(details));
}

CheckOutcome discrepancy_ratio_check(const Sweep& sweep, double bound) {
  require_sweep(sweep, "discrepancy_ratio");
  const double coarse = discrepancy_integral(*sweep.front());
  const double fine = discrepancy_integral(*sweep.back());
  return CheckOutcome::make(fine / coarse, bound, 0.0, Sided::upper,
                            {{"D_coarse", coarse}, {"D_fine", fine}});
}

CheckOutcome discrepancy_bound_check(const AnalyzedTrajectory& traj, double fraction) {
  const double d = discrepancy_integral(traj);
  const double span = traj.time(traj.size() - 1) - traj.time(0);
  const double mu0 = traj.initial_energy();
  return CheckOutcome::make(d, 0.0, fraction * span * mu0, Sided::upper,
                            {{"T", span}, {"mu0", mu0}});
}

CheckOutcome equipartition_check(const AnalyzedTrajectory& traj, double tolerance) {
  const auto& last = traj[traj.size() - 1];
  const double ratio = last.normalized_total > 0.0 ? last.discrepancy_total / last.normalized_total : 0.0;
  return CheckOutcome::make(ratio, 0.0, tolerance, Sided::upper,
                            {{"discrepancy", last.discrepancy_total}, {"energy", last.normalized_total}});
}

// ---- solver fidelity ------------------------------------------------------

CheckOutcome profile_fidelity_check(const AnalyzedTrajectory& traj, const Shape& shape,
                                    double tolerance) {
  const auto& phase = traj.trajectory()[traj.size() - 1].phase;
  const Grid& g = phase.grid();
  const double eps = phase.eps();
  const auto v = phase.values();
  const Potential& pot = traj.potential();
  std::vector<double> err(g.size());
  parallel_for(g.size(), [&](std::size_t c) {
    const double ref = pot.profile(shape.truncated_distance(g.center(c), 10.0 * eps) / eps);
    err[c] = std::abs(v[c] - ref);
  });
  const double sup = *std::max_element(err.begin(), err.end());
  return CheckOutcome::make(sup, 0.0, tolerance, Sided::upper, {{"time", phase.time()}});
}

double volume_radius(double volume, int dim) {
  switch (dim) {
    case 1:
      return 0.5 * volume;
    case 2:
      return std::sqrt(volume / std::numbers::pi);
    default:
      return std::cbrt(3.0 * volume / (4.0 * std::numbers::pi));
  }
}

CheckOutcome radius_law_check(const AnalyzedTrajectory& traj, const ReferenceFlow& flow, double t,
                              double tolerance) {
  const std::size_t k = traj.trajectory().index_at(t);
  const double measured = volume_radius(traj[k].volume, traj.grid().dim());
  const double exact = exact_flow_radius(flow, traj.time(k));
  const double rel = exact > 0.0 ? std::abs(measured - exact) / exact : kNaN;
  return CheckOutcome::make(rel, 0.0, tolerance, Sided::upper,
                            {{"time", traj.time(k)}, {"measured_radius", measured}, {"exact_radius", exact}});
}

// ---- Brakke inequality ----------------------------------------------------

PairingTerms brakke_terms(const AnalyzedTrajectory& traj, const TestFunction& test, double t1,
                          double t2) {
  require_support(test, traj.grid());
  const auto [k1, k2] = traj.window(t1, t2);
  const auto w = traj.trapezoid_weights(k1, k2);
  PairingTerms out;
  out.lhs = measure_pairing(traj, k2, test) - measure_pairing(traj, k1, test);
  for (std::size_t k = k1; k <= k2; ++k) {
    const double t = traj.time(k);
    const auto& band = traj[k].band;
    const auto mu = traj[k].normalized.values();
    const double moving = band_sum(traj, k, [&](std::size_t i, std::size_t c, const Point& x) {
      const double v = band.velocity[i];
      const double phi = test.value(x, t);
      const Point grad = test.gradient(x, t);
      return mu[c] * (-phi * v * v + v * dot(grad, band.normal[i]));
    });
    out.rhs += w[k - k1] * (moving + time_derivative_pairing(traj, k, test));
  }
  return out;
}

CheckOutcome brakke_check(const AnalyzedTrajectory& traj, const std::vector<TestFunction>& suite,
                          double t1, double t2, double fraction) {
  if (suite.empty()) throw std::invalid_argument("brakke: empty test suite");
  double worst = -std::numeric_limits<double>::infinity();
  Details details;
  for (std::size_t i = 0; i < suite.size(); ++i) {
    const auto terms = brakke_terms(traj, suite[i], t1, t2);
    const double r = terms.lhs - terms.rhs;
    details.emplace_back("test" + std::to_string(i) + ".lhs", terms.lhs);
    details.emplace_back("test" + std::to_string(i) + ".rhs", terms.rhs);
    worst = std::max(worst, r);
  }
  const double mu0 = traj.initial_energy();
  details.emplace_back("mu0", mu0);
  return CheckOutcome::make(worst, 0.0, fraction * mu0, Sided::upper, std::move(details));
}

// ---- volume-change formula -------------------------------------------------

VolumeChangeTerms volume_change_terms(const AnalyzedTrajectory& traj, const TestFunction& test,
                                      double t1, double t2, double floor_fraction) {
  require_support(test, traj.grid());
  const auto [k1, k2] = traj.window(t1, t2);
  const auto w = traj.trapezoid_weights(k1, k2);
  const Grid& g = traj.grid();
  const Potential& pot = traj.potential();
  auto phase_integral = [&](std::size_t k, bool derivative) {
    const double t = traj.time(k);
    return interpolated_phase_integral(traj.trajectory()[k].phase, [&](const Point& x) {
      return derivative ? test.time_derivative(x, t) : test.value(x, t);
    });
  };
  auto cell_phase_integral = [&](std::size_t k) {
    const auto v = traj.trajectory()[k].phase.values();
    const double t = traj.time(k);
    return cell_sum(g.size(), [&](std::size_t c) { return v[c] < 0.0 ? 0.0 : test.value(g.center(c), t); }) *
           g.cell_volume();
  };
  VolumeChangeTerms out;
  out.lhs = phase_integral(k2, false) - phase_integral(k1, false);
  out.lhs_cells = cell_phase_integral(k2) - cell_phase_integral(k1);
  for (std::size_t k = k1; k <= k2; ++k) {
    const double t = traj.time(k);
    const auto& snap = traj[k];
    const auto v = traj.trajectory()[k].phase.values();
    const auto& rate = traj.trajectory()[k].rate;
    // V |grad w(phi)| = (d phi/dt) sqrt(2 W(phi)) wherever grad phi != 0.
    const double boundary = cell_sum(g.size(), [&](std::size_t c) {
                              return test.value(g.center(c), t) * rate[c] * pot.sqrt_2W(v[c]);
                            }) *
                            g.cell_volume() / pot.sigma();
    const double band = band_sum(traj, k, [&](std::size_t i, std::size_t, const Point& x) {
      return test.value(x, t) * snap.band.velocity[i] * snap.boundary_density[i];
    });
    const double bulk = phase_integral(k, true);
    out.rhs += w[k - k1] * (bulk + boundary);
    out.rhs_band += w[k - k1] * (bulk + band);
  }
  out.residual = std::abs(out.lhs - out.rhs);
  out.relative = out.residual / std::max(std::abs(out.lhs), floor_fraction * g.domain_volume());
  return out;
}

CheckOutcome bv_residual_check(const AnalyzedTrajectory& traj, const TestFunction& test, double t1,
                               double t2, double tolerance, double floor_fraction) {
  const auto terms = volume_change_terms(traj, test, t1, t2, floor_fraction);
  return CheckOutcome::make(terms.relative, 0.0, tolerance, Sided::upper,
                            {{"lhs", terms.lhs}, {"rhs", terms.rhs}, {"residual", terms.residual},
                             {"lhs_cells", terms.lhs_cells}, {"rhs_band", terms.rhs_band}});
}

CheckOutcome bv_convergence_check(const Sweep& sweep, const TestFunction& test, double t1,
                                  double t2, double floor_fraction) {
  require_sweep(sweep, "bv_convergence");
  Details details;
  std::vector<double> rel;
  for (const auto* t : sweep) {
    rel.push_back(volume_change_terms(*t, test, t1, t2, floor_fraction).relative);
    details.emplace_back("relative(eps=" + format_number(t->eps()) + ")", rel.back());
  }
  double violations = 0.0;
  for (std::size_t i = 1; i < rel.size(); ++i) {
    if (!(rel[i] < rel[i - 1])) violations += 1.0;
  }
  return CheckOutcome::make(violations, 0.0, 0.0, Sided::upper, std::move(details));
}

CheckOutcome bv_jump_detect_check(const AnalyzedTrajectory& traj, const TestFunction& test,
                                  double t1, double t2, double expected, double relative_tolerance) {
  const auto terms = volume_change_terms(traj, test, t1, t2, 0.0);
  return CheckOutcome::make(terms.residual, expected, relative_tolerance * std::abs(expected),
                            Sided::two, {{"lhs", terms.lhs}, {"rhs", terms.rhs}});
}

// ---- L2 flow pairing ------------------------------------------------------

double l2_pairing(const AnalyzedTrajectory& traj, const TestFunction& test) {
  require_support(test, traj.grid());
  const std::size_t k2 = traj.size() - 1;
  if (k2 == 0) throw std::invalid_argument("l2_flow: needs two snapshots");
  const auto w = traj.trapezoid_weights(0, k2);
  double total = 0.0;
  for (std::size_t k = 0; k <= k2; ++k) {
    const double t = traj.time(k);
    const auto& band = traj[k].band;
    const auto mu = traj[k].normalized.values();
    const double transport = band_sum(traj, k, [&](std::size_t i, std::size_t c, const Point& x) {
      return mu[c] * band.velocity[i] * dot(test.gradient(x, t), band.normal[i]);
    });
    total += w[k] * (transport + time_derivative_pairing(traj, k, test));
  }
  return std::abs(total) / test.sup_norm();
}

double l2_cap(const AnalyzedTrajectory& traj) {
  std::vector<double> rate(traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k) rate[k] = traj[k].dissipation;
  return 2.0 * (traj.initial_energy() + cumulative_trapezoid(traj, rate).back());
}

CheckOutcome l2_flow_check(const AnalyzedTrajectory& traj, const std::vector<TestFunction>& suite,
                           double slack) {
  if (suite.empty()) throw std::invalid_argument("l2_flow: empty test suite");
  double worst = 0.0;
  Details details;
  for (std::size_t i = 0; i < suite.size(); ++i) {
    const double r = l2_pairing(traj, suite[i]);
    details.emplace_back("R.test" + std::to_string(i), r);
    worst = std::max(worst, r);
  }
  const double cap = l2_cap(traj);
  return CheckOutcome::make(worst, cap, slack * cap, Sided::upper, std::move(details));
}

CheckOutcome l2_amplitude_invariance_check(const AnalyzedTrajectory& traj,
                                           const std::vector<TestFunction>& suite, double factor,
                                           double tolerance) {
  double worst = 0.0;
  for (const auto& test : suite) {
    worst = std::max(worst, std::abs(l2_pairing(traj, test.scaled(factor)) - l2_pairing(traj, test)));
  }
  return CheckOutcome::make(worst, 0.0, tolerance, Sided::upper, {{"factor", factor}});
}

// ---- space-time absolute continuity ----------------------------------------

CheckOutcome spacetime_identity_check(const AnalyzedTrajectory& traj, double tolerance) {
  double worst = 0.0;
  double cells = 0.0;
  const Potential& pot = traj.potential();
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const auto& band = traj[k].band;
    const auto& snap = traj.trajectory()[k];
    const auto v = snap.phase.values();
    for (std::size_t i = 0; i < band.cells.size(); ++i) {
      const std::size_t c = band.cells[i];
      const double slope = pot.sqrt_2W(v[c]);
      // Stacked gradient (grad w, d w/dt) with grad phi = -nu |grad phi|.
      double sq = 0.0;
      for (int a = 0; a < 3; ++a) {
        const double gw = -slope * band.normal[i][static_cast<std::size_t>(a)] * band.grad_norm[i];
        sq += gw * gw;
      }
      const double tw = slope * snap.rate[c];
      const double stacked = std::sqrt(sq + tw * tw);
      const double factored =
          std::sqrt(1.0 + band.velocity[i] * band.velocity[i]) * slope * band.grad_norm[i];
      if (stacked > 0.0) worst = std::max(worst, std::abs(stacked - factored) / stacked);
      cells += 1.0;
    }
  }
  return CheckOutcome::make(worst, 0.0, tolerance, Sided::upper, {{"band_cells", cells}});
}

BlockProxyResult abscont_blocks(const AnalyzedTrajectory& traj, const BlockProxyOptions& options,
                                double probe_time) {
  if (traj.size() < 3) throw std::invalid_argument("abscont: needs three snapshots");
  if (options.block_cells < 1 || options.block_intervals < 1) {
    throw std::invalid_argument("abscont: block sizes must be positive");
  }
  const Grid& g = traj.grid();
  const int dim = g.dim();
  const double hn = g.cell_volume();
  const double face = hn / g.spacing();

  std::array<int, 3> nb{1, 1, 1};
  for (int a = 0; a < dim; ++a) {
    nb[static_cast<std::size_t>(a)] = (g.resolution(a) + options.block_cells - 1) / options.block_cells;
  }
  const std::size_t spatial_blocks = static_cast<std::size_t>(nb[0]) * nb[1] * nb[2];
  const std::size_t intervals = traj.size() - 1;
  const std::size_t time_blocks = (intervals + options.block_intervals - 1) / options.block_intervals;
  std::vector<std::size_t> block_of(g.size());
  for (std::size_t c = 0; c < g.size(); ++c) {
    const auto idx = g.index(c);
    std::size_t b = 0;
    for (int a = 0; a < dim; ++a) {
      const auto ua = static_cast<std::size_t>(a);
      b = b * static_cast<std::size_t>(nb[ua]) + static_cast<std::size_t>(idx[ua] / options.block_cells);
    }
    block_of[c] = b;
  }

  auto indicator = [&](std::size_t k) {
    const auto v = traj.trajectory()[k].phase.values();
    std::vector<char> chi(v.size());
    for (std::size_t c = 0; c < v.size(); ++c) chi[c] = v[c] >= 0.0 ? 1 : 0;
    return chi;
  };
  auto spatial_variation = [&](const std::vector<char>& chi) {
    std::vector<double> p(chi.size(), 0.0);
    parallel_for(chi.size(), [&](std::size_t c) {
      double s = 0.0;
      for (int a = 0; a < dim; ++a) {
        if (g.has_neighbor(c, a, +1) && chi[g.neighbor(c, a, +1)] != chi[c]) s += face;
      }
      p[c] = s;
    });
    return p;
  };

  std::vector<double> perim(time_blocks * spatial_blocks, 0.0);
  std::vector<double> energy(time_blocks * spatial_blocks, 0.0);
  std::vector<char> chi_prev = indicator(0);
  std::vector<double> p_prev = spatial_variation(chi_prev);
  for (std::size_t j = 0; j < intervals; ++j) {
    const std::vector<char> chi_next = indicator(j + 1);
    const std::vector<double> p_next = spatial_variation(chi_next);
    const double half = 0.5 * (traj.time(j + 1) - traj.time(j));
    const auto mu0 = traj[j].normalized.values();
    const auto mu1 = traj[j + 1].normalized.values();
    const std::size_t row = (j / static_cast<std::size_t>(options.block_intervals)) * spatial_blocks;
    for (std::size_t c = 0; c < g.size(); ++c) {
      const std::size_t b = row + block_of[c];
      perim[b] += half * (p_prev[c] + p_next[c]) + (chi_next[c] != chi_prev[c] ? hn : 0.0);
      energy[b] += half * (mu0[c] + mu1[c]) * hn;
    }
    chi_prev = chi_next;
    p_prev = p_next;
  }

  BlockProxyResult out;
  out.blocks = perim.size();
  out.perimeter_total = pairwise_sum(perim);
  out.energy_total = pairwise_sum(energy);
  if (out.perimeter_total <= 0.0) return out;
  const double e_total = out.energy_total > 0.0 ? out.energy_total : 1.0;

  for (std::size_t tb = 0; tb < time_blocks; ++tb) {
    for (std::size_t sb = 0; sb < spatial_blocks; ++sb) {
      if (!(perim[tb * spatial_blocks + sb] / out.perimeter_total > options.eta)) continue;
      std::array<int, 3> bi{0, 0, 0};
      std::size_t rest = sb;
      for (int a = dim - 1; a >= 0; --a) {
        const auto ua = static_cast<std::size_t>(a);
        bi[ua] = static_cast<int>(rest % static_cast<std::size_t>(nb[ua]));
        rest /= static_cast<std::size_t>(nb[ua]);
      }
      double e_nbhd = 0.0;
      for (int dt = -1; dt <= 1; ++dt) {
        const long t = static_cast<long>(tb) + dt;
        if (t < 0 || t >= static_cast<long>(time_blocks)) continue;
        for (int d0 = -1; d0 <= 1; ++d0) {
          for (int d1 = (dim > 1 ? -1 : 0); d1 <= (dim > 1 ? 1 : 0); ++d1) {
            for (int d2 = (dim > 2 ? -1 : 0); d2 <= (dim > 2 ? 1 : 0); ++d2) {
              const std::array<int, 3> q{bi[0] + d0, bi[1] + d1, bi[2] + d2};
              bool inside = true;
              std::size_t b = 0;
              for (int a = 0; a < dim; ++a) {
                const auto ua = static_cast<std::size_t>(a);
                if (q[ua] < 0 || q[ua] >= nb[ua]) inside = false;
                b = b * static_cast<std::size_t>(nb[ua]) + static_cast<std::size_t>(std::max(q[ua], 0));
              }
              if (inside) e_nbhd += energy[static_cast<std::size_t>(t) * spatial_blocks + b];
            }
          }
        }
      }
      if (e_nbhd / e_total < options.delta) {
        ++out.offending;
        const std::size_t k_lo = tb * static_cast<std::size_t>(options.block_intervals);
        const std::size_t k_hi = std::min(k_lo + static_cast<std::size_t>(options.block_intervals), intervals);
        if (probe_time > traj.time(k_lo) && probe_time <= traj.time(k_hi)) ++out.offending_at_probe;
      }
    }
  }
  return out;
}

CheckOutcome abscont_blocks_check(const AnalyzedTrajectory& traj, const BlockProxyOptions& options) {
  const auto r = abscont_blocks(traj, options);
  return CheckOutcome::make(static_cast<double>(r.offending), 0.0, 0.0, Sided::upper,
                            {{"blocks", static_cast<double>(r.blocks)},
                             {"delta", options.delta},
                             {"eta", options.eta}});
}

CheckOutcome abscont_jump_detect_check(const AnalyzedTrajectory& traj,
                                       const BlockProxyOptions& options, double probe_time,
                                       double min_blocks) {
  const auto r = abscont_blocks(traj, options, probe_time);
  return CheckOutcome::make(static_cast<double>(r.offending_at_probe), min_blocks, 0.0, Sided::lower,
                            {{"offending_total", static_cast<double>(r.offending)},
                             {"blocks", static_cast<double>(r.blocks)},
                             {"probe_time", probe_time}});
}

// ---- density ratios -------------------------------------------------------

CheckOutcome density_ratio_check(const AnalyzedTrajectory& traj, double t_min, double r_max,
                                 int count, double bound) {
  if (count < 2) throw std::invalid_argument("density_ratio: needs at least two radii");
  const Grid& g = traj.grid();
  const double r_min = 4.0 * g.spacing();
  if (!(r_max > r_min)) throw std::invalid_argument("density_ratio: r_max must exceed 4h");
  std::vector<double> radii;
  for (int i = 0; i < count; ++i) {
    radii.push_back(r_min * std::pow(r_max / r_min, static_cast<double>(i) / (count - 1)));
  }
  double worst = kNaN;
  double evaluated = 0.0, refused = 0.0;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    if (traj.time(k) < t_min - 1e-12) continue;
    const auto& band = traj[k].band;
    if (band.empty) continue;
    std::vector<std::size_t> centers;
    for (int a = 0; a < g.dim(); ++a) {
      std::size_t lo = band.cells.front(), hi = band.cells.front();
      const auto ua = static_cast<std::size_t>(a);
      for (std::size_t c : band.cells) {
        if (g.center(c)[ua] < g.center(lo)[ua]) lo = c;
        if (g.center(c)[ua] > g.center(hi)[ua]) hi = c;
      }
      centers.push_back(lo);
      centers.push_back(hi);
    }
    for (std::size_t c : centers) {
      for (const auto& row : density_ratio(traj[k].normalized, g.center(c), radii)) {
        if (!row.ratio) {
          refused += 1.0;
          continue;
        }
        evaluated += 1.0;
        worst = std::isnan(worst) ? *row.ratio : std::max(worst, *row.ratio);
      }
    }
  }
  return CheckOutcome::make(worst, bound, 0.0, Sided::upper,
                            {{"evaluated", evaluated}, {"refused", refused}, {"r_min", r_min}, {"r_max", r_max}});
}

// ---- measure-function pairs -------------------------------------------------

MeasureFunctionPair velocity_pair(const AnalyzedTrajectory& traj, std::size_t k,
                                  const std::optional<BandOptions>& options) {
  const InterfaceFields band = options
                                   ? interface_fields(traj.trajectory()[k], traj.potential(), *options)
                                   : traj[k].band;
  const Grid& g = traj.grid();
  const auto mu = traj[k].normalized.values();
  MeasureFunctionPair out;
  for (std::size_t i = 0; i < band.cells.size(); ++i) {
    const std::size_t c = band.cells[i];
    out.points.push_back(g.center(c));
    out.mass.push_back(mu[c] * g.cell_volume());
    out.f.push_back(band.velocity[i]);
  }
  return out;
}

MeasureFunctionPair sphere_pair(const ReferenceFlow& flow, double t, int samples) {
  flow.validate();
  if (samples < 8) throw std::invalid_argument("sphere_pair: needs at least 8 samples");
  MeasureFunctionPair out;
  const double r = exact_flow_radius(flow, t);
  if (r <= 0.0) return out;
  const double pi = std::numbers::pi;
  const double area = flow.dim == 2 ? 2.0 * pi * r : 4.0 * pi * r * r;
  const double f = -(flow.dim - 1) / r;
  const double golden = pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < samples; ++i) {
    Point u{0.0, 0.0, 0.0};
    if (flow.dim == 2) {
      const double th = 2.0 * pi * (i + 0.5) / samples;
      u = {std::cos(th), std::sin(th), 0.0};
    } else {
      const double z = 1.0 - 2.0 * (i + 0.5) / samples;
      const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double ph = golden * i;
      u = {s * std::cos(ph), s * std::sin(ph), z};
    }
    out.points.push_back({flow.center[0] + r * u[0], flow.center[1] + r * u[1], flow.center[2] + r * u[2]});
    out.mass.push_back(area / samples);
    out.f.push_back(f);
  }
  return out;
}

double mfp_pairing(const MeasureFunctionPair& pair, const TestFunction& test, double t) {
  std::vector<double> terms(pair.f.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    terms[i] = pair.f[i] * pair.mass[i] * test.value(pair.points[i], t);
  }
  return pairwise_sum(terms);
}

double mfp_second_moment(const MeasureFunctionPair& pair) {
  std::vector<double> terms(pair.f.size());
  for (std::size_t i = 0; i < terms.size(); ++i) terms[i] = pair.f[i] * pair.f[i] * pair.mass[i];
  return pairwise_sum(terms);
}

CheckOutcome mfp_lsc_check(const std::vector<MeasureFunctionPair>& sweep,
                           const MeasureFunctionPair& limit, double slack, double moment_spread) {
  if (sweep.size() < 3) throw std::invalid_argument("mfp_lsc: needs at least three levels");
  Details details;
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    const double m = mfp_second_moment(sweep[i]);
    if (!std::isfinite(m)) throw std::invalid_argument("mfp_lsc: non-finite second moment");
    details.emplace_back("moment" + std::to_string(i), m);
    lo = std::min(lo, m);
    hi = std::max(hi, m);
  }
  if (!(lo > 0.0) || hi > moment_spread * lo) {
    std::ostringstream msg;
    msg << "mfp_lsc: second moments are not uniformly bounded (range " << lo << " .. " << hi << ")";
    throw std::invalid_argument(msg.str());
  }
  const double lim = mfp_second_moment(limit);
  return CheckOutcome::make(lim, lo, slack * lo, Sided::upper, std::move(details));
}

CheckOutcome mfp_pairing_gap_check(const std::vector<MeasureFunctionPair>& sweep,
                                   const MeasureFunctionPair& limit,
                                   const std::vector<TestFunction>& suite, double t,
                                   double abs_floor) {
  if (sweep.size() < 3) throw std::invalid_argument("mfp_pairing_gap: needs at least three levels");
  if (suite.empty()) throw std::invalid_argument("mfp_pairing_gap: empty test suite");
  Details details;
  double violations = 0.0;
  for (std::size_t j = 0; j < suite.size(); ++j) {
    const double target = mfp_pairing(limit, suite[j], t);
    std::vector<double> gap;
    for (std::size_t i = 0; i < sweep.size(); ++i) {
      gap.push_back(std::abs(mfp_pairing(sweep[i], suite[j], t) - target));
      details.emplace_back("test" + std::to_string(j) + ".gap" + std::to_string(i), gap.back());
    }
    for (std::size_t i = 1; i < gap.size(); ++i) {
      if (gap[i] <= abs_floor) continue;
      if (!(gap[i] < gap[i - 1])) violations += 1.0;
    }
  }
  return CheckOutcome::make(violations, 0.0, 0.0, Sided::upper, std::move(details));
}

}  // namespace aclab
