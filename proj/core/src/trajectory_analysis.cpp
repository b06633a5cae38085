#include "aclab/trajectory_analysis.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "aclab/geometry.hpp"
#include "aclab/operators.hpp"

namespace aclab {

AnalyzedTrajectory::AnalyzedTrajectory(std::shared_ptr<const PhaseTrajectory> trajectory,
                                       Potential potential, BandOptions band)
    : trajectory_(std::move(trajectory)), potential_(std::move(potential)) {
  if (!trajectory_ || trajectory_->size() == 0) {
    throw std::invalid_argument("AnalyzedTrajectory: empty trajectory");
  }
  const double inv_sigma = 1.0 / potential_.sigma();
  snapshots_.reserve(trajectory_->size());
  for (const auto& snap : trajectory_->snapshots()) {
    DensitySnapshot d = density_snapshot(snap.phase, potential_);
    SnapshotAnalysis a{snap.phase.time(), std::move(d.normalized), d.normalized_total,
                       d.discrepancy_total, 0.0, 0.0, {}, {}};

    const auto rate = snap.rate.values();
    const double eps = snap.phase.eps();
    std::vector<double> dissipation(rate.size());
    parallel_for(rate.size(), [&](std::size_t c) { dissipation[c] = eps * rate[c] * rate[c]; });
    a.dissipation = pairwise_sum(dissipation) * snap.phase.grid().cell_volume() * inv_sigma;

    a.volume = pairwise_sum(phase_indicator(snap.phase).values()) * snap.phase.grid().cell_volume();

    a.band = interface_fields(snap, potential_, band);
    const auto v = snap.phase.values();
    a.boundary_density.resize(a.band.cells.size());
    for (std::size_t k = 0; k < a.band.cells.size(); ++k) {
      a.boundary_density[k] = potential_.sqrt_2W(v[a.band.cells[k]]) * a.band.grad_norm[k] * inv_sigma;
    }
    snapshots_.push_back(std::move(a));
  }
}

std::pair<std::size_t, std::size_t> AnalyzedTrajectory::window(double t1, double t2) const {
  if (!(t2 > t1)) throw std::invalid_argument("window: t2 must exceed t1");
  const std::size_t k1 = trajectory_->index_at(t1);
  const std::size_t k2 = trajectory_->index_at(t2);
  double cadence = 0.0;
  for (std::size_t k = k1 + 1; k <= k2; ++k) cadence = std::max(cadence, time(k) - time(k - 1));
  const double limit = (t2 - t1) / 20.0;
  if (cadence > limit * (1.0 + 1e-9)) {
    std::ostringstream msg;
    msg << "window [" << t1 << ", " << t2 << "]: snapshot cadence " << cadence
        << " exceeds (t2 - t1) / 20 = " << limit;
    throw std::invalid_argument(msg.str());
  }
  return {k1, k2};
}

std::vector<double> AnalyzedTrajectory::trapezoid_weights(std::size_t k1, std::size_t k2) const {
  std::vector<double> w(k2 - k1 + 1, 0.0);
  for (std::size_t k = k1; k < k2; ++k) {
    const double half = 0.5 * (time(k + 1) - time(k));
    w[k - k1] += half;
    w[k + 1 - k1] += half;
  }
  return w;
}

}  // namespace aclab
