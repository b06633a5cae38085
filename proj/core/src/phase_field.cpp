#include "aclab/phase_field.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace aclab {

PhaseField::PhaseField(ScalarField field, double eps, double time)
    : field_(std::move(field)), eps_(eps), time_(time) {
  if (!(eps_ > 0.0) || !std::isfinite(eps_)) throw std::invalid_argument("PhaseField: eps must be positive");
  if (!(time_ >= 0.0) || !std::isfinite(time_)) throw std::invalid_argument("PhaseField: time must be >= 0");
  const double h = field_.grid().spacing();
  if (eps_ < 2.0 * h * (1.0 - 1e-12)) {
    std::ostringstream msg;
    msg << "PhaseField: eps/h = " << eps_ / h << " is below the required ratio 2";
    throw std::invalid_argument(msg.str());
  }
  const double bound = 1.0 + kOvershoot;
  for (double v : field_.values()) {
    if (std::abs(v) > bound) {
      std::ostringstream msg;
      msg << "PhaseField: value " << v << " outside [-" << bound << ", " << bound << "]";
      throw std::invalid_argument(msg.str());
    }
  }
}

void PhaseTrajectory::append(Snapshot snapshot, double normalized_energy) {
  if (!snapshots_.empty()) {
    const auto& last = snapshots_.back().phase;
    if (!(snapshot.phase.time() > last.time())) {
      throw std::invalid_argument("PhaseTrajectory: snapshot times must increase strictly");
    }
    if (snapshot.phase.eps() != last.eps()) {
      throw std::invalid_argument("PhaseTrajectory: eps must be uniform across snapshots");
    }
    if (!snapshot.phase.grid().same_shape(last.grid())) {
      throw std::invalid_argument("PhaseTrajectory: grid must be uniform across snapshots");
    }
  }
  snapshots_.push_back(std::move(snapshot));
  energy_.push_back(normalized_energy);
}

double PhaseTrajectory::eps() const {
  if (snapshots_.empty()) throw std::logic_error("PhaseTrajectory: empty");
  return snapshots_.front().phase.eps();
}

const Grid& PhaseTrajectory::grid() const {
  if (snapshots_.empty()) throw std::logic_error("PhaseTrajectory: empty");
  return snapshots_.front().phase.grid();
}

double PhaseTrajectory::max_cadence() const {
  double m = 0.0;
  for (std::size_t k = 1; k < size(); ++k) m = std::max(m, time(k) - time(k - 1));
  return m;
}

std::size_t PhaseTrajectory::index_at(double t) const {
  const double span = size() > 1 ? end_time() - start_time() : 1.0;
  const double tol = dt_ > 0.0 ? 0.5 * dt_ : 1e-9 * span;
  for (std::size_t k = 0; k < size(); ++k) {
    if (std::abs(time(k) - t) <= tol) return k;
  }
  std::ostringstream msg;
  msg << "PhaseTrajectory: no snapshot at t = " << t;
  throw std::invalid_argument(msg.str());
}

}  // namespace aclab
