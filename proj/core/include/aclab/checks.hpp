#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "aclab/geometry.hpp"
#include "aclab/report.hpp"
#include "aclab/test_function.hpp"
#include "aclab/trajectory_analysis.hpp"

namespace aclab {

/// A sweep ordered by decreasing eps.
using Sweep = std::vector<const AnalyzedTrajectory*>;

// ---- energy and discrepancy ------------------------------------------------

/// max_k [ mu_{t_k}(all) + (1/sigma) int_0^{t_k} int eps (d phi/dt)^2 ] against
/// mu_0(all), one-sided with tolerance slack * mu_0.
CheckOutcome energy_dissipation_check(const AnalyzedTrajectory& traj, double slack);

/// D(eps) = int_0^T int |xi| / sigma, trapezoid in time.
double discrepancy_integral(const AnalyzedTrajectory& traj);

/// Number of consecutive sweep pairs where D fails to decrease strictly.
/// Refuses sweeps with fewer than three eps values.
CheckOutcome discrepancy_decay_check(const Sweep& sweep);
/// D(finest) / D(coarsest) against `bound`.
CheckOutcome discrepancy_ratio_check(const Sweep& sweep, double bound);
/// D(eps) against fraction * T * mu_0.
CheckOutcome discrepancy_bound_check(const AnalyzedTrajectory& traj, double fraction);
/// int |xi| / int e at the last snapshot.
CheckOutcome equipartition_check(const AnalyzedTrajectory& traj, double tolerance);

// ---- solver fidelity ------------------------------------------------------

/// sup |phi - Psi(d~(x) / eps)| at the last snapshot.
CheckOutcome profile_fidelity_check(const AnalyzedTrajectory& traj, const Shape& shape,
                                    double tolerance);

/// Radius of the ball with the measured phase volume.
double volume_radius(double volume, int dim);

/// Relative radius error at time t against the reference flow.
CheckOutcome radius_law_check(const AnalyzedTrajectory& traj, const ReferenceFlow& flow, double t,
                              double tolerance);

// ---- Brakke inequality ----------------------------------------------------

struct PairingTerms {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// LHS = mu_t2(phi(t2)) - mu_t1(phi(t1));
/// RHS = int int (-phi V^2 + V grad phi . nu + d phi/dt) d mu dt.
/// The V terms run over the band, the time derivative over all cells.
PairingTerms brakke_terms(const AnalyzedTrajectory& traj, const TestFunction& test, double t1,
                          double t2);

/// max over the suite of LHS - RHS against tolerance fraction * mu_0.
CheckOutcome brakke_check(const AnalyzedTrajectory& traj, const std::vector<TestFunction>& suite,
                          double t1, double t2, double fraction);

// ---- volume-change formula -------------------------------------------------

struct VolumeChangeTerms {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  /// residual / max(|lhs|, floor * domain volume).
  double relative = 0.0;
  /// Diagnostics: LHS from the cell indicator, RHS with the boundary term
  /// restricted to the band.
  double lhs_cells = 0.0;
  double rhs_band = 0.0;
};

/// LHS = int_{E_t2} phi - int_{E_t1} phi with E_t = {phi_h >= 0} for the
/// piecewise-linear interpolant phi_h (interpolated_phase_integral);
/// RHS = int int_{E_t} d phi/dt + int int phi V |grad w(phi)| / sigma, with
/// V |grad w| evaluated as (d phi/dt) sqrt(2 W(phi)) on every cell.
VolumeChangeTerms volume_change_terms(const AnalyzedTrajectory& traj, const TestFunction& test,
                                      double t1, double t2, double floor_fraction);

CheckOutcome bv_residual_check(const AnalyzedTrajectory& traj, const TestFunction& test, double t1,
                               double t2, double tolerance, double floor_fraction);
/// Number of consecutive sweep pairs where the relative residual fails to decrease.
CheckOutcome bv_convergence_check(const Sweep& sweep, const TestFunction& test, double t1,
                                  double t2, double floor_fraction);
/// Absolute residual compared with the expected jump, relative tolerance.
CheckOutcome bv_jump_detect_check(const AnalyzedTrajectory& traj, const TestFunction& test,
                                  double t1, double t2, double expected, double relative_tolerance);

// ---- L2 flow pairing ------------------------------------------------------

/// R = |int int (d phi/dt + V grad phi . nu) d mu dt| / sup |phi| over the whole trajectory.
double l2_pairing(const AnalyzedTrajectory& traj, const TestFunction& test);
/// 2 (mu_0 + (1/sigma) int int eps (d phi/dt)^2).
double l2_cap(const AnalyzedTrajectory& traj);
CheckOutcome l2_flow_check(const AnalyzedTrajectory& traj, const std::vector<TestFunction>& suite,
                           double slack);
/// max |R(factor * test) - R(test)| over the suite.
CheckOutcome l2_amplitude_invariance_check(const AnalyzedTrajectory& traj,
                                           const std::vector<TestFunction>& suite, double factor,
                                           double tolerance);

// ---- space-time absolute continuity ----------------------------------------

/// Max relative gap between |(grad w, d w/dt)| and sqrt(1 + V^2) |grad w| on the band.
CheckOutcome spacetime_identity_check(const AnalyzedTrajectory& traj, double tolerance);

struct BlockProxyOptions {
  int block_cells = 8;
  int block_intervals = 4;
  double delta = 1e-4;
  double eta = 1e-4;
};

struct BlockProxyResult {
  std::size_t blocks = 0;
  std::size_t offending = 0;
  /// Offending blocks whose time span contains the probe time.
  std::size_t offending_at_probe = 0;
  double perimeter_total = 0.0;
  double energy_total = 0.0;
};

/// Space-time blocks whose share of the indicator's space-time variation
/// exceeds eta while the energy share of their neighborhood stays below delta.
BlockProxyResult abscont_blocks(const AnalyzedTrajectory& traj, const BlockProxyOptions& options,
                                double probe_time = -1.0);

CheckOutcome abscont_blocks_check(const AnalyzedTrajectory& traj, const BlockProxyOptions& options);
/// Passes when at least `min_blocks` offending blocks straddle `probe_time`.
CheckOutcome abscont_jump_detect_check(const AnalyzedTrajectory& traj,
                                       const BlockProxyOptions& options, double probe_time,
                                       double min_blocks);

// ---- density ratios -------------------------------------------------------

/// Max density ratio over snapshots with t >= t_min, centers at the extreme
/// band cells along each axis, and `count` radii spaced geometrically in
/// [4h, r_max].
CheckOutcome density_ratio_check(const AnalyzedTrajectory& traj, double t_min, double r_max,
                                 int count, double bound);

// ---- measure-function pairs -------------------------------------------------

/// A measure given by weighted atoms, each carrying a function value.
struct MeasureFunctionPair {
  std::vector<Point> points;
  std::vector<double> mass;
  std::vector<double> f;
};

/// Band atoms of snapshot k: mass mu_c h^n, value V. A band other than the
/// trajectory's own is recomputed from the stored snapshot.
MeasureFunctionPair velocity_pair(const AnalyzedTrajectory& traj, std::size_t k,
                                  const std::optional<BandOptions>& band = std::nullopt);
/// Surface atoms of the reference sphere at time t with value h . nu = -(n-1)/r.
MeasureFunctionPair sphere_pair(const ReferenceFlow& flow, double t, int samples);

double mfp_pairing(const MeasureFunctionPair& pair, const TestFunction& test, double t);
double mfp_second_moment(const MeasureFunctionPair& pair);

/// int |f|^2 d mu of the limit against the smallest moment of the sweep.
/// Refuses sweeps whose moments are non-finite or spread by more than
/// `moment_spread` (max / min).
CheckOutcome mfp_lsc_check(const std::vector<MeasureFunctionPair>& sweep,
                           const MeasureFunctionPair& limit, double slack,
                           double moment_spread = 10.0);
/// Number of (consecutive pair, test) combinations where the pairing gap to
/// the limit fails to decrease. Gaps below abs_floor count as converged.
CheckOutcome mfp_pairing_gap_check(const std::vector<MeasureFunctionPair>& sweep,
                                   const MeasureFunctionPair& limit,
                                   const std::vector<TestFunction>& suite, double t,
                                   double abs_floor = 1e-12);

// ---- analytic flow identities ----------------------------------------------

/// Co-area factor 1 / sqrt(1 + |h|^2) of the sphere flow at time t.
double coarea_factor(const ReferenceFlow& flow, double t);

/// Closed-form identities on {|x - c| = r(t)} at the given times: the
/// co-area factor, the slicing identity for the spatial normal, the
/// space-time normal formula and unit length. Value is the max violation.
CheckOutcome geometric_identity_check(const ReferenceFlow& flow, const std::vector<double>& times,
                                      double tolerance);

/// P1 tangential gradient of the time coordinate on small simplices of the
/// parametrized space-time sphere, compared with coarea_factor.
CheckOutcome coarea_mesh_check(const ReferenceFlow& flow, double t, double size, double tolerance);

}  // namespace aclab
