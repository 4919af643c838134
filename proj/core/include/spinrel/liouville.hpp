#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "spinrel/model.hpp"

namespace spinrel {

/// Two-site state in the ordered basis |0>=|00>, |1>=|10>, |2>=|01>, |3>=|11>.
using DensityMatrix = Eigen::Matrix4cd;

/// Closed real reduced vector x = (rho11, rho22, rho33, rho_m) with the
/// single-excitation coherence variable rho_m = i(rho12 - rho21).
using ReducedState = Eigen::Vector4d;

// Trajectory tolerances enforced by evolve_master at every output time.
inline constexpr double kTraceTol = 1e-9;
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kPositivityTol = 1e-8;
// Stability guard: dt * (gamma1 + gamma2 + 4J) must not exceed this.
inline constexpr double kStepGuard = 0.1;
// Hazard reporting cutoff on R (late-time conditioning suppression).
inline constexpr double kReliabilityCutoff = 1e-4;

DensityMatrix ket11_density();
DensityMatrix ket00_density();

/// x = (rho11, rho22, rho33, i(rho12 - rho21)) extracted from a full state.
ReducedState reduced_from_density(const DensityMatrix& rho);

/// Generator of the closed reduced system xdot = A x.
Eigen::Matrix4d build_A(const ModelParams& p);

/// Right-hand side of the master equation for local amplitude damping.
DensityMatrix lindblad_rhs(const DensityMatrix& rho, const ModelParams& p);

/// Fixed-step classical RK4 integration of the master equation, sampled at
/// t_grid (strictly increasing). Throws StepTooLarge if the stability guard
/// is violated and InvariantBreach if a trajectory tolerance is exceeded.
std::vector<DensityMatrix> evolve_master(const DensityMatrix& rho0, const ModelParams& p,
                                         std::span<const double> t_grid, double dt);

struct ReducedTrajectory {
  ModelParams params;
  std::vector<double> t;
  std::vector<ReducedState> states;
  std::vector<double> R;  ///< filled by reliability_numeric
  std::vector<double> h;  ///< filled by hazard_numeric; NaN where R <= cutoff
};

/// Solves xdot = A x on t_grid. Uses the spectral solution away from the
/// critical band; falls back to the evolve_master RK4 scheme where the mode
/// formulas degenerate (critical band, uniform dissipation, J = 0).
ReducedTrajectory evolve_reduced(const ReducedState& x0, const ModelParams& p,
                                 std::span<const double> t_grid);

/// R = rho11 + rho22 + rho33 per time.
std::vector<double> reliability_numeric(const ReducedTrajectory& traj);

/// h = (gamma1 rho11 + gamma2 rho22) / R pointwise (not a finite difference
/// of R); NaN where R <= r_cutoff.
std::vector<double> hazard_numeric(const ReducedTrajectory& traj,
                                   double r_cutoff = kReliabilityCutoff);

}  // namespace spinrel
