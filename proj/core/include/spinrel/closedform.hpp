#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>

#include "spinrel/liouville.hpp"
#include "spinrel/model.hpp"

namespace spinrel {

/// Below this |dgamma| (or at J = 0) the eigenvector formulas are singular
/// and evaluation switches to the uniform-dissipation limit branch.
inline constexpr double kDegenerateTol = 1e-12;

/// Spectral data of the reduced generator plus the mode amplitudes of the
/// |11> initial state. Eigenvalues/eigenvectors are complex in the
/// underdamped regime (conjugate pair in modes 3 and 4).
struct ModeDecomposition {
  std::array<std::complex<double>, 4> eigenvalues;
  std::array<Eigen::Vector4cd, 4> eigenvectors;
  std::array<std::complex<double>, 4> coefficients;  // x(0) = (0,0,1,0)
};

/// Throws DegenerateSpectrum in the critical regime and
/// DegenerateDissipation when |dgamma| <= kDegenerateTol or J = 0.
ModeDecomposition eigen_modes(const ModelParams& p);

/// Mode amplitudes for an arbitrary initial reduced state.
std::array<std::complex<double>, 4> solve_coefficients(const ModeDecomposition& modes,
                                                       const ReducedState& x0);

/// Closed-form reliability from the |11> start, evaluated through the
/// regime-appropriate real branch (trigonometric, hyperbolic, or the
/// polynomial-prefactor critical limit).
double reliability_analytic(const ModelParams& p, double t);

/// Closed-form hazard; h(0) = 0, h >= 0 for all finite t.
double hazard_analytic(const ModelParams& p, double t);

/// Long-time behaviour of the hazard. Overdamped and critical regimes
/// approach the constant plateau gbar - Lambda/2; the underdamped hazard
/// stays a bounded oscillation around baseline gbar with angular frequency
/// Omega/2. Fields not applicable to the regime are NaN.
struct HazardAsymptote {
  Regime regime;
  double plateau;    // overdamped/critical
  double baseline;   // underdamped
  double frequency;  // underdamped
  bool bounded;      // underdamped amplitude is time-independent
};

HazardAsymptote hazard_asymptote(const ModelParams& p);

}  // namespace spinrel
