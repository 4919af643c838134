#pragma once

#include "spinrel/errors.hpp"

namespace spinrel {

/// Physical inputs of the two-site chain. All rates share one inverse-time
/// unit; time grids are expressed in the reciprocal unit.
struct ModelParams {
  double J;       ///< exchange coupling, >= 0, finite
  double gamma1;  ///< site-1 damping rate, > 0
  double gamma2;  ///< site-2 damping rate, > 0
};

/// Throws ValidationError naming the offending field.
void validate(const ModelParams& p);

enum class Regime { Underdamped, Overdamped, Critical };

const char* to_string(Regime r);

/// Default halfwidth of the critical band in |dgamma| - 4J.
inline constexpr double kRegimeTol = 1e-9;

/// Regime-dependent derived quantities. lambda_or_omega holds the spectral
/// gap Lambda = sqrt(dgamma^2 - 16 J^2) in the overdamped regime, the
/// oscillation frequency Omega = sqrt(16 J^2 - dgamma^2) in the underdamped
/// regime, and 0 at criticality. alpha = dgamma^2 / (Lambda or Omega)^2;
/// k = 2 gbar / Lambda. alpha and k are NaN where undefined.
struct DerivedParams {
  double gbar;
  double dgamma;  // signed; closed forms use only dgamma^2 but eigenvectors need the sign
  Regime regime;
  double lambda_or_omega;
  double alpha;
  double k;
};

DerivedParams classify_regime(const ModelParams& p, double eps_crit = kRegimeTol);

DerivedParams derived_values(const ModelParams& p);

}  // namespace spinrel
