#include "spinrel/model.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace spinrel {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

void validate(const ModelParams& p) {
  if (!std::isfinite(p.J) || p.J < 0.0) {
    throw ValidationError("J must be finite and >= 0 (got " + std::to_string(p.J) + ")");
  }
  if (!std::isfinite(p.gamma1) || p.gamma1 <= 0.0) {
    throw ValidationError("gamma1 must be finite and > 0 (got " + std::to_string(p.gamma1) + ")");
  }
  if (!std::isfinite(p.gamma2) || p.gamma2 <= 0.0) {
    throw ValidationError("gamma2 must be finite and > 0 (got " + std::to_string(p.gamma2) + ")");
  }
}

const char* to_string(Regime r) {
  switch (r) {
    case Regime::Underdamped: return "underdamped";
    case Regime::Overdamped: return "overdamped";
    case Regime::Critical: return "critical";
  }
  return "unknown";
}

DerivedParams classify_regime(const ModelParams& p, double eps_crit) {
  validate(p);
  if (!std::isfinite(eps_crit) || eps_crit < 0.0) {
    throw ValidationError("eps_crit must be finite and >= 0");
  }

  DerivedParams d;
  d.gbar = 0.5 * (p.gamma1 + p.gamma2);
  d.dgamma = p.gamma1 - p.gamma2;

  const double adg = std::abs(d.dgamma);
  const double gap = adg - 4.0 * p.J;  // signed distance to the crossover
  if (gap > eps_crit) {
    d.regime = Regime::Overdamped;
    // (adg - 4J)(adg + 4J) = dgamma^2 - 16 J^2, accurate near the crossover
    d.lambda_or_omega = std::sqrt(gap * (adg + 4.0 * p.J));
    const double l2 = d.lambda_or_omega * d.lambda_or_omega;
    d.alpha = d.dgamma * d.dgamma / l2;
    d.k = 2.0 * d.gbar / d.lambda_or_omega;
  } else if (gap < -eps_crit) {
    d.regime = Regime::Underdamped;
    d.lambda_or_omega = std::sqrt(-gap * (adg + 4.0 * p.J));
    const double o2 = d.lambda_or_omega * d.lambda_or_omega;
    d.alpha = d.dgamma * d.dgamma / o2;
    d.k = kNaN;
  } else {
    d.regime = Regime::Critical;
    d.lambda_or_omega = 0.0;
    d.alpha = kNaN;
    d.k = kNaN;
  }
  return d;
}

DerivedParams derived_values(const ModelParams& p) { return classify_regime(p, kRegimeTol); }

}  // namespace spinrel
