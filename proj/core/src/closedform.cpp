#include "spinrel/closedform.hpp"

#include <cmath>
#include <limits>

namespace spinrel {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Above this theta = Lambda t / 2 the hyperbolic forms switch to the
// slow-mode-factored expressions whose exponents are all negative, so
// arbitrarily large t cannot overflow.
constexpr double kHyperbolicSwitch = 40.0;

double reliability_critical(double gbar, double J, double t) {
  const double eg = std::exp(-gbar * t);
  const double jt = 2.0 * J * t;
  return (2.0 + jt * jt) * eg - eg * eg;
}

// Lambda -> 0 limit of the overdamped hazard.
double hazard_critical(double gbar, double J, double t) {
  const double eg = std::exp(-gbar * t);
  const double jt = 2.0 * J * t;
  return gbar - (8.0 * J * J * t + gbar * eg) / (2.0 + jt * jt - eg);
}

double reliability_underdamped(const DerivedParams& d, double t) {
  const double eg = std::exp(-d.gbar * t);
  const double half = 0.25 * d.lambda_or_omega * t;  // theta / 2
  const double s = std::sin(half);
  const double xi = 1.0 + d.alpha * 2.0 * s * s;  // 1 + alpha (1 - cos theta)
  return 2.0 * eg * xi - eg * eg;
}

double hazard_underdamped(const DerivedParams& d, double t) {
  const double om = d.lambda_or_omega;
  const double eg = std::exp(-d.gbar * t);
  const double half = 0.25 * om * t;
  const double s = std::sin(half);
  const double xi = 1.0 + d.alpha * 2.0 * s * s;
  const double num = om * d.alpha * std::sin(0.5 * om * t) + d.gbar * eg;
  return d.gbar - num / (2.0 * xi - eg);
}

double reliability_overdamped(const DerivedParams& d, double t) {
  const double lam = d.lambda_or_omega;
  const double theta = 0.5 * lam * t;
  if (theta < kHyperbolicSwitch) {
    const double eg = std::exp(-d.gbar * t);
    const double sh = std::sinh(0.5 * theta);
    const double th = 1.0 + d.alpha * 2.0 * sh * sh;  // 1 + alpha (cosh theta - 1)
    return 2.0 * eg * th - eg * eg;
  }
  // four-mode sum; slowest exponent gbar - Lambda/2 > 0 for physical rates
  const double slow = std::exp(-(d.gbar - 0.5 * lam) * t);
  const double fast = std::exp(-(d.gbar + 0.5 * lam) * t);
  const double eg = std::exp(-d.gbar * t);
  return d.alpha * (slow + fast) + (2.0 - 2.0 * d.alpha) * eg - eg * eg;
}

double hazard_overdamped(const DerivedParams& d, double t) {
  const double lam = d.lambda_or_omega;
  const double theta = 0.5 * lam * t;
  if (theta < kHyperbolicSwitch) {
    const double eg = std::exp(-d.gbar * t);
    const double sh = std::sinh(0.5 * theta);
    const double th = 1.0 + d.alpha * 2.0 * sh * sh;
    const double num = lam * d.alpha * std::sinh(theta) + d.gbar * eg;
    return d.gbar - num / (2.0 * th - eg);
  }
  // numerator and denominator scaled by exp(-theta)
  const double e2 = std::exp(-2.0 * theta);
  const double egt = std::exp(-(d.gbar + 0.5 * lam) * t);
  const double num = 0.5 * lam * d.alpha * (1.0 - e2) + d.gbar * egt;
  const double den = (2.0 - 2.0 * d.alpha) * std::exp(-theta) + d.alpha * (1.0 + e2) - egt;
  return d.gbar - num / den;
}

}  // namespace

ModeDecomposition eigen_modes(const ModelParams& p) {
  const DerivedParams d = classify_regime(p);
  if (d.regime == Regime::Critical) {
    throw DegenerateSpectrum("spectrum degenerates at |dgamma| = 4J; use the critical-limit evaluators");
  }
  if (std::abs(d.dgamma) <= kDegenerateTol) {
    throw DegenerateDissipation("eigenvector formulas divide by dgamma; |dgamma| <= 1e-12");
  }
  if (p.J <= 0.0) {
    throw DegenerateDissipation("eigenvector formulas divide by 4J; J = 0");
  }

  using C = std::complex<double>;
  // Lambda is real overdamped, i*Omega underdamped; lam2 = Lambda^2 is real either way.
  const double lam2 = (d.regime == Regime::Overdamped)
                          ? d.lambda_or_omega * d.lambda_or_omega
                          : -d.lambda_or_omega * d.lambda_or_omega;
  const C lam = (d.regime == Regime::Overdamped) ? C{d.lambda_or_omega, 0.0}
                                                 : C{0.0, d.lambda_or_omega};
  const double dg = d.dgamma;
  const double J = p.J;

  ModeDecomposition m;
  m.eigenvalues = {C{-d.gbar, 0.0}, C{-2.0 * d.gbar, 0.0}, -d.gbar - 0.5 * lam,
                   -d.gbar + 0.5 * lam};

  m.eigenvectors[0] << C{2.0 * J / dg}, C{2.0 * J / dg}, C{0.0}, C{1.0};
  m.eigenvectors[1] << C{-1.0}, C{-1.0}, C{1.0}, C{0.0};
  m.eigenvectors[2] << lam / (4.0 * J) + 2.0 * J / (dg + lam), 2.0 * J / (dg + lam), C{0.0},
      C{1.0};
  m.eigenvectors[3] << -lam / (4.0 * J) + 2.0 * J / (dg - lam), 2.0 * J / (dg - lam), C{0.0},
      C{1.0};

  m.coefficients = {C{-8.0 * J * dg / lam2}, C{1.0}, C{4.0 * J * dg / lam2},
                    C{4.0 * J * dg / lam2}};
  return m;
}

std::array<std::complex<double>, 4> solve_coefficients(const ModeDecomposition& modes,
                                                       const ReducedState& x0) {
  Eigen::Matrix4cd V;
  for (int k = 0; k < 4; ++k) V.col(k) = modes.eigenvectors[k];
  const Eigen::Vector4cd c = V.partialPivLu().solve(x0.cast<std::complex<double>>());
  return {c[0], c[1], c[2], c[3]};
}

double reliability_analytic(const ModelParams& p, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw ValidationError("t must be finite and >= 0");
  const DerivedParams d = classify_regime(p);
  switch (d.regime) {
    case Regime::Critical: return reliability_critical(d.gbar, p.J, t);
    case Regime::Underdamped: return reliability_underdamped(d, t);
    case Regime::Overdamped: return reliability_overdamped(d, t);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double hazard_analytic(const ModelParams& p, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw ValidationError("t must be finite and >= 0");
  const DerivedParams d = classify_regime(p);
  switch (d.regime) {
    case Regime::Critical: return hazard_critical(d.gbar, p.J, t);
    case Regime::Underdamped: return hazard_underdamped(d, t);
    case Regime::Overdamped: return hazard_overdamped(d, t);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

HazardAsymptote hazard_asymptote(const ModelParams& p) {
  const DerivedParams d = classify_regime(p);
  HazardAsymptote a{d.regime, kNaN, kNaN, kNaN, false};
  if (d.regime == Regime::Underdamped) {
    a.baseline = d.gbar;
    a.frequency = 0.5 * d.lambda_or_omega;
    a.bounded = true;
  } else {
    a.plateau = d.gbar - 0.5 * d.lambda_or_omega;  // equals gbar at criticality
  }
  return a;
}

}  // namespace spinrel
