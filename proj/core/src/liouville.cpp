#include "spinrel/liouville.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "spinrel/closedform.hpp"

namespace spinrel {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::complex<double> kI{0.0, 1.0};

// Operators of the two-site model at the resonant point, basis
// {|00>, |10>, |01>, |11>}.
struct Generator {
  Eigen::Matrix4cd H;
  Eigen::Matrix4cd L1, L2;    // lowering operators of sites 1 and 2
  Eigen::Matrix4cd n1, n2;    // local number operators
  double gamma1, gamma2;

  explicit Generator(const ModelParams& p) : gamma1(p.gamma1), gamma2(p.gamma2) {
    H.setZero();
    H(1, 2) = p.J;
    H(2, 1) = p.J;
    L1.setZero();
    L1(0, 1) = 1.0;  // |10> -> |00>
    L1(2, 3) = 1.0;  // |11> -> |01>
    L2.setZero();
    L2(0, 2) = 1.0;  // |01> -> |00>
    L2(1, 3) = 1.0;  // |11> -> |10>
    n1 = L1.adjoint() * L1;
    n2 = L2.adjoint() * L2;
  }

  DensityMatrix rhs(const DensityMatrix& rho) const {
    DensityMatrix d = -kI * (H * rho - rho * H);
    d += gamma1 * (L1 * rho * L1.adjoint() - 0.5 * (n1 * rho + rho * n1));
    d += gamma2 * (L2 * rho * L2.adjoint() - 0.5 * (n2 * rho + rho * n2));
    return d;
  }
};

DensityMatrix rk4_step(const Generator& gen, const DensityMatrix& rho, double h) {
  const DensityMatrix k1 = gen.rhs(rho);
  const DensityMatrix k2 = gen.rhs(rho + (0.5 * h) * k1);
  const DensityMatrix k3 = gen.rhs(rho + (0.5 * h) * k2);
  const DensityMatrix k4 = gen.rhs(rho + h * k3);
  return rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

void check_grid(std::span<const double> t_grid) {
  if (t_grid.empty()) throw ValidationError("t_grid must be nonempty");
  for (std::size_t i = 0; i + 1 < t_grid.size(); ++i) {
    if (!(t_grid[i + 1] > t_grid[i])) {
      throw ValidationError("t_grid must be strictly increasing (violated at index " +
                            std::to_string(i + 1) + ")");
    }
  }
  if (!std::isfinite(t_grid.front()) || !std::isfinite(t_grid.back())) {
    throw ValidationError("t_grid entries must be finite");
  }
}

double min_spacing(std::span<const double> t_grid) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < t_grid.size(); ++i) m = std::min(m, t_grid[i + 1] - t_grid[i]);
  return m;
}

void check_state_invariants(const DensityMatrix& rho, double t) {
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kHermitianTol) {
    throw InvariantBreach("hermiticity deviation " + std::to_string(herm) + " at t = " +
                          std::to_string(t));
  }
  const double tr_dev = std::abs(rho.trace() - std::complex<double>{1.0, 0.0});
  if (tr_dev > kTraceTol) {
    throw InvariantBreach("trace deviation " + std::to_string(tr_dev) + " at t = " +
                          std::to_string(t));
  }
  Eigen::SelfAdjointEigenSolver<DensityMatrix> es(0.5 * (rho + rho.adjoint()),
                                                  Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -kPositivityTol) {
    throw InvariantBreach("negative eigenvalue " + std::to_string(min_eig) + " at t = " +
                          std::to_string(t));
  }
}

// Reduced system integrated with the same fixed-step RK4 scheme; used where
// the spectral solution degenerates.
std::vector<ReducedState> integrate_reduced(const Eigen::Matrix4d& A, const ReducedState& x0,
                                            std::span<const double> t_grid, double dt) {
  std::vector<ReducedState> out;
  out.reserve(t_grid.size());
  ReducedState x = x0;
  out.push_back(x);
  for (std::size_t i = 0; i + 1 < t_grid.size(); ++i) {
    const double span = t_grid[i + 1] - t_grid[i];
    const auto n = static_cast<std::size_t>(std::ceil(span / dt - 1e-12));
    const double h = span / static_cast<double>(std::max<std::size_t>(n, 1));
    for (std::size_t s = 0; s < std::max<std::size_t>(n, 1); ++s) {
      const ReducedState k1 = A * x;
      const ReducedState k2 = A * (x + (0.5 * h) * k1);
      const ReducedState k3 = A * (x + (0.5 * h) * k2);
      const ReducedState k4 = A * (x + h * k3);
      x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    out.push_back(x);
  }
  return out;
}

}  // namespace

DensityMatrix ket11_density() {
  DensityMatrix rho = DensityMatrix::Zero();
  rho(3, 3) = 1.0;
  return rho;
}

DensityMatrix ket00_density() {
  DensityMatrix rho = DensityMatrix::Zero();
  rho(0, 0) = 1.0;
  return rho;
}

ReducedState reduced_from_density(const DensityMatrix& rho) {
  ReducedState x;
  x[0] = rho(1, 1).real();
  x[1] = rho(2, 2).real();
  x[2] = rho(3, 3).real();
  x[3] = (kI * (rho(1, 2) - rho(2, 1))).real();
  return x;
}

Eigen::Matrix4d build_A(const ModelParams& p) {
  validate(p);
  const double gbar = 0.5 * (p.gamma1 + p.gamma2);
  Eigen::Matrix4d A;
  A << -p.gamma1, 0.0, p.gamma2, p.J,
       0.0, -p.gamma2, p.gamma1, -p.J,
       0.0, 0.0, -2.0 * gbar, 0.0,
       -2.0 * p.J, 2.0 * p.J, 0.0, -gbar;
  return A;
}

DensityMatrix lindblad_rhs(const DensityMatrix& rho, const ModelParams& p) {
  validate(p);
  return Generator(p).rhs(rho);
}

std::vector<DensityMatrix> evolve_master(const DensityMatrix& rho0, const ModelParams& p,
                                         std::span<const double> t_grid, double dt) {
  validate(p);
  check_grid(t_grid);
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("dt must be finite and > 0");
  const double rate = p.gamma1 + p.gamma2 + 4.0 * p.J;
  if (dt * rate > kStepGuard) {
    throw StepTooLarge("dt * (gamma1 + gamma2 + 4J) = " + std::to_string(dt * rate) +
                       " exceeds the stability guard " + std::to_string(kStepGuard));
  }
  if (t_grid.size() > 1 && dt > min_spacing(t_grid) * (1.0 + 1e-9)) {
    throw ValidationError("dt must not exceed the minimum grid spacing");
  }
  const double herm0 = (rho0 - rho0.adjoint()).cwiseAbs().maxCoeff();
  if (herm0 > kHermitianTol) throw ValidationError("rho0 must be Hermitian");
  if (std::abs(rho0.trace() - std::complex<double>{1.0, 0.0}) > kTraceTol) {
    throw ValidationError("rho0 must have unit trace");
  }

  const Generator gen(p);
  std::vector<DensityMatrix> out;
  out.reserve(t_grid.size());
  DensityMatrix rho = rho0;
  check_state_invariants(rho, t_grid.front());
  out.push_back(rho);
  for (std::size_t i = 0; i + 1 < t_grid.size(); ++i) {
    const double span = t_grid[i + 1] - t_grid[i];
    const auto n = std::max<std::size_t>(static_cast<std::size_t>(std::ceil(span / dt - 1e-12)), 1);
    const double h = span / static_cast<double>(n);
    for (std::size_t s = 0; s < n; ++s) rho = rk4_step(gen, rho, h);
    check_state_invariants(rho, t_grid[i + 1]);
    out.push_back(rho);
  }
  return out;
}

ReducedTrajectory evolve_reduced(const ReducedState& x0, const ModelParams& p,
                                 std::span<const double> t_grid) {
  validate(p);
  check_grid(t_grid);
  for (int i = 0; i < 3; ++i) {
    if (x0[i] < -1e-9 || x0[i] > 1.0 + 1e-9) {
      throw ValidationError("x0 population component " + std::to_string(i) +
                            " outside [0, 1] tolerance");
    }
  }
  if (x0[0] + x0[1] + x0[2] > 1.0 + 1e-9) {
    throw ValidationError("x0 populations must sum to at most 1");
  }
  if (std::abs(x0[3]) > 2.0 * std::sqrt(std::max(x0[0] * x0[1], 0.0)) + 1e-8) {
    throw ValidationError("x0 coherence violates the Cauchy-Schwarz bound");
  }

  ReducedTrajectory traj;
  traj.params = p;
  traj.t.assign(t_grid.begin(), t_grid.end());

  const DerivedParams d = classify_regime(p);
  if (d.regime != Regime::Critical) {
    try {
      const ModeDecomposition modes = eigen_modes(p);
      const auto C = solve_coefficients(modes, x0);
      traj.states.reserve(t_grid.size());
      const double t0 = t_grid.front();
      for (const double t : t_grid) {
        if (t == t0) {
          traj.states.push_back(x0);  // mode sum reproduces x0 only to roundoff
          continue;
        }
        Eigen::Vector4cd xc = Eigen::Vector4cd::Zero();
        for (int k = 0; k < 4; ++k) {
          xc += C[k] * std::exp(modes.eigenvalues[k] * (t - t0)) * modes.eigenvectors[k];
        }
        traj.states.push_back(xc.real());
      }
      return traj;
    } catch (const DegenerateDissipation&) {
      // fall through to the integrator
    }
  }
  const double rate = p.gamma1 + p.gamma2 + 4.0 * p.J;
  const double dt = std::min(1e-3, 0.5 * kStepGuard / rate);
  traj.states = integrate_reduced(build_A(p), x0, t_grid, dt);
  return traj;
}

std::vector<double> reliability_numeric(const ReducedTrajectory& traj) {
  std::vector<double> R;
  R.reserve(traj.states.size());
  for (const auto& x : traj.states) R.push_back(x[0] + x[1] + x[2]);
  return R;
}

std::vector<double> hazard_numeric(const ReducedTrajectory& traj, double r_cutoff) {
  std::vector<double> h;
  h.reserve(traj.states.size());
  const double g1 = traj.params.gamma1;
  const double g2 = traj.params.gamma2;
  for (const auto& x : traj.states) {
    const double R = x[0] + x[1] + x[2];
    h.push_back(R > r_cutoff ? (g1 * x[0] + g2 * x[1]) / R : kNaN);
  }
  return h;
}

}  // namespace spinrel
