#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "spinrel/model.hpp"

namespace spinrel {

/// Scan controls for the extremum classifiers. The time horizon is
/// max(horizon, horizon / Lambda) and the grid step base_step * min(1, 1/Lambda):
/// hazard extrema live at times set by 1/Lambda.
struct ScanConfig {
  double horizon = 20.0;
  double base_step = 1e-3;
  double bisect_tol = 1e-9;        // refinement tolerance in t
  std::size_t u_samples = 20000;   // uniform grid size of the u-domain method
  double degenerate_gap = 1e-6;    // roots closer than this flag near-degeneracy
};

struct ExtremumReport {
  int count = 0;                  // 0 or 2
  double t_max = 0.0;             // local maximum location (count == 2), else NaN
  double t_min = 0.0;             // local minimum location (count == 2), else NaN
  double plateau = 0.0;           // gbar - Lambda/2
  bool method_agreement = true;   // time-domain and u-domain scans agree
  bool near_degenerate = false;   // root pair closer than degenerate_gap
};

/// Time-domain extremum condition D D'' - (D')^2; its positive roots are the
/// hazard extrema. Starts at -2 gamma1 gamma2 and is negative again at long
/// times. Throws RegimeError unless overdamped with J > 0.
double extremum_indicator(const ModelParams& p, double t);

/// u-domain extremum condition on u = exp(-Lambda t / 2) in (0, 1];
/// vanishes exactly where extremum_indicator does.
double extremum_indicator_u(const ModelParams& p, double u);

/// Classifies the overdamped hazard by both scan methods; they must agree
/// or the report is flagged. Throws RegimeError unless overdamped with J > 0.
ExtremumReport count_hazard_extrema(const ModelParams& p, const ScanConfig& cfg = {});

struct PhaseMapConfig {
  double gamma_min = 0.05;
  double gamma_max = 3.0;
  int n = 100;          // grid points per axis
  double band = 0.02;   // blank halfwidth in |dgamma| - 4J around the crossover
};

/// Cell classes of the extremum-count map.
inline constexpr int kCellBlank = -1;         // non-overdamped or inside the band
inline constexpr int kCellDisagreement = -2;  // scan methods disagreed (diagnostic)

struct PhaseMapCell {
  double gamma1;
  double gamma2;
  Regime regime;
  int extrema_count;  // 0, 2, kCellBlank, or kCellDisagreement
};

/// Extremum-count map over an n x n (gamma1, gamma2) grid. Cells are
/// independent and evaluated concurrently; the output ordering (row-major in
/// gamma1, then gamma2) is deterministic regardless of scheduling, and the
/// map is exactly symmetric under (gamma1, gamma2) exchange.
std::vector<PhaseMapCell> phase_map(double J, const PhaseMapConfig& grid,
                                    const ScanConfig& scan = {});

/// Transition point x* of the k = 2 slice: the value of x = 32 J^2/Lambda^2
/// in (0, 6) where the root count of the quartic extremum polynomial in
/// (0, 1) changes (two roots below x*, none above). Throws BracketNotFound
/// if no count change is detected.
double critical_x_k2();

/// Quartic extremum polynomial coefficients of the k = 2 slice, constant
/// term first.
std::array<double, 5> k2_polynomial(double x);

struct CurvePoint {
  double gamma1;
  double gamma2;
};

/// Points of the integer-k slice k(gamma1, gamma2) = n at coupling J,
/// parametrized by s = gamma1 + gamma2 on [s_min, s_max]. Only points inside
/// the physical quadrant (gamma2 > 0) are emitted; all satisfy k = n and lie
/// in the overdamped region.
std::vector<CurvePoint> integer_k_curve(int n, double J, double s_min, double s_max,
                                        int n_points);

}  // namespace spinrel
