#include "spinrel/extrema.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <thread>
#include <utility>

namespace spinrel {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct OverdampedRates {
  double gbar, lambda, alpha, k;
};

OverdampedRates require_overdamped(const ModelParams& p) {
  const DerivedParams d = classify_regime(p);
  if (d.regime != Regime::Overdamped) {
    throw RegimeError(std::string("extremum classification requires the overdamped regime (got ") +
                      to_string(d.regime) + ")");
  }
  if (p.J <= 0.0) {
    // at J = 0 the u-domain constant term vanishes and a single extremum
    // becomes possible, outside the {0, 2} classification
    throw RegimeError("extremum classification requires J > 0");
  }
  return {d.gbar, d.lambda_or_omega, d.alpha, d.k};
}

// D D'' - (D')^2 expanded in the exponential basis. The exp(2 theta) and
// exp(-2 theta) products cancel algebraically; evaluating the factored form
// instead leaves pure roundoff beyond theta ~ 36 and produces sign flicker.
// Expanded, with a = alpha, b = 2 - 2 alpha, L = Lambda/2:
//   F = 4 L^2 a^2 + L^2 a b (e^t + e^-t)
//       - a e_g [(gbar^2 + L^2)(e^t + e^-t) + 2 L gbar (e^t - e^-t)]
//       - gbar^2 b e_g
// where e^+-t = exp(+-theta) and e_g = exp(-gbar t). The scan evaluates
// F exp(-theta), which decays to the definite-sign limit L^2 a b < 0.
double indicator_scaled(const OverdampedRates& r, double t) {
  const double a = r.alpha;
  const double b = 2.0 - 2.0 * a;
  const double L = 0.5 * r.lambda;
  const double g = r.gbar;
  const double e1 = std::exp(-L * t);  // exp(-theta)
  const double e2 = e1 * e1;
  const double eg = std::exp(-g * t);
  return 4.0 * L * L * a * a * e1 + L * L * a * b * (1.0 + e2) -
         a * eg * ((g * g + L * L) * (1.0 + e2) + 2.0 * L * g * (1.0 - e2)) -
         g * g * b * eg * e1;
}

double indicator_u(const OverdampedRates& r, double u) {
  const double A = r.alpha;
  const double B = 2.0 - 2.0 * r.alpha;  // = -32 J^2 / Lambda^2
  const double k = r.k;
  const double uk = std::exp(k * std::log(u));  // u^k for noninteger k, u in (0,1]
  return A * B + 4.0 * A * A * u + A * B * u * u - A * (k + 1.0) * (k + 1.0) * uk -
         B * k * k * uk * u - A * (k - 1.0) * (k - 1.0) * uk * u * u;
}

// Bisection refinement of a sign change of f on [lo, hi] down to tol.
double bisect(const std::function<double(double)>& f, double lo, double hi, double flo,
              double tol) {
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Scan horizon. The base heuristic max(horizon, horizon/Lambda) covers the
// 1/Lambda extremum timescale; the logarithmic term covers the small-J limit
// alpha -> 1+, where the u-domain root pair sits near (alpha-1)/(2 alpha)
// and the matching time grows like (2/Lambda) log(1/(alpha-1)).
double scan_horizon(const OverdampedRates& r, const ScanConfig& cfg) {
  const double base = std::max(cfg.horizon, cfg.horizon / r.lambda);
  const double tail = 2.0 / r.lambda * std::log(400.0 * r.alpha / (r.alpha - 1.0));
  return std::max(base, tail);
}

std::vector<double> scan_time_roots(const OverdampedRates& r, const ScanConfig& cfg) {
  const double horizon = scan_horizon(r, cfg);
  const double step = cfg.base_step * std::min(1.0, 1.0 / r.lambda);
  const auto f = [&](double t) { return indicator_scaled(r, t); };
  std::vector<double> roots;
  double prev_t = 0.0;
  double prev_f = f(prev_t);  // -2 gamma1 gamma2 scaled: negative
  for (double t = step; t <= horizon + 0.5 * step; t += step) {
    const double cur = f(t);
    if ((cur < 0.0) != (prev_f < 0.0)) {
      roots.push_back(bisect(f, prev_t, t, prev_f, cfg.bisect_tol));
    }
    prev_t = t;
    prev_f = cur;
  }
  return roots;
}

std::vector<double> scan_u_roots(const OverdampedRates& r, const ScanConfig& cfg) {
  const auto f = [&](double u) { return indicator_u(r, u); };
  const auto n = cfg.u_samples;
  // uniform grid on (u_floor, 1), extended geometrically below 1/n when the
  // horizon maps past the uniform resolution
  const double u_floor = std::exp(-0.5 * r.lambda * scan_horizon(r, cfg));
  std::vector<double> grid;
  grid.reserve(n + 64);
  for (std::size_t i = n; i >= 1; --i) {
    const double u = static_cast<double>(i) / static_cast<double>(n + 1);
    if (u < u_floor) break;
    grid.push_back(u);
  }
  const double u_uniform_min = 1.0 / static_cast<double>(n + 1);
  if (u_floor < u_uniform_min) {
    for (double u = u_uniform_min / 1.0005; u >= u_floor; u /= 1.0005) grid.push_back(u);
  }

  std::vector<double> roots_t;
  double prev_u = grid.front();
  double prev_f = f(prev_u);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double u = grid[i];
    const double cur = f(u);
    if ((cur < 0.0) != (prev_f < 0.0)) {
      // bracket is [u, prev_u] with f(prev_u) = prev_f on the high side
      const double ur = bisect(f, u, prev_u, cur, 1e-14);
      roots_t.push_back(-2.0 * std::log(ur) / r.lambda);
    }
    prev_u = u;
    prev_f = cur;
  }
  std::sort(roots_t.begin(), roots_t.end());
  return roots_t;
}

int classify_cell(const ModelParams& p, const ScanConfig& scan) {
  const ExtremumReport rep = count_hazard_extrema(p, scan);
  return rep.method_agreement ? rep.count : kCellDisagreement;
}

}  // namespace

double extremum_indicator(const ModelParams& p, double t) {
  const OverdampedRates r = require_overdamped(p);
  return indicator_scaled(r, t) * std::exp(0.5 * r.lambda * t);
}

double extremum_indicator_u(const ModelParams& p, double u) {
  const OverdampedRates r = require_overdamped(p);
  if (!(u > 0.0) || u > 1.0) throw ValidationError("u must lie in (0, 1]");
  return indicator_u(r, u);
}

ExtremumReport count_hazard_extrema(const ModelParams& p, const ScanConfig& cfg) {
  const OverdampedRates r = require_overdamped(p);

  const std::vector<double> t_roots = scan_time_roots(r, cfg);
  const std::vector<double> u_roots = scan_u_roots(r, cfg);

  ExtremumReport rep;
  rep.plateau = r.gbar - 0.5 * r.lambda;
  rep.count = static_cast<int>(t_roots.size());
  rep.t_max = rep.t_min = kNaN;

  rep.method_agreement = t_roots.size() == u_roots.size();
  if (rep.method_agreement) {
    for (std::size_t i = 0; i < t_roots.size(); ++i) {
      if (std::abs(t_roots[i] - u_roots[i]) > 1e-6) rep.method_agreement = false;
    }
  }

  if (t_roots.size() == 2) {
    rep.t_max = t_roots[0];  // local maximum precedes the local minimum
    rep.t_min = t_roots[1];
    rep.near_degenerate = (t_roots[1] - t_roots[0]) < cfg.degenerate_gap;
  }
  return rep;
}

std::vector<PhaseMapCell> phase_map(double J, const PhaseMapConfig& grid, const ScanConfig& scan) {
  if (!(J > 0.0) || !std::isfinite(J)) throw ValidationError("J must be finite and > 0");
  if (!(grid.gamma_min > 0.0)) throw ValidationError("gamma_min must be > 0");
  if (!(grid.gamma_max > grid.gamma_min)) throw ValidationError("gamma_max must exceed gamma_min");
  if (grid.n < 2) throw ValidationError("n must be at least 2");
  if (!(grid.band >= 0.0)) throw ValidationError("band must be >= 0");

  const int n = grid.n;
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) {
    g[i] = grid.gamma_min + (grid.gamma_max - grid.gamma_min) * static_cast<double>(i) /
                                static_cast<double>(n - 1);
  }

  std::vector<PhaseMapCell> cells(static_cast<std::size_t>(n) * n);
  // classify the gamma1 >= gamma2 triangle; mirror the rest so the map is
  // exactly exchange-symmetric
  std::vector<std::pair<int, int>> work;
  work.reserve(static_cast<std::size_t>(n) * (n + 1) / 2);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) work.emplace_back(i, j);
  }

  const auto classify_one = [&](int i, int j) {
    const ModelParams p{J, g[i], g[j]};
    const DerivedParams d = classify_regime(p);
    int cls = kCellBlank;
    if (d.regime == Regime::Overdamped && std::abs(d.dgamma) - 4.0 * J > grid.band) {
      cls = classify_cell(p, scan);
    }
    cells[static_cast<std::size_t>(i) * n + j] = {g[i], g[j], d.regime, cls};
    if (i != j) {
      cells[static_cast<std::size_t>(j) * n + i] = {g[j], g[i], d.regime, cls};
    }
  };

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned n_threads = std::min<unsigned>(hw, 16u);
  if (n_threads <= 1 || work.size() < 64) {
    for (const auto& [i, j] : work) classify_one(i, j);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned tix = 0; tix < n_threads; ++tix) {
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t w = next.fetch_add(1);
          if (w >= work.size()) return;
          classify_one(work[w].first, work[w].second);
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  return cells;
}

std::array<double, 5> k2_polynomial(double x) {
  return {x * x + 2.0 * x, -(2.0 * x * x + 8.0 * x + 8.0), x * x + 11.0 * x + 18.0, -8.0 * x,
          x + 2.0};
}

namespace {

int k2_root_count(double x) {
  const std::array<double, 5> c = k2_polynomial(x);
  const auto eval = [&](double u) {
    return ((((c[4] * u + c[3]) * u + c[2]) * u + c[1]) * u) + c[0];
  };
  constexpr int kSamples = 20000;
  int changes = 0;
  double prev = eval(1.0 / (kSamples + 1.0));
  for (int i = 2; i <= kSamples; ++i) {
    const double u = static_cast<double>(i) / (kSamples + 1.0);
    const double cur = eval(u);
    if ((cur < 0.0) != (prev < 0.0)) ++changes;
    prev = cur;
  }
  return changes;
}

}  // namespace

double critical_x_k2() {
  // coarse bracket of the count change on (0, 6), then bisection on the count
  double lo = 0.05;
  int lo_count = k2_root_count(lo);
  double hi = 0.0;
  int hi_count = lo_count;
  for (double x = 0.1; x < 6.0; x += 0.05) {
    const int c = k2_root_count(x);
    if (c != lo_count) {
      hi = x;
      hi_count = c;
      break;
    }
    lo = x;
  }
  if (hi_count == lo_count) {
    throw BracketNotFound("root count of the k = 2 quartic never changes on (0, 6)");
  }
  while (hi - lo > 1e-7) {
    const double mid = 0.5 * (lo + hi);
    if (k2_root_count(mid) == lo_count) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<CurvePoint> integer_k_curve(int n, double J, double s_min, double s_max,
                                        int n_points) {
  if (n < 2) throw ValidationError("n must be an integer >= 2");
  if (!(J > 0.0) || !std::isfinite(J)) throw ValidationError("J must be finite and > 0");
  if (!(s_max > s_min) || !(s_min > 0.0)) throw ValidationError("require 0 < s_min < s_max");
  if (n_points < 2) throw ValidationError("n_points must be at least 2");

  std::vector<CurvePoint> pts;
  pts.reserve(static_cast<std::size_t>(n_points));
  for (int i = 0; i < n_points; ++i) {
    const double s = s_min + (s_max - s_min) * static_cast<double>(i) /
                                 static_cast<double>(n_points - 1);
    // hyperbola branch d^2/(4J)^2 - s^2/(4nJ)^2 = 1
    const double d = std::sqrt(16.0 * J * J + s * s / (static_cast<double>(n) * n));
    if (s <= d) continue;  // gamma2 would be nonpositive
    pts.push_back({0.5 * (s + d), 0.5 * (s - d)});
  }
  return pts;
}

}  // namespace spinrel
