#include "spinrel/fpt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "spinrel/closedform.hpp"
#include "spinrel/rng.hpp"

namespace spinrel {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// R(t_k) for k = 0 .. K; strictly positive and non-increasing.
std::vector<double> survival_grid(const ModelParams& p, const MonitoringConfig& cfg) {
  const std::size_t K = num_bins(cfg);
  std::vector<double> R(K + 1);
  for (std::size_t k = 0; k <= K; ++k) {
    R[k] = reliability_analytic(p, static_cast<double>(k) * cfg.dt);
  }
  return R;
}

}  // namespace

void validate(const MonitoringConfig& cfg) {
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) {
    throw ValidationError("dt must be finite and > 0");
  }
  if (cfg.n_shots < 1) throw ValidationError("n_shots must be >= 1");
  if (!(cfg.t_max >= cfg.dt) || !std::isfinite(cfg.t_max)) {
    throw ValidationError("t_max must be finite and >= dt");
  }
}

std::size_t num_bins(const MonitoringConfig& cfg) {
  return static_cast<std::size_t>(std::floor(cfg.t_max / cfg.dt + 1e-9));
}

std::vector<double> bin_probabilities(const ModelParams& p, const MonitoringConfig& cfg) {
  validate(p);
  validate(cfg);
  const std::vector<double> R = survival_grid(p, cfg);
  std::vector<double> pk(R.size() - 1);
  for (std::size_t k = 0; k + 1 < R.size(); ++k) {
    pk[k] = std::clamp(1.0 - R[k + 1] / R[k], 0.0, 1.0);
  }
  return pk;
}

FptSampleSet sample_first_passage(const ModelParams& p, const MonitoringConfig& cfg) {
  validate(p);
  validate(cfg);
  const std::vector<double> R = survival_grid(p, cfg);

  FptSampleSet out;
  out.params = p;
  out.config = cfg;
  out.bins.resize(cfg.n_shots);
  for (std::size_t i = 0; i < cfg.n_shots; ++i) {
    const double u = uniform_at(cfg.seed, i);
    // first monitoring time with R(t_k) < u; R[0] = 1 > u always
    const auto it = std::partition_point(R.begin(), R.end(), [u](double r) { return r >= u; });
    out.bins[i] = (it == R.end()) ? FptSampleSet::kCensored
                                  : static_cast<std::int32_t>(it - R.begin());
  }
  return out;
}

EstimateSeries estimate(const FptSampleSet& sample) {
  if (sample.bins.empty()) throw EmptySample("sample set has no shots");
  validate(sample.params);
  validate(sample.config);

  const MonitoringConfig& cfg = sample.config;
  const std::size_t K = num_bins(cfg);
  const auto n_shots = static_cast<std::int64_t>(sample.bins.size());

  std::vector<std::int64_t> failures(K + 1, 0);  // failures detected at t_k
  for (const std::int32_t b : sample.bins) {
    if (b == FptSampleSet::kCensored) continue;
    if (b < 1 || static_cast<std::size_t>(b) > K) {
      throw ValidationError("bin index " + std::to_string(b) + " outside 1.." +
                            std::to_string(K));
    }
    ++failures[static_cast<std::size_t>(b)];
  }

  EstimateSeries es;
  es.dt = cfg.dt;
  es.t.resize(K + 1);
  es.n_risk.resize(K + 1);
  es.R_hat.resize(K + 1);
  es.n_events.resize(K);
  es.h_hat.resize(K);
  es.var_theory.resize(K);
  es.reliable.resize(K);

  std::int64_t at_risk = n_shots;
  for (std::size_t k = 0; k <= K; ++k) {
    at_risk -= failures[k];  // failures[0] == 0: no detection at t_0
    es.t[k] = static_cast<double>(k) * cfg.dt;
    es.n_risk[k] = at_risk;
    es.R_hat[k] = static_cast<double>(at_risk) / static_cast<double>(n_shots);
  }

  const std::vector<double> pk = bin_probabilities(sample.params, cfg);
  const std::vector<double> Rk = survival_grid(sample.params, cfg);
  for (std::size_t k = 0; k < K; ++k) {
    es.n_events[k] = failures[k + 1];
    es.h_hat[k] = es.n_risk[k] > 0
                      ? static_cast<double>(failures[k + 1]) /
                            (cfg.dt * static_cast<double>(es.n_risk[k]))
                      : kNaN;
    const double expected_risk = static_cast<double>(n_shots) * Rk[k];
    es.var_theory[k] = pk[k] * (1.0 - pk[k]) / (cfg.dt * cfg.dt * expected_risk);
    es.reliable[k] = es.n_risk[k] >= kMinRiskSet;
  }
  return es;
}

HazardVariance hazard_variance_theory(const ModelParams& p, double t_k,
                                      const MonitoringConfig& cfg) {
  validate(p);
  validate(cfg);
  if (!(t_k >= 0.0) || !std::isfinite(t_k)) throw ValidationError("t_k must be finite and >= 0");
  const double R = reliability_analytic(p, t_k);
  if (!(R > 0.0)) throw ValidationError("R(t_k) must be positive");
  const double R_next = reliability_analytic(p, t_k + cfg.dt);
  const double pk = std::clamp(1.0 - R_next / R, 0.0, 1.0);
  const double expected_risk = static_cast<double>(cfg.n_shots) * R;
  HazardVariance v;
  v.exact = pk * (1.0 - pk) / (cfg.dt * cfg.dt * expected_risk);
  v.asymptotic = hazard_analytic(p, t_k) / (cfg.dt * expected_risk);
  return v;
}

std::vector<VarianceRow> variance_experiment(const ModelParams& p,
                                             const MonitoringConfig& base_cfg,
                                             std::span<const std::size_t> n_shots_list,
                                             std::span<const double> t_values,
                                             int repetitions) {
  validate(p);
  validate(base_cfg);
  if (repetitions < 2) throw ValidationError("repetitions must be >= 2");
  for (const double t : t_values) {
    if (!(t >= 0.0) || t > base_cfg.t_max - base_cfg.dt) {
      throw ValidationError("observation time " + std::to_string(t) +
                            " outside the monitored window");
    }
  }

  std::vector<VarianceRow> rows;
  rows.reserve(n_shots_list.size() * t_values.size());
  for (std::size_t a = 0; a < n_shots_list.size(); ++a) {
    MonitoringConfig cfg = base_cfg;
    cfg.n_shots = n_shots_list[a];

    std::vector<std::vector<double>> h_samples(t_values.size());
    for (int rep = 0; rep < repetitions; ++rep) {
      cfg.seed = derive_seed(derive_seed(base_cfg.seed, a), static_cast<std::uint64_t>(rep));
      const EstimateSeries es = estimate(sample_first_passage(p, cfg));
      for (std::size_t ti = 0; ti < t_values.size(); ++ti) {
        const auto k = static_cast<std::size_t>(std::llround(t_values[ti] / cfg.dt));
        const double h = es.h_hat[k];
        if (std::isfinite(h)) h_samples[ti].push_back(h);
      }
    }

    for (std::size_t ti = 0; ti < t_values.size(); ++ti) {
      const auto& hs = h_samples[ti];
      double var_emp = kNaN;
      if (hs.size() >= 2) {
        double mean = 0.0;
        for (const double h : hs) mean += h;
        mean /= static_cast<double>(hs.size());
        double ss = 0.0;
        for (const double h : hs) ss += (h - mean) * (h - mean);
        var_emp = ss / static_cast<double>(hs.size() - 1);
      }
      rows.push_back({n_shots_list[a], t_values[ti], var_emp,
                      hazard_variance_theory(p, t_values[ti], cfg).exact});
    }
  }
  return rows;
}

}  // namespace spinrel
