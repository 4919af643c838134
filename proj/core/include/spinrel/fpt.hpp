#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "spinrel/model.hpp"

namespace spinrel {

/// Stroboscopic monitoring protocol: failure checks at t_k = k dt for
/// k = 1 .. floor(t_max/dt), each of n_shots shots starting in |11>.
struct MonitoringConfig {
  double dt = 0.1;
  std::size_t n_shots = 100000;
  std::uint64_t seed = 0;
  double t_max = 45.0;
};

void validate(const MonitoringConfig& cfg);

/// Number of monitoring bins K = floor(t_max / dt).
std::size_t num_bins(const MonitoringConfig& cfg);

/// Risk sets below this size are flagged unreliable for hazard estimation.
inline constexpr std::int64_t kMinRiskSet = 10;

/// Per-shot first-passage bins. bins[i] = k >= 1 means failure was first
/// detected at t_k, i.e. T in (t_{k-1}, t_k]; kCensored means the shot
/// survived every check up to t_max. Bit-exactly reproducible from
/// (seed, config, params).
struct FptSampleSet {
  static constexpr std::int32_t kCensored = -1;
  ModelParams params;
  MonitoringConfig config;
  std::vector<std::int32_t> bins;
};

/// Conditional failure probabilities p_k = 1 - R(t_{k+1})/R(t_k) for
/// k = 0 .. K-1. Each lies in [0, 1] and the survival products telescope
/// back to R.
std::vector<double> bin_probabilities(const ModelParams& p, const MonitoringConfig& cfg);

/// Inverse-transform sampling of the monitored first-passage time. Valid
/// because the |11> start keeps the state block-diagonal across excitation
/// sectors, so stroboscopic failure checks do not disturb the surviving
/// dynamics and the first-passage law is exactly 1 - R(t).
FptSampleSet sample_first_passage(const ModelParams& p, const MonitoringConfig& cfg);

/// Estimator series on the monitoring grid. Arrays t, n_risk, R_hat cover
/// k = 0 .. K; the per-bin arrays n_events, h_hat, var_theory cover
/// k = 0 .. K-1 (the bin starting at t_k). h_hat is NaN where the risk set
/// is empty; reliable marks bins with n_risk >= kMinRiskSet.
struct EstimateSeries {
  double dt = 0.0;
  std::vector<double> t;
  std::vector<std::int64_t> n_risk;
  std::vector<double> R_hat;
  std::vector<std::int64_t> n_events;
  std::vector<double> h_hat;
  std::vector<double> var_theory;  // exact binomial form
  std::vector<bool> reliable;
};

/// Survival-curve and hazard estimators from a sample set. Censored shots
/// stay in every risk set up to t_max and contribute no failure count.
/// Throws EmptySample on an empty bin list.
EstimateSeries estimate(const FptSampleSet& sample);

/// Theoretical variance of the hazard estimator at monitoring time t_k:
/// exact binomial form p_k(1-p_k) / (dt^2 E[n_risk]) and the small-dt
/// asymptotic h / (dt n_shots R).
struct HazardVariance {
  double exact;
  double asymptotic;
};

HazardVariance hazard_variance_theory(const ModelParams& p, double t_k,
                                      const MonitoringConfig& cfg);

struct VarianceRow {
  std::size_t n_shots;
  double t;
  double var_emp;     // unbiased sample variance across repetitions
  double var_theory;  // exact binomial form
};

/// Monte Carlo variance scan: for each shot count and observation time,
/// repeats the full sample/estimate pipeline with independent derived seeds
/// and tabulates the empirical variance of the hazard estimator against the
/// binomial prediction. Repetitions whose risk set is empty at t are skipped.
std::vector<VarianceRow> variance_experiment(const ModelParams& p,
                                             const MonitoringConfig& base_cfg,
                                             std::span<const std::size_t> n_shots_list,
                                             std::span<const double> t_values,
                                             int repetitions);

}  // namespace spinrel
