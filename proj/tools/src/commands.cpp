#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <vector>

#include "csv.hpp"
#include "spinrel/closedform.hpp"
#include "spinrel/extrema.hpp"
#include "spinrel/fpt.hpp"
#include "spinrel/liouville.hpp"
#include "spinrel/model.hpp"

namespace spinrel_cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr const char* kTimeseriesHeader = "t,R_analytic,h_analytic,R_numeric,h_numeric";

spinrel::ModelParams model_from(const OptionResolver& opt) {
  return {opt.require_double("j"), opt.require_double("gamma1"), opt.require_double("gamma2")};
}

std::vector<double> uniform_grid(double t_max, double dt) {
  if (!(t_max > 0.0)) throw UsageError("--t-max must be > 0");
  if (!(dt > 0.0)) throw UsageError("--dt must be > 0");
  const auto n = static_cast<std::size_t>(std::floor(t_max / dt + 1e-9));
  std::vector<double> grid(n + 1);
  for (std::size_t k = 0; k <= n; ++k) grid[k] = static_cast<double>(k) * dt;
  return grid;
}

struct Timeseries {
  std::vector<double> t, R_ana, h_ana, R_num, h_num;
};

Timeseries analytic_series(const spinrel::ModelParams& p, const std::vector<double>& grid) {
  Timeseries ts;
  ts.t = grid;
  ts.R_ana.reserve(grid.size());
  ts.h_ana.reserve(grid.size());
  for (const double t : grid) {
    const double R = spinrel::reliability_analytic(p, t);
    ts.R_ana.push_back(R);
    ts.h_ana.push_back(R > spinrel::kReliabilityCutoff ? spinrel::hazard_analytic(p, t) : kNaN);
  }
  ts.R_num.assign(grid.size(), kNaN);
  ts.h_num.assign(grid.size(), kNaN);
  return ts;
}

void fill_numeric(Timeseries& ts, const spinrel::ModelParams& p, double dt) {
  const auto states = spinrel::evolve_master(spinrel::ket11_density(), p, ts.t, dt);
  spinrel::ReducedTrajectory traj;
  traj.params = p;
  traj.t = ts.t;
  traj.states.reserve(states.size());
  for (const auto& rho : states) traj.states.push_back(spinrel::reduced_from_density(rho));
  ts.R_num = spinrel::reliability_numeric(traj);
  ts.h_num = spinrel::hazard_numeric(traj);  // NaN where R <= cutoff
}

void write_timeseries(const std::string& path, const Timeseries& ts) {
  CsvWriter csv(path, kTimeseriesHeader);
  for (std::size_t i = 0; i < ts.t.size(); ++i) {
    csv.begin_row();
    csv.field(ts.t[i]);
    csv.field(ts.R_ana[i]);
    csv.field(ts.h_ana[i]);
    csv.field(ts.R_num[i]);
    csv.field(ts.h_num[i]);
    csv.end_row();
  }
}

spinrel::MonitoringConfig monitoring_from(const OptionResolver& opt, double default_tmax) {
  spinrel::MonitoringConfig cfg;
  cfg.dt = opt.get_double("dt", 0.1);
  cfg.t_max = opt.get_double("t-max", default_tmax);
  cfg.n_shots = opt.get_u64("shots", 100000);
  cfg.seed = opt.get_u64("seed", 0);
  return cfg;
}

}  // namespace

int run_analytic(const OptionResolver& opt) {
  const spinrel::ModelParams p = model_from(opt);
  const auto grid = uniform_grid(opt.get_double("t-max", 20.0), opt.get_double("dt", 1e-3));
  const Timeseries ts = analytic_series(p, grid);
  write_timeseries(opt.require_string("out"), ts);
  return 0;
}

int run_numeric(const OptionResolver& opt) {
  const spinrel::ModelParams p = model_from(opt);
  const double dt = opt.get_double("dt", 1e-3);
  const auto grid = uniform_grid(opt.get_double("t-max", 20.0), dt);
  Timeseries ts;
  ts.t = grid;
  ts.R_ana.assign(grid.size(), kNaN);
  ts.h_ana.assign(grid.size(), kNaN);
  fill_numeric(ts, p, dt);
  write_timeseries(opt.require_string("out"), ts);
  return 0;
}

int run_compare(const OptionResolver& opt) {
  const spinrel::ModelParams p = model_from(opt);
  const double dt = opt.get_double("dt", 1e-3);
  const auto grid = uniform_grid(opt.get_double("t-max", 20.0), dt);
  Timeseries ts = analytic_series(p, grid);
  fill_numeric(ts, p, dt);
  write_timeseries(opt.require_string("out"), ts);
  return 0;
}

int run_phasemap(const OptionResolver& opt) {
  const double J = opt.require_double("j");
  spinrel::PhaseMapConfig grid;
  grid.gamma_min = opt.get_double("gmin", 0.05);
  grid.gamma_max = opt.get_double("gmax", 3.0);
  grid.n = opt.get_int("n", 100);
  const auto cells = spinrel::phase_map(J, grid);
  CsvWriter csv(opt.require_string("out"), "gamma1,gamma2,regime,extrema_count");
  for (const auto& c : cells) {
    csv.begin_row();
    csv.field(c.gamma1);
    csv.field(c.gamma2);
    csv.field(std::string(spinrel::to_string(c.regime)));
    csv.field(static_cast<std::int64_t>(c.extrema_count));
    csv.end_row();
  }
  return 0;
}

int run_fpt_sample(const OptionResolver& opt) {
  const spinrel::ModelParams p = model_from(opt);
  const auto cfg = monitoring_from(opt, 45.0);
  const auto sample = spinrel::sample_first_passage(p, cfg);
  CsvWriter csv(opt.require_string("out"), "shot,bin,censored");
  for (std::size_t i = 0; i < sample.bins.size(); ++i) {
    const bool censored = sample.bins[i] == spinrel::FptSampleSet::kCensored;
    csv.begin_row();
    csv.field(static_cast<std::uint64_t>(i));
    if (censored) {
      csv.field_empty();
    } else {
      csv.field(static_cast<std::int64_t>(sample.bins[i]));
    }
    csv.field(static_cast<std::int64_t>(censored ? 1 : 0));
    csv.end_row();
  }
  return 0;
}

int run_fpt_estimate(const OptionResolver& opt) {
  const spinrel::ModelParams p = model_from(opt);
  const auto cfg = monitoring_from(opt, 45.0);
  const auto es = spinrel::estimate(spinrel::sample_first_passage(p, cfg));
  CsvWriter csv(opt.require_string("out"), "t_k,n_risk,n_k,R_hat,h_hat,var_theory");
  const std::size_t K = es.n_events.size();
  for (std::size_t k = 0; k <= K; ++k) {
    csv.begin_row();
    csv.field(es.t[k]);
    csv.field(es.n_risk[k]);
    if (k < K) {
      csv.field(es.n_events[k]);
      csv.field(es.R_hat[k]);
      // hazard suppressed on risk sets too small for the binomial model
      csv.field(es.reliable[k] ? es.h_hat[k] : kNaN);
      csv.field(es.var_theory[k]);
    } else {
      csv.field_empty();
      csv.field(es.R_hat[k]);
      csv.field_empty();
      csv.field_empty();
    }
    csv.end_row();
  }
  return 0;
}

int run_variance_scan(const OptionResolver& opt) {
  const spinrel::ModelParams p = model_from(opt);
  spinrel::MonitoringConfig base = monitoring_from(opt, 20.0);
  const std::size_t n_shots_list[] = {1000, 10000, 100000};
  const double t_values[] = {2.5, 10.0, 17.5};
  const auto rows = spinrel::variance_experiment(p, base, n_shots_list, t_values, 50);
  CsvWriter csv(opt.require_string("out"), "n_shots,t,var_emp,var_theory");
  for (const auto& r : rows) {
    csv.begin_row();
    csv.field(static_cast<std::uint64_t>(r.n_shots));
    csv.field(r.t);
    csv.field(r.var_emp);
    csv.field(r.var_theory);
    csv.end_row();
  }
  return 0;
}

int run_critical_x(const OptionResolver& opt) {
  const double x = spinrel::critical_x_k2();
  std::printf("x_star = %.17g\n", x);
  if (opt.has("out")) {
    CsvWriter csv(opt.require_string("out"), "x_star");
    csv.begin_row();
    csv.field(x);
    csv.end_row();
  }
  return 0;
}

}  // namespace spinrel_cli
