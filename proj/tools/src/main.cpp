#include <CLI11.hpp>
#include <functional>
#include <iostream>
#include <map>
#include <string>

#include "commands.hpp"
#include "options.hpp"
#include "spinrel/errors.hpp"

namespace {

using spinrel_cli::OptionResolver;

void add_model_flags(CLI::App* cmd) {
  cmd->add_option("--j", "exchange coupling J");
  cmd->add_option("--gamma1", "site-1 damping rate");
  cmd->add_option("--gamma2", "site-2 damping rate");
}

void add_common_flags(CLI::App* cmd) {
  cmd->add_option("--out", "output CSV path");
  cmd->add_option("--config", "key = value config file; flags take precedence");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reliability and hazard curves of a two-site dissipative spin chain"};
  app.require_subcommand(1);

  std::map<std::string, std::function<int(const OptionResolver&)>> dispatch;

  const auto timeseries_cmd = [&](const std::string& name, const std::string& desc,
                                  int (*fn)(const OptionResolver&)) {
    CLI::App* cmd = app.add_subcommand(name, desc);
    add_model_flags(cmd);
    cmd->add_option("--t-max", "time horizon (default 20)");
    cmd->add_option("--dt", "grid spacing and integrator step (default 1e-3)");
    add_common_flags(cmd);
    dispatch[name] = fn;
  };
  timeseries_cmd("analytic", "closed-form R(t), h(t) to CSV", spinrel_cli::run_analytic);
  timeseries_cmd("numeric", "integrated R(t), h(t) to CSV", spinrel_cli::run_numeric);
  timeseries_cmd("compare", "closed-form and integrated curves side by side",
                 spinrel_cli::run_compare);

  {
    CLI::App* cmd = app.add_subcommand("phasemap", "hazard extremum-count map over (gamma1, gamma2)");
    cmd->add_option("--j", "exchange coupling J");
    cmd->add_option("--gmin", "grid lower bound (default 0.05)");
    cmd->add_option("--gmax", "grid upper bound (default 3.0)");
    cmd->add_option("--n,--grid", "grid points per axis (default 100)");
    add_common_flags(cmd);
    dispatch["phasemap"] = spinrel_cli::run_phasemap;
  }

  const auto fpt_cmd = [&](const std::string& name, const std::string& desc,
                           int (*fn)(const OptionResolver&)) {
    CLI::App* cmd = app.add_subcommand(name, desc);
    add_model_flags(cmd);
    cmd->add_option("--dt", "sampling interval (default 0.1)");
    cmd->add_option("--t-max", "censoring horizon");
    cmd->add_option("--shots", "number of shots (default 1e5)");
    cmd->add_option("--seed", "RNG seed (default 0)");
    add_common_flags(cmd);
    dispatch[name] = fn;
  };
  fpt_cmd("fpt-sample", "per-shot first-passage bins to CSV", spinrel_cli::run_fpt_sample);
  fpt_cmd("fpt-estimate", "survival and hazard estimators to CSV", spinrel_cli::run_fpt_estimate);
  fpt_cmd("variance-scan",
          "hazard-estimator variance vs shot count (50 repetitions, N_s in {1e3,1e4,1e5}, "
          "t in {2.5,10,17.5})",
          spinrel_cli::run_variance_scan);

  {
    CLI::App* cmd = app.add_subcommand("critical-x", "transition point of the k = 2 slice");
    add_common_flags(cmd);
    dispatch["critical-x"] = spinrel_cli::run_critical_x;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  CLI::App* cmd = app.get_subcommands().front();
  try {
    const std::string config_path =
        cmd->get_option_no_throw("--config") != nullptr && cmd->count("--config") > 0
            ? cmd->get_option("--config")->results().back()
            : std::string{};
    const OptionResolver opt(*cmd, config_path);
    return dispatch.at(cmd->get_name())(opt);
  } catch (const spinrel_cli::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const spinrel::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
}
