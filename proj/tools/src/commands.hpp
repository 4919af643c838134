#pragma once

#include "options.hpp"

namespace spinrel_cli {

int run_analytic(const OptionResolver& opt);
int run_numeric(const OptionResolver& opt);
int run_compare(const OptionResolver& opt);
int run_phasemap(const OptionResolver& opt);
int run_fpt_sample(const OptionResolver& opt);
int run_fpt_estimate(const OptionResolver& opt);
int run_variance_scan(const OptionResolver& opt);
int run_critical_x(const OptionResolver& opt);

}  // namespace spinrel_cli
