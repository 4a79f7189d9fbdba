#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cpwx/montecarlo.hpp"

namespace cpwx {

// Canonical numeric text: "%.10g". All CSV output goes through this so runs
// are byte-identical across platforms for identical inputs.
std::string format_double(double v);

// W_n(k) rendered exactly from the doubled integer: "2" for even 4, "1.5"
// for odd 3, "-1.5" for odd -3.
std::string wilcoxon_statistic_text(std::int64_t doubled);

// Single-token outlier description for the summary table, e.g.
// "0.2;0.3;0.6;0.8x50", or "none".
std::string outlier_plan_text(const std::optional<OutlierPlan>& plan);

// Writes summary.csv, histogram.csv and outcomes.csv into out_dir
// (created if missing). Throws IoError on any filesystem failure.
//   summary.csv:   method,n,theta,delta,rho,innovation,outliers,R,mean,sd
//   histogram.csv: method,bin_left,bin_right,count
//   outcomes.csv:  rep_index,method,k_hat,theta_hat
void write_experiment_outputs(const ExperimentResult& result, const std::string& out_dir);

} // namespace cpwx
