#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cooploc/config.hpp"

namespace cooploc {

/// Accumulated error statistics of one method over all trials.
struct MethodReport {
  std::string method;
  std::vector<double> squared_errors;  // per (trial, tick, vehicle) sample, collection order
  double msle = 0.0;                   // mean of squared_errors, m^2

  /// 100 * (1 - msle / msle_gps) over the pooled samples; unset when the GPS
  /// error is exactly zero (ill-defined) .
  std::optional<double> reduction_vs_gps;
  /// Mean / standard deviation of the per-trial reduction percentages.
  std::optional<double> reduction_mean;
  std::optional<double> reduction_std;

  /// Empirical CDF over the squared errors: sorted (value, cumulative
  /// fraction) pairs, one per sample, ending at 1.0.
  std::vector<std::pair<double, double>> cdf() const;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::uint64_t seed = 0;
  std::map<std::string, MethodReport> methods;
};

/// Runs the configured Monte-Carlo experiment. Trials are paired: every
/// method sees the same trajectories and the same measurement noise (trial t
/// derives its streams from seed ^ t). The GPS baseline is always computed.
/// When the windowed method runs, its warmup ticks are excluded from every
/// method's samples so the comparison covers the same (tick, vehicle) set.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Writes cdf_<method>.csv (columns squared_error_m2,cumulative_fraction)
/// and summary.json into out_dir. Rejects reports without samples.
void emit_report(const ExperimentResult& result, const std::string& out_dir);

}  // namespace cooploc
