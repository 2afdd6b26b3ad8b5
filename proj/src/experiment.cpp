#include "cooploc/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <numeric>

#include <nlohmann/json.hpp>

#include "cooploc/errors.hpp"
#include "cooploc/glrr_cl.hpp"
#include "cooploc/gr_cl.hpp"
#include "cooploc/trajectory_io.hpp"

namespace cooploc {

namespace {

constexpr std::uint64_t kMeasurementStream = 0x5e45e;

struct TrialSums {
  double gps = 0.0;
  double grcl = 0.0;
  double glrr = 0.0;
  long count = 0;
};

double mean(const std::vector<double>& v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double stddev(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double acc = 0.0;
  for (double x : v) acc += (x - m) * (x - m);
  return std::sqrt(acc / static_cast<double>(v.size()));
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::vector<std::pair<double, double>> MethodReport::cdf() const {
  std::vector<double> sorted = squared_errors;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::pair<double, double>> out;
  out.reserve(sorted.size());
  const double total = static_cast<double>(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    out.emplace_back(sorted[i], static_cast<double>(i + 1) / total);
  }
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  const bool want_grcl = config.wants(Method::kGrCl);
  const bool want_glrr = config.wants(Method::kGlrrCl);

  FleetTrajectory loaded;
  if (config.trajectory_file) {
    loaded = load_trajectories(*config.trajectory_file);
    for (int id : config.anchor_ids) {
      if (id >= loaded.n) throw ConfigError("anchor id out of range for loaded trajectory");
    }
    if (want_glrr && (loaded.ticks < config.tau ||
                      config.rank_bound > std::min(loaded.n, config.tau))) {
      throw ConfigError("loaded trajectory too short (or too small) for tau/s");
    }
  }

  ExperimentResult result;
  result.config = config;
  result.seed = config.seed;

  MethodReport gps_report{method_name(Method::kGps), {}, 0.0, {}, {}, {}};
  MethodReport grcl_report{method_name(Method::kGrCl), {}, 0.0, {}, {}, {}};
  MethodReport glrr_report{method_name(Method::kGlrrCl), {}, 0.0, {}, {}, {}};
  std::vector<double> grcl_reductions;
  std::vector<double> glrr_reductions;

  for (int trial = 0; trial < config.trials; ++trial) {
    const std::uint64_t trial_seed = config.seed ^ static_cast<std::uint64_t>(trial);
    const FleetTrajectory fleet =
        config.fleet ? generate_fleet(*config.fleet, trial_seed) : loaded;
    Rng rng(Rng::mix(trial_seed, kMeasurementStream));

    GlrrRunner::Options glrr_options;
    glrr_options.tau = config.tau;
    glrr_options.rank_bound = config.rank_bound;
    glrr_options.anchor_ids = config.anchor_ids;
    glrr_options.anchor_weight = config.anchor_weight;
    glrr_options.anchor_source = config.window_anchors;
    GlrrRunner runner(glrr_options);

    // per-tick squared errors, trimmed of warmup ticks after the sweep
    std::vector<std::vector<double>> gps_sq(fleet.ticks);
    std::vector<std::vector<double>> grcl_sq(fleet.ticks);
    std::vector<std::vector<double>> glrr_sq(fleet.ticks);
    std::vector<bool> warmup(fleet.ticks, false);

    GraphSnapshot graph;
    for (int k = 0; k < fleet.ticks; ++k) {
      const std::vector<Point2> positions = fleet.positions_at(k);
      if (config.graph_mode == GraphMode::kDynamic || k == 0) {
        graph = build_connectivity(positions, config.connectivity);
      }
      const MeasurementSet meas = measure_all(positions, graph, config.noise, rng);

      gps_sq[k].resize(fleet.n);
      for (int v = 0; v < fleet.n; ++v) {
        gps_sq[k][v] = (meas.gps[v] - positions[v]).squaredNorm();
      }

      if (want_grcl || want_glrr) {
        const PositionEstimate per_tick =
            localize_tick(meas, graph, config.anchor_ids, config.anchor_weight);
        grcl_sq[k].resize(fleet.n);
        for (int v = 0; v < fleet.n; ++v) {
          const double ex = per_tick.x(v) - positions[v].x();
          const double ey = per_tick.y(v) - positions[v].y();
          grcl_sq[k][v] = ex * ex + ey * ey;
        }
        if (want_glrr) {
          const GlrrRunner::TickEstimate glrr = runner.step(meas, graph, per_tick);
          warmup[k] = glrr.warmup;
          glrr_sq[k].resize(fleet.n);
          for (int v = 0; v < fleet.n; ++v) {
            const double ex = glrr.estimate.x(v) - positions[v].x();
            const double ey = glrr.estimate.y(v) - positions[v].y();
            glrr_sq[k][v] = ex * ex + ey * ey;
          }
        }
      }
    }

    // warmup ticks are excluded from every method so the paired comparison
    // covers the same samples
    TrialSums sums;
    for (int k = 0; k < fleet.ticks; ++k) {
      if (want_glrr && warmup[k]) continue;
      for (int v = 0; v < fleet.n; ++v) {
        gps_report.squared_errors.push_back(gps_sq[k][v]);
        sums.gps += gps_sq[k][v];
        if (want_grcl || want_glrr) {
          sums.grcl += grcl_sq[k][v];
          if (want_grcl) grcl_report.squared_errors.push_back(grcl_sq[k][v]);
        }
        if (want_glrr) {
          glrr_report.squared_errors.push_back(glrr_sq[k][v]);
          sums.glrr += glrr_sq[k][v];
        }
        ++sums.count;
      }
    }
    if (sums.count == 0) {
      throw ConfigError("experiment produced no samples (every tick in warmup?)");
    }
    if (sums.gps > 0.0) {
      if (want_grcl) grcl_reductions.push_back(100.0 * (1.0 - sums.grcl / sums.gps));
      if (want_glrr) glrr_reductions.push_back(100.0 * (1.0 - sums.glrr / sums.gps));
    }
  }

  const auto finalize = [](MethodReport& report, const MethodReport& gps,
                           const std::vector<double>& reductions, bool is_gps) {
    report.msle = mean(report.squared_errors);
    const double gps_msle = mean(gps.squared_errors);
    if (is_gps) {
      report.reduction_vs_gps = gps_msle > 0.0 ? std::optional<double>(0.0) : std::nullopt;
      return;
    }
    if (gps_msle > 0.0) {
      report.reduction_vs_gps = 100.0 * (1.0 - report.msle / gps_msle);
    }
    if (!reductions.empty()) {
      report.reduction_mean = mean(reductions);
      report.reduction_std = stddev(reductions);
    }
  };

  finalize(gps_report, gps_report, {}, true);
  result.methods[gps_report.method] = std::move(gps_report);
  const MethodReport& gps_ref = result.methods.at(method_name(Method::kGps));
  if (want_grcl) {
    finalize(grcl_report, gps_ref, grcl_reductions, false);
    result.methods[grcl_report.method] = std::move(grcl_report);
  }
  if (want_glrr) {
    finalize(glrr_report, gps_ref, glrr_reductions, false);
    result.methods[glrr_report.method] = std::move(glrr_report);
  }
  return result;
}

void emit_report(const ExperimentResult& result, const std::string& out_dir) {
  for (const auto& [name, report] : result.methods) {
    if (report.squared_errors.empty()) {
      throw std::invalid_argument("emit_report: empty report for method " + name);
    }
  }

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory: " + out_dir);

  for (const auto& [name, report] : result.methods) {
    const std::string path = out_dir + "/cdf_" + name + ".csv";
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw IoError("cannot open for writing: " + path);
    bool ok = std::fprintf(f, "squared_error_m2,cumulative_fraction\n") >= 0;
    for (const auto& [value, fraction] : report.cdf()) {
      if (!ok) break;
      ok = std::fprintf(f, "%.17g,%.17g\n", value, fraction) >= 0;
    }
    if (std::fclose(f) != 0) ok = false;
    if (!ok) throw IoError("failed writing " + path);
  }

  nlohmann::json summary;
  summary["generated_at"] = utc_timestamp();
  summary["seed"] = result.seed;
  summary["config"] = config_echo(result.config);
  nlohmann::json methods;
  for (const auto& [name, report] : result.methods) {
    nlohmann::json m;
    m["msle_m2"] = report.msle;
    m["samples"] = report.squared_errors.size();
    m["reduction_vs_gps_pct"] =
        report.reduction_vs_gps ? nlohmann::json(*report.reduction_vs_gps) : nlohmann::json();
    if (report.reduction_mean) {
      m["reduction_mean_pct"] = *report.reduction_mean;
      m["reduction_std_pct"] = *report.reduction_std;
    }
    methods[name] = std::move(m);
  }
  summary["methods"] = std::move(methods);

  const std::string path = out_dir + "/summary.json";
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw IoError("cannot open for writing: " + path);
  const std::string text = summary.dump(2) + "\n";
  const bool ok = std::fwrite(text.data(), 1, text.size(), f) == text.size();
  if (std::fclose(f) != 0 || !ok) throw IoError("failed writing " + path);
}

}  // namespace cooploc
