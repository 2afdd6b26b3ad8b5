#include <cstdint>
#include <cstdio>
#include <exception>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cooploc/config.hpp"
#include "cooploc/errors.hpp"
#include "cooploc/experiment.hpp"
#include "cooploc/trajectory_io.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

int run_command(const std::string& config_path, const std::optional<std::uint64_t>& seed,
                const std::string& out_dir, const std::optional<std::string>& method) {
  cooploc::ExperimentConfig config = cooploc::load_config(config_path);
  if (seed) config.seed = *seed;
  if (method) {
    using cooploc::Method;
    if (*method == "gps") {
      config.methods = {Method::kGps};
    } else if (*method == "gr-cl") {
      config.methods = {Method::kGps, Method::kGrCl};
    } else if (*method == "glrr-cl") {
      config.methods = {Method::kGps, Method::kGlrrCl};
    } else if (*method == "all") {
      config.methods = {Method::kGps, Method::kGrCl, Method::kGlrrCl};
    } else {
      throw cooploc::ConfigError("--method must be gps, gr-cl, glrr-cl or all");
    }
  }

  const cooploc::ExperimentResult result = cooploc::run_experiment(config);
  cooploc::emit_report(result, out_dir);

  for (const auto& [name, report] : result.methods) {
    std::printf("%-8s msle %.6g m^2 over %zu samples", name.c_str(), report.msle,
                report.squared_errors.size());
    if (report.reduction_mean) {
      std::printf("  reduction %.2f%% (mean over trials, std %.2f)", *report.reduction_mean,
                  *report.reduction_std);
    } else if (report.reduction_vs_gps) {
      std::printf("  reduction %.2f%%", *report.reduction_vs_gps);
    }
    std::printf("\n");
  }
  std::printf("report written to %s\n", out_dir.c_str());
  return 0;
}

int gen_command(const std::string& config_path, const std::optional<std::uint64_t>& seed,
                const std::string& out_path) {
  const cooploc::ExperimentConfig config = cooploc::load_config(config_path);
  if (!config.fleet) {
    throw cooploc::ConfigError("gen requires a fleet.* config, not trajectory_file");
  }
  const cooploc::FleetTrajectory fleet =
      cooploc::generate_fleet(*config.fleet, seed ? *seed : config.seed);
  cooploc::save_trajectories(fleet, out_path);
  std::printf("wrote %d vehicles x %d ticks to %s\n", fleet.n, fleet.ticks, out_path.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cooperative vehicle localization toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> method;

  CLI::App* run = app.add_subcommand("run", "run an experiment and write reports");
  run->add_option("--config", config_path, "experiment config file")->required();
  run->add_option("--seed", seed, "override the config seed");
  run->add_option("--out", out_dir, "output directory (default .)");
  run->add_option("--method", method, "gps | gr-cl | glrr-cl | all");

  CLI::App* gen = app.add_subcommand("gen", "generate a trajectory CSV");
  gen->add_option("--config", config_path, "experiment config file with fleet.* keys")->required();
  gen->add_option("--out", out_path, "output CSV path")->required();
  gen->add_option("--seed", seed, "override the config seed");

  CLI::App* version = app.add_subcommand("version", "print version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (version->parsed()) {
      std::printf("cooploc %s\n", kVersion);
      return 0;
    }
    if (run->parsed()) return run_command(config_path, seed, out_dir, method);
    if (gen->parsed()) return gen_command(config_path, seed, out_path);
  } catch (const cooploc::IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const cooploc::NumericalError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const cooploc::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
