#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include "cooploc/config.hpp"
#include "cooploc/errors.hpp"
#include "cooploc/experiment.hpp"
#include "cooploc/gr_cl.hpp"
#include "cooploc/trajectory_io.hpp"

using namespace cooploc;

namespace {

std::filesystem::path temp_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("cooploc_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string without_timestamp(const std::string& json_text) {
  std::istringstream in(json_text);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find("generated_at") == std::string::npos) out << line << '\n';
  }
  return out.str();
}

}  // namespace

TEST_CASE("config parsing applies defaults and overrides") {
  const ExperimentConfig cfg = parse_config(
      "fleet.n = 12\n"
      "fleet.t = 80\n"
      "noise.sigma_az_deg = 4\n"
      "tau = 8\n"
      "s = 2\n"
      "trials = 3\n"
      "seed = 99\n",
      "test");
  REQUIRE(cfg.fleet.has_value());
  CHECK(cfg.fleet->n == 12);
  CHECK(cfg.fleet->ticks == 80);
  CHECK(cfg.fleet->speed_min == 8.0);  // default
  CHECK(cfg.noise.sigma_az == doctest::Approx(4.0 * std::numbers::pi / 180.0));
  CHECK(cfg.noise.sigma_x == 3.0);
  CHECK(cfg.tau == 8);
  CHECK(cfg.rank_bound == 2);
  CHECK(cfg.trials == 3);
  CHECK(cfg.seed == 99);
  CHECK(cfg.methods.size() == 3);
}

TEST_CASE("config rejects unknown and malformed keys") {
  CHECK_THROWS_AS(parse_config("fleet.n = 5\nfleet.t = 10\nbogus = 1\n", "t"), ParseError);
  CHECK_THROWS_AS(parse_config("fleet.n = 5\nfleet.t = ten\n", "t"), ParseError);
  CHECK_THROWS_AS(parse_config("fleet.n = 5\nfleet.n = 6\nfleet.t = 10\n", "t"), ParseError);
  CHECK_THROWS_AS(parse_config("fleet.n\n", "t"), ParseError);
  try {
    parse_config("fleet.n = 5\nfleet.t = 10\nnope = 1\n", "t");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("config requires exactly one trajectory source") {
  CHECK_THROWS_AS(parse_config("tau = 5\n", "t"), ConfigError);
  CHECK_THROWS_AS(parse_config("fleet.n = 5\nfleet.t = 10\ntrajectory_file = x.csv\n", "t"),
                  ConfigError);
  const ExperimentConfig cfg = parse_config("trajectory_file = x.csv\n", "t");
  CHECK(cfg.trajectory_file == "x.csv");
}

TEST_CASE("config validates cross-field constraints") {
  CHECK_THROWS_AS(parse_config("fleet.n = 5\nfleet.t = 10\ntrials = 0\n", "t"), ConfigError);
  CHECK_THROWS_AS(parse_config("fleet.n = 5\nfleet.t = 10\ntau = 0\n", "t"), ConfigError);
  CHECK_THROWS_AS(parse_config("fleet.n = 5\nfleet.t = 4\ntau = 10\n", "t"), ConfigError);
  CHECK_THROWS_AS(parse_config("fleet.n = 5\nfleet.t = 20\ns = 6\n", "t"), ConfigError);
  CHECK_THROWS_AS(
      parse_config("fleet.n = 5\nfleet.t = 20\nnoise.sigma_az = 1\nnoise.sigma_az_deg = 4\n",
                   "t"),
      ConfigError);
  CHECK_THROWS_AS(parse_config("fleet.n = 5\nfleet.t = 20\nanchors = 0,0\n", "t"), ConfigError);
  CHECK_THROWS_AS(parse_config("fleet.n = 5\nfleet.t = 20\nanchors = 9\n", "t"), ConfigError);
  const ExperimentConfig cfg =
      parse_config("fleet.n = 5\nfleet.t = 20\nanchors = 0,2,4\nmethod = gr-cl\n", "t");
  CHECK(cfg.anchor_ids == std::vector<int>{0, 2, 4});
  CHECK(cfg.wants(Method::kGrCl));
  CHECK(!cfg.wants(Method::kGlrrCl));
}

TEST_CASE("trajectory round-trip preserves positions") {
  FleetConfig config;
  config.n = 6;
  config.ticks = 30;
  const FleetTrajectory fleet = generate_fleet(config, 11);
  const auto dir = temp_dir("roundtrip");
  const std::string path = (dir / "traj.csv").string();
  save_trajectories(fleet, path);
  const FleetTrajectory loaded = load_trajectories(path);
  REQUIRE(loaded.n == fleet.n);
  REQUIRE(loaded.ticks == fleet.ticks);
  for (int k = 0; k < fleet.ticks; ++k) {
    for (int v = 0; v < fleet.n; ++v) {
      CHECK(std::abs(loaded.at(k, v).x - fleet.at(k, v).x) <= 1e-9);
      CHECK(std::abs(loaded.at(k, v).y - fleet.at(k, v).y) <= 1e-9);
    }
  }
}

TEST_CASE("trajectory loader reports the missing tick") {
  const auto dir = temp_dir("missing_tick");
  const std::string path = (dir / "traj.csv").string();
  {
    std::ofstream out(path);
    out << "tick,vehicle_id,x_m,y_m\n";
    out << "0,0,0.0,0.0\n0,1,1.0,0.0\n";
    out << "1,0,0.0,0.0\n1,1,1.0,0.0\n";
    out << "3,0,0.0,0.0\n3,1,1.0,0.0\n";
  }
  try {
    load_trajectories(path);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("missing tick 2") != std::string::npos);
  }
}

TEST_CASE("trajectory loader rejects ragged and malformed files") {
  const auto dir = temp_dir("ragged");
  const auto write = [&](const std::string& name, const std::string& body) {
    const std::string path = (dir / name).string();
    std::ofstream out(path);
    out << body;
    return path;
  };
  CHECK_THROWS_AS(load_trajectories(write("bad_header.csv", "x,y\n0,0,0,0\n")), ParseError);
  CHECK_THROWS_AS(load_trajectories(write("empty.csv", "tick,vehicle_id,x_m,y_m\n")), ParseError);
  CHECK_THROWS_AS(
      load_trajectories(write("ragged.csv", "tick,vehicle_id,x_m,y_m\n0,0,0,0\n0,1,1,0\n1,0,0,0\n"
                                            "2,0,0,0\n2,1,1,0\n")),
      ParseError);
  CHECK_THROWS_AS(
      load_trajectories(write("dup.csv", "tick,vehicle_id,x_m,y_m\n0,0,0,0\n0,0,1,0\n")),
      ParseError);
  CHECK_THROWS_AS(
      load_trajectories(write("nonmono.csv", "tick,vehicle_id,x_m,y_m\n0,0,0,0\n2,0,0,0\n")),
      ParseError);
  CHECK_THROWS_AS(
      load_trajectories(write("badnum.csv", "tick,vehicle_id,x_m,y_m\n0,0,zero,0\n")), ParseError);
  CHECK_THROWS_AS(load_trajectories((dir / "absent.csv").string()), IoError);
}

TEST_CASE("gps baseline matches the analytic noise power") {
  ExperimentConfig cfg;
  FleetConfig fleet;
  fleet.n = 20;
  fleet.ticks = 100;
  cfg.fleet = fleet;
  cfg.methods = {Method::kGps};
  cfg.trials = 10;
  cfg.seed = 5;
  const ExperimentResult result = run_experiment(cfg);
  const MethodReport& gps = result.methods.at("gps");
  CHECK(gps.squared_errors.size() == 20000);
  CHECK(gps.msle == doctest::Approx(15.25).epsilon(0.05));
}

TEST_CASE("zero noise drives every method to zero error") {
  ExperimentConfig cfg;
  FleetConfig fleet;
  fleet.n = 8;
  fleet.ticks = 30;
  cfg.fleet = fleet;
  cfg.noise = NoiseParams{};
  cfg.trials = 2;
  cfg.tau = 5;
  cfg.rank_bound = 5;
  const ExperimentResult result = run_experiment(cfg);
  CHECK(result.methods.at("gps").msle <= 1e-10);
  CHECK(result.methods.at("gr-cl").msle <= 1e-10);
  CHECK(result.methods.at("glrr-cl").msle <= 1e-10);
  // gps error is exactly zero, so the reduction is undefined
  CHECK(!result.methods.at("gr-cl").reduction_vs_gps.has_value());
}

TEST_CASE("experiment results are deterministic and paired") {
  ExperimentConfig cfg;
  FleetConfig fleet;
  fleet.n = 6;
  fleet.ticks = 25;
  cfg.fleet = fleet;
  cfg.trials = 3;
  cfg.tau = 5;
  cfg.rank_bound = 2;
  cfg.seed = 21;
  const ExperimentResult a = run_experiment(cfg);
  const ExperimentResult b = run_experiment(cfg);
  for (const auto& [name, report] : a.methods) {
    const MethodReport& other = b.methods.at(name);
    REQUIRE(report.squared_errors.size() == other.squared_errors.size());
    for (std::size_t i = 0; i < report.squared_errors.size(); ++i) {
      CHECK(report.squared_errors[i] == other.squared_errors[i]);
    }
  }
  // same sample count for every method (paired, warmup-trimmed)
  CHECK(a.methods.at("gps").squared_errors.size() ==
        a.methods.at("glrr-cl").squared_errors.size());
}

TEST_CASE("reports round-trip through emit_report deterministically") {
  ExperimentConfig cfg;
  FleetConfig fleet;
  fleet.n = 5;
  fleet.ticks = 20;
  cfg.fleet = fleet;
  cfg.trials = 2;
  cfg.tau = 4;
  cfg.rank_bound = 2;
  cfg.seed = 8;
  const ExperimentResult result = run_experiment(cfg);

  const auto dir1 = temp_dir("emit1");
  const auto dir2 = temp_dir("emit2");
  emit_report(result, dir1.string());
  emit_report(result, dir2.string());
  for (const std::string name : {"cdf_gps.csv", "cdf_gr-cl.csv", "cdf_glrr-cl.csv"}) {
    CHECK(slurp(dir1 / name) == slurp(dir2 / name));
  }
  CHECK(without_timestamp(slurp(dir1 / "summary.json")) ==
        without_timestamp(slurp(dir2 / "summary.json")));

  const auto summary = nlohmann::json::parse(slurp(dir1 / "summary.json"));
  CHECK(summary["methods"].contains("gr-cl"));
  CHECK(summary["config"]["fleet.n"] == "5");
  CHECK(summary["seed"] == 8);
}

TEST_CASE("cdf is a valid empirical distribution") {
  ExperimentConfig cfg;
  FleetConfig fleet;
  fleet.n = 5;
  fleet.ticks = 15;
  cfg.fleet = fleet;
  cfg.methods = {Method::kGps};
  cfg.trials = 2;
  const ExperimentResult result = run_experiment(cfg);
  const auto cdf = result.methods.at("gps").cdf();
  REQUIRE(cdf.size() == result.methods.at("gps").squared_errors.size());
  for (std::size_t i = 1; i < cdf.size(); ++i) {
    CHECK(cdf[i].first >= cdf[i - 1].first);
    CHECK(cdf[i].second > cdf[i - 1].second);
  }
  CHECK(cdf.back().second == doctest::Approx(1.0));
}

TEST_CASE("two-sample cdf by hand") {
  MethodReport report;
  report.method = "gps";
  report.squared_errors = {4.0, 1.0};
  const auto cdf = report.cdf();
  REQUIRE(cdf.size() == 2);
  CHECK(cdf[0] == std::pair{1.0, 0.5});
  CHECK(cdf[1] == std::pair{4.0, 1.0});
}

TEST_CASE("reduction arithmetic") {
  CHECK(100.0 * (1.0 - 1.0 / 15.25) == doctest::Approx(93.44262295).epsilon(1e-8));
}

TEST_CASE("empty reports are rejected") {
  ExperimentResult result;
  result.config.fleet = FleetConfig{};
  MethodReport empty;
  empty.method = "gps";
  result.methods["gps"] = empty;
  CHECK_THROWS_AS(emit_report(result, std::filesystem::temp_directory_path().string()),
                  std::invalid_argument);
}

TEST_CASE("multi-cluster trace runs cluster-wise with gps fallback") {
  // synthetic 300-vehicle scene: 36 clusters of 8 plus 12 isolated vehicles
  FleetTrajectory fleet;
  fleet.n = 300;
  fleet.ticks = 3;
  fleet.poses.resize(static_cast<std::size_t>(fleet.n) * fleet.ticks);
  int v = 0;
  for (int c = 0; c < 36; ++c) {
    for (int m = 0; m < 8; ++m) {
      const double x = 500.0 * c + 10.0 * (m % 4);
      const double y = 12.0 * (m / 4);
      for (int k = 0; k < fleet.ticks; ++k) {
        fleet.at(k, v) = VehiclePose{x + 2.0 * k, y, 0.0, 2.0, 0.0};
      }
      ++v;
    }
  }
  for (int i = 0; v < fleet.n; ++i, ++v) {
    for (int k = 0; k < fleet.ticks; ++k) {
      fleet.at(k, v) = VehiclePose{500.0 * i, 5000.0, 0.0, 2.0, 0.0};
    }
  }

  const auto dir = temp_dir("carla_style");
  const std::string path = (dir / "trace.csv").string();
  save_trajectories(fleet, path);

  ExperimentConfig cfg;
  cfg.trajectory_file = path;
  cfg.methods = {Method::kGps, Method::kGrCl};
  cfg.trials = 1;
  cfg.seed = 4;
  const ExperimentResult result = run_experiment(cfg);
  CHECK(result.methods.at("gr-cl").msle < result.methods.at("gps").msle);

  // isolated vehicles carry exactly the gps error
  const FleetTrajectory loaded = load_trajectories(path);
  const auto positions = loaded.positions_at(0);
  const GraphSnapshot graph = build_connectivity(positions, ConnectivityParams{});
  Rng rng(1);
  const MeasurementSet meas =
      measure_all(positions, graph, NoiseParams{1.0, 0.07, 3.0, 2.5}, rng);
  const PositionEstimate est = localize_tick(meas, graph);
  for (int id = 288; id < 300; ++id) {
    CHECK(est.source[id] == PositionEstimate::Source::kGpsFallback);
    CHECK(est.x(id) == meas.gps[id].x());
    CHECK(est.y(id) == meas.gps[id].y());
  }
}
