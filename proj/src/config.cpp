#include "cooploc/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "cooploc/errors.hpp"

namespace cooploc {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

const std::set<std::string> kKnownKeys = {
    "fleet.n",           "fleet.t",           "fleet.dt",
    "fleet.spacing_min", "fleet.spacing_max", "fleet.placement_jitter",
    "fleet.speed_min",   "fleet.speed_max",   "fleet.yaw_min",
    "fleet.yaw_max",     "fleet.heading_min", "fleet.heading_max",
    "trajectory_file",   "noise.sigma_x",     "noise.sigma_y",
    "noise.sigma_d",     "noise.sigma_az",    "noise.sigma_az_deg",
    "connectivity.radius", "connectivity.max_degree",
    "method",            "tau",               "s",
    "trials",            "seed",              "graph_mode",
    "window_anchors",    "anchors",           "anchor_weight",
};

class KeyValues {
 public:
  KeyValues(const std::string& text, const std::string& origin) : origin_(origin) {
    std::istringstream in(text);
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      const std::string stripped = trim(line);
      if (stripped.empty()) continue;
      const auto eq = stripped.find('=');
      if (eq == std::string::npos) {
        throw ParseError(origin_, lineno, "expected key = value");
      }
      const std::string key = trim(stripped.substr(0, eq));
      const std::string value = trim(stripped.substr(eq + 1));
      if (key.empty()) throw ParseError(origin_, lineno, "empty key");
      if (!kKnownKeys.count(key)) throw ParseError(origin_, lineno, "unknown key '" + key + "'");
      if (values_.count(key)) throw ParseError(origin_, lineno, "duplicate key '" + key + "'");
      if (value.empty()) throw ParseError(origin_, lineno, "empty value for '" + key + "'");
      values_[key] = {value, lineno};
    }
  }

  bool has(const std::string& key) const { return values_.count(key) > 0; }
  bool has_prefix(const std::string& prefix) const {
    const auto it = values_.lower_bound(prefix);
    return it != values_.end() && it->first.compare(0, prefix.size(), prefix) == 0;
  }

  std::string str(const std::string& key) const { return values_.at(key).first; }

  double number(const std::string& key) const {
    const auto& [value, lineno] = values_.at(key);
    try {
      std::size_t used = 0;
      const double x = std::stod(value, &used);
      if (used != value.size() || !std::isfinite(x)) throw std::invalid_argument(value);
      return x;
    } catch (const std::exception&) {
      throw ParseError(origin_, lineno, "bad number for '" + key + "': " + value);
    }
  }

  long integer(const std::string& key) const {
    const auto& [value, lineno] = values_.at(key);
    long x = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), x);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
      throw ParseError(origin_, lineno, "bad integer for '" + key + "': " + value);
    }
    return x;
  }

  std::uint64_t u64(const std::string& key) const {
    const auto& [value, lineno] = values_.at(key);
    std::uint64_t x = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), x);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
      throw ParseError(origin_, lineno, "bad unsigned integer for '" + key + "': " + value);
    }
    return x;
  }

  long line_of(const std::string& key) const { return values_.at(key).second; }

 private:
  std::string origin_;
  std::map<std::string, std::pair<std::string, long>> values_;
};

}  // namespace

std::string method_name(Method m) {
  switch (m) {
    case Method::kGps:
      return "gps";
    case Method::kGrCl:
      return "gr-cl";
    case Method::kGlrrCl:
      return "glrr-cl";
  }
  return "?";
}

bool ExperimentConfig::wants(Method m) const {
  return std::find(methods.begin(), methods.end(), m) != methods.end();
}

ExperimentConfig parse_config(const std::string& text, const std::string& origin) {
  const KeyValues kv(text, origin);
  ExperimentConfig cfg;

  const bool has_fleet = kv.has_prefix("fleet.");
  const bool has_file = kv.has("trajectory_file");
  if (has_fleet == has_file) {
    throw ConfigError(origin + ": exactly one of fleet.* and trajectory_file is required");
  }
  if (has_file) {
    cfg.trajectory_file = kv.str("trajectory_file");
  } else {
    FleetConfig fleet;
    if (kv.has("fleet.n")) fleet.n = static_cast<int>(kv.integer("fleet.n"));
    if (kv.has("fleet.t")) fleet.ticks = static_cast<int>(kv.integer("fleet.t"));
    if (kv.has("fleet.dt")) fleet.dt = kv.number("fleet.dt");
    if (kv.has("fleet.spacing_min")) fleet.spacing_min = kv.number("fleet.spacing_min");
    if (kv.has("fleet.spacing_max")) fleet.spacing_max = kv.number("fleet.spacing_max");
    if (kv.has("fleet.placement_jitter")) fleet.placement_jitter = kv.number("fleet.placement_jitter");
    if (kv.has("fleet.speed_min")) fleet.speed_min = kv.number("fleet.speed_min");
    if (kv.has("fleet.speed_max")) fleet.speed_max = kv.number("fleet.speed_max");
    if (kv.has("fleet.yaw_min")) fleet.yaw_min = kv.number("fleet.yaw_min");
    if (kv.has("fleet.yaw_max")) fleet.yaw_max = kv.number("fleet.yaw_max");
    if (kv.has("fleet.heading_min")) fleet.heading_min = kv.number("fleet.heading_min");
    if (kv.has("fleet.heading_max")) fleet.heading_max = kv.number("fleet.heading_max");
    cfg.fleet = fleet;
  }

  if (kv.has("noise.sigma_x")) cfg.noise.sigma_x = kv.number("noise.sigma_x");
  if (kv.has("noise.sigma_y")) cfg.noise.sigma_y = kv.number("noise.sigma_y");
  if (kv.has("noise.sigma_d")) cfg.noise.sigma_d = kv.number("noise.sigma_d");
  if (kv.has("noise.sigma_az") && kv.has("noise.sigma_az_deg")) {
    throw ConfigError(origin + ": give noise.sigma_az or noise.sigma_az_deg, not both");
  }
  if (kv.has("noise.sigma_az")) cfg.noise.sigma_az = kv.number("noise.sigma_az");
  if (kv.has("noise.sigma_az_deg")) {
    cfg.noise.sigma_az = kv.number("noise.sigma_az_deg") * std::numbers::pi / 180.0;
  }

  if (kv.has("connectivity.radius")) cfg.connectivity.radius = kv.number("connectivity.radius");
  if (kv.has("connectivity.max_degree")) {
    cfg.connectivity.max_degree = static_cast<int>(kv.integer("connectivity.max_degree"));
  }

  if (kv.has("method")) {
    const std::string m = kv.str("method");
    if (m == "gps") {
      cfg.methods = {Method::kGps};
    } else if (m == "gr-cl") {
      cfg.methods = {Method::kGps, Method::kGrCl};
    } else if (m == "glrr-cl") {
      cfg.methods = {Method::kGps, Method::kGlrrCl};
    } else if (m == "all") {
      cfg.methods = {Method::kGps, Method::kGrCl, Method::kGlrrCl};
    } else {
      throw ParseError(origin, kv.line_of("method"),
                       "method must be gps, gr-cl, glrr-cl or all");
    }
  }

  if (kv.has("tau")) cfg.tau = static_cast<int>(kv.integer("tau"));
  if (kv.has("s")) cfg.rank_bound = static_cast<int>(kv.integer("s"));
  if (kv.has("trials")) cfg.trials = static_cast<int>(kv.integer("trials"));
  if (kv.has("seed")) cfg.seed = kv.u64("seed");

  if (kv.has("graph_mode")) {
    const std::string m = kv.str("graph_mode");
    if (m == "dynamic") {
      cfg.graph_mode = GraphMode::kDynamic;
    } else if (m == "strict") {
      cfg.graph_mode = GraphMode::kStrict;
    } else {
      throw ParseError(origin, kv.line_of("graph_mode"), "graph_mode must be dynamic or strict");
    }
  }
  if (kv.has("window_anchors")) {
    const std::string m = kv.str("window_anchors");
    if (m == "gr-cl") {
      cfg.window_anchors = WindowAnchorSource::kEstimate;
    } else if (m == "gps") {
      cfg.window_anchors = WindowAnchorSource::kRawGps;
    } else {
      throw ParseError(origin, kv.line_of("window_anchors"),
                       "window_anchors must be gr-cl or gps");
    }
  }
  if (kv.has("anchors")) {
    const std::string a = kv.str("anchors");
    if (a != "all") {
      std::istringstream in(a);
      std::string part;
      while (std::getline(in, part, ',')) {
        const std::string p = trim(part);
        int id = 0;
        const auto [ptr, ec] = std::from_chars(p.data(), p.data() + p.size(), id);
        if (ec != std::errc() || ptr != p.data() + p.size() || id < 0) {
          throw ParseError(origin, kv.line_of("anchors"),
                           "anchors must be 'all' or a comma-separated id list");
        }
        cfg.anchor_ids.push_back(id);
      }
      if (cfg.anchor_ids.empty()) {
        throw ParseError(origin, kv.line_of("anchors"), "empty anchor list");
      }
    }
  }
  if (kv.has("anchor_weight")) cfg.anchor_weight = kv.number("anchor_weight");

  // cross-field validation
  if (cfg.fleet) {
    const FleetConfig& f = *cfg.fleet;
    if (f.n < 1 || f.ticks < 1 || !(f.dt > 0.0)) {
      throw ConfigError(origin + ": fleet.n, fleet.t must be >= 1 and fleet.dt > 0");
    }
    if (f.spacing_min > f.spacing_max || f.spacing_min <= 0.0 || f.speed_min > f.speed_max ||
        f.speed_min < 0.0 || f.yaw_min > f.yaw_max || f.heading_min > f.heading_max ||
        f.placement_jitter < 0.0) {
      throw ConfigError(origin + ": bad fleet range");
    }
  }
  if (cfg.noise.sigma_x < 0.0 || cfg.noise.sigma_y < 0.0 || cfg.noise.sigma_d < 0.0 ||
      cfg.noise.sigma_az < 0.0) {
    throw ConfigError(origin + ": noise sigmas must be >= 0");
  }
  if (!(cfg.connectivity.radius > 0.0) || cfg.connectivity.max_degree < 1) {
    throw ConfigError(origin + ": bad connectivity parameters");
  }
  if (cfg.tau < 1) throw ConfigError(origin + ": tau must be >= 1");
  if (cfg.rank_bound < 1) throw ConfigError(origin + ": s must be >= 1");
  if (cfg.trials < 1) throw ConfigError(origin + ": trials must be >= 1");
  if (!(cfg.anchor_weight > 0.0)) throw ConfigError(origin + ": anchor_weight must be > 0");
  if (cfg.wants(Method::kGlrrCl)) {
    if (cfg.fleet && cfg.fleet->ticks < cfg.tau) {
      throw ConfigError(origin + ": fleet.t must be >= tau for the windowed method");
    }
    if (cfg.fleet && cfg.rank_bound > std::min(cfg.fleet->n, cfg.tau)) {
      throw ConfigError(origin + ": s must be <= min(fleet.n, tau)");
    }
  }
  {
    std::set<int> unique(cfg.anchor_ids.begin(), cfg.anchor_ids.end());
    if (unique.size() != cfg.anchor_ids.size()) {
      throw ConfigError(origin + ": duplicate anchor ids");
    }
    if (cfg.fleet) {
      for (int id : cfg.anchor_ids) {
        if (id >= cfg.fleet->n) throw ConfigError(origin + ": anchor id out of range");
      }
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("failed reading config file: " + path);
  return parse_config(buf.str(), path);
}

std::map<std::string, std::string> config_echo(const ExperimentConfig& cfg) {
  std::map<std::string, std::string> echo;
  const auto num = [](double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
  };
  if (cfg.fleet) {
    const FleetConfig& f = *cfg.fleet;
    echo["fleet.n"] = std::to_string(f.n);
    echo["fleet.t"] = std::to_string(f.ticks);
    echo["fleet.dt"] = num(f.dt);
    echo["fleet.spacing_min"] = num(f.spacing_min);
    echo["fleet.spacing_max"] = num(f.spacing_max);
    echo["fleet.placement_jitter"] = num(f.placement_jitter);
    echo["fleet.speed_min"] = num(f.speed_min);
    echo["fleet.speed_max"] = num(f.speed_max);
    echo["fleet.yaw_min"] = num(f.yaw_min);
    echo["fleet.yaw_max"] = num(f.yaw_max);
    echo["fleet.heading_min"] = num(f.heading_min);
    echo["fleet.heading_max"] = num(f.heading_max);
  } else {
    echo["trajectory_file"] = *cfg.trajectory_file;
  }
  echo["noise.sigma_x"] = num(cfg.noise.sigma_x);
  echo["noise.sigma_y"] = num(cfg.noise.sigma_y);
  echo["noise.sigma_d"] = num(cfg.noise.sigma_d);
  echo["noise.sigma_az"] = num(cfg.noise.sigma_az);
  echo["connectivity.radius"] = num(cfg.connectivity.radius);
  echo["connectivity.max_degree"] = std::to_string(cfg.connectivity.max_degree);
  std::string methods;
  for (const Method m : cfg.methods) {
    if (!methods.empty()) methods += ",";
    methods += method_name(m);
  }
  echo["methods"] = methods;
  echo["tau"] = std::to_string(cfg.tau);
  echo["s"] = std::to_string(cfg.rank_bound);
  echo["trials"] = std::to_string(cfg.trials);
  echo["seed"] = std::to_string(cfg.seed);
  echo["graph_mode"] = cfg.graph_mode == GraphMode::kDynamic ? "dynamic" : "strict";
  echo["window_anchors"] =
      cfg.window_anchors == WindowAnchorSource::kEstimate ? "gr-cl" : "gps";
  if (cfg.anchor_ids.empty()) {
    echo["anchors"] = "all";
  } else {
    std::string ids;
    for (int id : cfg.anchor_ids) {
      if (!ids.empty()) ids += ",";
      ids += std::to_string(id);
    }
    echo["anchors"] = ids;
  }
  echo["anchor_weight"] = num(cfg.anchor_weight);
  return echo;
}

}  // namespace cooploc
