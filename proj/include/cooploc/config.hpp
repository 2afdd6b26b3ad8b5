#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cooploc/glrr_cl.hpp"
#include "cooploc/graph.hpp"
#include "cooploc/kinematics.hpp"
#include "cooploc/sensing.hpp"

namespace cooploc {

enum class Method { kGps, kGrCl, kGlrrCl };

std::string method_name(Method m);

/// A full experiment description. Exactly one of `fleet` / `trajectory_file`
/// is set. Built by load_config()/parse_config() from a flat key = value
/// file; see README for the key list.
struct ExperimentConfig {
  std::optional<FleetConfig> fleet;
  std::optional<std::string> trajectory_file;

  NoiseParams noise{1.0, 4.0 * std::numbers::pi / 180.0, 3.0, 2.5};
  ConnectivityParams connectivity;

  std::vector<Method> methods{Method::kGps, Method::kGrCl, Method::kGlrrCl};
  int tau = 10;
  int rank_bound = 3;
  int trials = 50;
  std::uint64_t seed = 1;

  GraphMode graph_mode = GraphMode::kDynamic;
  WindowAnchorSource window_anchors = WindowAnchorSource::kEstimate;
  std::vector<int> anchor_ids;  // empty = all vehicles
  double anchor_weight = 1.0;

  bool wants(Method m) const;
};

/// Parses config text. `origin` labels error messages (usually the path).
/// Unknown keys, duplicate keys and malformed values are ParseErrors;
/// cross-field violations are ConfigErrors.
ExperimentConfig parse_config(const std::string& text, const std::string& origin);

/// Reads and parses a config file; IoError if unreadable.
ExperimentConfig load_config(const std::string& path);

/// Resolved key -> value view of a config, used for the summary echo.
std::map<std::string, std::string> config_echo(const ExperimentConfig& config);

}  // namespace cooploc
