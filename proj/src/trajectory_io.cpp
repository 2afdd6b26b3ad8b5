#include "cooploc/trajectory_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "cooploc/errors.hpp"

namespace cooploc {

namespace {

constexpr const char* kHeader = "tick,vehicle_id,x_m,y_m";

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

struct Row {
  long tick;
  long vehicle;
  double x;
  double y;
};

Row parse_row(const std::string& line, const std::string& path, long lineno) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (fields.size() != 4) {
    throw ParseError(path, lineno, "expected 4 comma-separated fields");
  }
  const auto parse_long = [&](const std::string& s, const char* what) {
    long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || v < 0) {
      throw ParseError(path, lineno, std::string("bad ") + what + ": '" + s + "'");
    }
    return v;
  };
  const auto parse_double = [&](const std::string& s, const char* what) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw ParseError(path, lineno, std::string("bad ") + what + ": '" + s + "'");
    }
  };
  Row row{};
  row.tick = parse_long(fields[0], "tick");
  row.vehicle = parse_long(fields[1], "vehicle_id");
  row.x = parse_double(fields[2], "x_m");
  row.y = parse_double(fields[3], "y_m");
  return row;
}

}  // namespace

FleetTrajectory load_trajectories(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open trajectory file: " + path);

  std::string line;
  long lineno = 0;
  if (!std::getline(in, line)) throw ParseError(path, 1, "empty file");
  ++lineno;
  if (strip_cr(line) != kHeader) {
    throw ParseError(path, 1, std::string("expected header '") + kHeader + "'");
  }

  long n = -1;  // inferred when the first tick completes
  long current_tick = -1;
  std::vector<bool> seen;
  long seen_count = 0;
  std::vector<Row> rows;

  // the first tick fixes N; later ticks must contain exactly ids 0..N-1
  const auto finish_tick = [&](long err_line) {
    if (current_tick < 0) return;
    if (n < 0) {
      n = seen_count;
      if (static_cast<long>(seen.size()) != n) {
        for (long v = 0; v < static_cast<long>(seen.size()); ++v) {
          if (!seen[v]) {
            throw ParseError(path, err_line,
                             "tick " + std::to_string(current_tick) + " is missing vehicle " +
                                 std::to_string(v));
          }
        }
      }
      return;
    }
    if (seen_count != n) {
      for (long v = 0; v < n; ++v) {
        if (!seen[v]) {
          throw ParseError(path, err_line,
                           "tick " + std::to_string(current_tick) + " is missing vehicle " +
                               std::to_string(v));
        }
      }
    }
  };

  while (std::getline(in, line)) {
    ++lineno;
    line = strip_cr(line);
    if (line.empty()) continue;
    const Row row = parse_row(line, path, lineno);

    if (row.tick != current_tick) {
      if (row.tick < current_tick) {
        throw ParseError(path, lineno, "non-monotonic tick " + std::to_string(row.tick));
      }
      if (row.tick != current_tick + 1) {
        throw ParseError(path, lineno, "missing tick " + std::to_string(current_tick + 1));
      }
      finish_tick(lineno);
      current_tick = row.tick;
      seen.assign(n < 0 ? 0 : static_cast<std::size_t>(n), false);
      seen_count = 0;
    }

    if (n >= 0 && row.vehicle >= n) {
      throw ParseError(path, lineno,
                       "vehicle_id " + std::to_string(row.vehicle) + " out of range (N = " +
                           std::to_string(n) + ")");
    }
    if (row.vehicle >= static_cast<long>(seen.size())) {
      seen.resize(static_cast<std::size_t>(row.vehicle) + 1, false);
    }
    if (seen[row.vehicle]) {
      throw ParseError(path, lineno,
                       "duplicate row for tick " + std::to_string(row.tick) + ", vehicle " +
                           std::to_string(row.vehicle));
    }
    seen[row.vehicle] = true;
    ++seen_count;
    rows.push_back(row);
  }
  if (in.bad()) throw IoError("failed reading trajectory file: " + path);
  if (current_tick < 0) throw ParseError(path, lineno, "no data rows");
  finish_tick(lineno);

  FleetTrajectory fleet;
  fleet.n = static_cast<int>(n);
  fleet.ticks = static_cast<int>(current_tick + 1);
  fleet.dt = 1.0;
  fleet.poses.assign(static_cast<std::size_t>(fleet.n) * fleet.ticks, VehiclePose{});
  for (const Row& row : rows) {
    fleet.at(static_cast<int>(row.tick), static_cast<int>(row.vehicle)) =
        VehiclePose{row.x, row.y, 0.0, 0.0, 0.0};
  }
  return fleet;
}

void save_trajectories(const FleetTrajectory& fleet, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw IoError("cannot open for writing: " + path);
  bool ok = std::fprintf(f, "%s\n", kHeader) >= 0;
  for (int k = 0; ok && k < fleet.ticks; ++k) {
    for (int v = 0; ok && v < fleet.n; ++v) {
      const VehiclePose& p = fleet.at(k, v);
      ok = std::fprintf(f, "%d,%d,%.10f,%.10f\n", k, v, p.x, p.y) >= 0;
    }
  }
  if (std::fclose(f) != 0) ok = false;
  if (!ok) throw IoError("failed writing trajectory file: " + path);
}

}  // namespace cooploc
