#pragma once

#include "bap/ahlwb.hpp"
#include "bap/geometry.hpp"
#include "bap/schedule.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace bap::harness {

struct OutputOptions {
  std::string directory;             ///< empty: decided by the caller
  std::vector<std::string> formats;  ///< subset of {csv, json, svg}

  friend bool operator==(const OutputOptions&, const OutputOptions&) = default;
};

/// Complete description of one A-HLWB experiment.
struct RunConfig {
  std::string name;
  Eigen::Index dimension = 0;
  Polyhedron a_set;
  Polyhedron b_set;
  Point start;
  LambdaSchedule lambda;
  SweepSchedule sweeps;
  std::uint64_t num_sweeps = 1;
  AuxStrategy aux = AuxStrategy::fixed_anchor;
  std::int64_t control_offset_a = 0;
  std::int64_t control_offset_b = 0;
  std::optional<double> stop_tolerance;
  OutputOptions output;

  friend bool operator==(const RunConfig& lhs, const RunConfig& rhs);
};

/// Built-in experiment presets: "exp1" (fixed anchor) and "exp2" (warm start).
RunConfig preset(const std::string& name);
std::vector<std::string> preset_names();

/// Parses a config document. Unknown fields are rejected; all violated
/// invariants are reported together in one ValidationError. Exported trace
/// documents ({"format", "config", "trace"}) are accepted and their embedded
/// config is used, which makes exports replayable.
RunConfig config_from_json(const nlohmann::json& doc);

/// Reads and parses a config file. Syntax errors are reported with
/// line/column context.
RunConfig load_config(const std::filesystem::path& path);

nlohmann::json config_to_json(const RunConfig& cfg);

/// FNV-1a 64-bit digest of the canonical JSON form.
std::uint64_t config_digest(const RunConfig& cfg);

}  // namespace bap::harness
