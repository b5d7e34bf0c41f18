#pragma once

#include "bap/ahlwb.hpp"
#include "bap/harness/config.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace bap::harness {

enum class TraceFormat { csv, json, svg };

TraceFormat parse_format(const std::string& name);
std::string extension(TraceFormat format);

/// Rows ordered by point index (a0, b1, a2, ...). Columns:
/// sweep_index, role, point_index, coord_0..coord_{d-1}, pair_distance;
/// sweep_index and pair_distance are empty for a0. Numbers carry 17
/// significant digits.
std::string trace_to_csv(const IterateTrace& trace);

/// {"format", "config", "trace"}; the embedded config makes the file replayable.
nlohmann::json trace_to_json(const IterateTrace& trace, const RunConfig& cfg);
IterateTrace trace_from_json(const nlohmann::json& doc);

/// Writes `<dir>/<stem>.<ext>`, creating `dir` as needed. Throws IoError on failure.
std::filesystem::path export_trace(const IterateTrace& trace, const RunConfig& cfg, TraceFormat format,
                                   const std::filesystem::path& dir, const std::string& stem);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace bap::harness
