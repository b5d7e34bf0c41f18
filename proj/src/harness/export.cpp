#include "bap/harness/export.hpp"

#include "bap/errors.hpp"
#include "bap/harness/svg.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace bap::harness {

using nlohmann::json;

namespace {

std::string num17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Row {
  const TracePoint* point;
  char role;
};

std::vector<Row> ordered_rows(const IterateTrace& trace) {
  std::vector<Row> rows;
  std::size_t ia = 0, ib = 0;
  while (ia < trace.a_points.size() || ib < trace.b_points.size()) {
    const bool take_a = ib >= trace.b_points.size() ||
                        (ia < trace.a_points.size() && trace.a_points[ia].index < trace.b_points[ib].index);
    if (take_a) rows.push_back({&trace.a_points[ia++], 'a'});
    else rows.push_back({&trace.b_points[ib++], 'b'});
  }
  return rows;
}

json point_json(const TracePoint& p) {
  json j;
  j["sweep"] = p.sweep < 0 ? json(nullptr) : json(p.sweep);
  j["index"] = p.index;
  j["point"] = std::vector<double>(p.point.begin(), p.point.end());
  j["pair_distance"] = std::isnan(p.pair_distance) ? json(nullptr) : json(p.pair_distance);
  return j;
}

TracePoint point_from_json(const json& j) {
  TracePoint p;
  p.sweep = j.at("sweep").is_null() ? -1 : j.at("sweep").get<std::int64_t>();
  p.index = j.at("index").get<std::uint64_t>();
  p.point = make_point(j.at("point").get<std::vector<double>>());
  p.pair_distance =
      j.at("pair_distance").is_null() ? std::numeric_limits<double>::quiet_NaN() : j.at("pair_distance").get<double>();
  return p;
}

}  // namespace

TraceFormat parse_format(const std::string& name) {
  if (name == "csv") return TraceFormat::csv;
  if (name == "json") return TraceFormat::json;
  if (name == "svg") return TraceFormat::svg;
  throw InputError("unknown output format \"" + name + "\" (csv, json, svg)");
}

std::string extension(TraceFormat format) {
  switch (format) {
    case TraceFormat::csv:
      return "csv";
    case TraceFormat::json:
      return "json";
    case TraceFormat::svg:
      return "svg";
  }
  return "";
}

std::string trace_to_csv(const IterateTrace& trace) {
  std::ostringstream out;
  const Eigen::Index d = trace.dim();
  out << "sweep_index,role,point_index";
  for (Eigen::Index i = 0; i < d; ++i) out << ",coord_" << i;
  out << ",pair_distance\n";
  for (const Row& row : ordered_rows(trace)) {
    const TracePoint& p = *row.point;
    if (p.sweep >= 0) out << p.sweep;
    out << ',' << row.role << ',' << p.index;
    for (Eigen::Index i = 0; i < d; ++i) out << ',' << num17(p.point[i]);
    out << ',';
    if (!std::isnan(p.pair_distance)) out << num17(p.pair_distance);
    out << '\n';
  }
  return out.str();
}

json trace_to_json(const IterateTrace& trace, const RunConfig& cfg) {
  json a = json::array(), b = json::array(), sweeps = json::array();
  for (const auto& p : trace.a_points) a.push_back(point_json(p));
  for (const auto& p : trace.b_points) b.push_back(point_json(p));
  for (const auto& s : trace.sweeps)
    sweeps.push_back({{"sweep", s.sweep},
                      {"length", s.length},
                      {"target", std::string(1, s.target)},
                      {"pair_distance", s.pair_distance}});
  return {{"format", "bap-trace/1"},
          {"config", config_to_json(cfg)},
          {"trace", {{"a", a}, {"b", b}, {"sweeps", sweeps}, {"stopped_early", trace.stopped_early}}}};
}

IterateTrace trace_from_json(const json& doc) {
  try {
    const json& t = doc.at("trace");
    IterateTrace trace;
    for (const auto& p : t.at("a")) trace.a_points.push_back(point_from_json(p));
    for (const auto& p : t.at("b")) trace.b_points.push_back(point_from_json(p));
    for (const auto& s : t.at("sweeps"))
      trace.sweeps.push_back({s.at("sweep").get<std::uint64_t>(), s.at("length").get<std::uint64_t>(),
                              s.at("target").get<std::string>().at(0), s.at("pair_distance").get<double>()});
    trace.stopped_early = t.value("stopped_early", false);
    return trace;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed trace document: ") + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.close();
  if (!out) throw IoError("failed writing " + path.string());
}

std::filesystem::path export_trace(const IterateTrace& trace, const RunConfig& cfg, TraceFormat format,
                                   const std::filesystem::path& dir, const std::string& stem) {
  const auto path = dir / (stem + "." + extension(format));
  switch (format) {
    case TraceFormat::csv:
      write_text(path, trace_to_csv(trace));
      break;
    case TraceFormat::json:
      write_text(path, trace_to_json(trace, cfg).dump(2) + "\n");
      break;
    case TraceFormat::svg:
      plot_trace(trace, cfg.a_set, cfg.b_set, path);
      break;
  }
  return path;
}

}  // namespace bap::harness
