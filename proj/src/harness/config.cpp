#include "bap/harness/config.hpp"

#include "bap/errors.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace bap::harness {

using nlohmann::json;

namespace {

// Collects every problem instead of stopping at the first one.
class Checker {
 public:
  void fail(const std::string& where, const std::string& what) { problems_.push_back(where + ": " + what); }
  bool ok() const { return problems_.empty(); }
  std::vector<std::string> take() { return std::move(problems_); }

  void only_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
    const std::set<std::string> keys(allowed.begin(), allowed.end());
    for (const auto& [key, _] : obj.items())
      if (!keys.count(key)) fail(where, "unknown field \"" + key + "\"");
  }

  const json* field(const json& obj, const std::string& where, const char* key, bool required = true) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) fail(where, std::string("missing field \"") + key + "\"");
      return nullptr;
    }
    return &*it;
  }

  std::optional<double> number(const json* v, const std::string& where) {
    if (!v) return std::nullopt;
    if (!v->is_number()) {
      fail(where, "expected a number");
      return std::nullopt;
    }
    const double d = v->get<double>();
    if (!std::isfinite(d)) {
      fail(where, "must be finite");
      return std::nullopt;
    }
    return d;
  }

  std::optional<std::int64_t> integer(const json* v, const std::string& where) {
    if (!v) return std::nullopt;
    if (!v->is_number_integer()) {
      fail(where, "expected an integer");
      return std::nullopt;
    }
    return v->get<std::int64_t>();
  }

  std::optional<std::vector<double>> numbers(const json* v, const std::string& where) {
    if (!v) return std::nullopt;
    if (!v->is_array()) {
      fail(where, "expected an array of numbers");
      return std::nullopt;
    }
    std::vector<double> out;
    bool good = true;
    for (std::size_t i = 0; i < v->size(); ++i) {
      const auto d = number(&(*v)[i], where + "[" + std::to_string(i) + "]");
      if (d) out.push_back(*d);
      else good = false;
    }
    if (!good) return std::nullopt;
    return out;
  }

 private:
  std::vector<std::string> problems_;
};

std::optional<Polyhedron> parse_polyhedron(Checker& chk, const json* v, const std::string& where,
                                           std::optional<std::int64_t> dim) {
  if (!v) return std::nullopt;
  if (!v->is_array() || v->empty()) {
    chk.fail(where, "expected a non-empty array of half-spaces");
    return std::nullopt;
  }
  std::vector<HalfSpace> hs;
  bool good = true;
  for (std::size_t i = 0; i < v->size(); ++i) {
    const std::string at = where + "[" + std::to_string(i) + "]";
    const json& item = (*v)[i];
    if (!item.is_object()) {
      chk.fail(at, "expected {\"normal\": [...], \"offset\": r}");
      good = false;
      continue;
    }
    chk.only_keys(item, at, {"normal", "offset"});
    const auto normal = chk.numbers(chk.field(item, at, "normal"), at + ".normal");
    const auto offset = chk.number(chk.field(item, at, "offset"), at + ".offset");
    if (!normal || !offset) {
      good = false;
      continue;
    }
    if (dim && static_cast<std::int64_t>(normal->size()) != *dim) {
      chk.fail(at + ".normal", "has " + std::to_string(normal->size()) + " coordinates, dimension is " +
                                   std::to_string(*dim));
      good = false;
      continue;
    }
    try {
      hs.emplace_back(make_point(*normal), *offset);
    } catch (const InputError& e) {
      chk.fail(at, e.what());
      good = false;
    }
  }
  if (!good || hs.empty()) return std::nullopt;
  try {
    return Polyhedron(std::move(hs));
  } catch (const InputError& e) {
    chk.fail(where, e.what());
    return std::nullopt;
  }
}

std::optional<LambdaRule> parse_lambda_rule(Checker& chk, const json& v, const std::string& where,
                                            bool allow_table, std::vector<double>* table) {
  if (!v.is_object()) {
    chk.fail(where, "expected an object with a \"kind\" field");
    return std::nullopt;
  }
  const json* kind = chk.field(v, where, "kind");
  if (!kind) return std::nullopt;
  if (!kind->is_string()) {
    chk.fail(where + ".kind", "expected a string");
    return std::nullopt;
  }
  const std::string k = kind->get<std::string>();
  if (k == "harmonic") {
    chk.only_keys(v, where, {"kind"});
    return LambdaRule{LambdaRule::Kind::harmonic, 0.0};
  }
  if (k == "constant") {
    chk.only_keys(v, where, {"kind", "value"});
    const auto val = chk.number(chk.field(v, where, "value"), where + ".value");
    if (!val) return std::nullopt;
    if (!(*val > 0.0 && *val <= 1.0)) {
      chk.fail(where + ".value", "must lie in (0, 1]");
      return std::nullopt;
    }
    return LambdaRule{LambdaRule::Kind::constant, *val};
  }
  if (k == "geometric") {
    chk.only_keys(v, where, {"kind", "ratio"});
    const auto val = chk.number(chk.field(v, where, "ratio"), where + ".ratio");
    if (!val) return std::nullopt;
    if (!(*val > 0.0 && *val < 1.0)) {
      chk.fail(where + ".ratio", "must lie in (0, 1)");
      return std::nullopt;
    }
    return LambdaRule{LambdaRule::Kind::geometric, *val};
  }
  if (k == "table" && allow_table) {
    chk.only_keys(v, where, {"kind", "values", "tail"});
    const auto values = chk.numbers(chk.field(v, where, "values"), where + ".values");
    const json* tail = chk.field(v, where, "tail");
    if (!values || !tail) return std::nullopt;
    for (std::size_t i = 0; i < values->size(); ++i)
      if (!((*values)[i] > 0.0 && (*values)[i] <= 1.0))
        chk.fail(where + ".values[" + std::to_string(i) + "]", "must lie in (0, 1]");
    *table = *values;
    return parse_lambda_rule(chk, *tail, where + ".tail", false, nullptr);
  }
  chk.fail(where + ".kind", "unknown lambda kind \"" + k + "\"");
  return std::nullopt;
}

std::optional<LambdaSchedule> parse_lambda(Checker& chk, const json* v, const std::string& where) {
  if (!v) return std::nullopt;
  LambdaSchedule s;
  const auto rule = parse_lambda_rule(chk, *v, where, true, &s.table);
  if (!rule) return std::nullopt;
  s.rule = *rule;
  return s;
}

std::optional<SweepSchedule> parse_sweeps(Checker& chk, const json* v, const std::string& where) {
  if (!v) return std::nullopt;
  if (!v->is_object()) {
    chk.fail(where, "expected an object with a \"kind\" field");
    return std::nullopt;
  }
  const json* kind = chk.field(*v, where, "kind");
  if (!kind || !kind->is_string()) {
    if (kind) chk.fail(where + ".kind", "expected a string");
    return std::nullopt;
  }
  const std::string k = kind->get<std::string>();
  try {
    if (k == "geometric_floor") {
      chk.only_keys(*v, where, {"kind", "base"});
      const auto base = chk.number(chk.field(*v, where, "base"), where + ".base");
      if (!base) return std::nullopt;
      return SweepSchedule::geometric_floor(*base);
    }
    if (k == "linear") {
      chk.only_keys(*v, where, {"kind", "slope", "intercept"});
      const auto slope = chk.number(chk.field(*v, where, "slope"), where + ".slope");
      const auto intercept = chk.number(chk.field(*v, where, "intercept", false), where + ".intercept");
      if (!slope) return std::nullopt;
      return SweepSchedule::linear(*slope, intercept.value_or(0.0));
    }
    if (k == "table") {
      chk.only_keys(*v, where, {"kind", "values"});
      const json* values = chk.field(*v, where, "values");
      if (!values) return std::nullopt;
      if (!values->is_array()) {
        chk.fail(where + ".values", "expected an array of positive integers");
        return std::nullopt;
      }
      std::vector<std::uint64_t> out;
      for (const auto& e : *values) {
        if (!e.is_number_integer() || e.get<std::int64_t>() < 1) {
          chk.fail(where + ".values", "expected an array of positive integers");
          return std::nullopt;
        }
        out.push_back(e.get<std::uint64_t>());
      }
      return SweepSchedule::tabulated(std::move(out));
    }
  } catch (const InputError& e) {
    chk.fail(where, e.what());
    return std::nullopt;
  }
  chk.fail(where + ".kind", "unknown sweep kind \"" + k + "\"");
  return std::nullopt;
}

json lambda_rule_to_json(const LambdaRule& rule) {
  switch (rule.kind) {
    case LambdaRule::Kind::harmonic:
      return {{"kind", "harmonic"}};
    case LambdaRule::Kind::constant:
      return {{"kind", "constant"}, {"value", rule.parameter}};
    case LambdaRule::Kind::geometric:
      return {{"kind", "geometric"}, {"ratio", rule.parameter}};
  }
  return {};
}

json polyhedron_to_json(const Polyhedron& p) {
  json out = json::array();
  for (const auto& h : p.halfspaces()) {
    if (h.is_trivial()) continue;
    out.push_back({{"normal", std::vector<double>(h.normal().begin(), h.normal().end())}, {"offset", h.offset()}});
  }
  return out;
}

RunConfig make_section5(const std::string& name, AuxStrategy aux) {
  auto hs = [](double c0, double c1, double d) { return HalfSpace(make_point({c0, c1}), d); };
  return RunConfig{
      name,
      2,
      Polyhedron({hs(4, -3, 17), hs(1, 0, -4), hs(1, 1, -11), hs(0, 1, -5)}),
      Polyhedron({hs(5, -4, 30), hs(1, -2, 0), hs(-1, -4, -24), hs(-2, -1, -13)}),
      make_point({8, -13}),
      LambdaSchedule::harmonic(),
      SweepSchedule::geometric_floor(1.1),
      50,
      aux,
      0,
      0,
      std::nullopt,
      {},
  };
}

}  // namespace

bool operator==(const RunConfig& lhs, const RunConfig& rhs) {
  return lhs.name == rhs.name && lhs.dimension == rhs.dimension && lhs.a_set == rhs.a_set &&
         lhs.b_set == rhs.b_set && lhs.start.size() == rhs.start.size() && lhs.start == rhs.start &&
         lhs.lambda == rhs.lambda && lhs.sweeps == rhs.sweeps && lhs.num_sweeps == rhs.num_sweeps &&
         lhs.aux == rhs.aux && lhs.control_offset_a == rhs.control_offset_a &&
         lhs.control_offset_b == rhs.control_offset_b && lhs.stop_tolerance == rhs.stop_tolerance &&
         lhs.output == rhs.output;
}

RunConfig preset(const std::string& name) {
  if (name == "exp1") return make_section5("exp1", AuxStrategy::fixed_anchor);
  if (name == "exp2") return make_section5("exp2", AuxStrategy::warm_start);
  throw InputError("unknown preset \"" + name + "\" (available: exp1, exp2)");
}

std::vector<std::string> preset_names() { return {"exp1", "exp2"}; }

RunConfig config_from_json(const json& doc) {
  if (!doc.is_object()) throw ValidationError({"config: expected a JSON object"});
  if (doc.contains("config") && doc.contains("trace")) {
    Checker chk;
    chk.only_keys(doc, "export", {"format", "config", "trace", "summary"});
    if (!chk.ok()) throw ValidationError(chk.take());
    return config_from_json(doc.at("config"));
  }

  Checker chk;
  chk.only_keys(doc, "config", {"name", "dimension", "A", "B", "start", "lambda", "sweeps", "num_sweeps", "aux",
                                "control_offset_A", "control_offset_B", "stop_tolerance", "output"});

  std::string name;
  if (const json* v = chk.field(doc, "config", "name", false)) {
    if (v->is_string()) name = v->get<std::string>();
    else chk.fail("name", "expected a string");
  }

  auto dim = chk.integer(chk.field(doc, "config", "dimension"), "dimension");
  if (dim && *dim < 1) {
    chk.fail("dimension", "must be at least 1");
    dim.reset();
  }
  auto a_set = parse_polyhedron(chk, chk.field(doc, "config", "A"), "A", dim);
  auto b_set = parse_polyhedron(chk, chk.field(doc, "config", "B"), "B", dim);

  std::optional<Point> start;
  if (const auto coords = chk.numbers(chk.field(doc, "config", "start"), "start")) {
    if (dim && static_cast<std::int64_t>(coords->size()) != *dim)
      chk.fail("start", "has " + std::to_string(coords->size()) + " coordinates, dimension is " +
                            std::to_string(*dim));
    else
      start = make_point(*coords);
  }

  auto lambda_schedule = parse_lambda(chk, chk.field(doc, "config", "lambda"), "lambda");
  auto sweeps = parse_sweeps(chk, chk.field(doc, "config", "sweeps"), "sweeps");

  auto num_sweeps = chk.integer(chk.field(doc, "config", "num_sweeps"), "num_sweeps");
  if (num_sweeps && *num_sweeps < 1) chk.fail("num_sweeps", "must be at least 1");

  AuxStrategy aux = AuxStrategy::fixed_anchor;
  if (const json* v = chk.field(doc, "config", "aux")) {
    const std::string s = v->is_string() ? v->get<std::string>() : "";
    if (s == "fixed_anchor") aux = AuxStrategy::fixed_anchor;
    else if (s == "warm_start") aux = AuxStrategy::warm_start;
    else chk.fail("aux", "expected \"fixed_anchor\" or \"warm_start\"");
  }

  const auto off_a = chk.integer(chk.field(doc, "config", "control_offset_A", false), "control_offset_A");
  const auto off_b = chk.integer(chk.field(doc, "config", "control_offset_B", false), "control_offset_B");

  std::optional<double> stop;
  if (const json* v = chk.field(doc, "config", "stop_tolerance", false); v && !v->is_null()) {
    stop = chk.number(v, "stop_tolerance");
    if (stop && !(*stop > 0.0)) chk.fail("stop_tolerance", "must be positive");
  }

  OutputOptions output;
  if (const json* v = chk.field(doc, "config", "output", false)) {
    if (!v->is_object()) {
      chk.fail("output", "expected an object");
    } else {
      chk.only_keys(*v, "output", {"directory", "formats"});
      if (const json* d = chk.field(*v, "output", "directory", false)) {
        if (d->is_string()) output.directory = d->get<std::string>();
        else chk.fail("output.directory", "expected a string");
      }
      if (const json* f = chk.field(*v, "output", "formats", false)) {
        if (!f->is_array()) chk.fail("output.formats", "expected an array of strings");
        else
          for (const auto& e : *f) {
            const std::string s = e.is_string() ? e.get<std::string>() : "";
            if (s != "csv" && s != "json" && s != "svg")
              chk.fail("output.formats", "unknown format \"" + e.dump() + "\" (csv, json, svg)");
            else
              output.formats.push_back(s);
          }
      }
    }
  }

  if (!chk.ok() || !dim || !a_set || !b_set || !start || !lambda_schedule || !sweeps || !num_sweeps) {
    auto problems = chk.take();
    if (problems.empty()) problems.push_back("config: incomplete");
    throw ValidationError(std::move(problems));
  }

  return RunConfig{name,
                   *dim,
                   std::move(*a_set),
                   std::move(*b_set),
                   std::move(*start),
                   std::move(*lambda_schedule),
                   std::move(*sweeps),
                   static_cast<std::uint64_t>(*num_sweeps),
                   aux,
                   off_a.value_or(0),
                   off_b.value_or(0),
                   stop,
                   std::move(output)};
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError(path.string() + ":" + std::to_string(line) + ":" + std::to_string(col) +
                     ": parse error: " + e.what());
  }
  RunConfig cfg = config_from_json(doc);
  if (cfg.name.empty()) cfg.name = path.stem().string();
  return cfg;
}

json config_to_json(const RunConfig& cfg) {
  json lambda_json;
  if (cfg.lambda.table.empty()) {
    lambda_json = lambda_rule_to_json(cfg.lambda.rule);
  } else {
    lambda_json = {{"kind", "table"}, {"values", cfg.lambda.table}, {"tail", lambda_rule_to_json(cfg.lambda.rule)}};
  }
  json sweeps_json;
  switch (cfg.sweeps.kind) {
    case SweepSchedule::Kind::geometric_floor:
      sweeps_json = {{"kind", "geometric_floor"}, {"base", cfg.sweeps.base}};
      break;
    case SweepSchedule::Kind::linear:
      sweeps_json = {{"kind", "linear"}, {"slope", cfg.sweeps.slope}, {"intercept", cfg.sweeps.intercept}};
      break;
    case SweepSchedule::Kind::table:
      sweeps_json = {{"kind", "table"}, {"values", cfg.sweeps.values}};
      break;
  }
  json out = {
      {"name", cfg.name},
      {"dimension", cfg.dimension},
      {"A", polyhedron_to_json(cfg.a_set)},
      {"B", polyhedron_to_json(cfg.b_set)},
      {"start", std::vector<double>(cfg.start.begin(), cfg.start.end())},
      {"lambda", lambda_json},
      {"sweeps", sweeps_json},
      {"num_sweeps", cfg.num_sweeps},
      {"aux", to_string(cfg.aux)},
      {"control_offset_A", cfg.control_offset_a},
      {"control_offset_B", cfg.control_offset_b},
  };
  if (cfg.stop_tolerance) out["stop_tolerance"] = *cfg.stop_tolerance;
  if (!cfg.output.directory.empty() || !cfg.output.formats.empty()) {
    json o = json::object();
    if (!cfg.output.directory.empty()) o["directory"] = cfg.output.directory;
    if (!cfg.output.formats.empty()) o["formats"] = cfg.output.formats;
    out["output"] = o;
  }
  return out;
}

std::uint64_t config_digest(const RunConfig& cfg) {
  const std::string text = config_to_json(cfg).dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace bap::harness
