// bap: best approximation pairs between convex polyhedra via A-HLWB.
//
//   bap run --preset exp1 --out results --format csv,json,svg
//   bap oracle --config my.json
//   bap certify --preset exp1 --a -6,-5 --b 4,5
//   bap validate-schedule --preset exp1
//
// Exit codes: 0 success, 1 input error, 2 numerical/capacity error.

#include "bap/errors.hpp"
#include "bap/harness/config.hpp"
#include "bap/harness/experiment.hpp"
#include "bap/harness/export.hpp"
#include "bap/oracle.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <future>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace {

using namespace bap;
using namespace bap::harness;

constexpr int kExitInput = 1;
constexpr int kExitNumerical = 2;

struct Source {
  std::vector<std::string> presets;
  std::vector<std::string> configs;
};

void add_source_options(CLI::App* cmd, Source& src, bool multiple) {
  auto* p = cmd->add_option("--preset", src.presets, "built-in experiment (exp1, exp2)");
  auto* c = cmd->add_option("--config", src.configs, "JSON run config (or an exported trace)")->check(CLI::ExistingFile);
  if (!multiple) {
    p->expected(1);
    c->expected(1);
  }
}

std::vector<RunConfig> resolve(const Source& src) {
  std::vector<RunConfig> out;
  for (const auto& name : src.presets) out.push_back(preset(name));
  for (const auto& path : src.configs) out.push_back(load_config(path));
  if (out.empty()) throw InputError("give --preset NAME or --config FILE");
  return out;
}

Point parse_point(const std::string& text, Eigen::Index dim, const char* what) {
  std::vector<double> coords;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      coords.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError(std::string(what) + ": cannot parse \"" + item + "\" as a number");
    }
  }
  Point x = make_point(coords);
  require_dimension(x, dim, what);
  return x;
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

struct RunArgs {
  Source src;
  std::uint64_t sweeps = 0;
  std::string out_dir;
  std::string formats;
  std::string kernel = "auto";
  unsigned jobs = 1;
  bool no_oracle = false;
};

struct RunOutcome {
  std::string text;
  int code = 0;
};

RunOutcome run_one(RunConfig cfg, const RunArgs& args) {
  std::ostringstream log;
  if (args.sweeps) cfg.num_sweeps = args.sweeps;

  ExperimentOptions options;
  options.with_oracle = !args.no_oracle;
  if (args.kernel == "direct") options.run.kernel = SweepKernel::direct;
  else if (args.kernel == "scaled") options.run.kernel = SweepKernel::scaled_harmonic;

  const ExperimentResult result = run_experiment(cfg, options);
  log << format_summary(cfg, result);

  std::filesystem::path dir = ".";
  if (!args.out_dir.empty()) dir = args.out_dir;
  else if (!cfg.output.directory.empty()) dir = cfg.output.directory;
  else if (const char* env = std::getenv("BAP_OUT_DIR"); env && *env) dir = env;

  std::vector<std::string> formats = split(args.formats);
  if (formats.empty()) formats = cfg.output.formats;
  if (formats.empty()) formats = {"csv", "json"};

  const std::string stem = (cfg.name.empty() ? "run" : cfg.name) + "_trace";
  int code = 0;
  for (const auto& f : formats) {
    try {
      const auto path = export_trace(result.trace, cfg, parse_format(f), dir, stem);
      log << "  wrote " << path.string() << '\n';
    } catch (const UnsupportedPlotError& e) {
      log << "  skipped svg: " << e.what() << '\n';
      code = kExitInput;
    }
  }
  return {log.str(), code};
}

int cmd_run(const RunArgs& args) {
  const auto configs = resolve(args.src);
  std::vector<RunOutcome> outcomes(configs.size());
  if (args.jobs > 1 && configs.size() > 1) {
    std::vector<std::future<RunOutcome>> futures;
    std::size_t next = 0;
    while (next < configs.size() || !futures.empty()) {
      // Start up to `jobs` runs, then drain in submission order.
      while (next < configs.size() && futures.size() < args.jobs) {
        futures.push_back(std::async(std::launch::async, run_one, configs[next], std::cref(args)));
        ++next;
      }
      const std::size_t base = next - futures.size();
      for (std::size_t i = 0; i < futures.size(); ++i) outcomes[base + i] = futures[i].get();
      futures.clear();
    }
  } else {
    for (std::size_t i = 0; i < configs.size(); ++i) outcomes[i] = run_one(configs[i], args);
  }
  int code = 0;
  for (const auto& o : outcomes) {
    std::cout << o.text;
    code = std::max(code, o.code);
  }
  return code;
}

void print_multipliers(const char* label, const std::vector<ActiveMultiplier>& mus) {
  std::cout << "  " << label << ':';
  for (const auto& m : mus) std::cout << "  [" << m.index << "] " << m.value;
  std::cout << '\n';
}

int cmd_oracle(const Source& src, const std::string& start_text, std::uint64_t max_iters, double tol) {
  const RunConfig cfg = resolve(src).front();
  const Point start = start_text.empty() ? cfg.start : parse_point(start_text, cfg.dimension, "--start");
  const BapCertificate cert = cheney_goldstein(cfg.a_set, cfg.b_set, start, max_iters, tol);
  std::cout << std::setprecision(12);
  std::cout << "a* = " << format_point(cert.a_star, 12) << '\n'
            << "b* = " << format_point(cert.b_star, 12) << '\n'
            << "distance = " << cert.distance << '\n'
            << "iterations = " << cert.iterations << (cert.converged ? "" : " (not converged)") << '\n'
            << "certificate residual = " << cert.residual << ", normal-cone defect = " << cert.normal_cone_defect
            << '\n';
  print_multipliers("multipliers A", cert.multipliers_a);
  print_multipliers("multipliers B", cert.multipliers_b);
  std::cout << (cert.certified ? "certified" : "NOT certified") << '\n';
  return cert.certified ? 0 : kExitNumerical;
}

int cmd_certify(const Source& src, const std::string& a_text, const std::string& b_text, double tol) {
  const RunConfig cfg = resolve(src).front();
  const Point a = parse_point(a_text, cfg.dimension, "--a");
  const Point b = parse_point(b_text, cfg.dimension, "--b");
  const PairCheck check = certify_pair(cfg.a_set, cfg.b_set, a, b, tol);
  std::cout << std::setprecision(12) << "residual = " << check.residual << " (tolerance " << tol << ")\n"
            << (check.certified ? "certified best approximation pair" : "not a best approximation pair") << '\n';
  return check.certified ? 0 : kExitNumerical;
}

int cmd_validate(const Source& src, std::uint64_t period, std::uint64_t horizon, std::uint64_t k0_max,
                 std::uint64_t k_horizon) {
  const RunConfig cfg = resolve(src).front();
  const ScheduleReport report = schedule_report(cfg, horizon, period, k0_max, k_horizon);
  std::cout << format_schedule_report(report);
  return report.lambda.all_passed() ? 0 : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Best approximation pairs between convex polyhedra (A-HLWB)"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run_cmd = app.add_subcommand("run", "run A-HLWB and export the iterate trace");
  add_source_options(run_cmd, run_args.src, true);
  run_cmd->add_option("--sweeps", run_args.sweeps, "override num_sweeps")->check(CLI::PositiveNumber);
  run_cmd->add_option("--out", run_args.out_dir, "output directory (default: config, $BAP_OUT_DIR, .)");
  run_cmd->add_option("--format", run_args.formats, "comma-separated: csv,json,svg");
  run_cmd->add_option("--kernel", run_args.kernel, "sweep kernel")->check(CLI::IsMember({"auto", "direct", "scaled"}));
  run_cmd->add_option("--jobs", run_args.jobs, "run independent configs in parallel")->check(CLI::PositiveNumber);
  run_cmd->add_flag("--no-oracle", run_args.no_oracle, "skip the exact-projection comparison");

  Source oracle_src;
  std::string oracle_start;
  std::uint64_t oracle_iters = 100000;
  double oracle_tol = 1e-10;
  auto* oracle_cmd = app.add_subcommand("oracle", "Cheney-Goldstein with exact projections; print the certified pair");
  add_source_options(oracle_cmd, oracle_src, false);
  oracle_cmd->add_option("--start", oracle_start, "start point x,y,... (default: config start)");
  oracle_cmd->add_option("--max-iters", oracle_iters);
  oracle_cmd->add_option("--tol", oracle_tol, "step tolerance");

  Source certify_src;
  std::string cert_a, cert_b;
  double cert_tol = kCertificateTol;
  auto* certify_cmd = app.add_subcommand("certify", "check whether (a, b) is a best approximation pair");
  add_source_options(certify_cmd, certify_src, false);
  certify_cmd->add_option("--a", cert_a, "point in A, x,y,...")->required();
  certify_cmd->add_option("--b", cert_b, "point in B, x,y,...")->required();
  certify_cmd->add_option("--tol", cert_tol);

  Source validate_src;
  std::uint64_t period = 0, horizon = 1000000, k0_max = 30, k_horizon = 400;
  auto* validate_cmd = app.add_subcommand("validate-schedule", "lambda checks and the Z-bound estimate");
  add_source_options(validate_cmd, validate_src, false);
  validate_cmd->add_option("--period", period, "default: half-space count");
  validate_cmd->add_option("--horizon", horizon);
  validate_cmd->add_option("--k0-max", k0_max);
  validate_cmd->add_option("--k-horizon", k_horizon);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*run_cmd) return cmd_run(run_args);
    if (*oracle_cmd) return cmd_oracle(oracle_src, oracle_start, oracle_iters, oracle_tol);
    if (*certify_cmd) return cmd_certify(certify_src, cert_a, cert_b, cert_tol);
    if (*validate_cmd) return cmd_validate(validate_src, period, horizon, k0_max, k_horizon);
  } catch (const bap::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::input ? kExitInput : kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return 0;
}
