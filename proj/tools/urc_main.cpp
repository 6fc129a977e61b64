#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <urc/urc.hpp>

namespace {

/// URC_THREADS fixes the worker count (it may exceed the core count; results
/// never depend on it). Unset or empty means automatic.
int env_threads() {
  const char* raw = std::getenv("URC_THREADS");
  if (!raw || !*raw) return 0;
  char* end = nullptr;
  const long value = std::strtol(raw, &end, 10);
  if (end == raw || *end != '\0' || value < 1 || value > 4096)
    throw std::invalid_argument("URC_THREADS must be a positive integer");
  return static_cast<int>(value);
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << content;
  if (!out) throw std::runtime_error("short write to output file: " + path);
}

urc::SweepSpacing parse_spacing_or_throw(const std::string& token) {
  const auto spacing = urc::parse_spacing(token);
  if (!spacing)
    throw std::invalid_argument("unknown spacing '" + token +
                                "' (expected linear, log, or logit-complement)");
  return *spacing;
}

std::vector<urc::BoundKind> parse_kinds_or_throw(const std::string& csv) {
  if (csv == "all")
    return {std::begin(urc::kAllBoundKinds), std::end(urc::kAllBoundKinds)};
  std::vector<urc::BoundKind> kinds;
  std::stringstream stream(csv);
  std::string token;
  while (std::getline(stream, token, ',')) {
    const auto kind = urc::parse_bound_kind(token);
    if (!kind)
      throw std::invalid_argument("unknown bound kind '" + token +
                                  "' (expected exact, lb_a, ub_a, lb_b, ub_b, lb_c, ub_c, "
                                  "lb_x, lb_plus, or all)");
    kinds.push_back(*kind);
  }
  if (kinds.empty()) throw std::invalid_argument("--kinds list is empty");
  return kinds;
}

struct ModelArgs {
  double alpha = 4.0;
  int n = 3;
};

struct AxisArgs {
  double min = 0.0;
  double max = 0.0;
  int points = 0;
  std::string spacing;
};

void add_model_flags(CLI::App* cmd, ModelArgs& args) {
  cmd->add_option("--alpha", args.alpha, "Path-loss exponent (> 2)")->capture_default_str();
  cmd->add_option("--n", args.n, "Number of successive receptions (>= 1)")
      ->capture_default_str();
}

struct CoverageSweepArgs {
  ModelArgs model;
  AxisArgs axis{0.01, 100.0, 200, "log"};
  std::string kinds = "all";
  std::string output;
};

struct RateSweepArgs {
  ModelArgs model;
  AxisArgs axis{0.3, 0.999, 200, "logit-complement"};
  std::string unit = "nats";
  std::string output;
};

struct SimulateArgs {
  ModelArgs model;
  AxisArgs axis{0.1, 10.0, 3, "log"};
  long trials = 100000;
  std::uint64_t seed = 1;
  std::string mode = "static";
  double radius = 30.0;
  double density = 1.0;
  std::string output;
};

struct ValidateArgs {
  bool quick = false;
  std::string output;
};

int run_coverage_sweep(const CoverageSweepArgs& args) {
  urc::SweepSpec spec{urc::ModelParams(args.model.alpha, args.model.n)};
  spec.axis = urc::SweepAxis::kThreshold;
  spec.axis_min = args.axis.min;
  spec.axis_max = args.axis.max;
  spec.points = args.axis.points;
  spec.spacing = parse_spacing_or_throw(args.axis.spacing);
  spec.kinds = parse_kinds_or_throw(args.kinds);
  emit(args.output, urc::coverage_sweep_csv(spec));
  return 0;
}

int run_rate_sweep(const RateSweepArgs& args) {
  urc::SweepSpec spec{urc::ModelParams(args.model.alpha, args.model.n)};
  spec.axis = urc::SweepAxis::kReliability;
  spec.axis_min = args.axis.min;
  spec.axis_max = args.axis.max;
  spec.points = args.axis.points;
  spec.spacing = parse_spacing_or_throw(args.axis.spacing);
  const auto unit = urc::parse_rate_unit(args.unit);
  if (!unit)
    throw std::invalid_argument("unknown unit '" + args.unit + "' (expected nats or bits)");
  spec.unit = *unit;
  emit(args.output, urc::rate_sweep_csv(spec));
  return 0;
}

std::vector<double> materialize_thresholds(const urc::ModelParams& params, const AxisArgs& axis) {
  if (axis.points == 1) return {axis.min};
  urc::SweepSpec spec{params};
  spec.axis = urc::SweepAxis::kThreshold;
  spec.axis_min = axis.min;
  spec.axis_max = axis.max;
  spec.points = axis.points;
  spec.spacing = parse_spacing_or_throw(axis.spacing);
  return urc::sweep_axis_values(spec);
}

int run_simulate(const SimulateArgs& args, int threads) {
  const urc::ModelParams params(args.model.alpha, args.model.n);
  const auto mode = urc::parse_mobility_mode(args.mode);
  if (!mode)
    throw std::invalid_argument("unknown mode '" + args.mode + "' (expected static or iid)");
  urc::SimConfig config{params, materialize_thresholds(params, args.axis)};
  config.bs_density = args.density;
  config.region_radius = args.radius;
  config.trials = args.trials;
  config.seed = args.seed;
  config.mode = *mode;
  emit(args.output, urc::simulate_csv(config, threads));
  return 0;
}

int run_validate(const ValidateArgs& args, int threads) {
  const urc::validate::Options options =
      args.quick ? urc::validate::Options::quick() : urc::validate::Options{};
  const std::vector<urc::validate::CheckResult> results =
      urc::validate::run_all(options, threads);
  std::string report;
  long failures = 0;
  for (const auto& result : results) {
    failures += result.passed ? 0 : 1;
    report += result.passed ? "[PASS] " : "[FAIL] ";
    report += result.name;
    if (!result.detail.empty()) {
      report += ": ";
      report += result.detail;
    }
    report += '\n';
  }
  report += std::to_string(results.size() - failures) + "/" + std::to_string(results.size()) +
            " checks passed";
  if (args.quick) report += " (quick)";
  report += '\n';
  emit(args.output, report);
  return failures == 0 ? 0 : 1;
}

void add_axis_flags(CLI::App* cmd, AxisArgs& axis, const char* what) {
  cmd->add_option("--t-min", axis.min, std::string("Smallest ") + what)->capture_default_str();
  cmd->add_option("--t-max", axis.max, std::string("Largest ") + what)->capture_default_str();
  cmd->add_option("--points", axis.points, "Number of grid points")->capture_default_str();
  cmd->add_option("--spacing", axis.spacing, "Grid spacing: linear or log")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact coverage, closed-form bounds, rate optimization and Monte Carlo\n"
               "validation for n-successive SIR receptions on a Poisson downlink."};
  app.require_subcommand(1);

  CoverageSweepArgs coverage_args;
  CLI::App* coverage_cmd = app.add_subcommand(
      "coverage-sweep", "Tabulate the exact coverage curve and its bounds over t");
  add_model_flags(coverage_cmd, coverage_args.model);
  add_axis_flags(coverage_cmd, coverage_args.axis, "SIR threshold t");
  coverage_cmd->add_option("--kinds", coverage_args.kinds,
                           "Comma-separated curve list, or 'all'")
      ->capture_default_str();
  coverage_cmd->add_option("--output", coverage_args.output, "Output file ('-' = stdout)");
  coverage_cmd->set_config("--config", "", "Read options from a key=value file");

  RateSweepArgs rate_args;
  CLI::App* rate_cmd = app.add_subcommand(
      "rate-sweep", "Tabulate the reliability-constrained max average rate over eta");
  add_model_flags(rate_cmd, rate_args.model);
  rate_cmd->add_option("--eta-min", rate_args.axis.min, "Smallest reliability level")
      ->capture_default_str();
  rate_cmd->add_option("--eta-max", rate_args.axis.max, "Largest reliability level")
      ->capture_default_str();
  rate_cmd->add_option("--points", rate_args.axis.points, "Number of grid points")
      ->capture_default_str();
  rate_cmd->add_option("--spacing", rate_args.axis.spacing,
                       "Grid spacing: linear, log, or logit-complement")
      ->capture_default_str();
  rate_cmd->add_option("--unit", rate_args.unit, "Rate unit: nats or bits")
      ->capture_default_str();
  rate_cmd->add_option("--output", rate_args.output, "Output file ('-' = stdout)");
  rate_cmd->set_config("--config", "", "Read options from a key=value file");

  SimulateArgs simulate_args;
  CLI::App* simulate_cmd = app.add_subcommand(
      "simulate", "Monte Carlo joint coverage next to the analytic curve");
  add_model_flags(simulate_cmd, simulate_args.model);
  add_axis_flags(simulate_cmd, simulate_args.axis, "SIR threshold t");
  simulate_cmd->add_option("--trials", simulate_args.trials, "Monte Carlo trials (>= 100)")
      ->capture_default_str();
  simulate_cmd->add_option("--seed", simulate_args.seed, "Base RNG seed")->capture_default_str();
  simulate_cmd->add_option("--mode", simulate_args.mode, "Network mobility: static or iid")
      ->capture_default_str();
  simulate_cmd->add_option("--radius", simulate_args.radius, "Simulation disc radius")
      ->capture_default_str();
  simulate_cmd->add_option("--density", simulate_args.density, "Base station density")
      ->capture_default_str();
  simulate_cmd->add_option("--output", simulate_args.output, "Output file ('-' = stdout)");
  simulate_cmd->set_config("--config", "", "Read options from a key=value file");

  ValidateArgs validate_args;
  CLI::App* validate_cmd = app.add_subcommand(
      "validate", "Run the built-in analytic and Monte Carlo self-checks");
  validate_cmd->add_flag("--quick", validate_args.quick,
                         "Reduced trial counts; finishes in well under a minute");
  validate_cmd->add_option("--output", validate_args.output, "Report file ('-' = stdout)");
  validate_cmd->set_config("--config", "", "Read options from a key=value file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const int threads = env_threads();
    if (coverage_cmd->parsed()) return run_coverage_sweep(coverage_args);
    if (rate_cmd->parsed()) return run_rate_sweep(rate_args);
    if (simulate_cmd->parsed()) return run_simulate(simulate_args, threads);
    if (validate_cmd->parsed()) return run_validate(validate_args, threads);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
