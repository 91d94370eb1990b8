#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "coint_rec/error.hpp"
#include "coint_rec/experiments.hpp"
#include "coint_rec/io.hpp"
#include "coint_rec/lasso.hpp"
#include "coint_rec/rec.hpp"
#include "coint_rec/theory.hpp"

namespace fs = std::filesystem;
using namespace coint_rec;

namespace {

enum ExitCode { kOk = 0, kFailure = 1, kBadInput = 2, kInfeasible = 3, kNumerical = 4 };

struct Options {
  std::string config_path;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::size_t workers = 1;
  std::string format = "csv";
  std::string input;
  std::optional<double> lambda;
  std::uint64_t replication = 0;
  std::string kind = "lasso";
};

std::size_t default_workers() {
  if (const char* env = std::getenv("COINT_REC_WORKERS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
    throw ConfigError("COINT_REC_WORKERS must be a positive integer");
  }
  return 1;
}

experiments::ExperimentConfig resolve(const Options& opt) {
  std::vector<io::Override> overrides;
  for (const auto& text : opt.overrides) overrides.push_back(io::parse_override(text));
  if (opt.seed) overrides.push_back({"master_seed", std::to_string(*opt.seed)});
  for (const auto& o : overrides)
    std::cerr << "override " << o.key << "=" << o.value << "\n";
  if (opt.config_path.empty()) return io::parse_experiment_config("{}", overrides);
  return io::load_experiment_config(opt.config_path, overrides);
}

const experiments::GridPoint& first_point(const experiments::ExperimentConfig& config) {
  experiments::validate(config);
  return config.grid.front();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw ConfigError("failed writing '" + path.string() + "'");
}

// Writes to out_dir/name when --out is given, else to stdout.
void emit(const Options& opt, const std::string& name, const std::string& text) {
  if (opt.out_dir.empty()) {
    std::cout << text;
    return;
  }
  fs::create_directories(opt.out_dir);
  write_file(fs::path(opt.out_dir) / name, text);
}

fs::path output_dir(const Options& opt) {
  const fs::path dir = opt.out_dir.empty() ? fs::path("coint-rec-out") : fs::path(opt.out_dir);
  fs::create_directories(dir);
  return dir;
}

std::pair<Eigen::VectorXd, Eigen::MatrixXd> load_data(
    const Options& opt, const experiments::ExperimentConfig& config) {
  if (opt.input.empty()) {
    const auto sample = experiments::point_sample(config, 0, opt.replication);
    return {sample.y, sample.X};
  }
  std::ifstream in(opt.input);
  if (!in) throw ConfigError("cannot read input '" + opt.input + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return io::read_sample_csv(buffer.str());
}

int cmd_simulate(const Options& opt) {
  const auto config = resolve(opt);
  first_point(config);
  const auto sample = experiments::point_sample(config, 0, opt.replication);
  if (opt.format == "json")
    emit(opt, "sample.json", io::sample_json(sample, config));
  else
    emit(opt, "sample.csv", io::sample_csv(sample, config));
  return kOk;
}

int cmd_constants(const Options& opt) {
  const auto config = resolve(opt);
  const auto& p = first_point(config);
  const auto constants = experiments::point_constants(config, 0);
  const auto bound =
      theory::rec_probability_bound(p.T, p.N, p.s, config.C1, constants.C2);
  emit(opt, "constants.json", io::constants_json(constants, bound));
  if (!constants.feasible)
    throw InfeasibleConstants("precondition s + m_kappa <= N failed: s + m_kappa = " +
                              std::to_string(p.s + constants.m_kappa) +
                              ", N = " + std::to_string(p.N));
  return kOk;
}

int cmd_rec(const Options& opt) {
  const auto config = resolve(opt);
  const auto& p = first_point(config);
  const auto [y, X] = load_data(opt, config);
  const auto T = static_cast<std::size_t>(X.rows());
  const auto N = static_cast<std::size_t>(X.cols());
  if (N < 2 || p.s > N)
    throw InvalidInput("rec needs N >= 2 columns and s <= N");
  theory::TheoryInputs in;
  in.c0 = config.c0;
  in.delta = config.delta;
  in.kappa_free = config.kappa_free;
  in.C1 = config.C1;
  in.s = p.s;
  in.N = N;
  in.T = T;
  const auto constants = opt.input.empty() ? experiments::point_constants(config, 0)
                                            : theory::derive_constants(in);
  rec::ConeProblem problem{X, constants.f_T, p.s, config.c0};
  rec::SampledOptions options;
  options.restarts = config.rec.restarts;
  options.iters = config.rec.iters;
  options.budget = config.rec.budget;
  options.support_samples = config.rec.support_samples;
  options.seed = config.master_seed;
  const auto m = rec::default_bickel_m(p.s, N, constants.m_kappa);
  const auto estimate = rec::estimate_rec(problem, m, options);
  emit(opt, "rec.json", io::rec_json(estimate, constants.kappa_0, config));
  return kOk;
}

int cmd_lasso(const Options& opt) {
  const auto config = resolve(opt);
  first_point(config);
  const auto [y, X] = load_data(opt, config);
  const double lambda = opt.lambda.value_or(config.lambda_rule.lambda(
      static_cast<std::size_t>(X.rows()), static_cast<std::size_t>(X.cols())));
  lasso::LassoOptions options;
  options.tol = config.lasso_tol;
  options.max_iter = config.lasso_max_iter;
  const auto solution = lasso::fit({y, X, lambda, 1.0}, options);
  emit(opt, "lasso.json", io::lasso_json(solution, lambda, config));
  return kOk;
}

void write_records(const fs::path& dir, const Options& opt,
                   const std::vector<experiments::ReplicationRecord>& records,
                   const experiments::ExperimentConfig& config) {
  if (opt.format == "json")
    write_file(dir / "records.json", io::records_json(records, config));
  else
    write_file(dir / "records.csv", io::records_csv(records, config));
  write_file(dir / "timings.csv", io::timings_csv(records));
}

int cmd_experiment(const Options& opt) {
  const auto config = resolve(opt);
  const auto dir = output_dir(opt);
  if (opt.kind == "chernoff") {
    const auto summary = experiments::run_chernoff_experiment(config, opt.workers);
    write_file(dir / "summary.json", io::chernoff_json(summary, config));
    return kOk;
  }
  const auto result = opt.kind == "rec"
                          ? experiments::run_rec_experiment(config, opt.workers)
                          : experiments::run_lasso_experiment(config, opt.workers);
  write_records(dir, opt, result.records, config);
  write_file(dir / "summary.json", io::summary_json(result.summary, config));
  return kOk;
}

int cmd_rate(const Options& opt) {
  const auto config = resolve(opt);
  const auto dir = output_dir(opt);
  const auto report = experiments::run_rate_study(config, opt.workers);
  write_records(dir, opt, report.records, config);
  write_file(dir / "summary.json", io::rate_json(report, config));
  return kOk;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::config:
    case ErrorKind::invalid_input:
    case ErrorKind::invalid_dimension:
    case ErrorKind::domain:
    case ErrorKind::enumeration_too_large:
      return kBadInput;
    case ErrorKind::infeasible:
      return kInfeasible;
    case ErrorKind::numerical:
    case ErrorKind::not_positive_definite:
      return kNumerical;
  }
  return kFailure;
}

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--config", opt.config_path, "JSON config file")->check(CLI::ExistingFile);
  cmd->add_option("--set", opt.overrides, "Override a config key, e.g. rec.restarts=8")
      ->allow_extra_args(false);
  cmd->add_option("--seed", opt.seed, "Master seed (overrides master_seed)");
  cmd->add_option("--out", opt.out_dir, "Output directory");
  cmd->add_option("--workers", opt.workers, "Worker threads (default: $COINT_REC_WORKERS or 1)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--format", opt.format, "Record output format")
      ->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Restricted eigenvalues and lasso for cointegrated panels"};
  app.require_subcommand(1);
  Options opt;

  auto* simulate = app.add_subcommand("simulate", "Simulate one cointegrated sample");
  auto* constants = app.add_subcommand("constants", "Evaluate the theoretical constants");
  auto* rec_cmd = app.add_subcommand("rec", "Restricted eigenvalue bracket for a panel");
  auto* lasso_cmd = app.add_subcommand("lasso", "Fit the lasso on a sample");
  auto* experiment = app.add_subcommand("experiment", "Run a Monte Carlo experiment");
  auto* rate = app.add_subcommand("rate", "Run the convergence-rate study");
  for (auto* cmd : {simulate, constants, rec_cmd, lasso_cmd, experiment, rate})
    add_common(cmd, opt);
  for (auto* cmd : {simulate, rec_cmd, lasso_cmd})
    cmd->add_option("--replication", opt.replication, "Replication id of the simulated sample");
  for (auto* cmd : {rec_cmd, lasso_cmd})
    cmd->add_option("--input", opt.input, "Sample CSV (t,y,x_1..x_N) instead of simulating")
        ->check(CLI::ExistingFile);
  lasso_cmd->add_option("--lambda", opt.lambda, "Penalty (default: config lambda rule)");
  experiment->add_option("--kind", opt.kind, "Experiment kind")
      ->check(CLI::IsMember({"rec", "lasso", "chernoff"}));

  try {
    opt.workers = default_workers();
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << io::error_json("usage", e.what()) << "\n";
    return kBadInput;
  } catch (const Error& e) {
    std::cerr << io::error_json(to_string(e.kind()), e.what()) << "\n";
    return exit_code(e.kind());
  }

  try {
    if (*simulate) return cmd_simulate(opt);
    if (*constants) return cmd_constants(opt);
    if (*rec_cmd) return cmd_rec(opt);
    if (*lasso_cmd) return cmd_lasso(opt);
    if (*experiment) return cmd_experiment(opt);
    if (*rate) return cmd_rate(opt);
  } catch (const Error& e) {
    std::cerr << io::error_json(to_string(e.kind()), e.what()) << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << io::error_json("internal", e.what()) << "\n";
    return kFailure;
  }
  return kFailure;
}
