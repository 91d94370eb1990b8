#pragma once

#include <string>
#include <utility>
#include <vector>

#include "coint_rec/dgp.hpp"
#include "coint_rec/experiments.hpp"
#include "coint_rec/lasso.hpp"
#include "coint_rec/rec.hpp"
#include "coint_rec/theory.hpp"

namespace coint_rec::io {

inline constexpr int kCsvSchema = 1;

/// A `--set` override: dotted key path and a value that is parsed as JSON
/// when possible and taken as a string otherwise.
struct Override {
  std::string key;
  std::string value;
};

/// Parses "a.b=value". Throws ConfigError without '='.
Override parse_override(const std::string& text);

/// Layers `text` (a JSON object) and then `overrides` onto the default
/// config. Unknown keys, wrong types and unknown enum names throw
/// ConfigError; semantic checks are left to the experiment runners.
experiments::ExperimentConfig parse_experiment_config(
    const std::string& text, const std::vector<Override>& overrides = {});

/// Reads a config file; a missing or unreadable file throws ConfigError.
experiments::ExperimentConfig load_experiment_config(
    const std::string& path, const std::vector<Override>& overrides = {});

/// Every field of the config, keys sorted. indent < 0 gives one line.
std::string config_to_json(const experiments::ExperimentConfig& config,
                           int indent = 2);

const char* to_string(dgp::SupportPattern pattern);

/// `# schema=1`, `# config=<json>`, a header row and one row per record
/// sorted by (T, N, s, replication_id). Reals use 17 significant digits.
std::string records_csv(std::vector<experiments::ReplicationRecord> records,
                        const experiments::ExperimentConfig& config);

/// replication_id, T, N, s, runtime_ms. Not reproducible by design.
std::string timings_csv(const std::vector<experiments::ReplicationRecord>& records);

std::string records_json(std::vector<experiments::ReplicationRecord> records,
                         const experiments::ExperimentConfig& config);

std::string summary_json(const experiments::ExperimentSummary& summary,
                         const experiments::ExperimentConfig& config);
std::string chernoff_json(const experiments::ChernoffSummary& summary,
                          const experiments::ExperimentConfig& config);
std::string rate_json(const experiments::RateReport& report,
                      const experiments::ExperimentConfig& config);

/// Columns t, y, x_1..x_N with t = 1..T.
std::string sample_csv(const dgp::SimulatedSample& sample,
                       const experiments::ExperimentConfig& config);
std::string sample_json(const dgp::SimulatedSample& sample,
                        const experiments::ExperimentConfig& config);

/// Reads the sample CSV layout back: y and X. Comment lines are skipped.
std::pair<Eigen::VectorXd, Eigen::MatrixXd> read_sample_csv(
    const std::string& text);

std::string constants_json(const theory::TheoryConstants& constants,
                           const theory::Bound& rec_bound);
std::string rec_json(const rec::RecEstimate& estimate, double kappa_0,
                     const experiments::ExperimentConfig& config);
std::string lasso_json(const lasso::LassoSolution& solution, double lambda,
                       const experiments::ExperimentConfig& config);

/// {"error": kind, "message": ...} on one line.
std::string error_json(const std::string& kind, const std::string& message);

}  // namespace coint_rec::io
