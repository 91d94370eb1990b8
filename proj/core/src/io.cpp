#include "coint_rec/io.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <tuple>

#include "json.hpp"

#include "coint_rec/error.hpp"

namespace coint_rec::io {
namespace {

using nlohmann::json;
using experiments::ExperimentConfig;
using experiments::ReplicationRecord;

// JSON has no infinities; they are written as null.
json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json to_json(const ExperimentConfig& c) {
  json grid = json::array();
  for (const auto& p : c.grid) grid.push_back({{"T", p.T}, {"N", p.N}, {"s", p.s}});
  const bool fixed = c.lambda_rule.kind == experiments::LambdaRule::Kind::fixed;
  return {
      {"grid", grid},
      {"replications", c.replications},
      {"covariance", {{"kind", dgp::to_string(c.covariance_kind)},
                      {"rho", c.covariance_rho}}},
      {"c0", c.c0},
      {"delta", c.delta},
      {"kappa_free", c.kappa_free},
      {"C1", c.C1},
      {"lambda", {{"rule", fixed ? "fixed" : "rate"},
                  {"value", c.lambda_rule.value},
                  {"xi", c.lambda_rule.xi},
                  {"scale", c.lambda_rule.scale}}},
      {"truncation_m", c.truncation_m ? json(*c.truncation_m) : json(nullptr)},
      {"phi_grid", c.phi_grid},
      {"a_grid", c.a_grid},
      {"master_seed", c.master_seed},
      {"beta", {{"magnitude", c.beta_magnitude},
                {"support", to_string(c.support_pattern)}}},
      {"lasso", {{"tol", c.lasso_tol}, {"max_iter", c.lasso_max_iter}}},
      {"rec", {{"restarts", c.rec.restarts},
               {"iters", c.rec.iters},
               {"support_samples", c.rec.support_samples},
               {"budget", c.rec.budget},
               {"compute_upper", c.rec.compute_upper}}},
      {"chernoff", {{"support_size", c.chernoff.support_size},
                    {"T", c.chernoff.T},
                    {"phi", c.chernoff.phi},
                    {"deltas", c.chernoff.deltas},
                    {"replications", c.chernoff.replications}}},
      {"chernoff_stats", c.chernoff_stats},
  };
}

ExperimentConfig from_json(const json& j) {
  ExperimentConfig c;
  for (const auto& p : j.at("grid")) {
    if (!p.is_object()) throw ConfigError("grid entries must be objects");
    for (const auto& [key, value] : p.items())
      if (key != "T" && key != "N" && key != "s")
        throw ConfigError("unknown grid key '" + key + "'");
    c.grid.push_back({p.at("T").get<std::size_t>(), p.at("N").get<std::size_t>(),
                      p.at("s").get<std::size_t>()});
  }
  c.replications = j.at("replications").get<std::size_t>();
  c.covariance_kind =
      dgp::covariance_kind_from_string(j.at("covariance").at("kind").get<std::string>());
  c.covariance_rho = j.at("covariance").at("rho").get<double>();
  c.c0 = j.at("c0").get<double>();
  c.delta = j.at("delta").get<double>();
  c.kappa_free = j.at("kappa_free").get<double>();
  c.C1 = j.at("C1").get<double>();
  const auto& lam = j.at("lambda");
  const auto rule = lam.at("rule").get<std::string>();
  if (rule == "fixed") {
    c.lambda_rule.kind = experiments::LambdaRule::Kind::fixed;
  } else if (rule == "rate") {
    c.lambda_rule.kind = experiments::LambdaRule::Kind::rate;
  } else {
    throw ConfigError("lambda.rule must be 'fixed' or 'rate'");
  }
  c.lambda_rule.value = lam.at("value").get<double>();
  c.lambda_rule.xi = lam.at("xi").get<double>();
  c.lambda_rule.scale = lam.at("scale").get<double>();
  if (!j.at("truncation_m").is_null())
    c.truncation_m = j.at("truncation_m").get<double>();
  c.phi_grid = j.at("phi_grid").get<std::vector<double>>();
  c.a_grid = j.at("a_grid").get<std::vector<double>>();
  c.master_seed = j.at("master_seed").get<std::uint64_t>();
  c.beta_magnitude = j.at("beta").at("magnitude").get<double>();
  c.support_pattern =
      dgp::support_pattern_from_string(j.at("beta").at("support").get<std::string>());
  c.lasso_tol = j.at("lasso").at("tol").get<double>();
  c.lasso_max_iter = j.at("lasso").at("max_iter").get<std::size_t>();
  const auto& r = j.at("rec");
  c.rec.restarts = r.at("restarts").get<std::size_t>();
  c.rec.iters = r.at("iters").get<std::size_t>();
  c.rec.support_samples = r.at("support_samples").get<std::uint64_t>();
  c.rec.budget = r.at("budget").get<std::uint64_t>();
  c.rec.compute_upper = r.at("compute_upper").get<bool>();
  const auto& ch = j.at("chernoff");
  c.chernoff.support_size = ch.at("support_size").get<std::size_t>();
  c.chernoff.T = ch.at("T").get<std::size_t>();
  c.chernoff.phi = ch.at("phi").get<double>();
  c.chernoff.deltas = ch.at("deltas").get<std::vector<double>>();
  c.chernoff.replications = ch.at("replications").get<std::size_t>();
  c.chernoff_stats = j.at("chernoff_stats").get<bool>();
  return c;
}

// Overlays `patch` on `base`; every key of an object must already exist.
void merge(json& base, const json& patch, const std::string& path) {
  for (const auto& [key, value] : patch.items()) {
    const std::string where = path.empty() ? key : path + "." + key;
    if (!base.contains(key)) throw ConfigError("unknown config key '" + where + "'");
    json& slot = base[key];
    if (slot.is_object()) {
      if (!value.is_object()) throw ConfigError("config key '" + where + "' must be an object");
      merge(slot, value, where);
    } else {
      slot = value;
    }
  }
}

void apply(json& base, const Override& o) {
  json* node = &base;
  std::string where;
  std::stringstream parts(o.key);
  std::string part;
  std::vector<std::string> path;
  while (std::getline(parts, part, '.')) path.push_back(part);
  if (path.empty()) throw ConfigError("empty override key");
  for (std::size_t i = 0; i < path.size(); ++i) {
    where += (i ? "." : "") + path[i];
    if (!node->is_object() || !node->contains(path[i]))
      throw ConfigError("unknown config key '" + where + "'");
    node = &(*node)[path[i]];
  }
  json value = json::parse(o.value, nullptr, false);
  if (value.is_discarded()) value = o.value;
  if (node->is_object()) {
    if (!value.is_object()) throw ConfigError("config key '" + where + "' must be an object");
    merge(*node, value, where);
  } else {
    *node = value;
  }
}

json grid_json(const experiments::GridPoint& p) {
  return {{"T", p.T}, {"N", p.N}, {"s", p.s}};
}

json frequency_json(const experiments::Frequency& f) {
  return {{"value", f.value}, {"se", f.se}, {"hits", f.hits}, {"trials", f.trials}};
}

json quantiles_json(const experiments::Quantiles& q) {
  return {{"q25", num(q.q25)}, {"q50", num(q.q50)}, {"q75", num(q.q75)}};
}

json bound_json(const theory::Bound& b) {
  return {{"value", num(b.value)}, {"vacuous", b.vacuous}};
}

json constants_object(const theory::TheoryConstants& k) {
  const auto& in = k.inputs;
  return {
      {"inputs", {{"c0", in.c0}, {"c_sigma", in.c_sigma}, {"C_sigma", in.C_sigma},
                  {"delta", in.delta}, {"kappa_free", in.kappa_free}, {"C1", in.C1},
                  {"s", in.s}, {"N", in.N}, {"T", in.T}}},
      {"K_delta", num(k.K_delta)},
      {"C_kappa", num(k.C_kappa)},
      {"m_kappa", k.m_kappa},
      {"C2", num(k.C2)},
      {"sqrt_phi_s", num(k.sqrt_phi_s)},
      {"phi_s", num(k.phi_s)},
      {"lambda_phi_s_1", num(k.lambda_phi_s_1)},
      {"R_s", num(k.R_s)},
      {"C_mu", num(k.C_mu)},
      {"kappa_0", num(k.kappa_0)},
      {"f_T", num(k.f_T)},
      {"mu_min_lb", num(k.mu_min_lb)},
      {"feasible", k.feasible},
      {"theorem_precondition", k.theorem_precondition},
  };
}

json row_json(const experiments::SummaryRow& r) {
  json out = {
      {"point", grid_json(r.point)},
      {"replications", r.replications},
      {"ep_event", frequency_json(r.ep_event)},
      {"ep_stat", quantiles_json(r.ep_stat)},
      {"chernoff_min_stat", quantiles_json(r.chernoff_min_stat)},
      {"chernoff_max_stat", quantiles_json(r.chernoff_max_stat)},
  };
  if (r.rec_replications > 0) {
    out["rec"] = {{"replications", r.rec_replications},
                  {"rec_event", frequency_json(r.rec_event)},
                  {"rec_upper_event", frequency_json(r.rec_upper_event)},
                  {"rec_lower", quantiles_json(r.rec_lower)},
                  {"rec_upper", quantiles_json(r.rec_upper)}};
  }
  if (r.lasso_replications > 0) {
    out["lasso"] = {{"replications", r.lasso_replications},
                    {"non_converged", r.non_converged},
                    {"bound_event", frequency_json(r.bound_event)},
                    {"bound_event_kappa0", frequency_json(r.bound_event_kappa0)},
                    {"cone_event", frequency_json(r.cone_event)},
                    {"bound_given_events", frequency_json(r.bound_given_events)},
                    {"cone_given_ep", frequency_json(r.cone_given_ep)},
                    {"l1_error", quantiles_json(r.l1_error)},
                    {"l2_pred_error", quantiles_json(r.l2_pred_error)}};
  }
  return out;
}

json theory_json(const experiments::PointTheory& t) {
  json tails = json::array();
  for (const auto& a : t.tails) {
    tails.push_back({{"a", a.a},
                     {"bound", num(a.bound)},
                     {"bound_statement", num(a.bound_statement)},
                     {"vacuous", a.vacuous},
                     {"exceed", frequency_json(a.exceed)},
                     {"dominated", a.dominated}});
  }
  return {{"point", grid_json(t.point)},
          {"constants", constants_object(t.constants)},
          {"rec_bound", bound_json(t.rec_bound)},
          {"lambda", num(t.lambda)},
          {"truncation_m", t.truncation_m},
          {"lasso_bound", bound_json(t.lasso_bound)},
          {"lasso_bound_proof", bound_json(t.lasso_bound_proof)},
          {"tails", tails},
          {"note", t.note},
          {"rec_dominance_ok", t.rec_dominance_ok},
          {"lasso_dominance_ok", t.lasso_dominance_ok}};
}

json summary_object(const experiments::ExperimentSummary& s) {
  json rows = json::array();
  for (const auto& r : s.rows) rows.push_back(row_json(r));
  json theory = json::array();
  for (const auto& t : s.theory) theory.push_back(theory_json(t));
  return {{"kind", s.kind}, {"rows", rows}, {"theory", theory}};
}

std::string document(json body, const ExperimentConfig& config) {
  body["config"] = to_json(config);
  body["master_seed"] = config.master_seed;
  body["schema"] = kCsvSchema;
  return body.dump(2) + "\n";
}

const char* kRecordColumns[] = {
    "replication_id", "T", "N", "s", "seed",
    "has_rec", "rec_lower", "rec_upper", "kappa0", "rec_event",
    "rec_upper_event", "bickel_bound", "singular_value_bound", "m_used",
    "rec_exhaustive", "ep_stat", "ep_threshold", "ep_event", "has_lasso",
    "lambda", "l1_error", "l2_pred_error", "bound_rhs", "bound_event",
    "bound_event_kappa0", "cone_event", "cone_slack", "converged",
    "kkt_residual", "chernoff_min_stat", "chernoff_max_stat"};

void sort_records(std::vector<ReplicationRecord>& records) {
  std::sort(records.begin(), records.end(),
            [](const ReplicationRecord& a, const ReplicationRecord& b) {
              return std::tie(a.T, a.N, a.s, a.replication_id) <
                     std::tie(b.T, b.N, b.s, b.replication_id);
            });
}

}  // namespace

Override parse_override(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("override '" + text + "' is not of the form key=value");
  return {text.substr(0, eq), text.substr(eq + 1)};
}

ExperimentConfig parse_experiment_config(const std::string& text,
                                         const std::vector<Override>& overrides) {
  json base = to_json(ExperimentConfig{});
  const json patch = json::parse(text, nullptr, false, true);
  if (patch.is_discarded()) throw ConfigError("config is not valid JSON");
  if (!patch.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig config;
  try {
    merge(base, patch, "");
    for (const auto& o : overrides) apply(base, o);
    config = from_json(base);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid config value: ") + e.what());
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  return config;
}

ExperimentConfig load_experiment_config(const std::string& path,
                                        const std::vector<Override>& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_experiment_config(buffer.str(), overrides);
}

std::string config_to_json(const ExperimentConfig& config, int indent) {
  return to_json(config).dump(indent);
}

const char* to_string(dgp::SupportPattern pattern) {
  return pattern == dgp::SupportPattern::random ? "random" : "first_s";
}

std::string records_csv(std::vector<ReplicationRecord> records,
                        const ExperimentConfig& config) {
  sort_records(records);
  std::string out = "# schema=" + std::to_string(kCsvSchema) + "\n";
  out += "# config=" + config_to_json(config, -1) + "\n";
  bool first = true;
  for (const char* col : kRecordColumns) {
    out += first ? "" : ",";
    out += col;
    first = false;
  }
  out += "\n";
  auto b = [](bool v) { return std::string(v ? "1" : "0"); };
  for (const auto& r : records) {
    const std::vector<std::string> cells = {
        std::to_string(r.replication_id), std::to_string(r.T),
        std::to_string(r.N), std::to_string(r.s), std::to_string(r.seed),
        b(r.has_rec), real(r.rec_lower), real(r.rec_upper), real(r.kappa0),
        b(r.rec_event), b(r.rec_upper_event), real(r.bickel_bound),
        real(r.singular_value_bound), std::to_string(r.m_used),
        b(r.rec_exhaustive), real(r.ep_stat), real(r.ep_threshold),
        b(r.ep_event), b(r.has_lasso), real(r.lambda), real(r.l1_error),
        real(r.l2_pred_error), real(r.bound_rhs), b(r.bound_event),
        b(r.bound_event_kappa0), b(r.cone_event), real(r.cone_slack),
        b(r.converged), real(r.kkt_residual), real(r.chernoff_min_stat),
        real(r.chernoff_max_stat)};
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ",";
      out += cells[i];
    }
    out += "\n";
  }
  return out;
}

std::string timings_csv(const std::vector<ReplicationRecord>& records) {
  std::string out = "replication_id,T,N,s,runtime_ms\n";
  for (const auto& r : records) {
    out += std::to_string(r.replication_id) + "," + std::to_string(r.T) + "," +
           std::to_string(r.N) + "," + std::to_string(r.s) + "," +
           real(r.runtime_ms) + "\n";
  }
  return out;
}

std::string records_json(std::vector<ReplicationRecord> records,
                         const ExperimentConfig& config) {
  sort_records(records);
  json rows = json::array();
  for (const auto& r : records) {
    rows.push_back({{"replication_id", r.replication_id}, {"T", r.T}, {"N", r.N},
                    {"s", r.s}, {"seed", r.seed}, {"has_rec", r.has_rec},
                    {"rec_lower", num(r.rec_lower)}, {"rec_upper", num(r.rec_upper)},
                    {"kappa0", r.kappa0}, {"rec_event", r.rec_event},
                    {"rec_upper_event", r.rec_upper_event},
                    {"bickel_bound", num(r.bickel_bound)},
                    {"singular_value_bound", num(r.singular_value_bound)},
                    {"m_used", r.m_used}, {"rec_exhaustive", r.rec_exhaustive},
                    {"ep_stat", r.ep_stat}, {"ep_threshold", r.ep_threshold},
                    {"ep_event", r.ep_event}, {"has_lasso", r.has_lasso},
                    {"lambda", r.lambda}, {"l1_error", r.l1_error},
                    {"l2_pred_error", r.l2_pred_error}, {"bound_rhs", num(r.bound_rhs)},
                    {"bound_event", r.bound_event},
                    {"bound_event_kappa0", r.bound_event_kappa0},
                    {"cone_event", r.cone_event}, {"cone_slack", r.cone_slack},
                    {"converged", r.converged}, {"kkt_residual", r.kkt_residual},
                    {"chernoff_min_stat", num(r.chernoff_min_stat)},
                    {"chernoff_max_stat", num(r.chernoff_max_stat)}});
  }
  return document({{"records", rows}}, config);
}

std::string summary_json(const experiments::ExperimentSummary& summary,
                         const ExperimentConfig& config) {
  return document(summary_object(summary), config);
}

std::string chernoff_json(const experiments::ChernoffSummary& s,
                          const ExperimentConfig& config) {
  json tails = json::array();
  for (const auto& t : s.tails) {
    tails.push_back({{"delta", t.delta},
                     {"min_tail", frequency_json(t.min_tail)},
                     {"max_tail", frequency_json(t.max_tail)},
                     {"min_bound", num(t.min_bound)},
                     {"max_bound", num(t.max_bound)},
                     {"min_bound_theory", num(t.min_bound_theory)},
                     {"max_bound_theory", num(t.max_bound_theory)},
                     {"min_dominated", t.min_dominated},
                     {"max_dominated", t.max_dominated}});
  }
  json body = {{"kind", "chernoff"},
               {"support_size", s.support_size},
               {"T", s.T},
               {"phi", s.phi},
               {"replications", s.replications},
               {"mu_min", s.mu_min},
               {"mu_max", s.mu_max},
               {"R_observed", s.R_observed},
               {"R_theory", s.R_theory},
               {"mean_diag", s.mean_diag},
               {"se_diag", s.se_diag},
               {"expected_diag", s.expected_diag},
               {"mean_matches", s.mean_matches},
               {"tails", tails}};
  return document(body, config);
}

std::string rate_json(const experiments::RateReport& report,
                      const ExperimentConfig& config) {
  json points = json::array();
  for (const auto& p : report.points) {
    const auto& d = p.diagnostics;
    points.push_back({{"point", grid_json(p.point)},
                      {"lambda", p.lambda},
                      {"median_l1", p.median_l1},
                      {"non_converged", p.non_converged},
                      {"diagnostics", {{"ratio_penalty", num(d.ratio_penalty)},
                                       {"ratio_dimension", num(d.ratio_dimension)},
                                       {"ratio_sparsity", num(d.ratio_sparsity)},
                                       {"rate", num(d.rate)},
                                       {"A1", num(d.A1)},
                                       {"A2", num(d.A2)},
                                       {"A3", num(d.A3)},
                                       {"A4", num(d.A4)},
                                       {"m", d.m}}}});
  }
  json body = summary_object(report.summary);
  body["points"] = points;
  body["fit"] = {{"slope", report.fit.slope}, {"intercept", report.fit.intercept}};
  body["reference_slope"] = report.reference_slope;
  return document(body, config);
}

std::string sample_csv(const dgp::SimulatedSample& sample,
                       const ExperimentConfig& config) {
  std::string out = "# schema=" + std::to_string(kCsvSchema) + "\n";
  out += "# config=" + config_to_json(config, -1) + "\n";
  out += "# seed=" + std::to_string(sample.seed) +
         " replication_id=" + std::to_string(sample.replication_id) + "\n";
  out += "t,y";
  for (Eigen::Index j = 0; j < sample.X.cols(); ++j)
    out += ",x_" + std::to_string(j + 1);
  out += "\n";
  for (Eigen::Index t = 0; t < sample.X.rows(); ++t) {
    out += std::to_string(t + 1) + "," + real(sample.y(t));
    for (Eigen::Index j = 0; j < sample.X.cols(); ++j) out += "," + real(sample.X(t, j));
    out += "\n";
  }
  return out;
}

std::string sample_json(const dgp::SimulatedSample& sample,
                        const ExperimentConfig& config) {
  json rows = json::array();
  for (Eigen::Index t = 0; t < sample.X.rows(); ++t) {
    std::vector<double> x(static_cast<std::size_t>(sample.X.cols()));
    for (Eigen::Index j = 0; j < sample.X.cols(); ++j)
      x[static_cast<std::size_t>(j)] = sample.X(t, j);
    rows.push_back({{"t", t + 1}, {"y", sample.y(t)}, {"x", x}});
  }
  std::vector<double> beta(sample.beta_true.data(),
                           sample.beta_true.data() + sample.beta_true.size());
  json body = {{"seed", sample.seed},
               {"replication_id", sample.replication_id},
               {"beta", beta},
               {"support", sample.support},
               {"rows", rows}};
  return document(body, config);
}

std::pair<Eigen::VectorXd, Eigen::MatrixXd> read_sample_csv(const std::string& text) {
  std::stringstream in(text);
  std::string line;
  bool header_seen = false;
  std::size_t cols = 0;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!header_seen) {
      if (cells.size() < 3 || cells[0] != "t" || cells[1] != "y")
        throw InvalidInput("sample CSV header must start with t,y,x_1");
      cols = cells.size();
      header_seen = true;
      continue;
    }
    if (cells.size() != cols)
      throw InvalidInput("sample CSV row " + std::to_string(rows.size() + 1) +
                         " has " + std::to_string(cells.size()) + " cells, expected " +
                         std::to_string(cols));
    std::vector<double> row;
    for (std::size_t i = 1; i < cells.size(); ++i) {
      try {
        row.push_back(std::stod(cells[i]));
      } catch (const std::exception&) {
        throw InvalidInput("sample CSV cell '" + cells[i] + "' is not a number");
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InvalidInput("sample CSV has no data rows");
  const auto T = static_cast<Eigen::Index>(rows.size());
  const auto N = static_cast<Eigen::Index>(cols - 2);
  Eigen::VectorXd y(T);
  Eigen::MatrixXd X(T, N);
  for (Eigen::Index t = 0; t < T; ++t) {
    const auto& row = rows[static_cast<std::size_t>(t)];
    y(t) = row[0];
    for (Eigen::Index j = 0; j < N; ++j) X(t, j) = row[static_cast<std::size_t>(j) + 1];
  }
  return {y, X};
}

std::string constants_json(const theory::TheoryConstants& constants,
                           const theory::Bound& rec_bound) {
  json body = constants_object(constants);
  body["rec_probability_bound"] = bound_json(rec_bound);
  return body.dump(2) + "\n";
}

std::string rec_json(const rec::RecEstimate& e, double kappa_0,
                     const ExperimentConfig& config) {
  std::vector<double> dir(e.witness_direction.data(),
                          e.witness_direction.data() + e.witness_direction.size());
  json body = {{"lower_bound", num(e.lower_bound)},
               {"upper_estimate", num(e.upper_estimate)},
               {"m_used", e.m_used},
               {"witness_support", e.witness_support},
               {"witness_direction", dir},
               {"bickel_bound", num(e.bickel_bound)},
               {"singular_value_bound", num(e.singular_value_bound)},
               {"bickel_exhaustive", e.bickel_exhaustive},
               {"upper_exhaustive", e.upper_exhaustive},
               {"supports_scanned", e.supports_scanned},
               {"lower_informative", e.lower_informative},
               {"kappa_0", kappa_0},
               {"rec_event", e.lower_bound >= kappa_0}};
  return document(body, config);
}

std::string lasso_json(const lasso::LassoSolution& s, double lambda,
                       const ExperimentConfig& config) {
  std::vector<double> beta(s.beta_hat.data(), s.beta_hat.data() + s.beta_hat.size());
  json body = {{"lambda", lambda},
               {"beta_hat", beta},
               {"objective", s.objective},
               {"kkt_residual", s.kkt_residual},
               {"iterations", s.iterations},
               {"converged", s.converged},
               {"skipped_columns", s.skipped_columns}};
  return document(body, config);
}

std::string error_json(const std::string& kind, const std::string& message) {
  return json{{"error", kind}, {"message", message}}.dump();
}

}  // namespace coint_rec::io
