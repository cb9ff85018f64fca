// esslab command-line driver: estimate, simulate, reproduce, audit, synth.
//
// stdout carries only the machine-readable payload; logs go to stderr.
// Exit codes: 0 success, 2 validation error, 3 minimizer at grid boundary.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "esslab/audit.hpp"
#include "esslab/error.hpp"
#include "esslab/experiments.hpp"
#include "esslab/parallel.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace esslab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitBoundary = 3;

std::vector<double> parse_pair(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    char* end = nullptr;
    const double v = std::strtod(part.c_str(), &end);
    if (part.empty() || *end != '\0') {
      fail(ErrorCode::InvalidArgument, flag + ": '" + text + "' is not a comma-separated pair");
    }
    out.push_back(v);
  }
  if (out.size() != 2) {
    fail(ErrorCode::InvalidArgument, flag + ": expected two values like 4,6; got '" + text + "'");
  }
  return out;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  std::random_device rd;
  const std::uint64_t picked = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  std::cerr << "seed: " << picked << '\n';
  return picked;
}

json estimate_json(const EssEstimate& e) {
  return {{"ess", e.ess},
          {"ess_continuous", e.ess_continuous()},
          {"n", e.n},
          {"n_tilde_star", e.n_tilde_star},
          {"n_tilde_continuous", e.n_tilde_continuous},
          {"direction", std::string(to_string(e.direction))},
          {"method", std::string(to_string(e.method))},
          {"at_boundary", e.at_boundary()},
          {"diagnostics", e.diagnostics}};
}

// --- estimate --------------------------------------------------------------

struct EstimateFlags {
  std::string family = "normal";
  std::string engine;
  std::string direction;
  std::optional<double> m, delta, sigma, mu_true;
  std::string prior, prior1, prior2;
  std::optional<double> theta, theta0, theta1, theta2;
  std::optional<double> mu, var1, mu1, mu2;
  Count n = 100;
  std::optional<Count> draws, replicates, pool_size, grid_lo, grid_hi;
  std::optional<std::uint64_t> seed;
};

std::string default_engine(const std::string& family) {
  if (family == "beta1" || family == "beta2") return "enum";
  if (family == "linreg") return "mc";
  return "closed-form";
}

json scenario_doc(const EstimateFlags& f) {
  const std::string engine = f.engine.empty() ? default_engine(f.family) : f.engine;
  json doc = {{"id", "estimate"}, {"family", f.family}, {"engine", engine}};
  const bool stochastic = engine == "mc" || engine == "bootstrap";
  json config = {{"bayes_n", f.n}};
  if (stochastic) {
    config["seed"] = resolve_seed(f.seed);
    config["replicates"] = f.replicates.value_or(1);
    if (f.draws) config["bootstrap_count"] = *f.draws;
    config["pool_size"] = f.pool_size.value_or(std::max<Count>(5000, f.n));
  }
  if (f.grid_lo || f.grid_hi) {
    json grid = json::object();
    if (f.grid_lo) grid["lo"] = *f.grid_lo;
    if (f.grid_hi) grid["hi"] = *f.grid_hi;
    config["grid"] = grid;
  }
  doc["config"] = config;

  if (f.family == "normal") {
    json prior = {{"m", f.m.value_or(1.0)}, {"delta", f.delta.value_or(0.0)}};
    if (f.sigma) prior["sigma"] = *f.sigma;
    doc["prior"] = prior;
    doc["truth"] = {{"mu", f.mu_true.value_or(0.0)}, {"sigma", f.sigma.value_or(1.0)}};
    doc["direction"] = f.direction.empty() ? "null" : f.direction;
  } else if (f.family == "beta1" || f.family == "beta") {
    require(!f.prior.empty(), "--prior", "is required for beta1 (e.g. --prior 7,3)");
    require(f.theta.has_value(), "--theta", "is required for beta1");
    const auto ab = parse_pair(f.prior, "--prior");
    doc["prior"] = {{"a", ab[0]}, {"b", ab[1]}};
    doc["truth"] = {{"theta", *f.theta}};
    doc["null_boundary"] = f.theta0.value_or(*f.theta);
    doc["direction"] = f.direction.empty() ? "null" : f.direction;
  } else if (f.family == "beta2") {
    require(!f.prior1.empty() && !f.prior2.empty(), "--prior1/--prior2", "are required for beta2");
    require(f.theta1.has_value() && f.theta2.has_value(), "--theta1/--theta2",
            "are required for beta2");
    const auto p1 = parse_pair(f.prior1, "--prior1");
    const auto p2 = parse_pair(f.prior2, "--prior2");
    doc["prior"] = {{"a", p1[0]}, {"b", p1[1]}};
    doc["prior2"] = {{"a", p2[0]}, {"b", p2[1]}};
    doc["truth"] = {{"theta1", *f.theta1}, {"theta2", *f.theta2}};
    const bool equal = *f.theta1 == *f.theta2;
    doc["direction"] = f.direction.empty() ? (equal ? "null" : "alternative") : f.direction;
  } else if (f.family == "linreg") {
    json prior = {{"mu", f.mu.value_or(0.0)}};
    if (f.var1) prior["var1"] = *f.var1;
    else prior["m"] = f.m.value_or(1.0);
    doc["prior"] = prior;
    doc["truth"] = {{"mu1", f.mu1.value_or(0.0)},
                    {"mu2", f.mu2.value_or(0.0)},
                    {"sigma", f.sigma.value_or(1.0)}};
    const bool equal = f.mu1.value_or(0.0) == f.mu2.value_or(0.0);
    doc["direction"] = f.direction.empty() ? (equal ? "null" : "alternative") : f.direction;
  } else {
    fail(ErrorCode::InvalidArgument,
         "--family must be normal, beta1, beta2 or linreg; got '" + f.family + "'");
  }
  return doc;
}

int cmd_estimate(const EstimateFlags& f) {
  const Scenario s = scenario_from_json(scenario_doc(f));
  const PointResult r = run_point(s);
  json out = estimate_json(r.first);
  out["family"] = std::string(to_string(s.family));
  out["engine"] = std::string(to_string(s.engine));
  if (s.engine == Engine::MonteCarlo || s.engine == Engine::Bootstrap) {
    out["replicates"] = {{"mean_ess", r.ess},
                         {"sd_ess", r.sd},
                         {"n_failed", r.n_failed},
                         {"per_replicate", r.per_replicate}};
    out["seed"] = s.config.seed;
  }
  if (s.family == Family::NormalOneSample) {
    out["closed_form_ess"] = closed_form_ess_normal(std::get<NormalPrior>(s.priors[0]), f.n);
  }
  std::cout << out.dump(2) << '\n';
  if (r.first.at_boundary()) {
    std::cerr << "minimizer at grid boundary [" << r.first.diagnostics.at("grid_lo") << ", "
              << r.first.diagnostics.at("grid_hi") << "]; widen --grid-lo/--grid-hi\n";
    return kExitBoundary;
  }
  return kExitOk;
}

// --- simulate --------------------------------------------------------------

RunOverrides overrides_from_json(const json& j) {
  require(j.is_object(), "overrides", "must be a JSON object");
  RunOverrides o;
  for (const auto& [key, value] : j.items()) {
    require(value.is_number_integer() || value.is_number_unsigned(), "overrides." + key,
            "must be an integer");
    if (key == "replicates") o.replicates = value.get<Count>();
    else if (key == "bootstrap_count") o.bootstrap_count = value.get<Count>();
    else if (key == "pool_size") o.pool_size = value.get<Count>();
    else if (key == "seed") o.seed = value.get<std::uint64_t>();
    else fail(ErrorCode::InvalidArgument, "overrides: unknown key '" + key + "'");
  }
  if (o.replicates) require(*o.replicates >= 1, "overrides.replicates", "must be >= 1");
  if (o.bootstrap_count) require(*o.bootstrap_count >= 2, "overrides.bootstrap_count", "must be >= 2");
  if (o.pool_size) require(*o.pool_size >= 100, "overrides.pool_size", "must be >= bayes_n (100)");
  return o;
}

void log_progress(const std::string& msg) { std::cerr << "[esslab] " << msg << '\n'; }

int cmd_simulate(const std::string& config_path, const std::string& out) {
  std::ifstream in(config_path);
  if (!in) fail(ErrorCode::InvalidArgument, "cannot open config " + config_path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::ParseError, config_path + ": " + e.what());
  }

  Table table;
  if (doc.is_object() && doc.contains("scenario")) {
    for (const auto& [key, _] : doc.items()) {
      if (key != "scenario" && key != "overrides") {
        fail(ErrorCode::InvalidArgument, "config: unknown key '" + key + "'");
      }
    }
    require(doc.at("scenario").is_string(), "scenario", "must be a registered scenario id");
    RunOverrides o = doc.contains("overrides") ? overrides_from_json(doc.at("overrides"))
                                               : RunOverrides{};
    o.progress = log_progress;
    const std::string id = doc.at("scenario").get<std::string>();
    if (!has_scenario(id)) fail(ErrorCode::UnknownScenario, "unknown scenario '" + id + "'");
    table = run_scenario(id, o);
  } else {
    const Scenario s = scenario_from_json(doc);
    log_progress("running " + s.id);
    if (s.sweep) {
      table = run_sweep(s);
    } else {
      const PointResult r = run_point(s);
      table = Table({"ess_pvalue", "ess_continuous", "sd", "n_failed"});
      table.add_row({r.ess, r.first.ess_continuous(), r.sd, static_cast<double>(r.n_failed)});
      table.metadata() = {{"scenario", scenario_to_json(s)}};
    }
  }

  if (out.empty() || out == "-") {
    table.write_csv(std::cout);
  } else {
    write_table_files(table, out);
    log_progress("wrote " + out);
  }
  return kExitOk;
}

// --- reproduce -------------------------------------------------------------

int cmd_reproduce(bool all, const std::vector<std::string>& ids, const std::string& out_dir,
                  const RunOverrides& base) {
  std::vector<std::string> todo;
  if (all) {
    for (const auto& info : list_scenarios()) todo.push_back(info.id);
  } else {
    require(!ids.empty(), "--id", "give at least one scenario id, or --all");
    for (const auto& id : ids) {
      if (!has_scenario(id)) fail(ErrorCode::UnknownScenario, "unknown scenario '" + id + "'");
      todo.push_back(id);
    }
  }
  RunOverrides o = base;
  o.progress = log_progress;
  if (!o.seed) std::cerr << "seed: registered defaults\n";

  fs::create_directories(out_dir);
  json manifest = {{"scenarios", json::array()}};
  for (const auto& id : todo) {
    const auto t0 = std::chrono::steady_clock::now();
    const Table table = run_scenario(id, o);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_table_files(table, fs::path(out_dir) / (id + ".csv"));
    log_progress(id + " done in " + Table::format(secs) + " s");
    manifest["scenarios"].push_back({{"id", id},
                                     {"csv", id + ".csv"},
                                     {"metadata", id + ".json"},
                                     {"rows", table.row_count()},
                                     {"seconds", secs}});
  }
  manifest["threads"] = parallel::max_threads();
  std::ofstream(fs::path(out_dir) / "manifest.json") << manifest.dump(2) << '\n';
  std::cout << manifest.dump(2) << '\n';
  return kExitOk;
}

// --- audit / synth ---------------------------------------------------------

int cmd_audit(const std::string& data_path, AuditRequest req, const std::string& prior,
              std::optional<std::uint64_t> seed) {
  const auto mv = parse_pair(prior, "--prior");
  req.prior = {mv[0], mv[1]};
  req.config.seed = resolve_seed(seed);
  const Table data = Table::read_csv_file(data_path);
  const AuditReport report = prior_audit(data, req);
  json out = report.to_json();
  out["seed"] = req.config.seed;
  out["prior"] = {{"mu", req.prior.mu}, {"var1", req.prior.var1}};
  std::cout << out.dump(2) << '\n';
  return report.estimate.at_boundary() ? kExitBoundary : kExitOk;
}

int cmd_synth(const SyntheticEqtlConfig& config, const std::string& out) {
  const Table t = generate_synthetic_eqtl(config);
  if (out.empty() || out == "-") {
    t.write_csv(std::cout);
  } else {
    write_table_files(t, out);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  parallel::apply_thread_env();

  CLI::App app{"esslab: effective sample size of Bayesian priors"};
  app.require_subcommand(1);

  EstimateFlags ef;
  auto* est = app.add_subcommand("estimate", "ESS of a single prior");
  est->add_option("--family", ef.family, "normal | beta1 | beta2 | linreg");
  est->add_option("--engine", ef.engine, "closed-form | enum | mc | bootstrap (default by family)");
  est->add_option("--direction", ef.direction, "null | alternative");
  est->add_option("--m", ef.m, "prior strength (normal, linreg)");
  est->add_option("--delta", ef.delta, "normal prior mean");
  est->add_option("--sigma", ef.sigma, "known data SD");
  est->add_option("--mu-true", ef.mu_true, "true normal mean");
  est->add_option("--prior", ef.prior, "beta1 prior a,b");
  est->add_option("--prior1", ef.prior1, "beta2 prior for group 1, a,b");
  est->add_option("--prior2", ef.prior2, "beta2 prior for group 2, a,b");
  est->add_option("--theta", ef.theta, "beta1 true success probability");
  est->add_option("--theta0", ef.theta0, "beta1 null value (default: --theta)");
  est->add_option("--theta1", ef.theta1, "beta2 group 1 probability");
  est->add_option("--theta2", ef.theta2, "beta2 group 2 probability");
  est->add_option("--mu", ef.mu, "linreg slope prior mean");
  est->add_option("--var1", ef.var1, "linreg slope prior variance (overrides --m)");
  est->add_option("--mu1", ef.mu1, "linreg group 1 mean");
  est->add_option("--mu2", ef.mu2, "linreg group 2 mean");
  est->add_option("--n", ef.n, "Bayesian sample size");
  est->add_option("--draws", ef.draws, "Monte Carlo draws or bootstrap resamples");
  est->add_option("--replicates", ef.replicates, "replicates for mc/bootstrap (default 1)");
  est->add_option("--pool-size", ef.pool_size, "bootstrap pool size");
  est->add_option("--seed", ef.seed, "random seed");
  est->add_option("--grid-lo", ef.grid_lo, "lowest n-tilde searched");
  est->add_option("--grid-hi", ef.grid_hi, "highest n-tilde searched");

  std::string sim_config, sim_out;
  auto* sim = app.add_subcommand("simulate", "run a scenario or sweep from a JSON config");
  sim->add_option("config", sim_config, "scenario JSON")->required();
  sim->add_option("--out", sim_out, "CSV path (a JSON sidecar is written next to it)");

  bool rep_all = false;
  std::vector<std::string> rep_ids;
  std::string rep_out = "results";
  RunOverrides rep_over;
  bool rep_list = false;
  auto* rep = app.add_subcommand("reproduce", "regenerate registered figures and tables");
  rep->add_flag("--all", rep_all, "every registered scenario");
  rep->add_option("--id", rep_ids, "scenario id (repeatable)");
  rep->add_flag("--list", rep_list, "print the registry and exit");
  rep->add_option("--out", rep_out, "output directory");
  rep->add_option("--replicates", rep_over.replicates, "override replicate count");
  rep->add_option("--bootstrap-count", rep_over.bootstrap_count, "override resample count");
  rep->add_option("--pool-size", rep_over.pool_size, "override pool size");
  rep->add_option("--seed", rep_over.seed, "override seed");

  AuditRequest areq;
  std::string audit_data, audit_prior, audit_direction = "alternative";
  std::optional<std::uint64_t> audit_seed;
  auto* aud = app.add_subcommand("audit", "ESS of a slope prior against a CSV data set");
  aud->add_option("--data", audit_data, "CSV file")->required();
  aud->add_option("--response", areq.response_column, "response column")->required();
  aud->add_option("--covariate", areq.covariate_column, "covariate column")->required();
  aud->add_option("--prior", audit_prior, "slope prior mean,variance")->required();
  aud->add_option("--n", areq.bayes_n, "Bayesian sample size");
  aud->add_option("--bootstrap-count", areq.config.bootstrap_count, "bootstrap resamples");
  aud->add_option("--direction", audit_direction, "null | alternative");
  aud->add_option("--seed", audit_seed, "random seed");

  SyntheticEqtlConfig sc;
  std::string synth_out;
  auto* syn = app.add_subcommand("synth", "generate a synthetic genotype/expression CSV");
  syn->add_option("--samples", sc.samples, "rows");
  syn->add_option("--beta", sc.beta, "true slope");
  syn->add_option("--maf", sc.allele_frequency, "minor allele frequency");
  syn->add_option("--noise-sd", sc.noise_sd, "residual SD");
  syn->add_option("--seed", sc.seed, "random seed");
  syn->add_flag("!--no-exact", sc.exact_effect, "do not force the fitted slope to --beta");
  syn->add_option("--out", synth_out, "CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*est) return cmd_estimate(ef);
    if (*sim) return cmd_simulate(sim_config, sim_out);
    if (*rep) {
      if (rep_list) {
        json list = json::array();
        for (const auto& info : list_scenarios()) {
          list.push_back({{"id", info.id},
                          {"description", info.description},
                          {"engine", std::string(to_string(info.engine))}});
        }
        std::cout << list.dump(2) << '\n';
        return kExitOk;
      }
      return cmd_reproduce(rep_all, rep_ids, rep_out, rep_over);
    }
    if (*aud) {
      areq.direction = parse_direction(audit_direction);
      return cmd_audit(audit_data, areq, audit_prior, audit_seed);
    }
    if (*syn) return cmd_synth(sc, synth_out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::MinimizerAtBoundary ? kExitBoundary : kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitOk;
}
