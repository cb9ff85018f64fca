#include "esslab/audit.hpp"

#include <cmath>
#include <random>

#include "esslab/error.hpp"
#include "esslab/families.hpp"

namespace esslab {

namespace {

struct SimpleFit {
  double beta = 0.0;
  double intercept = 0.0;
  double sxx = 0.0;
  double sigma = 0.0;
};

SimpleFit fit(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  SimpleFit f;
  f.sxx = sxx;
  if (!(sxx > 0.0)) return f;
  f.beta = sxy / sxx;
  f.intercept = my - f.beta * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - f.intercept - f.beta * x[i];
    rss += r * r;
  }
  f.sigma = std::sqrt(rss / std::max(1.0, n - 2.0));
  return f;
}

}  // namespace

void AuditRequest::validate(const Table& data) const {
  data.column_index(response_column);
  data.column_index(covariate_column);
  prior.validate();
  require(bayes_n >= 3, "bayes_n", "must be >= 3");
  require(bayes_n <= static_cast<Count>(data.row_count()), "bayes_n",
          "must not exceed the number of data rows (" + std::to_string(data.row_count()) + ")");
  require(config.bootstrap_count >= 2, "bootstrap_count", "must be >= 2");
}

nlohmann::json AuditReport::to_json() const {
  return {{"ess", estimate.ess},
          {"ess_continuous", estimate.ess_continuous()},
          {"n", estimate.n},
          {"n_tilde_star", estimate.n_tilde_star},
          {"n_tilde_continuous", estimate.n_tilde_continuous},
          {"direction", std::string(to_string(estimate.direction))},
          {"mean_abs_z_bayes", mean_abs_z_bayes},
          {"beta_hat", beta_hat},
          {"sigma_hat", sigma_hat},
          {"z_freq", z_freq},
          {"p_value", p_value},
          {"rows", rows},
          {"diagnostics", estimate.diagnostics}};
}

AuditReport prior_audit(const Table& data, const AuditRequest& request) {
  request.validate(data);
  const std::vector<double> x = data.column(request.covariate_column);
  const std::vector<double> y = data.column(request.response_column);
  for (std::size_t i = 0; i < x.size(); ++i) {
    require(std::isfinite(x[i]) && std::isfinite(y[i]), "data",
            "row " + std::to_string(i + 1) + " has a missing or non-finite value");
  }

  const SimpleFit full = fit(x, y);
  if (!(full.sxx > 0.0)) {
    fail(ErrorCode::DegenerateDesign, "covariate '" + request.covariate_column + "' is constant");
  }
  require(full.sigma > 0.0, "response", "fits the covariate exactly; residual SD is zero");

  DataPool pool(1);
  pool[0].cols = 2;
  pool[0].values.reserve(2 * x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    pool[0].values.push_back(x[i]);
    pool[0].values.push_back(y[i]);
  }

  const Count resample[] = {request.bayes_n};
  const McProfile mc = bootstrap_profile(
      pool, resample, request.bayes_n, request.config.bootstrap_count,
      regression_statistic(request.prior, full.sigma),
      derive_stream(request.config.seed, 0, StreamRole::Bootstrap));

  const GridBounds grid = request.config.grid.value_or(GridBounds::default_for(request.bayes_n));
  AuditReport report;
  report.estimate = estimate_ess(mc.profile, grid, request.direction, EssMethod::Bootstrap);
  report.estimate.diagnostics["draws_used"] = static_cast<double>(mc.draws_used);
  report.estimate.diagnostics["n_degenerate"] = static_cast<double>(mc.n_degenerate);
  report.mean_abs_z_bayes = mc.mean_abs_z_bayes;
  report.beta_hat = full.beta;
  report.sigma_hat = full.sigma;
  report.z_freq = full.beta * std::sqrt(full.sxx) / full.sigma;
  report.p_value = 0.5 * std::erfc(std::abs(report.z_freq) / std::sqrt(2.0));
  report.rows = static_cast<Count>(x.size());
  return report;
}

Table generate_synthetic_eqtl(const SyntheticEqtlConfig& config) {
  require(config.samples >= 3, "samples", "must be >= 3");
  require(config.allele_frequency > 0.0 && config.allele_frequency < 1.0, "allele_frequency",
          "must lie in (0,1)");
  require(config.noise_sd > 0.0, "noise_sd", "must be > 0");

  const auto n = static_cast<std::size_t>(config.samples);
  Xoshiro256 rng = derive_stream(config.seed, 0, StreamRole::Direct).engine();
  std::binomial_distribution<int> genotype(2, config.allele_frequency);
  std::normal_distribution<double> noise(0.0, config.noise_sd);

  std::vector<double> g(n), e(n);
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = genotype(rng);
    e[i] = noise(rng);
  }
  if (config.exact_effect) {
    const SimpleFit f = fit(g, e);
    if (f.sxx > 0.0) {
      double gbar = 0.0;
      for (double v : g) gbar += v;
      gbar /= static_cast<double>(n);
      for (std::size_t i = 0; i < n; ++i) e[i] -= f.beta * (g[i] - gbar);
    }
  }

  Table table({"genotype", "expression"});
  for (std::size_t i = 0; i < n; ++i) table.add_row({g[i], config.beta * g[i] + e[i]});
  table.metadata()["generator"] = "synthetic-eqtl";
  table.metadata()["beta"] = config.beta;
  table.metadata()["allele_frequency"] = config.allele_frequency;
  table.metadata()["noise_sd"] = config.noise_sd;
  table.metadata()["exact_effect"] = config.exact_effect;
  table.metadata()["seed"] = config.seed;
  return table;
}

}  // namespace esslab
