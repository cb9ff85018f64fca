#include "esslab/families.hpp"

#include <cmath>
#include <random>

#include "esslab/error.hpp"

namespace esslab {

namespace {

double column_sum(const GroupView& g, std::size_t col = 0) {
  double s = 0.0;
  const std::size_t rows = g.rows();
  for (std::size_t r = 0; r < rows; ++r) s += g(r, col);
  return s;
}

Count as_count(double sum) { return static_cast<Count>(std::llround(sum)); }

}  // namespace

void TwoGroupNormalTruth::validate() const {
  require(std::isfinite(mu1) && std::isfinite(mu2), "truth.mu", "must be finite");
  require(sigma > 0.0, "truth.sigma", "must be > 0");
}

StatisticFn normal_statistic(const NormalPrior& prior) {
  prior.validate();
  return [prior](SampleView sample) {
    const GroupView& g = sample[0];
    const auto n = static_cast<Count>(g.rows());
    const double sum = column_sum(g);
    const double zf = z_freq_normal(sum / static_cast<double>(n), prior.sigma, 1);
    return DrawStats{z_bayes_normal(prior, sum, n), zf * zf};
  };
}

StatisticFn beta_one_statistic(const BetaPrior& prior, double theta0) {
  prior.validate();
  require(theta0 > 0.0 && theta0 < 1.0, "theta0", "must lie in (0,1)");
  return [prior, theta0](SampleView sample) {
    const GroupView& g = sample[0];
    const auto n = static_cast<Count>(g.rows());
    const Count s = as_count(column_sum(g));
    const double zf = z_freq_beta_one(static_cast<double>(s) / static_cast<double>(n), theta0, 1);
    return DrawStats{z_bayes_beta_one(prior, s, n, theta0), zf * zf};
  };
}

StatisticFn beta_two_statistic(const BetaPrior& prior1, const BetaPrior& prior2) {
  prior1.validate();
  prior2.validate();
  return [prior1, prior2](SampleView sample) {
    const auto n = static_cast<Count>(sample[0].rows());
    const Count sx = as_count(column_sum(sample[0]));
    const Count sy = as_count(column_sum(sample[1]));
    const auto [px, cx] = clamp_proportion(static_cast<double>(sx) / static_cast<double>(n), n);
    const auto [py, cy] = clamp_proportion(static_cast<double>(sy) / static_cast<double>(n), n);
    const double zf = z_freq_beta_two(px, py, 1);
    DrawStats st{z_bayes_beta_two(prior1, prior2, sx, sy, n), zf * zf};
    st.clamped = cx || cy;
    return st;
  };
}

StatisticFn two_group_statistic(const SlopePrior& prior, double sigma) {
  prior.validate();
  require(sigma > 0.0, "sigma", "must be > 0");
  return [prior, sigma](SampleView sample) {
    const double n1 = static_cast<double>(sample[0].rows());
    const double n2 = static_cast<double>(sample[1].rows());
    const double beta1 = column_sum(sample[1]) / n2 - column_sum(sample[0]) / n1;
    const double zf = z_freq_linreg(beta1, n2 / (n1 + n2), sigma, 1);
    return DrawStats{z_bayes_linreg(prior, n2 * beta1, n2, sigma), zf * zf};
  };
}

StatisticFn regression_statistic(const SlopePrior& prior, double sigma) {
  prior.validate();
  require(sigma > 0.0, "sigma", "must be > 0");
  return [prior, sigma](SampleView sample) {
    const GroupView& g = sample[0];
    const std::size_t rows = g.rows();
    const double nd = static_cast<double>(rows);
    const double xbar = column_sum(g, 0) / nd;
    const double ybar = column_sum(g, 1) / nd;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
      const double dx = g(r, 0) - xbar;
      sxx += dx * dx;
      sxy += dx * (g(r, 1) - ybar);
    }
    DrawStats st;
    if (!(sxx > 0.0)) {
      st.degenerate = true;
      return st;
    }
    const double zf = z_freq_linreg(sxy / sxx, sxx / nd, sigma, 1);
    st.z_bayes = z_bayes_linreg(prior, sxy, sxx, sigma);
    st.freq_unit = zf * zf;
    return st;
  };
}

SamplerFn normal_sampler(const NormalTruth& truth) {
  truth.validate();
  return [truth](Xoshiro256& rng, std::span<Group> groups) {
    std::normal_distribution<double> dist(truth.mu_true, truth.sigma);
    for (Group& g : groups) {
      for (double& v : g.values) v = dist(rng);
    }
  };
}

SamplerFn bernoulli_sampler(const BernoulliTruth& truth) {
  truth.validate();
  return [truth](Xoshiro256& rng, std::span<Group> groups) {
    for (Group& g : groups) {
      for (double& v : g.values) v = rng.uniform() < truth.theta ? 1.0 : 0.0;
    }
  };
}

SamplerFn bernoulli_pair_sampler(const BernoulliPairTruth& truth) {
  truth.validate();
  return [truth](Xoshiro256& rng, std::span<Group> groups) {
    require(groups.size() == 2, "groups", "two-sample sampler needs two groups");
    for (double& v : groups[0].values) v = rng.uniform() < truth.theta1 ? 1.0 : 0.0;
    for (double& v : groups[1].values) v = rng.uniform() < truth.theta2 ? 1.0 : 0.0;
  };
}

SamplerFn two_group_normal_sampler(const TwoGroupNormalTruth& truth) {
  truth.validate();
  return [truth](Xoshiro256& rng, std::span<Group> groups) {
    require(groups.size() == 2, "groups", "two-group sampler needs two groups");
    std::normal_distribution<double> noise(0.0, truth.sigma);
    for (double& v : groups[0].values) v = truth.mu1 + noise(rng);
    for (double& v : groups[1].values) v = truth.mu2 + noise(rng);
  };
}

BootstrapScenario normal_bootstrap(const NormalPrior& prior, const NormalTruth& truth,
                                   const RunConfig& config, SupportDirection direction) {
  require(prior.sigma == truth.sigma, "truth.sigma", "must equal prior.sigma");
  return {normal_statistic(prior), normal_sampler(truth), {{config.pool_size, 1}},
          {config.bayes_n}, config.bayes_n, direction};
}

BootstrapScenario beta_one_bootstrap(const BetaPrior& prior, const BernoulliTruth& truth,
                                     double theta0, const RunConfig& config,
                                     SupportDirection direction) {
  return {beta_one_statistic(prior, theta0), bernoulli_sampler(truth), {{config.pool_size, 1}},
          {config.bayes_n}, config.bayes_n, direction};
}

BootstrapScenario beta_two_bootstrap(const BetaPrior& prior1, const BetaPrior& prior2,
                                     const BernoulliPairTruth& truth, const RunConfig& config,
                                     SupportDirection direction) {
  return {beta_two_statistic(prior1, prior2),
          bernoulli_pair_sampler(truth),
          {{config.pool_size, 1}, {config.pool_size, 1}},
          {config.bayes_n, config.bayes_n},
          config.bayes_n,
          direction};
}

BootstrapScenario two_group_bootstrap(const SlopePrior& prior, const TwoGroupNormalTruth& truth,
                                      const RunConfig& config, SupportDirection direction) {
  require(config.bayes_n >= 2, "bayes_n", "must be >= 2 for two groups");
  require(config.pool_size >= 2, "pool_size", "must be >= 2 for two groups");
  const Count n1 = config.bayes_n / 2;
  const Count n2 = config.bayes_n - n1;
  const Count p1 = config.pool_size / 2;
  const Count p2 = config.pool_size - p1;
  return {two_group_statistic(prior, truth.sigma),
          two_group_normal_sampler(truth),
          {{p1, 1}, {p2, 1}},
          {n1, n2},
          config.bayes_n,
          direction};
}

}  // namespace esslab
