#pragma once

// Statistic callbacks and truth samplers that plug each model family into
// the Monte Carlo engine.

#include "esslab/beta.hpp"
#include "esslab/linreg.hpp"
#include "esslab/montecarlo.hpp"
#include "esslab/normal.hpp"

namespace esslab {

struct TwoGroupNormalTruth {
  double mu1 = 0.0;
  double mu2 = 0.0;
  double sigma = 1.0;

  void validate() const;
};

StatisticFn normal_statistic(const NormalPrior& prior);
StatisticFn beta_one_statistic(const BetaPrior& prior, double theta0);
// Applies the proportion clamp before the frequentist variance plug-in.
StatisticFn beta_two_statistic(const BetaPrior& prior1, const BetaPrior& prior2);
StatisticFn two_group_statistic(const SlopePrior& prior, double sigma);
// One group of (x, y) rows; the intercept is profiled out by centring.
// Resamples with a constant covariate are degenerate.
StatisticFn regression_statistic(const SlopePrior& prior, double sigma);

// Fills every group with draws from the truth.
SamplerFn normal_sampler(const NormalTruth& truth);
SamplerFn bernoulli_sampler(const BernoulliTruth& truth);
// Group 0 ~ Bernoulli(theta1), group 1 ~ Bernoulli(theta2).
SamplerFn bernoulli_pair_sampler(const BernoulliPairTruth& truth);
SamplerFn two_group_normal_sampler(const TwoGroupNormalTruth& truth);

// Bootstrap scenarios under RunConfig. One-sample families pool pool_size
// draws and resample bayes_n. The two-sample beta family keeps a pool of
// pool_size per group and resamples bayes_n per group. The two-group
// regression splits both pool_size and bayes_n evenly across groups.
BootstrapScenario normal_bootstrap(const NormalPrior& prior, const NormalTruth& truth,
                                   const RunConfig& config, SupportDirection direction);
BootstrapScenario beta_one_bootstrap(const BetaPrior& prior, const BernoulliTruth& truth,
                                     double theta0, const RunConfig& config,
                                     SupportDirection direction);
BootstrapScenario beta_two_bootstrap(const BetaPrior& prior1, const BetaPrior& prior2,
                                     const BernoulliPairTruth& truth, const RunConfig& config,
                                     SupportDirection direction);
BootstrapScenario two_group_bootstrap(const SlopePrior& prior, const TwoGroupNormalTruth& truth,
                                      const RunConfig& config, SupportDirection direction);

}  // namespace esslab
