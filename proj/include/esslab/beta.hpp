#pragma once

#include <utility>
#include <vector>

#include "esslab/core.hpp"

namespace esslab {

struct BetaPrior {
  double a = 1.0;
  double b = 1.0;

  void validate() const;
  double mean() const { return a / (a + b); }
  double strength() const { return a + b; }
  // Prior with the given mean and strength a + b.
  static BetaPrior from_mean_strength(double mean, double strength);
};

struct BernoulliTruth {
  double theta = 0.5;
  void validate() const;
};

struct BernoulliPairTruth {
  double theta1 = 0.5;
  double theta2 = 0.5;
  void validate() const;
};

// Normal approximation to Beta(a + s, b + n - s). Its two moments are the
// exact Beta posterior moments.
struct PosteriorApprox {
  double mu_tilde = 0.5;
  double var_tilde = 0.0;
};

inline constexpr Count kOneSampleEnumerationCap = 2000;
inline constexpr Count kTwoSampleEnumerationCap = 400;

PosteriorApprox posterior_approx_beta(const BetaPrior& prior, Count s, Count n);

// Posterior z-score centred at the null boundary theta0.
double z_bayes_beta_one(const BetaPrior& prior, Count s, Count n, double theta0);

double z_freq_beta_one(double xbar_fixed, double theta0, Count n_tilde);

ConcordanceProfile exact_profile_beta_one(const BetaPrior& prior, const BernoulliTruth& truth,
                                          double theta0, Count n,
                                          Count cap = kOneSampleEnumerationCap);

double z_bayes_beta_two(const BetaPrior& prior1, const BetaPrior& prior2, Count s_x, Count s_y,
                        Count n);

// Throws DegenerateVariance when both proportions sit on {0, 1}; callers
// clamp with clamp_proportion first.
double z_freq_beta_two(double xbar, double ybar, Count n_tilde);

// Clamps a sample proportion into [1/(2n), 1 - 1/(2n)]. second is true when
// the value moved.
std::pair<double, bool> clamp_proportion(double p, Count n);

ConcordanceProfile exact_profile_beta_two(const BetaPrior& prior1, const BetaPrior& prior2,
                                          const BernoulliPairTruth& truth, Count n,
                                          Count cap = kTwoSampleEnumerationCap);

// Binomial(n, theta) probabilities for s = 0..n.
std::vector<double> binomial_weights(Count n, double theta);

}  // namespace esslab
