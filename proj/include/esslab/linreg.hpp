#pragma once

// Two-group mean comparison written as a simple regression on a 0/1 design.

#include <vector>

#include "esslab/core.hpp"
#include "esslab/normal.hpp"

namespace esslab {

struct TwoGroupData {
  std::vector<double> group1;  // x = 0
  std::vector<double> group2;  // x = 1
  double sigma = 1.0;

  void validate() const;
};

// beta1 ~ N(mu, var1).
struct SlopePrior {
  double mu = 0.0;
  double var1 = 1.0;

  void validate() const;
  // var1 = sigma^2 / m, mirroring the normal family's prior strength.
  static SlopePrior from_strength(double mu, double sigma, double m);
};

struct SlopeEstimate {
  double beta1_hat = 0.0;
  double var_hat = 0.0;
};

// Sufficient statistics after the intercept is profiled out: responses are
// centred at the group-1 mean, so sxy = n2 * beta1_hat and sxx = n2.
struct SlopeSufficient {
  double sxy = 0.0;
  double sxx = 0.0;
  Count n = 0;
};

SlopeEstimate lse_slope(const TwoGroupData& data);

SlopeSufficient two_group_sufficient(const TwoGroupData& data);

// beta1_hat * sqrt(n_tilde * sxx_per_n) / sigma: the slope and the design
// proportion stay fixed while the total sample size scales.
double z_freq_linreg(double beta1_hat, double sxx_per_n, double sigma, Count n_tilde);

NormalPosterior posterior_slope(const SlopePrior& prior, double sxy, double sxx, double sigma);

double z_bayes_linreg(const SlopePrior& prior, double sxy, double sxx, double sigma);

}  // namespace esslab
