#pragma once

#include "esslab/core.hpp"

namespace esslab {

// mu ~ N(delta, sigma^2 / m); sigma is the known likelihood SD.
struct NormalPrior {
  double delta = 0.0;
  double m = 1.0;
  double sigma = 1.0;

  void validate() const;
};

struct NormalTruth {
  double mu_true = 0.0;
  double sigma = 1.0;

  void validate() const;
};

struct NormalPosterior {
  double mean = 0.0;
  double variance = 1.0;
};

NormalPosterior posterior_normal(const NormalPrior& prior, double sum_x, Count n);

double z_bayes_normal(const NormalPrior& prior, double sum_x, Count n);

// sqrt(n_tilde) * xbar / sigma with xbar held at its observed value.
double z_freq_normal(double xbar_fixed, double sigma, Count n_tilde);

ConcordanceProfile exact_profile_normal(const NormalPrior& prior, const NormalTruth& truth,
                                        Count n);

// m n (1 - m (delta/sigma)^2) / (m + n); valid for a truth centred at zero.
double closed_form_ess_normal(const NormalPrior& prior, Count n);

// Continuous root of the distance curve for a truth centred at zero:
// n (n + m^2 delta^2 / sigma^2) / (m + n).
double closed_form_n_tilde_normal(const NormalPrior& prior, Count n);

}  // namespace esslab
