#include "esslab/normal.hpp"

#include <cmath>

#include "esslab/error.hpp"

namespace esslab {

void NormalPrior::validate() const {
  require(std::isfinite(delta), "prior.delta", "must be finite");
  require(std::isfinite(m) && m > 0.0, "prior.m", "must be > 0");
  require(std::isfinite(sigma) && sigma > 0.0, "prior.sigma", "must be > 0");
}

void NormalTruth::validate() const {
  require(std::isfinite(mu_true), "truth.mu", "must be finite");
  require(std::isfinite(sigma) && sigma > 0.0, "truth.sigma", "must be > 0");
}

NormalPosterior posterior_normal(const NormalPrior& prior, double sum_x, Count n) {
  require(n >= 1, "n", "must be >= 1");
  const double precision = prior.m + static_cast<double>(n);
  return {(sum_x + prior.m * prior.delta) / precision, prior.sigma * prior.sigma / precision};
}

double z_bayes_normal(const NormalPrior& prior, double sum_x, Count n) {
  const NormalPosterior post = posterior_normal(prior, sum_x, n);
  return post.mean / std::sqrt(post.variance);
}

double z_freq_normal(double xbar_fixed, double sigma, Count n_tilde) {
  require(n_tilde >= 1, "n_tilde", "must be >= 1");
  return std::sqrt(static_cast<double>(n_tilde)) * xbar_fixed / sigma;
}

ConcordanceProfile exact_profile_normal(const NormalPrior& prior, const NormalTruth& truth,
                                        Count n) {
  prior.validate();
  truth.validate();
  require(n >= 1, "n", "must be >= 1");
  require(prior.sigma == truth.sigma, "truth.sigma", "must equal prior.sigma");

  // Z_B = (S + m delta) / (sigma sqrt(m + n)), S ~ N(n mu, n sigma^2).
  const double nd = static_cast<double>(n);
  const double s2 = truth.sigma * truth.sigma;
  const double shift = nd * truth.mu_true + prior.m * prior.delta;

  ConcordanceProfile profile;
  profile.n = n;
  profile.u_bayes = (nd + shift * shift / s2) / (prior.m + nd);
  profile.kappa = 1.0 / nd + truth.mu_true * truth.mu_true / s2;
  return profile;
}

double closed_form_ess_normal(const NormalPrior& prior, Count n) {
  prior.validate();
  const double nd = static_cast<double>(n);
  const double d = prior.delta / prior.sigma;
  return prior.m * nd * (1.0 - prior.m * d * d) / (prior.m + nd);
}

double closed_form_n_tilde_normal(const NormalPrior& prior, Count n) {
  prior.validate();
  const double nd = static_cast<double>(n);
  const double d = prior.delta / prior.sigma;
  return nd * (nd + prior.m * prior.m * d * d) / (prior.m + nd);
}

}  // namespace esslab
