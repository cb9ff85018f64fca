#include "esslab/linreg.hpp"

#include <cmath>
#include <numeric>

#include "esslab/error.hpp"

namespace esslab {

namespace {

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

void TwoGroupData::validate() const {
  require(!group1.empty(), "group1", "must be nonempty");
  require(!group2.empty(), "group2", "must be nonempty");
  require(std::isfinite(sigma) && sigma > 0.0, "sigma", "must be > 0");
}

void SlopePrior::validate() const {
  require(std::isfinite(mu), "prior.mu", "must be finite");
  require(var1 > 0.0, "prior.var1", "must be > 0");
}

SlopePrior SlopePrior::from_strength(double mu, double sigma, double m) {
  require(m > 0.0, "prior.m", "must be > 0");
  return {mu, sigma * sigma / m};
}

SlopeEstimate lse_slope(const TwoGroupData& data) {
  data.validate();
  const double n1 = static_cast<double>(data.group1.size());
  const double n2 = static_cast<double>(data.group2.size());
  return {mean_of(data.group2) - mean_of(data.group1),
          data.sigma * data.sigma * (1.0 / n1 + 1.0 / n2)};
}

SlopeSufficient two_group_sufficient(const TwoGroupData& data) {
  const SlopeEstimate est = lse_slope(data);
  const double n2 = static_cast<double>(data.group2.size());
  return {n2 * est.beta1_hat, n2, static_cast<Count>(data.group1.size() + data.group2.size())};
}

double z_freq_linreg(double beta1_hat, double sxx_per_n, double sigma, Count n_tilde) {
  require(sxx_per_n > 0.0, "sxx_per_n", "must be > 0");
  require(n_tilde >= 1, "n_tilde", "must be >= 1");
  return beta1_hat * std::sqrt(static_cast<double>(n_tilde) * sxx_per_n) / sigma;
}

NormalPosterior posterior_slope(const SlopePrior& prior, double sxy, double sxx, double sigma) {
  require(sxx >= 0.0, "sxx", "must be >= 0");
  const double s2 = sigma * sigma;
  if (std::isinf(prior.var1)) {
    require(sxx > 0.0, "sxx", "must be > 0 under a flat prior");
    return {sxy / sxx, s2 / sxx};
  }
  const double denom = prior.var1 * sxx + s2;
  return {(prior.var1 * sxy + prior.mu * s2) / denom, s2 * prior.var1 / denom};
}

double z_bayes_linreg(const SlopePrior& prior, double sxy, double sxx, double sigma) {
  const NormalPosterior post = posterior_slope(prior, sxy, sxx, sigma);
  return post.mean / std::sqrt(post.variance);
}

}  // namespace esslab
