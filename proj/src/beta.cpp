#include "esslab/beta.hpp"

#include <algorithm>
#include <boost/math/distributions/binomial.hpp>
#include <cmath>
#include <string>

#include "esslab/error.hpp"
#include "esslab/parallel.hpp"

namespace esslab {

void BetaPrior::validate() const {
  require(std::isfinite(a) && a > 0.0, "prior.a", "must be > 0");
  require(std::isfinite(b) && b > 0.0, "prior.b", "must be > 0");
}

BetaPrior BetaPrior::from_mean_strength(double mean, double strength) {
  require(mean > 0.0 && mean < 1.0, "prior mean", "must lie in (0,1)");
  require(strength > 0.0, "prior strength", "must be > 0");
  return {mean * strength, (1.0 - mean) * strength};
}

void BernoulliTruth::validate() const {
  require(theta > 0.0 && theta < 1.0, "truth.theta", "must lie in (0,1)");
}

void BernoulliPairTruth::validate() const {
  require(theta1 > 0.0 && theta1 < 1.0, "truth.theta1", "must lie in (0,1)");
  require(theta2 > 0.0 && theta2 < 1.0, "truth.theta2", "must lie in (0,1)");
}

PosteriorApprox posterior_approx_beta(const BetaPrior& prior, Count s, Count n) {
  require(n >= 0 && s >= 0 && s <= n, "s", "must satisfy 0 <= s <= n");
  const double a_post = prior.a + static_cast<double>(s);
  const double b_post = prior.b + static_cast<double>(n - s);
  const double total = a_post + b_post;
  return {a_post / total, a_post * b_post / (total * total * (total + 1.0))};
}

double z_bayes_beta_one(const BetaPrior& prior, Count s, Count n, double theta0) {
  const PosteriorApprox post = posterior_approx_beta(prior, s, n);
  return (post.mu_tilde - theta0) / std::sqrt(post.var_tilde);
}

double z_freq_beta_one(double xbar_fixed, double theta0, Count n_tilde) {
  require(theta0 > 0.0 && theta0 < 1.0, "theta0", "must lie in (0,1)");
  require(n_tilde >= 1, "n_tilde", "must be >= 1");
  return (xbar_fixed - theta0) /
         std::sqrt(theta0 * (1.0 - theta0) / static_cast<double>(n_tilde));
}

std::vector<double> binomial_weights(Count n, double theta) {
  const boost::math::binomial_distribution<double> dist(static_cast<double>(n), theta);
  std::vector<double> w(static_cast<std::size_t>(n + 1));
  for (Count s = 0; s <= n; ++s) {
    w[static_cast<std::size_t>(s)] = boost::math::pdf(dist, static_cast<double>(s));
  }
  return w;
}

ConcordanceProfile exact_profile_beta_one(const BetaPrior& prior, const BernoulliTruth& truth,
                                          double theta0, Count n, Count cap) {
  prior.validate();
  truth.validate();
  require(theta0 > 0.0 && theta0 < 1.0, "theta0", "must lie in (0,1)");
  require(n >= 1, "n", "must be >= 1");
  if (n > cap) {
    fail(ErrorCode::EnumerationCapExceeded,
         "n = " + std::to_string(n) + " exceeds one-sample cap " + std::to_string(cap));
  }

  const std::vector<double> w = binomial_weights(n, truth.theta);
  std::vector<double> terms(w.size());
  const Count size = n + 1;
#pragma omp parallel for schedule(static)
  for (Count s = 0; s < size; ++s) {
    const double z = z_bayes_beta_one(prior, s, n, theta0);
    terms[static_cast<std::size_t>(s)] = w[static_cast<std::size_t>(s)] * z * z;
  }

  const double th = truth.theta;
  const double gap = th - theta0;
  ConcordanceProfile profile;
  profile.n = n;
  profile.u_bayes = parallel::ordered_sum(terms);
  profile.kappa =
      (th * (1.0 - th) / static_cast<double>(n) + gap * gap) / (theta0 * (1.0 - theta0));
  return profile;
}

double z_bayes_beta_two(const BetaPrior& prior1, const BetaPrior& prior2, Count s_x, Count s_y,
                        Count n) {
  const PosteriorApprox px = posterior_approx_beta(prior1, s_x, n);
  const PosteriorApprox py = posterior_approx_beta(prior2, s_y, n);
  return (px.mu_tilde - py.mu_tilde) / std::sqrt(px.var_tilde + py.var_tilde);
}

double z_freq_beta_two(double xbar, double ybar, Count n_tilde) {
  require(n_tilde >= 1, "n_tilde", "must be >= 1");
  const double pooled = xbar * (1.0 - xbar) + ybar * (1.0 - ybar);
  if (!(pooled > 0.0)) {
    fail(ErrorCode::DegenerateVariance, "both sample proportions lie on {0,1}");
  }
  return (xbar - ybar) / std::sqrt(pooled / static_cast<double>(n_tilde));
}

std::pair<double, bool> clamp_proportion(double p, Count n) {
  const double lo = 0.5 / static_cast<double>(n);
  const double clamped = std::clamp(p, lo, 1.0 - lo);
  return {clamped, clamped != p};
}

ConcordanceProfile exact_profile_beta_two(const BetaPrior& prior1, const BetaPrior& prior2,
                                          const BernoulliPairTruth& truth, Count n, Count cap) {
  prior1.validate();
  prior2.validate();
  truth.validate();
  require(n >= 1, "n", "must be >= 1");
  if (n > cap) {
    fail(ErrorCode::EnumerationCapExceeded,
         "n = " + std::to_string(n) + " exceeds two-sample cap " + std::to_string(cap));
  }

  const std::vector<double> wx = binomial_weights(n, truth.theta1);
  const std::vector<double> wy = binomial_weights(n, truth.theta2);
  const Count size = n + 1;
  const double nd = static_cast<double>(n);

  std::vector<double> clamped(wx.size());
  for (Count s = 0; s < size; ++s) {
    clamped[static_cast<std::size_t>(s)] = clamp_proportion(static_cast<double>(s) / nd, n).first;
  }

  // Row sums are formed independently, then combined in row order.
  std::vector<double> u_rows(wx.size());
  std::vector<double> k_rows(wx.size());
#pragma omp parallel for schedule(static)
  for (Count sx = 0; sx < size; ++sx) {
    const double px = clamped[static_cast<std::size_t>(sx)];
    double u_row = 0.0;
    double k_row = 0.0;
    for (Count sy = 0; sy < size; ++sy) {
      const double w = wy[static_cast<std::size_t>(sy)];
      const double zb = z_bayes_beta_two(prior1, prior2, sx, sy, n);
      const double zf = z_freq_beta_two(px, clamped[static_cast<std::size_t>(sy)], 1);
      u_row += w * zb * zb;
      k_row += w * zf * zf;
    }
    u_rows[static_cast<std::size_t>(sx)] = wx[static_cast<std::size_t>(sx)] * u_row;
    k_rows[static_cast<std::size_t>(sx)] = wx[static_cast<std::size_t>(sx)] * k_row;
  }

  ConcordanceProfile profile;
  profile.n = n;
  profile.u_bayes = parallel::ordered_sum(u_rows);
  profile.kappa = parallel::ordered_sum(k_rows);
  return profile;
}

}  // namespace esslab
