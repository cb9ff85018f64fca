#include <doctest.h>

#include <cmath>
#include <limits>

#include "esslab/error.hpp"
#include "esslab/families.hpp"
#include "esslab/linreg.hpp"
#include "esslab/normal.hpp"

using namespace esslab;

TEST_SUITE("linreg") {

TEST_CASE("least-squares slope for the 0/1 design") {
  CHECK(lse_slope({{1, 2, 3}, {2, 2, 2}, 1.0}).beta1_hat == doctest::Approx(0.0));
  const SlopeEstimate e = lse_slope({{-0.1, 0.1}, {0.2, 0.4}, 1.0});
  CHECK(e.beta1_hat == doctest::Approx(0.3));
  CHECK(e.var_hat == doctest::Approx(1.0));
  CHECK(lse_slope({{1.5}, {4.0}, 1.0}).beta1_hat == doctest::Approx(2.5));
  CHECK_THROWS_AS(lse_slope({{}, {1.0}, 1.0}), Error);
}

TEST_CASE("frequentist z") {
  CHECK(z_freq_linreg(0.0, 0.5, 1.0, 100) == doctest::Approx(0.0));
  CHECK(z_freq_linreg(0.3, 0.5, 1.0, 100) == doctest::Approx(2.121).epsilon(1e-3));
  CHECK(z_freq_linreg(0.3, 0.5, 1.0, 25) == doctest::Approx(1.061).epsilon(1e-3));
}

TEST_CASE("slope posterior") {
  const NormalPosterior none = posterior_slope({0.2, 0.7}, 0.0, 0.0, 1.0);
  CHECK(none.mean == doctest::Approx(0.2));
  CHECK(none.variance == doctest::Approx(0.7));

  const NormalPosterior p = posterior_slope({0.0, 1.0}, 15.0, 50.0, 1.0);
  CHECK(p.mean == doctest::Approx(0.2941).epsilon(1e-4));
  CHECK(p.variance == doctest::Approx(0.01961).epsilon(1e-3));

  const NormalPosterior flat =
      posterior_slope({0.4, std::numeric_limits<double>::infinity()}, 15.0, 50.0, 1.0);
  CHECK(flat.mean == doctest::Approx(0.3));
  CHECK(flat.variance == doctest::Approx(0.02));
}

TEST_CASE("Bayesian z") {
  CHECK(z_bayes_linreg({0.0, 1.0}, 0.0, 50.0, 1.0) == doctest::Approx(0.0));
  CHECK(z_bayes_linreg({0.0, 1.0}, 15.0, 50.0, 1.0) == doctest::Approx(2.100).epsilon(1e-3));
  CHECK(z_bayes_linreg({0.5, 1.0 / 12.0}, 15.0, 50.0, 1.0) == doctest::Approx(2.667).epsilon(1e-3));
}

TEST_CASE("flat prior reproduces the frequentist z at n_tilde = n") {
  const TwoGroupData d{{0.1, -0.3, 0.4, 0.0}, {0.9, 0.2, 0.5, 0.7}, 1.3};
  const SlopeSufficient s = two_group_sufficient(d);
  const double zf = z_freq_linreg(s.sxy / s.sxx, s.sxx / static_cast<double>(s.n), d.sigma, s.n);
  double last = 1e9;
  for (double v : {1.0, 100.0, 1e4, 1e8}) {
    const double gap = std::fabs(z_bayes_linreg({0.8, v}, s.sxy, s.sxx, d.sigma) - zf);
    CHECK(gap <= last);
    last = gap;
  }
  CHECK(last < 1e-6);
}

TEST_CASE("prior strength mapping") {
  const SlopePrior p = SlopePrior::from_strength(0.5, 2.0, 8.0);
  CHECK(p.var1 == doctest::Approx(0.5));
  CHECK_THROWS_AS(SlopePrior({0.0, 0.0}).validate(), Error);
}

TEST_CASE("degenerate first group reduces to the one-sample normal model") {
  // Group 1 fixed at zero: the slope posterior is the normal posterior on
  // group 2 alone with m = sigma^2 / var1.
  const std::vector<double> g1(40, 0.0);
  const std::vector<double> g2 = {0.3, -0.2, 1.1, 0.5, 0.05, -0.7, 0.9, 0.2};
  double sum2 = 0;
  for (double v : g2) sum2 += v;
  const double m = 6.0, mu = 0.4;
  const StatisticFn stat = two_group_statistic(SlopePrior::from_strength(mu, 1.0, m), 1.0);
  const GroupView views[] = {{g1, 1}, {g2, 1}};
  const DrawStats d = stat(views);
  CHECK(d.z_bayes ==
        doctest::Approx(z_bayes_normal({mu, m, 1.0}, sum2, static_cast<Count>(g2.size()))));
}

}
