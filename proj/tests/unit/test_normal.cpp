#include <doctest.h>

#include <cmath>

#include "esslab/error.hpp"
#include "esslab/normal.hpp"
#include "oracles.hpp"

using namespace esslab;

TEST_SUITE("normal") {

TEST_CASE("posterior substitution") {
  const NormalPosterior zero = posterior_normal({0.0, 20.0, 1.0}, 0.0, 100);
  CHECK(zero.mean == doctest::Approx(0.0));
  CHECK(zero.variance == doctest::Approx(1.0 / 120.0));

  const NormalPosterior p = posterior_normal({0.5, 10.0, 1.0}, 30.0, 90);
  CHECK(p.mean == doctest::Approx(0.35));
  CHECK(p.variance == doctest::Approx(0.01));

  const NormalPosterior flat = posterior_normal({3.0, 1e-12, 1.0}, 7.0, 10);
  CHECK(flat.mean == doctest::Approx(0.7));
  CHECK(flat.variance == doctest::Approx(0.1));
}

TEST_CASE("Bayesian and frequentist z") {
  CHECK(z_bayes_normal({0.0, 20.0, 1.0}, 0.0, 100) == doctest::Approx(0.0));
  CHECK(z_bayes_normal({0.0, 20.0, 1.0}, 11.0, 100) == doctest::Approx(1.0042).epsilon(1e-4));
  CHECK(z_bayes_normal({0.5, 20.0, 1.0}, 0.0, 100) == doctest::Approx(0.9129).epsilon(1e-4));
  CHECK(z_freq_normal(0.0, 1.0, 100) == doctest::Approx(0.0));
  CHECK(z_freq_normal(0.1, 1.0, 100) == doctest::Approx(1.0));
  CHECK(z_freq_normal(0.1, 1.0, 400) == doctest::Approx(2.0));
}

TEST_CASE("exact profile against the oracle") {
  const auto check = [](double delta, double m, double mu, double sigma, Count n) {
    const ConcordanceProfile p = exact_profile_normal({delta, m, sigma}, {mu, sigma}, n);
    const oracle::Profile o = oracle::normal(delta, m, mu, sigma, n);
    CHECK(p.u_bayes == doctest::Approx(static_cast<double>(o.u)).epsilon(1e-12));
    CHECK(p.kappa == doctest::Approx(static_cast<double>(o.kappa)).epsilon(1e-12));
  };
  check(0.0, 20.0, 0.0, 1.0, 100);
  check(0.1, 20.0, 0.0, 1.0, 100);
  check(0.5, 7.0, 0.2, 2.0, 60);
  const ConcordanceProfile p = exact_profile_normal({0.0, 20.0, 1.0}, {0.0, 1.0}, 100);
  CHECK(p.u_bayes == doctest::Approx(100.0 / 120.0));
  CHECK(p.kappa == doctest::Approx(0.01));
  CHECK(exact_profile_normal({0.1, 20.0, 1.0}, {0.0, 1.0}, 100).u_bayes ==
        doctest::Approx(104.0 / 120.0));
}

TEST_CASE("shift moment identity holds by simulation") {
  // E(sum X + m delta)^2 = n sigma^2 + (n mu + m delta)^2.
  const double mc = oracle::normal_shift_moment_mc(0.3, 12.0, 0.1, 1.5, 50, 400000, 7);
  const double exact = 50 * 2.25 + std::pow(50 * 0.1 + 12 * 0.3, 2);
  CHECK(mc == doctest::Approx(exact).epsilon(0.01));
}

TEST_CASE("closed forms") {
  CHECK(closed_form_ess_normal({0.0, 20.0, 1.0}, 100) == doctest::Approx(16.6667).epsilon(1e-4));
  CHECK(closed_form_ess_normal({0.1, 20.0, 1.0}, 100) == doctest::Approx(13.3333).epsilon(1e-4));
  CHECK(closed_form_ess_normal({0.5, 20.0, 1.0}, 100) == doctest::Approx(-66.6667).epsilon(1e-4));
  CHECK(closed_form_n_tilde_normal({0.0, 20.0, 1.0}, 100) == doctest::Approx(83.3333).epsilon(1e-4));
}

TEST_CASE("grid ESS is the rounded closed form for m = 1..50") {
  for (double delta : {0.0, 0.1, 0.5}) {
    for (int m = 1; m <= 50; ++m) {
      const NormalPrior prior{delta, static_cast<double>(m), 1.0};
      const EssEstimate e = estimate_ess(exact_profile_normal(prior, {0.0, 1.0}, 100),
                                         GridBounds::default_for(100),
                                         SupportDirection::SupportsNull, EssMethod::ClosedForm);
      CHECK(e.ess == static_cast<Count>(std::lround(closed_form_ess_normal(prior, 100))));
    }
  }
}

TEST_CASE("flat prior gives ESS zero") {
  const EssEstimate e = estimate_ess(exact_profile_normal({2.0, 1e-6, 1.0}, {0.0, 1.0}, 100),
                                     {1, 2000}, SupportDirection::SupportsNull,
                                     EssMethod::ClosedForm);
  CHECK(e.ess == 0);
}

TEST_CASE("scale invariance in sigma") {
  for (double sigma : {0.5, 1.0, 3.0}) {
    const ConcordanceProfile p =
        exact_profile_normal({0.2 * sigma, 15.0, sigma}, {0.0, sigma}, 100);
    CHECK(p.u_bayes == doctest::Approx(exact_profile_normal({0.2, 15.0, 1.0}, {0.0, 1.0}, 100).u_bayes));
  }
}

TEST_CASE("invalid inputs") {
  CHECK_THROWS_AS(NormalPrior({0.0, 0.0, 1.0}).validate(), Error);
  CHECK_THROWS_AS(NormalPrior({0.0, 1.0, -1.0}).validate(), Error);
  CHECK_THROWS_AS(exact_profile_normal({0.0, 1.0, 1.0}, {0.0, 2.0}, 100), Error);
  CHECK_THROWS_AS(exact_profile_normal({0.0, 1.0, 1.0}, {0.0, 1.0}, 0), Error);
}

}
