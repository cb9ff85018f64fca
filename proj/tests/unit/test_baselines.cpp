#include <doctest.h>

#include <cmath>

#include "esslab/baselines.hpp"
#include "esslab/error.hpp"

using namespace esslab;

TEST_SUITE("baselines") {

TEST_CASE("Morita equals the prior strength and ignores deviation") {
  CHECK(morita_ess(NormalPrior{0.0, 12.0, 1.0}).ess == 12.0);
  CHECK(morita_ess(NormalPrior{0.5, 12.0, 1.0}).ess == 12.0);
  CHECK(morita_ess(BetaPrior{4, 6}).ess == 10.0);
  CHECK(morita_ess(BetaPrior{0.4, 0.6}).ess == doctest::Approx(1.0));
  CHECK_THROWS_AS(morita_ess(SlopePrior{0.0, 1.0}), Error);
}

TEST_CASE("exact Reimherr matching for the normal family") {
  // MSE(target) = (n + m^2 delta^2) / (m + n)^2 and MSE(flat, k) = 1 / k.
  const auto expected = [](double m, double delta, double n) {
    return (m + n) * (m + n) / (n + m * m * delta * delta) - n;
  };
  for (double m : {1.0, 6.0, 12.0, 30.0}) {
    for (double delta : {0.0, 0.1}) {
      const BaselineResult r = reimherr_mse_ess_exact(NormalPrior{delta, m, 1.0},
                                                      NormalTruth{0.0, 1.0}, 100, {1, 2000});
      CHECK(std::fabs(r.ess - expected(m, delta, 100)) <= 1.0);
    }
  }
}

TEST_CASE("Reimherr sign flips under strong deviation") {
  const BaselineResult pos =
      reimherr_mse_ess_exact(NormalPrior{0.0, 30.0, 1.0}, NormalTruth{0.0, 1.0}, 100, {1, 2000});
  const BaselineResult neg =
      reimherr_mse_ess_exact(NormalPrior{0.5, 30.0, 1.0}, NormalTruth{0.0, 1.0}, 100, {1, 2000});
  CHECK(pos.ess > 0);
  CHECK(neg.ess < 0);
}

TEST_CASE("Reimherr flat-prior limit") {
  const BaselineResult r =
      reimherr_mse_ess_exact(NormalPrior{0.3, 1e-6, 1.0}, NormalTruth{0.0, 1.0}, 100, {1, 2000});
  CHECK(std::fabs(r.ess) <= 1.0);
  const BaselineResult b = reimherr_mse_ess_exact(BetaPrior{0.0007, 0.0003}, BernoulliTruth{0.7},
                                                  100, {1, 2000});
  CHECK(std::fabs(b.ess) <= 1.0);
}

TEST_CASE("pool-based Reimherr tracks the exact version") {
  RunConfig c;
  c.replicates = 20;
  const BaselineResult mc =
      reimherr_mse_ess(NormalPrior{0.0, 12.0, 1.0}, NormalTruth{0.0, 1.0}, 100, c);
  const BaselineResult ex =
      reimherr_mse_ess_exact(NormalPrior{0.0, 12.0, 1.0}, NormalTruth{0.0, 1.0}, 100, {1, 2000});
  CHECK(std::fabs(mc.ess - ex.ess) <= 3.0);
  const BaselineResult again =
      reimherr_mse_ess(NormalPrior{0.0, 12.0, 1.0}, NormalTruth{0.0, 1.0}, 100, c);
  CHECK(mc.ess == again.ess);
}

TEST_CASE("beta Reimherr increases with strength without deviation") {
  double last = -1e9;
  for (double k : {2.0, 5.0, 10.0, 20.0}) {
    const double e = reimherr_mse_ess_exact(BetaPrior::from_mean_strength(0.7, k),
                                            BernoulliTruth{0.7}, 100, {1, 2000})
                         .ess;
    CHECK(e > last);
    last = e;
  }
}

}
