#include <doctest.h>

#include <cmath>

#include "esslab/audit.hpp"
#include "esslab/error.hpp"

using namespace esslab;

TEST_SUITE("audit") {

TEST_CASE("synthetic generator hits the requested slope") {
  const Table t = generate_synthetic_eqtl({});
  CHECK(t.row_count() == 576);
  const auto g = t.column("genotype");
  const auto e = t.column("expression");
  double mg = 0, me = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    mg += g[i];
    me += e[i];
  }
  mg /= g.size();
  me /= g.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    sxy += (g[i] - mg) * (e[i] - me);
    sxx += (g[i] - mg) * (g[i] - mg);
  }
  CHECK(sxy / sxx == doctest::Approx(0.08).epsilon(1e-3));
  for (double v : g) CHECK((v == 0 || v == 1 || v == 2));
}

TEST_CASE("accurate prior yields a large positive ESS and a stronger z") {
  const Table data = generate_synthetic_eqtl({});
  AuditRequest req;
  req.response_column = "expression";
  req.covariate_column = "genotype";
  req.bayes_n = 540;
  req.config.bootstrap_count = 4000;
  req.prior = {0.08, 0.01};
  const AuditReport r = prior_audit(data, req);
  CHECK(r.estimate.ess > 30);
  CHECK(r.mean_abs_z_bayes > std::fabs(r.z_freq));
  CHECK(r.beta_hat == doctest::Approx(0.08).epsilon(1e-3));

  req.prior = {0.04, 0.01};
  CHECK(prior_audit(data, req).estimate.ess < r.estimate.ess);
}

TEST_CASE("vague prior gives ESS near zero") {
  const Table data = generate_synthetic_eqtl({});
  AuditRequest req;
  req.response_column = "expression";
  req.covariate_column = "genotype";
  req.bayes_n = 540;
  req.config.bootstrap_count = 4000;
  req.prior = {0.08, 1e6};
  CHECK(std::abs(prior_audit(data, req).estimate.ess) <= 2);
}

TEST_CASE("degenerate design and bad columns") {
  Table flat({"g", "y"});
  for (int i = 0; i < 50; ++i) flat.add_row({1.0, 0.1 * i});
  AuditRequest req;
  req.response_column = "y";
  req.covariate_column = "g";
  req.bayes_n = 40;
  try {
    prior_audit(flat, req);
    FAIL("expected DegenerateDesign");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateDesign);
  }
  req.covariate_column = "nope";
  CHECK_THROWS_AS(prior_audit(flat, req), Error);
  req.covariate_column = "g";
  req.bayes_n = 500;
  CHECK_THROWS_WITH_AS(prior_audit(flat, req), doctest::Contains("bayes_n"), Error);
}

}
