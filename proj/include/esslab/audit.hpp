#pragma once

// Prior audit for a simple regression on user data: how many samples a
// normal prior on the slope is worth, measured by bootstrap resamples of the
// data.

#include <cstdint>
#include <string>

#include "esslab/core.hpp"
#include "esslab/linreg.hpp"
#include "esslab/montecarlo.hpp"
#include "esslab/table.hpp"

namespace esslab {

struct AuditRequest {
  std::string response_column;
  std::string covariate_column;
  SlopePrior prior;
  Count bayes_n = 100;
  // bootstrap_count, seed and grid are used; the data table is the pool.
  RunConfig config;
  SupportDirection direction = SupportDirection::SupportsAlternative;

  void validate(const Table& data) const;
};

struct AuditReport {
  EssEstimate estimate;
  double mean_abs_z_bayes = 0.0;
  double beta_hat = 0.0;
  double sigma_hat = 0.0;
  double z_freq = 0.0;
  // One-sided, in the direction of the observed slope.
  double p_value = 1.0;
  Count rows = 0;

  nlohmann::json to_json() const;
};

AuditReport prior_audit(const Table& data, const AuditRequest& request);

// Stand-in for a genotype/expression table: genotype ~ Binomial(2, maf),
// expression = beta * genotype + N(0, noise_sd^2). With exact_effect the
// noise is orthogonalised against the genotype so the fitted slope equals
// beta exactly.
struct SyntheticEqtlConfig {
  Count samples = 576;
  double beta = 0.08;
  double allele_frequency = 0.3;
  double noise_sd = 0.8;
  bool exact_effect = true;
  std::uint64_t seed = 4813620;
};

Table generate_synthetic_eqtl(const SyntheticEqtlConfig& config);

}  // namespace esslab
