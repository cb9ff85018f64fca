#pragma once

// Comparator ESS methods, restricted to the conjugate normal and beta
// families:
//   Morita-style: information matching against an epsilon-information
//     baseline, which for these families reduces to m (normal) and a + b.
//   Reimherr-style: posterior-MSE matching against a flat baseline whose
//     posterior mean is the sample mean.
// Both are reimplementations from a secondary description and are labelled
// as such in their diagnostics.

#include <map>
#include <string>
#include <variant>

#include "esslab/beta.hpp"
#include "esslab/linreg.hpp"
#include "esslab/montecarlo.hpp"
#include "esslab/normal.hpp"

namespace esslab {

using PriorSpec = std::variant<NormalPrior, BetaPrior, SlopePrior>;
using TruthSpec = std::variant<NormalTruth, BernoulliTruth>;

enum class BaselineMethod { Morita, ReimherrMSE };

std::string_view to_string(BaselineMethod method);

struct BaselineResult {
  BaselineMethod method = BaselineMethod::Morita;
  double ess = 0.0;
  std::map<std::string, double> diagnostics;
};

BaselineResult morita_ess(const PriorSpec& prior);

// Per replicate, a pool is drawn from the truth and the expected squared
// error of each posterior mean is taken under resampling from that pool.
// Both posterior means are linear in the sample sum, so the resampling
// expectation is computed in closed form from the pool mean and variance.
// ess = argmin_k |M(target, n) - M(flat, k)| - n, averaged over replicates.
BaselineResult reimherr_mse_ess(const PriorSpec& prior, const TruthSpec& truth, Count n,
                                const RunConfig& config);

// Same matching with expectations taken under the truth itself.
BaselineResult reimherr_mse_ess_exact(const PriorSpec& prior, const TruthSpec& truth, Count n,
                                      GridBounds grid);

}  // namespace esslab
