#pragma once

// Serial reference implementations of the OpenMP kernels. They share no
// loop code with the parallel versions and exist for cross-checking and
// benchmarking.
//
// The Monte Carlo references consume the same substreams and accumulate in
// draw order, so they match the parallel kernels bit for bit. The two-sample
// enumeration sums cell by cell instead of row by row and agrees only to
// rounding.

#include "esslab/beta.hpp"
#include "esslab/montecarlo.hpp"

namespace esslab::reference {

ConcordanceProfile exact_profile_beta_one(const BetaPrior& prior, const BernoulliTruth& truth,
                                          double theta0, Count n);

ConcordanceProfile exact_profile_beta_two(const BetaPrior& prior1, const BetaPrior& prior2,
                                          const BernoulliPairTruth& truth, Count n);

McProfile estimate_profile_mc(const StatisticFn& statistic, const SamplerFn& sampler,
                              std::span<const GroupShape> shape, Count n, Count draws,
                              const RandomStream& stream);

McProfile bootstrap_profile(const DataPool& pool, std::span<const Count> resample_rows, Count n,
                            Count b, const StatisticFn& statistic, const RandomStream& stream);

}  // namespace esslab::reference
