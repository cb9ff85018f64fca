#pragma once

// Monte Carlo and bootstrap estimation of concordance profiles, and the
// replicated pool/resample protocol.
//
// Every draw j reads its randomness from substream j of the stream it was
// given, and all reductions run in draw order, so results are bit-identical
// for any OpenMP thread count.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "esslab/core.hpp"
#include "esslab/random.hpp"

namespace esslab {

struct RunConfig {
  Count pool_size = 5000;
  Count bootstrap_count = 10000;
  Count bayes_n = 100;
  Count replicates = 100;
  std::uint64_t seed = 20240917;
  std::optional<GridBounds> grid;
  // Redraw the data pool for each replicate (true) or draw it once.
  bool fresh_pool_per_replicate = true;

  void validate() const;
  GridBounds effective_grid() const {
    return grid.value_or(GridBounds::default_for(bayes_n));
  }
};

// Row-major block of observations. Single-column groups hold one value per
// row; the regression audit stores (x, y) pairs.
struct Group {
  std::vector<double> values;
  std::size_t cols = 1;

  std::size_t rows() const { return cols == 0 ? 0 : values.size() / cols; }
};

using DataPool = std::vector<Group>;

struct GroupView {
  std::span<const double> values;
  std::size_t cols = 1;

  std::size_t rows() const { return values.size() / cols; }
  double operator()(std::size_t row, std::size_t col = 0) const { return values[row * cols + col]; }
};

using SampleView = std::span<const GroupView>;

struct GroupShape {
  Count rows = 1;
  std::size_t cols = 1;
};

// Per-draw output of a statistic: the Bayesian z-score and the per-unit
// frequentist summand whose mean is kappa. Degenerate draws are excluded
// from the averages; clamped draws are kept and counted.
struct DrawStats {
  double z_bayes = 0.0;
  double freq_unit = 0.0;
  bool clamped = false;
  bool degenerate = false;
};

using StatisticFn = std::function<DrawStats(SampleView)>;

// Fills each group (already sized by the caller) with fresh observations.
using SamplerFn = std::function<void(Xoshiro256&, std::span<Group>)>;

struct McProfile {
  ConcordanceProfile profile;
  Count draws_used = 0;
  Count n_clamped = 0;
  Count n_degenerate = 0;
  double mean_abs_z_bayes = 0.0;
};

// Draws `draws` independent samples from the sampler and averages the
// statistic's squared Bayesian z and per-unit frequentist term.
McProfile estimate_profile_mc(const StatisticFn& statistic, const SamplerFn& sampler,
                              std::span<const GroupShape> shape, Count n, Count draws,
                              const RandomStream& stream);

// Draws b resamples with replacement from the pool; group g contributes
// resample_rows[g] rows per resample.
McProfile bootstrap_profile(const DataPool& pool, std::span<const Count> resample_rows, Count n,
                            Count b, const StatisticFn& statistic, const RandomStream& stream);

struct BootstrapScenario {
  StatisticFn statistic;
  SamplerFn truth_sampler;
  std::vector<GroupShape> pool_shape;
  std::vector<Count> resample_rows;
  Count bayes_n = 100;
  SupportDirection direction = SupportDirection::SupportsNull;
};

struct ReplicateFailure {
  Count replicate = 0;
  std::string message;
};

struct EstimateSeries {
  std::vector<EssEstimate> per_replicate;
  std::vector<ReplicateFailure> failures;
  double mean_ess = 0.0;
  double sd_ess = 0.0;
  Count n_boundary = 0;

  Count n_failed() const { return static_cast<Count>(failures.size()); }
};

DataPool draw_pool(const SamplerFn& sampler, std::span<const GroupShape> shape,
                   const RandomStream& stream);

// For each replicate r: draw the pool from stream (seed, r, Pool), run the
// bootstrap with stream (seed, r, Bootstrap), minimize, and aggregate.
// Failed replicates are excluded from the mean and listed in failures.
EstimateSeries run_replicated(const RunConfig& config, const BootstrapScenario& scenario);

void summarize(EstimateSeries& series);

}  // namespace esslab
