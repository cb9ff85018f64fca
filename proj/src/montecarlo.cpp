#include "esslab/montecarlo.hpp"

#include <cmath>
#include <cstring>
#include <exception>
#include <random>

#include "esslab/error.hpp"
#include "esslab/parallel.hpp"

namespace esslab {

void RunConfig::validate() const {
  require(pool_size >= 1, "pool_size", "must be >= 1");
  require(bootstrap_count >= 2, "bootstrap_count", "must be >= 2");
  require(bayes_n >= 1, "bayes_n", "must be >= 1");
  require(replicates >= 1, "replicates", "must be >= 1");
  require(bayes_n <= pool_size, "pool_size", "must be >= bayes_n");
  effective_grid().validate();
}

namespace {

struct DrawBuffers {
  std::vector<Group> groups;
  std::vector<GroupView> views;

  template <typename Rows>
  DrawBuffers(const Rows& rows, std::span<const std::size_t> cols) {
    groups.resize(cols.size());
    views.resize(cols.size());
    for (std::size_t g = 0; g < cols.size(); ++g) {
      groups[g].cols = cols[g];
      groups[g].values.assign(static_cast<std::size_t>(rows[g]) * cols[g], 0.0);
      views[g] = {groups[g].values, cols[g]};
    }
  }
};

// Draw-indexed results, reduced in index order after the parallel loop.
struct DrawResults {
  std::vector<double> z2;
  std::vector<double> freq;
  std::vector<double> abs_z;
  std::vector<unsigned char> clamped;
  std::vector<unsigned char> degenerate;

  explicit DrawResults(Count draws)
      : z2(static_cast<std::size_t>(draws)),
        freq(static_cast<std::size_t>(draws)),
        abs_z(static_cast<std::size_t>(draws)),
        clamped(static_cast<std::size_t>(draws)),
        degenerate(static_cast<std::size_t>(draws)) {}

  void store(Count j, const DrawStats& st) {
    const auto i = static_cast<std::size_t>(j);
    degenerate[i] = st.degenerate || !std::isfinite(st.z_bayes) || !std::isfinite(st.freq_unit);
    clamped[i] = st.clamped;
    z2[i] = st.z_bayes * st.z_bayes;
    freq[i] = st.freq_unit;
    abs_z[i] = std::abs(st.z_bayes);
  }
};

McProfile reduce(const DrawResults& r, Count n) {
  double su = 0.0, suu = 0.0, sk = 0.0, skk = 0.0, sa = 0.0;
  Count used = 0, n_clamped = 0, n_degenerate = 0;
  for (std::size_t i = 0; i < r.z2.size(); ++i) {
    if (r.degenerate[i]) {
      ++n_degenerate;
      continue;
    }
    if (r.clamped[i]) ++n_clamped;
    ++used;
    su += r.z2[i];
    suu += r.z2[i] * r.z2[i];
    sk += r.freq[i];
    skk += r.freq[i] * r.freq[i];
    sa += r.abs_z[i];
  }
  const Count total = static_cast<Count>(r.z2.size());
  if (used == 0 || n_clamped + n_degenerate == total) {
    fail(ErrorCode::AllDrawsDegenerate,
         "every one of " + std::to_string(total) + " draws was degenerate or clamped");
  }
  const double m = static_cast<double>(used);
  const auto se = [m](double s, double ss) {
    if (m < 2.0) return 0.0;
    const double var = std::max(0.0, (ss - s * s / m) / (m - 1.0));
    return std::sqrt(var / m);
  };

  McProfile out;
  out.profile.n = n;
  out.profile.u_bayes = su / m;
  out.profile.kappa = sk / m;
  out.profile.se_u_bayes = se(su, suu);
  out.profile.se_kappa = se(sk, skk);
  out.draws_used = used;
  out.n_clamped = n_clamped;
  out.n_degenerate = n_degenerate;
  out.mean_abs_z_bayes = sa / m;
  return out;
}

// Runs body(j, buffers) for every draw in parallel; exceptions thrown by a
// draw are rethrown (lowest draw index first) after the loop.
template <typename Body, typename Rows>
void for_each_draw(Count draws, const Rows& rows, std::span<const std::size_t> cols,
                   DrawResults& results, Body&& body) {
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(draws));
  bool any_error = false;
#pragma omp parallel
  {
    DrawBuffers buffers(rows, cols);
#pragma omp for schedule(static) reduction(|| : any_error)
    for (Count j = 0; j < draws; ++j) {
      try {
        results.store(j, body(j, buffers));
      } catch (...) {
        errors[static_cast<std::size_t>(j)] = std::current_exception();
        any_error = true;
      }
    }
  }
  if (any_error) {
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
}

}  // namespace

McProfile estimate_profile_mc(const StatisticFn& statistic, const SamplerFn& sampler,
                              std::span<const GroupShape> shape, Count n, Count draws,
                              const RandomStream& stream) {
  require(draws >= 2, "draws", "must be >= 2");
  require(!shape.empty(), "shape", "must name at least one group");
  std::vector<Count> rows;
  std::vector<std::size_t> cols;
  for (const auto& s : shape) {
    require(s.rows >= 1 && s.cols >= 1, "shape", "rows and cols must be >= 1");
    rows.push_back(s.rows);
    cols.push_back(s.cols);
  }

  DrawResults results(draws);
  for_each_draw(draws, rows, cols, results, [&](Count j, DrawBuffers& buf) {
    Xoshiro256 rng = stream.substream(static_cast<std::uint64_t>(j));
    sampler(rng, buf.groups);
    return statistic(buf.views);
  });
  return reduce(results, n);
}

McProfile bootstrap_profile(const DataPool& pool, std::span<const Count> resample_rows, Count n,
                            Count b, const StatisticFn& statistic, const RandomStream& stream) {
  require(b >= 2, "bootstrap_count", "must be >= 2");
  require(!pool.empty(), "pool", "must hold at least one group");
  require(resample_rows.size() == pool.size(), "resample_rows", "must match the pool groups");
  std::vector<std::size_t> cols;
  for (std::size_t g = 0; g < pool.size(); ++g) {
    require(pool[g].rows() >= 1, "pool", "groups must be nonempty");
    require(static_cast<Count>(pool[g].rows()) >= resample_rows[g], "pool_size",
            "must be >= the resample size");
    require(resample_rows[g] >= 1, "resample_rows", "must be >= 1");
    cols.push_back(pool[g].cols);
  }

  DrawResults results(b);
  for_each_draw(b, resample_rows, cols, results, [&](Count j, DrawBuffers& buf) {
    Xoshiro256 rng = stream.substream(static_cast<std::uint64_t>(j));
    for (std::size_t g = 0; g < pool.size(); ++g) {
      const Group& src = pool[g];
      const std::size_t c = src.cols;
      std::uniform_int_distribution<std::uint64_t> pick(0, src.rows() - 1);
      double* dst = buf.groups[g].values.data();
      const auto rows = static_cast<std::size_t>(resample_rows[g]);
      for (std::size_t i = 0; i < rows; ++i) {
        const std::size_t r = static_cast<std::size_t>(pick(rng));
        std::memcpy(dst + i * c, src.values.data() + r * c, c * sizeof(double));
      }
    }
    return statistic(buf.views);
  });
  return reduce(results, n);
}

DataPool draw_pool(const SamplerFn& sampler, std::span<const GroupShape> shape,
                   const RandomStream& stream) {
  DataPool pool(shape.size());
  for (std::size_t g = 0; g < shape.size(); ++g) {
    require(shape[g].rows >= 1, "pool_size", "must be >= 1");
    pool[g].cols = shape[g].cols;
    pool[g].values.assign(static_cast<std::size_t>(shape[g].rows) * shape[g].cols, 0.0);
  }
  Xoshiro256 rng = stream.engine();
  sampler(rng, pool);
  return pool;
}

void summarize(EstimateSeries& series) {
  const std::size_t k = series.per_replicate.size();
  series.n_boundary = 0;
  if (k == 0) {
    series.mean_ess = std::nan("");
    series.sd_ess = std::nan("");
    return;
  }
  double sum = 0.0;
  for (const auto& e : series.per_replicate) {
    sum += static_cast<double>(e.ess);
    if (e.at_boundary()) ++series.n_boundary;
  }
  series.mean_ess = sum / static_cast<double>(k);
  double ss = 0.0;
  for (const auto& e : series.per_replicate) {
    const double d = static_cast<double>(e.ess) - series.mean_ess;
    ss += d * d;
  }
  series.sd_ess = k > 1 ? std::sqrt(ss / static_cast<double>(k - 1)) : 0.0;
}

EstimateSeries run_replicated(const RunConfig& config, const BootstrapScenario& scenario) {
  config.validate();
  const GridBounds grid = config.effective_grid();

  EstimateSeries series;
  DataPool shared_pool;
  if (!config.fresh_pool_per_replicate) {
    shared_pool = draw_pool(scenario.truth_sampler, scenario.pool_shape,
                            derive_stream(config.seed, 0, StreamRole::Pool));
  }
  for (Count r = 0; r < config.replicates; ++r) {
    const auto rid = static_cast<std::uint64_t>(r);
    try {
      const DataPool pool = config.fresh_pool_per_replicate
                                ? draw_pool(scenario.truth_sampler, scenario.pool_shape,
                                            derive_stream(config.seed, rid, StreamRole::Pool))
                                : shared_pool;
      const McProfile mc =
          bootstrap_profile(pool, scenario.resample_rows, scenario.bayes_n,
                            config.bootstrap_count, scenario.statistic,
                            derive_stream(config.seed, rid, StreamRole::Bootstrap));
      EssEstimate est = estimate_ess(mc.profile, grid, scenario.direction, EssMethod::Bootstrap);
      est.diagnostics["replicate"] = static_cast<double>(r);
      est.diagnostics["draws_used"] = static_cast<double>(mc.draws_used);
      est.diagnostics["n_clamped"] = static_cast<double>(mc.n_clamped);
      est.diagnostics["n_degenerate"] = static_cast<double>(mc.n_degenerate);
      est.diagnostics["mean_abs_z_bayes"] = mc.mean_abs_z_bayes;
      series.per_replicate.push_back(std::move(est));
    } catch (const Error& e) {
      series.failures.push_back({r, e.what()});
    }
  }
  summarize(series);
  return series;
}

}  // namespace esslab
