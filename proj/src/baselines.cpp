#include "esslab/baselines.hpp"

#include <cmath>

#include "esslab/error.hpp"
#include "esslab/families.hpp"

namespace esslab {

std::string_view to_string(BaselineMethod method) {
  return method == BaselineMethod::Morita ? "morita" : "reimherr-mse";
}

BaselineResult morita_ess(const PriorSpec& prior) {
  BaselineResult out;
  out.method = BaselineMethod::Morita;
  out.diagnostics["secondary_reimplementation"] = 1.0;
  if (const auto* p = std::get_if<NormalPrior>(&prior)) {
    p->validate();
    out.ess = p->m;
  } else if (const auto* p = std::get_if<BetaPrior>(&prior)) {
    p->validate();
    out.ess = p->a + p->b;
  } else {
    fail(ErrorCode::UnsupportedFamily, "Morita baseline supports normal and beta priors only");
  }
  return out;
}

namespace {

// The posterior mean as w * xbar + c, and the parameter it estimates.
struct ShrinkageForm {
  double weight = 1.0;
  double offset = 0.0;
  double target = 0.0;
};

struct UnitMoments {
  double mean = 0.0;
  double variance = 0.0;
};

ShrinkageForm shrinkage(const PriorSpec& prior, const TruthSpec& truth, Count n) {
  const double nd = static_cast<double>(n);
  if (const auto* p = std::get_if<NormalPrior>(&prior)) {
    const auto* t = std::get_if<NormalTruth>(&truth);
    require(t != nullptr, "truth", "must be a normal truth for a normal prior");
    p->validate();
    t->validate();
    return {nd / (p->m + nd), p->m * p->delta / (p->m + nd), t->mu_true};
  }
  if (const auto* p = std::get_if<BetaPrior>(&prior)) {
    const auto* t = std::get_if<BernoulliTruth>(&truth);
    require(t != nullptr, "truth", "must be a Bernoulli truth for a beta prior");
    p->validate();
    t->validate();
    const double total = p->a + p->b + nd;
    return {nd / total, p->a / total, t->theta};
  }
  fail(ErrorCode::UnsupportedFamily, "Reimherr baseline supports normal and beta priors only");
}

UnitMoments truth_moments(const TruthSpec& truth) {
  if (const auto* t = std::get_if<NormalTruth>(&truth)) {
    return {t->mu_true, t->sigma * t->sigma};
  }
  const auto& t = std::get<BernoulliTruth>(truth);
  return {t.theta, t.theta * (1.0 - t.theta)};
}

UnitMoments pool_moments(const Group& pool) {
  const double k = static_cast<double>(pool.values.size());
  double s = 0.0;
  for (double v : pool.values) s += v;
  const double mean = s / k;
  double ss = 0.0;
  for (double v : pool.values) ss += (v - mean) * (v - mean);
  return {mean, ss / k};
}

struct MatchResult {
  Count k_star = 1;
  double k_continuous = 0.0;
  bool at_boundary = false;
  double mse_target = 0.0;
};

MatchResult match(const ShrinkageForm& form, const UnitMoments& unit, Count n, GridBounds grid) {
  grid.validate();
  const double nd = static_cast<double>(n);
  const double bias_t = form.weight * unit.mean + form.offset - form.target;
  const double bias_b = unit.mean - form.target;
  const double mse_t = form.weight * form.weight * unit.variance / nd + bias_t * bias_t;
  const auto mse_b = [&](Count k) {
    return unit.variance / static_cast<double>(k) + bias_b * bias_b;
  };

  MatchResult r;
  r.mse_target = mse_t;
  const double excess = mse_t - bias_b * bias_b;
  r.k_continuous = excess > 0.0 ? unit.variance / excess : std::numeric_limits<double>::infinity();
  r.at_boundary = !(r.k_continuous >= static_cast<double>(grid.lo) &&
                    r.k_continuous <= static_cast<double>(grid.hi));

  // The baseline MSE is decreasing in k, so the best grid point is next to
  // the continuous root (or at a grid end).
  Count candidates[2];
  if (r.k_continuous <= static_cast<double>(grid.lo)) {
    candidates[0] = candidates[1] = grid.lo;
  } else if (r.k_continuous >= static_cast<double>(grid.hi)) {
    candidates[0] = candidates[1] = grid.hi;
  } else {
    candidates[0] = static_cast<Count>(std::floor(r.k_continuous));
    candidates[1] = std::min(grid.hi, candidates[0] + 1);
  }
  const double d0 = std::abs(mse_t - mse_b(candidates[0]));
  const double d1 = std::abs(mse_t - mse_b(candidates[1]));
  r.k_star = d1 < d0 ? candidates[1] : candidates[0];
  return r;
}

BaselineResult make_result(double ess) {
  BaselineResult out;
  out.method = BaselineMethod::ReimherrMSE;
  out.ess = ess;
  out.diagnostics["secondary_reimplementation"] = 1.0;
  return out;
}

}  // namespace

BaselineResult reimherr_mse_ess_exact(const PriorSpec& prior, const TruthSpec& truth, Count n,
                                      GridBounds grid) {
  require(n >= 1, "n", "must be >= 1");
  const ShrinkageForm form = shrinkage(prior, truth, n);
  const MatchResult m = match(form, truth_moments(truth), n, grid);
  BaselineResult out = make_result(static_cast<double>(m.k_star - n));
  out.diagnostics["k_star"] = static_cast<double>(m.k_star);
  out.diagnostics["k_continuous"] = m.k_continuous;
  out.diagnostics["mse_target"] = m.mse_target;
  out.diagnostics["at_boundary"] = m.at_boundary ? 1.0 : 0.0;
  return out;
}

BaselineResult reimherr_mse_ess(const PriorSpec& prior, const TruthSpec& truth, Count n,
                                const RunConfig& config) {
  config.validate();
  require(n >= 1, "n", "must be >= 1");
  const ShrinkageForm form = shrinkage(prior, truth, n);
  const SamplerFn sampler = std::holds_alternative<NormalTruth>(truth)
                                ? normal_sampler(std::get<NormalTruth>(truth))
                                : bernoulli_sampler(std::get<BernoulliTruth>(truth));
  const GroupShape shape[] = {{config.pool_size, 1}};
  const GridBounds grid = config.effective_grid();

  double sum = 0.0, ss = 0.0;
  Count boundary = 0;
  for (Count r = 0; r < config.replicates; ++r) {
    const Count pool_id = config.fresh_pool_per_replicate ? r : 0;
    const DataPool pool = draw_pool(
        sampler, shape, derive_stream(config.seed, static_cast<std::uint64_t>(pool_id),
                                      StreamRole::Pool));
    const MatchResult m = match(form, pool_moments(pool[0]), n, grid);
    const double ess = static_cast<double>(m.k_star - n);
    sum += ess;
    ss += ess * ess;
    if (m.at_boundary) ++boundary;
  }
  const double k = static_cast<double>(config.replicates);
  BaselineResult out = make_result(sum / k);
  out.diagnostics["sd"] = k > 1 ? std::sqrt(std::max(0.0, (ss - sum * sum / k) / (k - 1))) : 0.0;
  out.diagnostics["replicates"] = k;
  out.diagnostics["n_boundary"] = static_cast<double>(boundary);
  return out;
}

}  // namespace esslab
