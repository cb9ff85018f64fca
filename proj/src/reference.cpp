#include "esslab/reference.hpp"

#include <cmath>
#include <random>

#include "esslab/error.hpp"

namespace esslab::reference {

ConcordanceProfile exact_profile_beta_one(const BetaPrior& prior, const BernoulliTruth& truth,
                                          double theta0, Count n) {
  const std::vector<double> w = binomial_weights(n, truth.theta);
  double u = 0.0;
  for (Count s = 0; s <= n; ++s) {
    const double z = z_bayes_beta_one(prior, s, n, theta0);
    u += w[static_cast<std::size_t>(s)] * z * z;
  }
  const double th = truth.theta;
  ConcordanceProfile p;
  p.n = n;
  p.u_bayes = u;
  p.kappa = (th * (1.0 - th) / static_cast<double>(n) + (th - theta0) * (th - theta0)) /
            (theta0 * (1.0 - theta0));
  return p;
}

ConcordanceProfile exact_profile_beta_two(const BetaPrior& prior1, const BetaPrior& prior2,
                                          const BernoulliPairTruth& truth, Count n) {
  const std::vector<double> wx = binomial_weights(n, truth.theta1);
  const std::vector<double> wy = binomial_weights(n, truth.theta2);
  const double nd = static_cast<double>(n);
  double u = 0.0, k = 0.0;
  for (Count sx = 0; sx <= n; ++sx) {
    for (Count sy = 0; sy <= n; ++sy) {
      const double w = wx[static_cast<std::size_t>(sx)] * wy[static_cast<std::size_t>(sy)];
      const double zb = z_bayes_beta_two(prior1, prior2, sx, sy, n);
      const double px = clamp_proportion(static_cast<double>(sx) / nd, n).first;
      const double py = clamp_proportion(static_cast<double>(sy) / nd, n).first;
      const double zf = z_freq_beta_two(px, py, 1);
      u += w * zb * zb;
      k += w * zf * zf;
    }
  }
  ConcordanceProfile p;
  p.n = n;
  p.u_bayes = u;
  p.kappa = k;
  return p;
}

namespace {

struct Accumulator {
  double su = 0.0, suu = 0.0, sk = 0.0, skk = 0.0, sa = 0.0;
  Count used = 0, clamped = 0, degenerate = 0, total = 0;

  void add(const DrawStats& st) {
    ++total;
    if (st.degenerate || !std::isfinite(st.z_bayes) || !std::isfinite(st.freq_unit)) {
      ++degenerate;
      return;
    }
    if (st.clamped) ++clamped;
    ++used;
    const double z2 = st.z_bayes * st.z_bayes;
    su += z2;
    suu += z2 * z2;
    sk += st.freq_unit;
    skk += st.freq_unit * st.freq_unit;
    sa += std::abs(st.z_bayes);
  }

  McProfile finish(Count n) const {
    if (used == 0 || clamped + degenerate == total) {
      fail(ErrorCode::AllDrawsDegenerate, "every draw was degenerate or clamped");
    }
    const double m = static_cast<double>(used);
    const auto se = [m](double s, double ss) {
      if (m < 2.0) return 0.0;
      return std::sqrt(std::max(0.0, (ss - s * s / m) / (m - 1.0)) / m);
    };
    McProfile out;
    out.profile.n = n;
    out.profile.u_bayes = su / m;
    out.profile.kappa = sk / m;
    out.profile.se_u_bayes = se(su, suu);
    out.profile.se_kappa = se(sk, skk);
    out.draws_used = used;
    out.n_clamped = clamped;
    out.n_degenerate = degenerate;
    out.mean_abs_z_bayes = sa / m;
    return out;
  }
};

}  // namespace

McProfile estimate_profile_mc(const StatisticFn& statistic, const SamplerFn& sampler,
                              std::span<const GroupShape> shape, Count n, Count draws,
                              const RandomStream& stream) {
  std::vector<Group> groups(shape.size());
  std::vector<GroupView> views(shape.size());
  for (std::size_t g = 0; g < shape.size(); ++g) {
    groups[g].cols = shape[g].cols;
    groups[g].values.assign(static_cast<std::size_t>(shape[g].rows) * shape[g].cols, 0.0);
    views[g] = {groups[g].values, shape[g].cols};
  }
  Accumulator acc;
  for (Count j = 0; j < draws; ++j) {
    Xoshiro256 rng = stream.substream(static_cast<std::uint64_t>(j));
    sampler(rng, groups);
    acc.add(statistic(views));
  }
  return acc.finish(n);
}

McProfile bootstrap_profile(const DataPool& pool, std::span<const Count> resample_rows, Count n,
                            Count b, const StatisticFn& statistic, const RandomStream& stream) {
  std::vector<Group> groups(pool.size());
  std::vector<GroupView> views(pool.size());
  for (std::size_t g = 0; g < pool.size(); ++g) {
    groups[g].cols = pool[g].cols;
    groups[g].values.resize(static_cast<std::size_t>(resample_rows[g]) * pool[g].cols);
    views[g] = {groups[g].values, pool[g].cols};
  }
  Accumulator acc;
  for (Count j = 0; j < b; ++j) {
    Xoshiro256 rng = stream.substream(static_cast<std::uint64_t>(j));
    for (std::size_t g = 0; g < pool.size(); ++g) {
      const std::size_t c = pool[g].cols;
      std::uniform_int_distribution<std::uint64_t> pick(0, pool[g].rows() - 1);
      for (Count i = 0; i < resample_rows[g]; ++i) {
        const std::size_t r = static_cast<std::size_t>(pick(rng));
        for (std::size_t col = 0; col < c; ++col) {
          groups[g].values[static_cast<std::size_t>(i) * c + col] = pool[g].values[r * c + col];
        }
      }
    }
    acc.add(statistic(views));
  }
  return acc.finish(n);
}

}  // namespace esslab::reference
