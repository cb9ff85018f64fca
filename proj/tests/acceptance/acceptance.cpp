// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Simulation criteria run the full protocol (pool 5000,
// 10^4 resamples, n = 100, 100 replicates).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "esslab/audit.hpp"
#include "esslab/experiments.hpp"
#include "esslab/parallel.hpp"

using namespace esslab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int g_failed = 0;

void report(int id, const std::string& name, const std::function<Outcome()>& check) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++g_failed;
  std::printf("[%s] %2d %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, name.c_str(),
              o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(double v) { return Table::format(v); }

bool within(double value, double target, double tol) { return std::fabs(value - target) <= tol; }

Count grid_ess(const ConcordanceProfile& p, SupportDirection d, EssMethod m) {
  return estimate_ess(p, GridBounds::default_for(p.n), d, m).ess;
}

// Full-protocol sweeps are shared between criteria.
const Table& sweep(const std::string& id) {
  static std::map<std::string, Table> cache;
  auto it = cache.find(id);
  if (it == cache.end()) it = cache.emplace(id, run_scenario(id)).first;
  return it->second;
}

double sweep_at(const Table& t, double param, const std::string& col) {
  for (std::size_t i = 0; i < t.row_count(); ++i) {
    if (t.at(i, "sweep_param") == param) return t.at(i, col);
  }
  throw std::runtime_error("sweep value " + fmt(param) + " missing");
}

Outcome c1_normal_closed_form() {
  int checked = 0;
  for (double delta : {0.0, 0.1, 0.5}) {
    for (int m = 1; m <= 50; ++m) {
      const NormalPrior prior{delta, static_cast<double>(m), 1.0};
      const Count ess = grid_ess(exact_profile_normal(prior, {0.0, 1.0}, 100),
                                 SupportDirection::SupportsNull, EssMethod::ClosedForm);
      const double cf = closed_form_ess_normal(prior, 100);
      if (ess != std::lround(cf)) {
        return {false, "delta=" + fmt(delta) + " m=" + std::to_string(m) + ": grid " +
                           std::to_string(ess) + " vs closed form " + fmt(cf)};
      }
      ++checked;
    }
  }
  return {true, std::to_string(checked) + " (delta, m) cells equal round(closed form)"};
}

Outcome c2_fig1() {
  const Table t = run_scenario("fig1");
  const auto& minima = t.metadata().at("minima");
  const int e0 = minima[0].at("ess_grid").get<int>();
  const int e1 = minima[1].at("ess_grid").get<int>();
  const int e5 = minima[2].at("ess_grid").get<int>();
  const double cf5 = minima[2].at("ess_closed_form").get<double>();
  const bool documented = minima[2].at("ess_reference").get<int>() == -79 &&
                          !t.metadata().at("notes").empty();
  const bool pass = e0 == 17 && e1 == 13 && std::fabs(e5 - cf5) <= 0.5 && documented;
  return {pass, "minima " + std::to_string(e0) + ", " + std::to_string(e1) + ", " +
                    std::to_string(e5) + " (closed form " + fmt(cf5) +
                    "; reference -79 documented in metadata: " + (documented ? "yes" : "no") + ")"};
}

Outcome c3_mc_vs_oracle() {
  std::mt19937_64 rng(20240917);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  int pass = 0;
  const int configs = 20;
  for (int i = 0; i < configs; ++i) {
    const Count n = 20 + static_cast<Count>(unif(rng) * 180);
    const RandomStream stream = derive_stream(1000 + i, 0, StreamRole::Direct);
    const GroupShape shape[] = {{n, 1}};
    ConcordanceProfile exact;
    McProfile mc;
    if (i % 2 == 0) {
      const NormalPrior prior{unif(rng) - 0.5, 1.0 + 40.0 * unif(rng), 1.0};
      const NormalTruth truth{0.4 * unif(rng) - 0.2, 1.0};
      exact = exact_profile_normal(prior, truth, n);
      mc = estimate_profile_mc(normal_statistic(prior), normal_sampler(truth), shape, n, 20000,
                               stream);
    } else {
      const double theta = 0.2 + 0.6 * unif(rng);
      const double theta0 = 0.2 + 0.6 * unif(rng);
      const BetaPrior prior = BetaPrior::from_mean_strength(0.1 + 0.8 * unif(rng),
                                                            1.0 + 19.0 * unif(rng));
      exact = exact_profile_beta_one(prior, {theta}, theta0, n);
      mc = estimate_profile_mc(beta_one_statistic(prior, theta0), bernoulli_sampler({theta}),
                               shape, n, 20000, stream);
    }
    const bool ok_u = std::fabs(mc.profile.u_bayes - exact.u_bayes) <= 4 * mc.profile.se_u_bayes;
    const bool ok_k = std::fabs(mc.profile.kappa - exact.kappa) <= 4 * mc.profile.se_kappa;
    if (ok_u && ok_k) ++pass;
  }
  const double rate = static_cast<double>(pass) / configs;
  return {rate >= 0.95, std::to_string(pass) + "/" + std::to_string(configs) +
                            " configurations within 4 SE on both moments"};
}

struct Spot {
  BetaPrior p1, p2;
  int reference;
};

Outcome spot_rows(const std::vector<Spot>& rows, BernoulliPairTruth truth, SupportDirection dir,
                  int tol) {
  bool pass = true;
  std::ostringstream ss;
  for (const auto& r : rows) {
    const Count ess = grid_ess(exact_profile_beta_two(r.p1, r.p2, truth, 100), dir,
                               EssMethod::ExactEnumeration);
    pass = pass && std::abs(ess - r.reference) <= tol;
    ss << ess << " (ref " << r.reference << ") ";
  }
  return {pass, ss.str() + "tolerance +/-" + std::to_string(tol)};
}

Outcome c6_normal_no_deviation() {
  const auto t0 = std::chrono::steady_clock::now();
  const Table& t = sweep("table4");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool pass = secs <= 300.0;
  std::ostringstream ss;
  const std::pair<double, double> targets[] = {{6, 5.52}, {12, 11.04}, {30, 22.93}};
  for (auto [m, ref] : targets) {
    const double v = sweep_at(t, m, "ess_pvalue");
    pass = pass && within(v, ref, std::max(0.15 * std::fabs(ref), 2.0));
    ss << "m=" << m << ": " << fmt(v) << " (ref " << ref << ") ";
  }
  ss << "sweep " << fmt(secs) << " s";
  return {pass, ss.str()};
}

Outcome c7_normal_deviation() {
  const Table& t = sweep("table6");
  bool pass = sweep_at(t, 1, "ess_pvalue") > 0;
  double prev = 1e300;
  for (double m : {9.0, 12.0, 15.0, 18.0, 21.0, 24.0, 27.0, 30.0}) {
    const double v = sweep_at(t, m, "ess_pvalue");
    pass = pass && v < 0 && v < prev;
    prev = v;
  }
  const double v30 = sweep_at(t, 30, "ess_pvalue");
  pass = pass && within(v30, -174.23, 0.25 * 174.23);
  return {pass, "m=1: " + fmt(sweep_at(t, 1, "ess_pvalue")) + ", m=9: " +
                    fmt(sweep_at(t, 9, "ess_pvalue")) + ", m=30: " + fmt(v30) +
                    " (ref -174.23 +/-25%); negative and decreasing from m=9: " +
                    (pass ? "yes" : "see values")};
}

Outcome c8_beta_sweeps() {
  const Table& nodev = sweep("table7");
  bool increasing = true;
  for (std::size_t i = 1; i < nodev.row_count(); ++i) {
    increasing = increasing && nodev.at(i, "ess_pvalue") > nodev.at(i - 1, "ess_pvalue");
  }
  const double v20 = sweep_at(nodev, 20, "ess_pvalue");
  const bool ok_nodev = increasing && within(v20, 14.12, 3.0);

  // The crossing is the last a+b with mean ESS >= 0 before the sweep turns
  // negative for good; it must lie in [9, 12).
  const Table& dev = sweep("table8");
  double last_nonneg = -1;
  for (std::size_t i = 0; i < dev.row_count(); ++i) {
    if (dev.at(i, "ess_pvalue") >= 0) last_nonneg = dev.at(i, "sweep_param");
  }
  const bool ok_cross = last_nonneg >= 9 && last_nonneg < 12;
  const double v18 = sweep_at(dev, 18, "ess_pvalue");
  const bool ok_18 = v18 <= -20;

  std::ostringstream ss;
  ss << "no deviation increasing=" << (increasing ? "yes" : "no") << ", a+b=20: " << fmt(v20)
     << " (ref 14.12 +/-3) [" << (ok_nodev ? "ok" : "FAIL") << "]; deviation crosses zero after a+b="
     << last_nonneg << " (need 9..11, ref -0.02 at 10) [" << (ok_cross ? "ok" : "FAIL")
     << "]; a+b=18: " << fmt(v18) << " (need <= -20) [" << (ok_18 ? "ok" : "FAIL") << "]";
  return {ok_nodev && ok_cross && ok_18, ss.str()};
}

Outcome c9_morita() {
  int rows = 0;
  for (const char* id : {"table4", "table5", "table6", "table7", "table8"}) {
    const Table& t = sweep(id);
    for (std::size_t i = 0; i < t.row_count(); ++i) {
      if (t.at(i, "ess_morita") != t.at(i, "sweep_param")) {
        return {false, std::string(id) + " row " + std::to_string(i + 1) + " differs"};
      }
      ++rows;
    }
  }
  return {true, std::to_string(rows) + " rows equal m or a+b exactly"};
}

Outcome c10_reimherr() {
  const Table& t4 = sweep("table4");
  bool pos_inc = true;
  for (std::size_t i = 0; i < t4.row_count(); ++i) {
    pos_inc = pos_inc && t4.at(i, "ess_reimherr") > 0;
    if (i > 0) pos_inc = pos_inc && t4.at(i, "ess_reimherr") > t4.at(i - 1, "ess_reimherr");
  }
  const Table& t6 = sweep("table6");
  double first_negative = -1;
  for (std::size_t i = 0; i < t6.row_count(); ++i) {
    if (t6.at(i, "ess_reimherr") < 0 && first_negative < 0) first_negative = t6.at(i, "sweep_param");
  }
  const bool flips = t6.at(0, "ess_reimherr") > 0 && t6.at(t6.row_count() - 1, "ess_reimherr") < 0;
  return {pos_inc && flips, std::string("delta=0 positive and increasing: ") +
                                (pos_inc ? "yes" : "no") + "; delta=0.5 negative from m=" +
                                fmt(first_negative) + " (paper: 15)"};
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

Outcome c11_properties() {
  std::ostringstream ss;
  // Grid vs analytic minimizer.
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  bool grid_ok = true;
  for (int i = 0; i < 2000; ++i) {
    const ConcordanceProfile p{0.01 + 5.0 * unif(rng), 0.001 + 0.05 * unif(rng), 100};
    const Minimizer m = minimize_distance(p, {1, 2000});
    if (!m.at_boundary) {
      grid_ok = grid_ok && std::fabs(m.n_tilde_star - m.n_tilde_continuous) <= 0.5 + 1e-9 &&
                distance(p, m.n_tilde_star) <= distance(p, m.n_tilde_star + 1) &&
                (m.n_tilde_star == 1 || distance(p, m.n_tilde_star) <= distance(p, m.n_tilde_star - 1));
    }
  }
  ss << "grid/analytic " << (grid_ok ? "ok" : "FAIL");

  // Swap symmetry.
  bool swap_ok = true;
  for (auto [p1, p2, t] : {std::tuple{BetaPrior{7, 3}, BetaPrior{2, 8}, BernoulliPairTruth{0.7, 0.2}},
                           std::tuple{BetaPrior{4, 6}, BetaPrior{9, 1}, BernoulliPairTruth{0.4, 0.4}}}) {
    const ConcordanceProfile a = exact_profile_beta_two(p1, p2, t, 100);
    const ConcordanceProfile b = exact_profile_beta_two(p2, p1, {t.theta2, t.theta1}, 100);
    swap_ok = swap_ok && std::fabs(a.u_bayes - b.u_bayes) <= 1e-12 * a.u_bayes &&
              std::fabs(a.kappa - b.kappa) <= 1e-12 * a.kappa;
  }
  ss << ", swap symmetry " << (swap_ok ? "ok" : "FAIL");

  // Thread-count determinism.
  RunConfig cfg;
  cfg.replicates = 5;
  const BootstrapScenario sc =
      normal_bootstrap({0.5, 12.0, 1.0}, {0.0, 1.0}, cfg, SupportDirection::SupportsNull);
  const int saved = parallel::max_threads();
  parallel::set_threads(1);
  const EstimateSeries one = run_replicated(cfg, sc);
  const ConcordanceProfile e1 = exact_profile_beta_two({4, 6}, {9, 1}, {0.4, 0.4}, 150);
  parallel::set_threads(4);
  const EstimateSeries four = run_replicated(cfg, sc);
  const ConcordanceProfile e4 = exact_profile_beta_two({4, 6}, {9, 1}, {0.4, 0.4}, 150);
  parallel::set_threads(saved);
  bool det_ok = one.per_replicate.size() == four.per_replicate.size() &&
                same_bits(e1.u_bayes, e4.u_bayes) && same_bits(e1.kappa, e4.kappa);
  for (std::size_t i = 0; det_ok && i < one.per_replicate.size(); ++i) {
    det_ok = one.per_replicate[i].ess == four.per_replicate[i].ess &&
             same_bits(one.per_replicate[i].diagnostics.at("u_bayes"),
                       four.per_replicate[i].diagnostics.at("u_bayes")) &&
             same_bits(one.per_replicate[i].diagnostics.at("kappa"),
                       four.per_replicate[i].diagnostics.at("kappa"));
  }
  ss << ", threads 1 vs 4 bit-identical " << (det_ok ? "ok" : "FAIL");

  // Flat-prior limits.
  const Count normal_flat = grid_ess(exact_profile_normal({0.7, 1e-9, 1.0}, {0.0, 1.0}, 100),
                                     SupportDirection::SupportsNull, EssMethod::ClosedForm);
  RunConfig lc;
  lc.replicates = 3;
  lc.bootstrap_count = 2000;
  const EstimateSeries lin = run_replicated(
      lc, two_group_bootstrap({0.5, 1e12}, {0.0, 0.3, 1.0}, lc, SupportDirection::SupportsAlternative));
  const double reim = reimherr_mse_ess_exact(NormalPrior{0.4, 1e-9, 1.0}, NormalTruth{0.0, 1.0},
                                             100, {1, 2000})
                          .ess;
  const bool flat_ok = normal_flat == 0 && lin.mean_ess == 0.0 && std::fabs(reim) <= 1.0;
  ss << ", flat limits (normal " << normal_flat << ", linreg " << fmt(lin.mean_ess) << ", reimherr "
     << fmt(reim) << ") " << (flat_ok ? "ok" : "FAIL");
  return {grid_ok && swap_ok && det_ok && flat_ok, ss.str()};
}

Outcome c12_audit() {
  const Table t = run_scenario("audit_trib3");
  const double ess = t.at(3, "ess");
  const double zb = t.at(3, "mean_abs_z_bayes");
  const double zf = std::fabs(t.at(3, "z_freq"));
  // "Order 10^2": log10(ESS) within half a decade of 2.
  const bool order = ess > 0 && std::fabs(std::log10(ess) - 2.0) <= 0.5;
  bool mono = true;
  for (std::size_t i = 1; i < t.row_count(); ++i) mono = mono && t.at(i, "ess") > t.at(i - 1, "ess");
  std::ostringstream ss;
  ss << "prior N(0.08, 1/100): ESS " << ess << " (need 32..316), mean|Z_B| " << fmt(zb)
     << " vs |Z_F| " << fmt(zf) << "; ESS across priors 0.04/0.06/0.07/0.08: " << t.at(0, "ess")
     << ", " << t.at(1, "ess") << ", " << t.at(2, "ess") << ", " << ess
     << (mono ? " increasing" : " NOT increasing");
  return {order && zb > zf && mono, ss.str()};
}

}  // namespace

int main() {
  parallel::apply_thread_env();
  std::printf("esslab acceptance (threads: %d)\n", parallel::max_threads());

  report(1, "normal closed form", c1_normal_closed_form);
  report(2, "distance-curve minima", c2_fig1);
  report(3, "Monte Carlo vs oracle", c3_mc_vs_oracle);
  report(4, "two-sample rows, theta=0.4", [] {
    return spot_rows({{{4, 6}, {4, 6}, 10}, {{2, 3}, {2, 3}, 5}, {{0.4, 0.6}, {0.4, 0.6}, 1},
                      {{4, 6}, {9, 1}, -35}},
                     {0.4, 0.4}, SupportDirection::SupportsNull, 2);
  });
  report(5, "two-sample rows, theta=0.7/0.2", [] {
    return spot_rows({{{7, 3}, {2, 8}, 9}, {{7, 3}, {7, 3}, -16}, {{9, 1}, {1, 9}, 27},
                      {{6, 4}, {5, 5}, -11}},
                     {0.7, 0.2}, SupportDirection::SupportsAlternative, 3);
  });
  report(6, "bootstrap sweep, normal, no deviation", c6_normal_no_deviation);
  report(7, "bootstrap sweep, normal, delta=0.5", c7_normal_deviation);
  report(8, "bootstrap sweeps, beta", c8_beta_sweeps);
  report(9, "Morita baseline", c9_morita);
  report(10, "Reimherr baseline sign and trend", c10_reimherr);
  report(11, "properties", c11_properties);
  report(12, "prior audit on synthetic data", c12_audit);

  std::printf("%d of 12 criteria failed\n", g_failed);
  return g_failed == 0 ? 0 : 1;
}
