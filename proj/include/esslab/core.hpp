#pragma once

// Concordance metrics, the distance curve over the frequentist sample size,
// its minimizer, and the signed effective-sample-size conventions shared by
// every model family.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace esslab {

using Count = std::int64_t;

enum class Family { NormalOneSample, BetaOneSample, BetaTwoSample, LinRegTwoGroup };

std::string_view to_string(Family family);

// One-sided test H0: param <= boundary vs H1: param > boundary. Two-sample
// equality-of-rates tests carry no boundary.
struct HypothesisSpec {
  Family family = Family::NormalOneSample;
  std::optional<double> null_boundary = 0.0;

  void validate() const;
};

enum class SupportDirection { SupportsNull, SupportsAlternative };

std::string_view to_string(SupportDirection direction);
SupportDirection parse_direction(std::string_view text);

// Sufficient statistics of the distance curve. The frequentist second moment
// is linear in the hypothetical sample size: U_F(n_tilde) = n_tilde * kappa.
struct ConcordanceProfile {
  double u_bayes = 0.0;
  double kappa = 1.0;
  Count n = 1;
  double se_u_bayes = 0.0;
  double se_kappa = 0.0;

  void validate() const;
  double continuous_minimizer() const { return u_bayes / kappa; }
};

enum class EssMethod { ClosedForm, ExactEnumeration, MonteCarlo, Bootstrap };

std::string_view to_string(EssMethod method);

struct GridBounds {
  Count lo = 1;
  Count hi = 2000;

  void validate() const;
  // [1, 20 n]: the minimizer can sit far above n for strongly conflicting priors.
  static GridBounds default_for(Count n) { return {1, 20 * n}; }
};

struct Minimizer {
  Count n_tilde_star = 1;
  double n_tilde_continuous = 0.0;
  bool at_boundary = false;
};

struct EssEstimate {
  Count n = 1;
  Count n_tilde_star = 1;
  double n_tilde_continuous = 0.0;
  Count ess = 0;
  SupportDirection direction = SupportDirection::SupportsNull;
  EssMethod method = EssMethod::ClosedForm;
  std::map<std::string, double> diagnostics;

  bool at_boundary() const;
  // ESS implied by the continuous minimizer, before grid rounding.
  double ess_continuous() const;
};

double distance(const ConcordanceProfile& profile, Count n_tilde);

// Scans the integer grid for the smallest distance (ties go to the smaller
// n_tilde). A continuous minimizer outside [lo, hi] sets at_boundary rather
// than being silently clamped.
Minimizer minimize_distance(const ConcordanceProfile& profile, GridBounds grid);

EssEstimate ess_from_minimizer(Count n, Count n_tilde_star, SupportDirection direction);

// minimize_distance + ess_from_minimizer, with the profile's standard errors
// and the boundary flag copied into diagnostics.
EssEstimate estimate_ess(const ConcordanceProfile& profile, GridBounds grid,
                         SupportDirection direction, EssMethod method);

}  // namespace esslab
