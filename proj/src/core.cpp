#include "esslab/core.hpp"

#include <cmath>

#include "esslab/error.hpp"

namespace esslab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::MinimizerAtBoundary: return "MinimizerAtBoundary";
    case ErrorCode::EnumerationCapExceeded: return "EnumerationCapExceeded";
    case ErrorCode::DegenerateVariance: return "DegenerateVariance";
    case ErrorCode::AllDrawsDegenerate: return "AllDrawsDegenerate";
    case ErrorCode::UnsupportedFamily: return "UnsupportedFamily";
    case ErrorCode::UnknownScenario: return "UnknownScenario";
    case ErrorCode::ColumnMissing: return "ColumnMissing";
    case ErrorCode::DegenerateDesign: return "DegenerateDesign";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

std::string_view to_string(Family family) {
  switch (family) {
    case Family::NormalOneSample: return "normal";
    case Family::BetaOneSample: return "beta1";
    case Family::BetaTwoSample: return "beta2";
    case Family::LinRegTwoGroup: return "linreg";
  }
  return "unknown";
}

std::string_view to_string(SupportDirection direction) {
  return direction == SupportDirection::SupportsNull ? "null" : "alternative";
}

SupportDirection parse_direction(std::string_view text) {
  if (text == "null" || text == "supports-null" || text == "SupportsNull") {
    return SupportDirection::SupportsNull;
  }
  if (text == "alternative" || text == "alt" || text == "supports-alternative" ||
      text == "SupportsAlternative") {
    return SupportDirection::SupportsAlternative;
  }
  fail(ErrorCode::InvalidArgument, "direction must be 'null' or 'alternative', got '" +
                                       std::string(text) + "'");
}

std::string_view to_string(EssMethod method) {
  switch (method) {
    case EssMethod::ClosedForm: return "closed-form";
    case EssMethod::ExactEnumeration: return "enumeration";
    case EssMethod::MonteCarlo: return "monte-carlo";
    case EssMethod::Bootstrap: return "bootstrap";
  }
  return "unknown";
}

void HypothesisSpec::validate() const {
  if (family == Family::BetaTwoSample) return;
  require(null_boundary.has_value(), "null_boundary", "is required for this family");
  require(std::isfinite(*null_boundary), "null_boundary", "must be finite");
  if (family == Family::BetaOneSample) {
    require(*null_boundary > 0.0 && *null_boundary < 1.0, "null_boundary",
            "must lie in (0,1) for a Bernoulli rate");
  }
}

void ConcordanceProfile::validate() const {
  require(std::isfinite(u_bayes) && u_bayes >= 0.0, "u_bayes", "must be finite and >= 0");
  require(std::isfinite(kappa) && kappa > 0.0, "kappa", "must be finite and > 0");
  require(n >= 1, "n", "must be >= 1");
  require(se_u_bayes >= 0.0 && se_kappa >= 0.0, "se", "must be >= 0");
}

void GridBounds::validate() const {
  require(lo >= 1, "grid.lo", "must be >= 1");
  require(hi >= lo, "grid.hi", "must be >= grid.lo");
}

bool EssEstimate::at_boundary() const {
  auto it = diagnostics.find("at_boundary");
  return it != diagnostics.end() && it->second != 0.0;
}

double EssEstimate::ess_continuous() const {
  const double nd = static_cast<double>(n);
  return direction == SupportDirection::SupportsNull ? nd - n_tilde_continuous
                                                     : n_tilde_continuous - nd;
}

double distance(const ConcordanceProfile& profile, Count n_tilde) {
  return std::abs(profile.u_bayes - static_cast<double>(n_tilde) * profile.kappa);
}

Minimizer minimize_distance(const ConcordanceProfile& profile, GridBounds grid) {
  profile.validate();
  grid.validate();

  Minimizer result;
  result.n_tilde_continuous = profile.continuous_minimizer();
  result.at_boundary = result.n_tilde_continuous < static_cast<double>(grid.lo) ||
                       result.n_tilde_continuous > static_cast<double>(grid.hi);

  Count best = grid.lo;
  double best_distance = distance(profile, grid.lo);
  for (Count k = grid.lo + 1; k <= grid.hi; ++k) {
    const double d = distance(profile, k);
    if (d < best_distance) {
      best = k;
      best_distance = d;
    } else if (static_cast<double>(k) > result.n_tilde_continuous) {
      break;  // convex in k: past the minimizer the distance only grows
    }
  }
  result.n_tilde_star = best;
  return result;
}

EssEstimate ess_from_minimizer(Count n, Count n_tilde_star, SupportDirection direction) {
  require(n >= 1, "n", "must be >= 1");
  require(n_tilde_star >= 1, "n_tilde_star", "must be >= 1");
  EssEstimate est;
  est.n = n;
  est.n_tilde_star = n_tilde_star;
  est.n_tilde_continuous = static_cast<double>(n_tilde_star);
  est.direction = direction;
  est.ess = direction == SupportDirection::SupportsNull ? n - n_tilde_star : n_tilde_star - n;
  return est;
}

EssEstimate estimate_ess(const ConcordanceProfile& profile, GridBounds grid,
                         SupportDirection direction, EssMethod method) {
  const Minimizer min = minimize_distance(profile, grid);
  EssEstimate est = ess_from_minimizer(profile.n, min.n_tilde_star, direction);
  est.n_tilde_continuous = min.n_tilde_continuous;
  est.method = method;
  est.diagnostics["u_bayes"] = profile.u_bayes;
  est.diagnostics["kappa"] = profile.kappa;
  est.diagnostics["se_u_bayes"] = profile.se_u_bayes;
  est.diagnostics["se_kappa"] = profile.se_kappa;
  est.diagnostics["at_boundary"] = min.at_boundary ? 1.0 : 0.0;
  est.diagnostics["grid_lo"] = static_cast<double>(grid.lo);
  est.diagnostics["grid_hi"] = static_cast<double>(grid.hi);
  return est;
}

}  // namespace esslab
