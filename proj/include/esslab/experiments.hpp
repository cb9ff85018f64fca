#pragma once

// Scenario registry: every reproduced figure and table, plus generic sweep
// scenarios built from JSON configs.

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "esslab/baselines.hpp"
#include "esslab/families.hpp"
#include "esslab/table.hpp"

namespace esslab {

enum class Engine { ClosedForm, Enumeration, MonteCarlo, Bootstrap };

std::string_view to_string(Engine engine);
Engine parse_engine(std::string_view text);

using ScenarioTruth =
    std::variant<NormalTruth, BernoulliTruth, BernoulliPairTruth, TwoGroupNormalTruth>;

// Sweeps the prior strength: m for normal priors, a + b (mean held) for
// beta priors, sigma^2 / var1 for slope priors. Both priors of a two-sample
// family are swept together.
struct Sweep {
  std::vector<double> values;
};

struct Scenario {
  std::string id;
  std::string description;
  Family family = Family::NormalOneSample;
  std::vector<PriorSpec> priors;
  ScenarioTruth truth = NormalTruth{};
  HypothesisSpec hypothesis;
  SupportDirection direction = SupportDirection::SupportsNull;
  Engine engine = Engine::ClosedForm;
  RunConfig config;
  std::optional<Sweep> sweep;
  bool baselines = false;

  void validate() const;
};

// Result of one scenario point.
struct PointResult {
  double ess = 0.0;  // grid ESS (mean over replicates for simulated engines)
  double sd = 0.0;
  Count n_failed = 0;
  std::vector<double> per_replicate;
  EssEstimate first;  // the first (or only) estimate, for diagnostics
};

// Evaluates the scenario at its priors as given (no sweep).
PointResult run_point(const Scenario& scenario);

// Columns: sweep_param, ess_pvalue, [ess_reimherr, ess_morita], sd, n_failed.
Table run_sweep(const Scenario& scenario);

Scenario scenario_from_json(const nlohmann::json& doc);
nlohmann::json scenario_to_json(const Scenario& scenario);

struct RunOverrides {
  std::optional<Count> replicates;
  std::optional<Count> bootstrap_count;
  std::optional<Count> pool_size;
  std::optional<std::uint64_t> seed;
  std::function<void(const std::string&)> progress;
};

struct ScenarioInfo {
  std::string id;
  std::string description;
  Engine engine = Engine::ClosedForm;
};

std::vector<ScenarioInfo> list_scenarios();
bool has_scenario(const std::string& id);

// Runs a registered scenario. "table1_row<k>" and "table2_row<k>" select a
// single row of the two-sample tables. Throws UnknownScenario.
Table run_scenario(const std::string& id, const RunOverrides& overrides = {});

// The registered sweep scenarios as Scenario values (tables 4-8).
Scenario registered_sweep(const std::string& id, const RunOverrides& overrides = {});

}  // namespace esslab
