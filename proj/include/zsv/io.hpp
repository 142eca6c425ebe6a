#pragma once

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <variant>

#include "zsv/correlation.hpp"
#include "zsv/equilibrium.hpp"
#include "zsv/model.hpp"
#include "zsv/simulate.hpp"

namespace zsv {

using Json = nlohmann::ordered_json;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Scenario {
  enum class Kind { Binary, Explicit, Elite, Population } kind;
  std::variant<BinaryChoiceSpec, ExplicitProblem, EliteSpec, PopulationSpec> payload;
};

Scenario parse_scenario(const Json& j);
Scenario load_scenario(const std::string& path);
Json scenario_to_json(const Scenario& s);

// 12 significant digits, the machine-output float contract
std::string format_double(double x);

Json correlation_report_to_json(const CorrelationReport& rep);
CorrelationReport correlation_report_from_json(const Json& j);
std::string correlation_report_text(const CorrelationReport& rep);

Json equilibrium_result_to_json(const EquilibriumResult& res);
std::string equilibrium_result_text(const EquilibriumResult& res);
// one row per voter: voter, sigma_i, Pi_i, margin
std::string equilibrium_result_csv(const EquilibriumResult& res);

Json outcome_to_json(const OutcomeDistribution& out);
std::string outcome_text(const OutcomeDistribution& out);

std::string validation_report_text(const ValidationReport& rep);

// header "param,profile,pi_min_margin,is_equilibrium,p_star_win"
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace zsv
