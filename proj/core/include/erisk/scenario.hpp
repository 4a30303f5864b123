#pragma once

// Declarative assessment problems: risks with their input factors, Mamdani
// rules, CF-bearing rule, beliefs, expert comparison matrices and baseline
// readings. Documents are JSON; see docs/scenario-format.md.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "erisk/certainty.hpp"
#include "erisk/fahp.hpp"
#include "erisk/fuzzy.hpp"
#include "erisk/scoring.hpp"

namespace erisk::scenario {

using AliasMap = std::map<std::string, std::string, std::less<>>;

struct FactorInfo {
  std::string label;
  AliasMap aliases;  // rule vocabulary -> declared term, e.g. "unclear" -> "Low"
  friend bool operator==(const FactorInfo&, const FactorInfo&) = default;
};

struct RiskSpec {
  std::string id;
  std::string label;
  fuzzy::RuleBase rule_base;            // factors, output variable and rules
  std::vector<FactorInfo> factor_info;  // parallel to rule_base.inputs()
  bool output_overridden = false;
  std::vector<certainty::CFRule> explicit_cf_rules;
  std::string cf_rule_id;
  certainty::CFRule cf_rule;  // resolved designation
  std::optional<certainty::BeliefAssignment> beliefs;

  const std::vector<fuzzy::LinguisticVariable>& factors() const noexcept {
    return rule_base.inputs();
  }
  friend bool operator==(const RiskSpec&, const RiskSpec&) = default;
};

struct ExpertJudgment {
  std::string name;
  fahp::ComparisonMatrix matrix;
  friend bool operator==(const ExpertJudgment&, const ExpertJudgment&) = default;
};

// risk id -> factor -> crisp value
using InputReading = std::map<std::string, fuzzy::CrispInputs, std::less<>>;

// Literal intermediates that `--paper-mode` substitutes for computed ones.
struct PaperOverrides {
  std::map<std::string, fuzzy::FuzzifiedInputs, std::less<>> memberships;
  std::map<std::string, double, std::less<>> erm;
  std::map<std::string, double, std::less<>> weights;

  bool empty() const noexcept { return memberships.empty() && erm.empty() && weights.empty(); }
  friend bool operator==(const PaperOverrides&, const PaperOverrides&) = default;
};

struct Scenario {
  std::string name;
  std::string description;
  fuzzy::LinguisticVariable output;
  int resolution = fuzzy::kDefaultResolution;
  fahp::ElicitationScale scale;
  std::vector<RiskSpec> risks;
  std::vector<ExpertJudgment> experts;
  InputReading inputs;
  PaperOverrides paper;

  const RiskSpec* find_risk(std::string_view id) const noexcept;
  const RiskSpec& risk(std::string_view id) const;
  std::size_t risk_index(std::string_view id) const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

Scenario from_json(const nlohmann::json& document);
Scenario parse(std::string_view text, std::string_view source = "<memory>");
Scenario load(const std::filesystem::path& path);

// Bundled scenarios, e.g. "patient-dilemma".
std::vector<std::string> builtin_ids();
Scenario builtin(std::string_view id);
// A builtin id if one matches, otherwise a file path.
Scenario resolve(std::string_view id_or_path);

nlohmann::json to_json(const Scenario& scenario);
std::string serialize(const Scenario& scenario);

InputReading parse_inputs(const nlohmann::json& document);
InputReading load_inputs(const std::filesystem::path& path);
// `overrides` entries replace or extend `base`.
InputReading merge_inputs(InputReading base, const InputReading& overrides);

struct AssessOptions {
  bool paper_mode = false;
  std::optional<int> resolution;
};

struct MembershipDiscrepancy {
  std::string factor;
  std::string term;
  double computed = 0.0;
  double pinned = 0.0;
};

struct RiskTrace {
  std::string risk;
  fuzzy::CrispInputs inputs;
  fuzzy::FuzzifiedInputs computed_degrees;
  fuzzy::FuzzifiedInputs degrees;  // what the rules saw
  std::vector<MembershipDiscrepancy> discrepancies;
  std::vector<fuzzy::RuleFiring> firings;
  fuzzy::ActivationVector activations;
  std::optional<double> erm_computed;  // absent only when pinned and no rule fired
  double erm = 0.0;
  bool erm_pinned = false;
  certainty::RiskCertainty certainty;
  bool beliefs_from_degrees = false;
  double woi = 0.0;
  double ers = 0.0;
};

struct WeightTrace {
  std::optional<fahp::ComparisonMatrix> aggregated;  // absent for single-risk scenarios
  std::optional<fahp::WeightReport> report;
  std::optional<fahp::ConsistencyReport> eigen;
  std::optional<fahp::ConsistencyReport> given;
  std::vector<double> computed;
  std::vector<double> used;
  bool pinned = false;
};

struct Assessment {
  std::vector<scoring::RiskAssessment> assessments;  // scenario order
  std::vector<scoring::RiskAssessment> ranking;
  std::vector<RiskTrace> traces;
  WeightTrace weights;
  bool paper_mode = false;
};

WeightTrace compute_weights(const Scenario& scenario, bool paper_mode = false);
Assessment assess(const Scenario& scenario, const InputReading& inputs,
                  const AssessOptions& options = {});

namespace detail {
std::optional<std::string_view> builtin_source(std::string_view id);
std::vector<std::string> builtin_ids();
}  // namespace detail

}  // namespace erisk::scenario
