#pragma once

// Certainty-factor propagation through confidence-weighted rules.
//
//   Type 1 (conjunctive):  P1 ∧ ... ∧ Pj-1 -> Pj ∧ ... ∧ Pk   every consequent gets min(α)·β
//   Type 2 (fan-out):      Pj -> P1, Pj -> P2, ...            k-th consequent gets α·βk
//   Type 3 (disjunctive):  P1 ∨ ... ∨ Pj-1 -> Pj              consequent gets max(α)·β

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "erisk/fuzzy.hpp"

namespace erisk::certainty {

enum class RuleForm { kConjunctive, kFanOut, kDisjunctive };

std::string_view to_string(RuleForm form) noexcept;
std::optional<RuleForm> parse_rule_form(std::string_view text) noexcept;

double propagate_conjunctive(std::span<const double> alphas, double beta);
std::vector<double> propagate_fan_out(double alpha, std::span<const double> betas);
double propagate_disjunctive(std::span<const double> alphas, double beta);

struct TermRef {
  std::string variable;  // factor name for antecedents, risk id for consequents
  std::string term;
  friend auto operator<=>(const TermRef&, const TermRef&) = default;
};

// Degrees of belief keyed by (variable, term).
class BeliefAssignment {
 public:
  BeliefAssignment() = default;

  void set(std::string variable, std::string term, double alpha);
  std::optional<double> get(std::string_view variable, std::string_view term) const;
  bool empty() const noexcept { return values_.empty(); }
  const std::map<TermRef, double>& values() const noexcept { return values_; }

  static BeliefAssignment from_degrees(const fuzzy::FuzzifiedInputs& fuzzified);

  friend bool operator==(const BeliefAssignment&, const BeliefAssignment&) = default;

 private:
  std::map<TermRef, double> values_;
};

class CFRule {
 public:
  // `betas` holds one confidence for Types 1 and 3, one per consequent for Type 2.
  CFRule(std::string id, RuleForm form, std::vector<TermRef> antecedents,
         std::vector<TermRef> consequents, std::vector<double> betas);

  const std::string& id() const noexcept { return id_; }
  RuleForm form() const noexcept { return form_; }
  const std::vector<TermRef>& antecedents() const noexcept { return antecedents_; }
  const std::vector<TermRef>& consequents() const noexcept { return consequents_; }
  const std::vector<double>& betas() const noexcept { return betas_; }

  // Propagated α for each consequent, in order.
  std::vector<double> propagate(std::span<const double> alphas) const;

  friend bool operator==(const CFRule&, const CFRule&) = default;

 private:
  std::string id_;
  RuleForm form_;
  std::vector<TermRef> antecedents_;
  std::vector<TermRef> consequents_;
  std::vector<double> betas_;
};

// Normalizes a flat fuzzy rule into a CF rule concluding (risk, consequent):
// a single atom or a flat AND becomes Type 1, a flat OR becomes Type 3.
// Nested trees are rejected.
CFRule normalize(const fuzzy::FuzzyRule& rule, std::string_view risk);

struct RiskCertainty {
  std::string rule_id;
  RuleForm form = RuleForm::kDisjunctive;
  std::vector<double> alphas;  // antecedent beliefs, in rule order
  double cf = 0.0;
};

// CF of `risk` from the designated rule. Throws ValidationError if the
// designation is missing, the rule does not conclude about `risk`, or a belief
// for one of its antecedents is absent.
RiskCertainty risk_cf(std::string_view risk, std::span<const CFRule> rules,
                      std::string_view designated, const BeliefAssignment& beliefs);

}  // namespace erisk::certainty
