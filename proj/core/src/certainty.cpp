#include "erisk/certainty.hpp"

#include <algorithm>

#include "erisk/error.hpp"

namespace erisk::certainty {

namespace {

void check_unit(double value, const std::string& what) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw ValidationError(what, "must lie in [0, 1], got " + std::to_string(value));
  }
}

void check_alphas(std::span<const double> alphas) {
  if (alphas.empty()) throw ValidationError("alphas", "at least one antecedent is required");
  for (double a : alphas) check_unit(a, "alpha");
}

}  // namespace

std::string_view to_string(RuleForm form) noexcept {
  switch (form) {
    case RuleForm::kConjunctive: return "type1";
    case RuleForm::kFanOut: return "type2";
    case RuleForm::kDisjunctive: return "type3";
  }
  return "type3";
}

std::optional<RuleForm> parse_rule_form(std::string_view text) noexcept {
  if (text == "type1" || text == "conjunctive") return RuleForm::kConjunctive;
  if (text == "type2" || text == "fan-out") return RuleForm::kFanOut;
  if (text == "type3" || text == "disjunctive") return RuleForm::kDisjunctive;
  return std::nullopt;
}

double propagate_conjunctive(std::span<const double> alphas, double beta) {
  check_alphas(alphas);
  check_unit(beta, "beta");
  return *std::min_element(alphas.begin(), alphas.end()) * beta;
}

std::vector<double> propagate_fan_out(double alpha, std::span<const double> betas) {
  check_unit(alpha, "alpha");
  if (betas.empty()) throw ValidationError("betas", "a fan-out rule needs at least one consequent");
  std::vector<double> out;
  out.reserve(betas.size());
  for (double beta : betas) {
    check_unit(beta, "beta");
    out.push_back(alpha * beta);
  }
  return out;
}

double propagate_disjunctive(std::span<const double> alphas, double beta) {
  check_alphas(alphas);
  check_unit(beta, "beta");
  return *std::max_element(alphas.begin(), alphas.end()) * beta;
}

void BeliefAssignment::set(std::string variable, std::string term, double alpha) {
  check_unit(alpha, "beliefs." + variable + "." + term);
  values_[TermRef{std::move(variable), std::move(term)}] = alpha;
}

std::optional<double> BeliefAssignment::get(std::string_view variable,
                                            std::string_view term) const {
  auto it = values_.find(TermRef{std::string(variable), std::string(term)});
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

BeliefAssignment BeliefAssignment::from_degrees(const fuzzy::FuzzifiedInputs& fuzzified) {
  BeliefAssignment beliefs;
  for (const auto& [variable, degrees] : fuzzified) {
    for (const auto& [term, degree] : degrees) beliefs.set(variable, term, degree);
  }
  return beliefs;
}

CFRule::CFRule(std::string id, RuleForm form, std::vector<TermRef> antecedents,
               std::vector<TermRef> consequents, std::vector<double> betas)
    : id_(std::move(id)),
      form_(form),
      antecedents_(std::move(antecedents)),
      consequents_(std::move(consequents)),
      betas_(std::move(betas)) {
  const std::string where = "cf_rules[" + id_ + "]";
  if (antecedents_.empty()) throw ValidationError(where, "needs at least one antecedent");
  if (consequents_.empty()) throw ValidationError(where, "needs at least one consequent");
  if (form_ == RuleForm::kFanOut) {
    if (antecedents_.size() != 1) {
      throw ValidationError(where, "a type2 rule has exactly one antecedent");
    }
    if (betas_.size() != consequents_.size()) {
      throw ValidationError(where, "a type2 rule needs one beta per consequent");
    }
  } else if (betas_.size() != 1) {
    throw ValidationError(where, "type1/type3 rules carry a single beta");
  }
  for (double beta : betas_) check_unit(beta, where + ".beta");
}

std::vector<double> CFRule::propagate(std::span<const double> alphas) const {
  if (alphas.size() != antecedents_.size()) {
    throw ValidationError("cf_rules[" + id_ + "]", "expected " +
                                                       std::to_string(antecedents_.size()) +
                                                       " antecedent beliefs");
  }
  switch (form_) {
    case RuleForm::kConjunctive:
      return std::vector<double>(consequents_.size(), propagate_conjunctive(alphas, betas_[0]));
    case RuleForm::kFanOut:
      return propagate_fan_out(alphas[0], betas_);
    case RuleForm::kDisjunctive:
      return std::vector<double>(consequents_.size(), propagate_disjunctive(alphas, betas_[0]));
  }
  return {};
}

CFRule normalize(const fuzzy::FuzzyRule& rule, std::string_view risk) {
  using Kind = fuzzy::Antecedent::Kind;
  const auto& root = rule.antecedent;
  std::vector<TermRef> antecedents;
  RuleForm form = RuleForm::kConjunctive;
  if (root.kind() == Kind::kAtom) {
    antecedents.push_back({root.as_atom().variable, root.as_atom().term});
  } else {
    form = root.kind() == Kind::kAllOf ? RuleForm::kConjunctive : RuleForm::kDisjunctive;
    for (const auto& child : root.children()) {
      if (child.kind() != Kind::kAtom) {
        throw ValidationError("rules[" + rule.id + "]",
                              "nested AND/OR trees cannot be normalized to a CF rule type");
      }
      antecedents.push_back({child.as_atom().variable, child.as_atom().term});
    }
  }
  return CFRule(rule.id, form, std::move(antecedents), {{std::string(risk), rule.consequent}},
                {rule.beta});
}

RiskCertainty risk_cf(std::string_view risk, std::span<const CFRule> rules,
                      std::string_view designated, const BeliefAssignment& beliefs) {
  const std::string where = "risks[" + std::string(risk) + "].cf_rule";
  if (designated.empty()) throw ValidationError(where, "no CF-bearing rule designated");
  auto rule = std::find_if(rules.begin(), rules.end(),
                           [&](const CFRule& r) { return r.id() == designated; });
  if (rule == rules.end()) {
    throw ValidationError(where, "designated rule '" + std::string(designated) + "' not found");
  }
  const auto& consequents = rule->consequents();
  auto target = std::find_if(consequents.begin(), consequents.end(),
                             [&](const TermRef& c) { return c.variable == risk; });
  if (target == consequents.end()) {
    throw ValidationError(where, "rule '" + rule->id() + "' does not conclude about this risk");
  }

  RiskCertainty out;
  out.rule_id = rule->id();
  out.form = rule->form();
  for (const auto& a : rule->antecedents()) {
    auto alpha = beliefs.get(a.variable, a.term);
    if (!alpha) {
      throw ValidationError(where, "missing belief for antecedent " + a.variable + "." + a.term);
    }
    out.alphas.push_back(*alpha);
  }
  out.cf = rule->propagate(out.alphas)[static_cast<std::size_t>(target - consequents.begin())];
  return out;
}

}  // namespace erisk::certainty
