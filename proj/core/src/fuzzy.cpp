#include "erisk/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "erisk/error.hpp"

namespace erisk::fuzzy {

namespace {

bool finite(double x) { return std::isfinite(x); }

std::string format_triple(double a, double b, double c) {
  return "(" + std::to_string(a) + ", " + std::to_string(b) + ", " + std::to_string(c) + ")";
}

}  // namespace

TriangularMF::TriangularMF(double a, double b, double c) : a_(a), b_(b), c_(c) {
  if (!finite(a) || !finite(b) || !finite(c)) {
    throw ValidationError("", "membership function parameters must be finite");
  }
  if (a > b || b > c) {
    throw ValidationError("", "triangular membership function requires a <= b <= c, got " +
                                  format_triple(a, b, c));
  }
}

double TriangularMF::membership(double x) const noexcept {
  if (!(x >= a_ && x <= c_)) return 0.0;
  // x < b implies a < b, x > b implies b < c, so neither branch divides by zero.
  if (x < b_) return (x - a_) / (b_ - a_);
  if (x > b_) return (c_ - x) / (c_ - b_);
  return 1.0;
}

LinguisticVariable::LinguisticVariable(std::string name, Interval universe, std::vector<Term> terms)
    : name_(std::move(name)), universe_(universe), terms_(std::move(terms)) {
  if (name_.empty()) throw ValidationError("", "linguistic variable needs a name");
  if (!finite(universe_.lo) || !finite(universe_.hi) || !(universe_.lo < universe_.hi)) {
    throw ValidationError(name_, "universe must be a finite interval with lo < hi");
  }
  if (terms_.empty()) throw ValidationError(name_, "at least one term is required");
  std::set<std::string, std::less<>> seen;
  for (const auto& term : terms_) {
    if (term.name.empty()) throw ValidationError(name_, "term names must be non-empty");
    if (!seen.insert(term.name).second) {
      throw ValidationError(name_ + "." + term.name, "duplicate term name");
    }
    if (term.mf.a() < universe_.lo || term.mf.c() > universe_.hi) {
      throw ValidationError(name_ + "." + term.name,
                            "membership support " +
                                format_triple(term.mf.a(), term.mf.b(), term.mf.c()) +
                                " leaves the universe [" + std::to_string(universe_.lo) + ", " +
                                std::to_string(universe_.hi) + "]");
    }
  }
}

const TriangularMF* LinguisticVariable::find(std::string_view term) const noexcept {
  for (const auto& t : terms_) {
    if (t.name == term) return &t.mf;
  }
  return nullptr;
}

TermDegrees LinguisticVariable::fuzzify(double x) const {
  if (!finite(x) || !universe_.contains(x)) {
    throw OutOfRangeError(name_, "value " + std::to_string(x) + " is outside the universe [" +
                                     std::to_string(universe_.lo) + ", " +
                                     std::to_string(universe_.hi) + "]");
  }
  TermDegrees degrees;
  for (const auto& term : terms_) degrees.emplace(term.name, term.mf.membership(x));
  return degrees;
}

Antecedent Antecedent::atom(std::string variable, std::string term) {
  Antecedent node;
  node.kind_ = Kind::kAtom;
  node.atom_ = Atom{std::move(variable), std::move(term)};
  return node;
}

Antecedent Antecedent::all_of(std::vector<Antecedent> children) {
  if (children.empty()) throw ValidationError("", "an AND node needs at least one operand");
  Antecedent node;
  node.kind_ = Kind::kAllOf;
  node.children_ = std::move(children);
  return node;
}

Antecedent Antecedent::any_of(std::vector<Antecedent> children) {
  if (children.empty()) throw ValidationError("", "an OR node needs at least one operand");
  Antecedent node;
  node.kind_ = Kind::kAnyOf;
  node.children_ = std::move(children);
  return node;
}

double firing_strength(const Antecedent& antecedent, const FuzzifiedInputs& fuzzified) {
  switch (antecedent.kind()) {
    case Antecedent::Kind::kAtom: {
      const auto& atom = antecedent.as_atom();
      auto var = fuzzified.find(atom.variable);
      if (var == fuzzified.end()) {
        throw ValidationError(atom.variable, "no fuzzified degrees for variable");
      }
      auto degree = var->second.find(atom.term);
      if (degree == var->second.end()) {
        throw ValidationError(atom.variable + "." + atom.term, "unknown term");
      }
      return degree->second;
    }
    case Antecedent::Kind::kAllOf: {
      double strength = 1.0;
      for (const auto& child : antecedent.children()) {
        strength = std::min(strength, firing_strength(child, fuzzified));
      }
      return strength;
    }
    case Antecedent::Kind::kAnyOf: {
      double strength = 0.0;
      for (const auto& child : antecedent.children()) {
        strength = std::max(strength, firing_strength(child, fuzzified));
      }
      return strength;
    }
  }
  return 0.0;
}

double firing_strength(const FuzzyRule& rule, const FuzzifiedInputs& fuzzified) {
  try {
    return firing_strength(rule.antecedent, fuzzified);
  } catch (const ValidationError& e) {
    throw ValidationError(entity_path("rules[" + rule.id + "]", e.entity()), e.message());
  }
}

ActivationVector::ActivationVector(const LinguisticVariable& output) {
  entries_.reserve(output.terms().size());
  for (const auto& term : output.terms()) entries_.emplace_back(term.name, 0.0);
}

ActivationVector::ActivationVector(std::vector<std::pair<std::string, double>> entries)
    : entries_(std::move(entries)) {
  for (const auto& [term, value] : entries_) {
    if (!(value >= 0.0 && value <= 1.0)) {
      throw ValidationError(term, "activation must lie in [0, 1]");
    }
  }
}

std::optional<double> ActivationVector::find(std::string_view term) const noexcept {
  for (const auto& [name, value] : entries_) {
    if (name == term) return value;
  }
  return std::nullopt;
}

double ActivationVector::at(std::string_view term) const {
  if (auto v = find(term)) return *v;
  throw ValidationError(std::string(term), "not an output term");
}

void ActivationVector::raise(std::string_view term, double value) {
  for (auto& [name, strength] : entries_) {
    if (name == term) {
      strength = std::max(strength, value);
      return;
    }
  }
  throw ValidationError(std::string(term), "not an output term");
}

bool ActivationVector::any_positive() const noexcept {
  return std::any_of(entries_.begin(), entries_.end(),
                     [](const auto& entry) { return entry.second > 0.0; });
}

ActivationVector aggregate(std::span<const RuleFiring> firings, const LinguisticVariable& output) {
  ActivationVector activations(output);
  for (const auto& firing : firings) {
    if (!output.has_term(firing.consequent)) {
      throw ValidationError("rules[" + firing.rule_id + "]",
                            "consequent '" + firing.consequent + "' is not a term of output '" +
                                output.name() + "'");
    }
    activations.raise(firing.consequent, std::clamp(firing.strength, 0.0, 1.0));
  }
  return activations;
}

DiscretizedFuzzySet::DiscretizedFuzzySet(const ActivationVector& activations,
                                         const LinguisticVariable& output, int resolution) {
  if (resolution < kMinResolution) {
    throw ValidationError("resolution", "must be at least " + std::to_string(kMinResolution));
  }
  std::vector<std::pair<const TriangularMF*, double>> clipped;
  for (const auto& [term, strength] : activations.entries()) {
    const auto* mf = output.find(term);
    if (mf == nullptr) {
      throw ValidationError(term, "activation for a term missing from output '" + output.name() +
                                      "'");
    }
    if (strength > 0.0) clipped.emplace_back(mf, strength);
  }

  const auto n = static_cast<std::size_t>(resolution);
  const double lo = output.universe().lo;
  const double step = output.universe().width() / static_cast<double>(n - 1);
  y_.resize(n);
  mu_.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    // Pin the last sample to hi exactly instead of accumulating rounding.
    y_[i] = (i + 1 == n) ? output.universe().hi : lo + step * static_cast<double>(i);
    double m = 0.0;
    for (const auto& [mf, strength] : clipped) m = std::max(m, std::min(strength, mf->membership(y_[i])));
    mu_[i] = m;
  }
}

double DiscretizedFuzzySet::centroid() const {
  double weighted = 0.0;
  double mass = 0.0;
  for (std::size_t i = 0; i < y_.size(); ++i) {
    weighted += mu_[i] * y_[i];
    mass += mu_[i];
  }
  if (!(mass > 0.0)) throw NoRuleFiredError("no rule fired: aggregated output set is empty");
  return weighted / mass;
}

double defuzzify_centroid(const ActivationVector& activations, const LinguisticVariable& output,
                          int resolution) {
  if (!activations.any_positive()) {
    throw NoRuleFiredError("no rule fired for output '" + output.name() + "'");
  }
  return DiscretizedFuzzySet(activations, output, resolution).centroid();
}

RuleBase::RuleBase(std::vector<LinguisticVariable> inputs, LinguisticVariable output,
                   std::vector<FuzzyRule> rules)
    : inputs_(std::move(inputs)), output_(std::move(output)), rules_(std::move(rules)) {
  std::set<std::string, std::less<>> names;
  for (const auto& var : inputs_) {
    if (!names.insert(var.name()).second) throw ValidationError(var.name(), "duplicate variable");
  }
  std::set<std::string, std::less<>> ids;
  for (const auto& rule : rules_) {
    const std::string where = "rules[" + rule.id + "]";
    if (rule.id.empty()) throw ValidationError("rules", "rule id must be non-empty");
    if (!ids.insert(rule.id).second) throw ValidationError(where, "duplicate rule id");
    if (!(rule.beta >= 0.0 && rule.beta <= 1.0)) {
      throw ValidationError(where, "beta must lie in [0, 1]");
    }
    if (!output_.has_term(rule.consequent)) {
      throw ValidationError(where, "consequent '" + rule.consequent + "' is not a term of output '" +
                                       output_.name() + "'");
    }
    rule.antecedent.for_each_atom([&](const Atom& atom) {
      const auto* var = find_input(atom.variable);
      if (var == nullptr) {
        throw ValidationError(where, "unknown variable '" + atom.variable + "'");
      }
      if (!var->has_term(atom.term)) {
        throw ValidationError(where, "unknown term '" + atom.term + "' for variable '" +
                                         atom.variable + "'");
      }
    });
  }
}

const LinguisticVariable* RuleBase::find_input(std::string_view name) const noexcept {
  for (const auto& var : inputs_) {
    if (var.name() == name) return &var;
  }
  return nullptr;
}

FuzzifiedInputs fuzzify_inputs(const RuleBase& rules, const CrispInputs& inputs) {
  FuzzifiedInputs fuzzified;
  for (const auto& [name, value] : inputs) {
    const auto* var = rules.find_input(name);
    if (var == nullptr) throw ValidationError("inputs." + name, "unknown variable");
    fuzzified.emplace(name, var->fuzzify(value));
  }
  for (const auto& rule : rules.rules()) {
    rule.antecedent.for_each_atom([&](const Atom& atom) {
      if (!fuzzified.contains(atom.variable)) {
        throw ValidationError(atom.variable, "missing input value (needed by rule " + rule.id + ")");
      }
    });
  }
  return fuzzified;
}

std::vector<RuleFiring> fire_rules(const RuleBase& rules, const FuzzifiedInputs& fuzzified) {
  std::vector<RuleFiring> firings;
  firings.reserve(rules.rules().size());
  for (const auto& rule : rules.rules()) {
    firings.push_back({rule.id, rule.consequent, firing_strength(rule, fuzzified)});
  }
  return firings;
}

InferenceResult infer_fuzzified(const RuleBase& rules, FuzzifiedInputs fuzzified, int resolution) {
  InferenceResult result;
  result.firings = fire_rules(rules, fuzzified);
  result.activations = aggregate(result.firings, rules.output());
  result.fuzzified = std::move(fuzzified);
  result.erm = defuzzify_centroid(result.activations, rules.output(), resolution);
  return result;
}

InferenceResult infer(const RuleBase& rules, const CrispInputs& inputs, int resolution) {
  return infer_fuzzified(rules, fuzzify_inputs(rules, inputs), resolution);
}

}  // namespace erisk::fuzzy
