#pragma once

// Mamdani inference over triangular membership functions: fuzzification,
// min/max rule evaluation, max aggregation, centroid defuzzification.

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace erisk::fuzzy {

// Sample count used for the output universe when a scenario does not set one.
inline constexpr int kDefaultResolution = 1001;
inline constexpr int kMinResolution = 101;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double x) const noexcept { return x >= lo && x <= hi; }
  double width() const noexcept { return hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Triangle with feet a, c and peak b. a == b is a left shoulder (degree 1 from
// a up to the peak), b == c a right shoulder.
class TriangularMF {
 public:
  TriangularMF(double a, double b, double c);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double c() const noexcept { return c_; }

  double membership(double x) const noexcept;

  friend bool operator==(const TriangularMF&, const TriangularMF&) = default;

 private:
  double a_;
  double b_;
  double c_;
};

inline double membership(const TriangularMF& mf, double x) noexcept { return mf.membership(x); }

using TermDegrees = std::map<std::string, double, std::less<>>;
using FuzzifiedInputs = std::map<std::string, TermDegrees, std::less<>>;
using CrispInputs = std::map<std::string, double, std::less<>>;

struct Term {
  std::string name;
  TriangularMF mf;
  friend bool operator==(const Term&, const Term&) = default;
};

class LinguisticVariable {
 public:
  LinguisticVariable(std::string name, Interval universe, std::vector<Term> terms);

  const std::string& name() const noexcept { return name_; }
  const Interval& universe() const noexcept { return universe_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }

  const TriangularMF* find(std::string_view term) const noexcept;
  bool has_term(std::string_view term) const noexcept { return find(term) != nullptr; }

  // One degree per declared term. Throws OutOfRangeError outside the universe.
  TermDegrees fuzzify(double x) const;

  friend bool operator==(const LinguisticVariable&, const LinguisticVariable&) = default;

 private:
  std::string name_;
  Interval universe_;
  std::vector<Term> terms_;
};

struct Atom {
  std::string variable;
  std::string term;
  friend bool operator==(const Atom&, const Atom&) = default;
};

// AND/OR expression tree over (variable, term) atoms.
class Antecedent {
 public:
  enum class Kind { kAtom, kAllOf, kAnyOf };

  static Antecedent atom(std::string variable, std::string term);
  static Antecedent all_of(std::vector<Antecedent> children);
  static Antecedent any_of(std::vector<Antecedent> children);

  Kind kind() const noexcept { return kind_; }
  const Atom& as_atom() const noexcept { return atom_; }
  const std::vector<Antecedent>& children() const noexcept { return children_; }

  template <typename F>
  void for_each_atom(F&& f) const {
    if (kind_ == Kind::kAtom) {
      f(atom_);
      return;
    }
    for (const auto& child : children_) child.for_each_atom(f);
  }

  friend bool operator==(const Antecedent&, const Antecedent&) = default;

 private:
  Antecedent() = default;

  Kind kind_ = Kind::kAtom;
  Atom atom_;
  std::vector<Antecedent> children_;
};

struct FuzzyRule {
  std::string id;
  Antecedent antecedent;
  std::string consequent;
  double beta = 1.0;
  friend bool operator==(const FuzzyRule&, const FuzzyRule&) = default;
};

// AND = min, OR = max, leaf = fuzzified degree.
double firing_strength(const Antecedent& antecedent, const FuzzifiedInputs& fuzzified);
double firing_strength(const FuzzyRule& rule, const FuzzifiedInputs& fuzzified);

struct RuleFiring {
  std::string rule_id;
  std::string consequent;
  double strength = 0.0;
};

// Strength per output term, in the output variable's declaration order.
class ActivationVector {
 public:
  ActivationVector() = default;
  explicit ActivationVector(const LinguisticVariable& output);
  ActivationVector(std::vector<std::pair<std::string, double>> entries);

  const std::vector<std::pair<std::string, double>>& entries() const noexcept { return entries_; }
  std::optional<double> find(std::string_view term) const noexcept;
  double at(std::string_view term) const;
  // strength = max(strength, value)
  void raise(std::string_view term, double value);
  bool any_positive() const noexcept;

  friend bool operator==(const ActivationVector&, const ActivationVector&) = default;

 private:
  std::vector<std::pair<std::string, double>> entries_;
};

ActivationVector aggregate(std::span<const RuleFiring> firings, const LinguisticVariable& output);

// Pointwise max of every output term clipped at its activation, sampled on a
// uniform grid spanning the whole output universe.
class DiscretizedFuzzySet {
 public:
  DiscretizedFuzzySet(const ActivationVector& activations, const LinguisticVariable& output,
                      int resolution);

  std::span<const double> y() const noexcept { return y_; }
  std::span<const double> mu() const noexcept { return mu_; }
  int resolution() const noexcept { return static_cast<int>(y_.size()); }

  // sum(mu*y)/sum(mu). Throws NoRuleFiredError when the set is empty.
  double centroid() const;

 private:
  std::vector<double> y_;
  std::vector<double> mu_;
};

double defuzzify_centroid(const ActivationVector& activations, const LinguisticVariable& output,
                          int resolution = kDefaultResolution);

class RuleBase {
 public:
  RuleBase(std::vector<LinguisticVariable> inputs, LinguisticVariable output,
           std::vector<FuzzyRule> rules);

  const std::vector<LinguisticVariable>& inputs() const noexcept { return inputs_; }
  const LinguisticVariable& output() const noexcept { return output_; }
  const std::vector<FuzzyRule>& rules() const noexcept { return rules_; }
  const LinguisticVariable* find_input(std::string_view name) const noexcept;

  friend bool operator==(const RuleBase&, const RuleBase&) = default;

 private:
  std::vector<LinguisticVariable> inputs_;
  LinguisticVariable output_;
  std::vector<FuzzyRule> rules_;
};

struct InferenceResult {
  FuzzifiedInputs fuzzified;
  std::vector<RuleFiring> firings;
  ActivationVector activations;
  double erm = 0.0;
};

FuzzifiedInputs fuzzify_inputs(const RuleBase& rules, const CrispInputs& inputs);
std::vector<RuleFiring> fire_rules(const RuleBase& rules, const FuzzifiedInputs& fuzzified);

// Rule evaluation onward, starting from already-fuzzified degrees.
InferenceResult infer_fuzzified(const RuleBase& rules, FuzzifiedInputs fuzzified,
                                int resolution = kDefaultResolution);
InferenceResult infer(const RuleBase& rules, const CrispInputs& inputs,
                      int resolution = kDefaultResolution);

}  // namespace erisk::fuzzy
