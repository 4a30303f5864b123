#include "erisk/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>
#include <utility>

#include "erisk/error.hpp"

namespace erisk::scenario {

using nlohmann::json;

namespace {

// Pinned and computed memberships closer than this are not reported as discrepancies.
constexpr double kDiscrepancyTolerance = 1e-9;

std::string indexed(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

std::string keyed(const std::string& path, std::string_view key) {
  return path + "[" + std::string(key) + "]";
}

// Runs `f`, re-rooting any ValidationError it throws under `path`.
template <typename F>
auto within(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const OutOfRangeError& e) {
    throw OutOfRangeError(entity_path(path, e.entity()), e.message());
  } catch (const ParseError&) {
    throw;
  } catch (const ValidationError& e) {
    throw ValidationError(entity_path(path, e.entity()), e.message());
  }
}

const char* type_name(const json& j) { return j.type_name(); }

const json& as_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ValidationError(path, std::string("expected an object, got ") + type_name(j));
  return j;
}

const json& as_array(const json& j, const std::string& path) {
  if (!j.is_array()) throw ValidationError(path, std::string("expected an array, got ") + type_name(j));
  return j;
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ValidationError(path, std::string("expected a string, got ") + type_name(j));
  return j.get<std::string>();
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ValidationError(path, std::string("expected a number, got ") + type_name(j));
  double v = j.get<double>();
  if (!std::isfinite(v)) throw ValidationError(path, "expected a finite number");
  return v;
}

const json& require(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(path, std::string("missing required key '") + key + "'");
  return *it;
}

const json* optional_key(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

void check_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                const std::string& path) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ValidationError(path, "unknown key '" + key + "'");
    }
  }
}

std::vector<double> numbers(const json& j, std::size_t count, const std::string& path) {
  as_array(j, path);
  if (j.size() != count) {
    throw ValidationError(path, "expected " + std::to_string(count) + " numbers, got " +
                                    std::to_string(j.size()));
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(as_number(j[i], indexed(path, i)));
  return out;
}

fahp::TFN parse_tfn(const json& j, const std::string& path) {
  auto v = numbers(j, 3, path);
  return within(path, [&] { return fahp::TFN(v[0], v[1], v[2]); });
}

struct ParsedVariable {
  fuzzy::LinguisticVariable variable;
  FactorInfo info;
};

ParsedVariable parse_variable(const json& j, const std::string& path, bool factor) {
  as_object(j, path);
  if (factor) {
    check_keys(j, {"name", "label", "universe", "terms", "aliases"}, path);
  } else {
    check_keys(j, {"name", "universe", "terms"}, path);
  }
  std::string name = as_string(require(j, "name", path), path + ".name");
  const std::string here = factor ? keyed(path.substr(0, path.rfind('[')), name) : path;
  auto universe = numbers(require(j, "universe", here), 2, here + ".universe");

  const auto& terms_json = as_array(require(j, "terms", here), here + ".terms");
  std::vector<fuzzy::Term> terms;
  for (std::size_t i = 0; i < terms_json.size(); ++i) {
    const std::string tp = indexed(here + ".terms", i);
    const auto& t = as_object(terms_json[i], tp);
    check_keys(t, {"name", "mf"}, tp);
    std::string term = as_string(require(t, "name", tp), tp + ".name");
    auto abc = numbers(require(t, "mf", tp), 3, tp + ".mf");
    auto mf = within(tp + ".mf", [&] { return fuzzy::TriangularMF(abc[0], abc[1], abc[2]); });
    terms.push_back({std::move(term), mf});
  }
  auto variable = within(here, [&] {
    return fuzzy::LinguisticVariable(name, {universe[0], universe[1]}, std::move(terms));
  });
  // The variable's own errors already carry its name.
  FactorInfo info;
  if (factor) {
    if (const auto* label = optional_key(j, "label")) info.label = as_string(*label, here + ".label");
    if (const auto* aliases = optional_key(j, "aliases")) {
      as_object(*aliases, here + ".aliases");
      for (const auto& [alias, target] : aliases->items()) {
        const std::string ap = here + ".aliases." + alias;
        std::string term = as_string(target, ap);
        if (!variable.has_term(term)) throw ValidationError(ap, "alias targets unknown term '" + term + "'");
        if (variable.has_term(alias)) throw ValidationError(ap, "alias shadows a declared term");
        info.aliases.emplace(alias, std::move(term));
      }
    }
  }
  return {std::move(variable), std::move(info)};
}

// Factor lookup for one risk with alias resolution.
class FactorTable {
 public:
  FactorTable(const std::vector<fuzzy::LinguisticVariable>& vars, const std::vector<FactorInfo>& info)
      : vars_(vars), info_(info) {}

  std::size_t index(std::string_view var, const std::string& path) const {
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (vars_[i].name() == var) return i;
    }
    throw ValidationError(path, "unknown factor '" + std::string(var) + "'");
  }

  std::string term(std::string_view var, std::string_view term, const std::string& path) const {
    std::size_t i = index(var, path);
    if (vars_[i].has_term(term)) return std::string(term);
    auto it = info_[i].aliases.find(term);
    if (it != info_[i].aliases.end()) return it->second;
    throw ValidationError(path, "unknown term '" + std::string(term) + "' for factor '" +
                                    std::string(var) + "'");
  }

 private:
  const std::vector<fuzzy::LinguisticVariable>& vars_;
  const std::vector<FactorInfo>& info_;
};

fuzzy::Atom parse_atom(const json& j, const FactorTable& table, const std::string& path) {
  as_object(j, path);
  check_keys(j, {"var", "is"}, path);
  std::string var = as_string(require(j, "var", path), path + ".var");
  std::string term = as_string(require(j, "is", path), path + ".is");
  return {var, table.term(var, term, path)};
}

fuzzy::Antecedent parse_antecedent(const json& j, const FactorTable& table, const std::string& path) {
  as_object(j, path);
  for (const char* op : {"and", "or"}) {
    if (const auto* children_json = optional_key(j, op)) {
      if (j.size() != 1) throw ValidationError(path, std::string("'") + op + "' must be the only key");
      const std::string cp = path + "." + op;
      as_array(*children_json, cp);
      std::vector<fuzzy::Antecedent> children;
      for (std::size_t i = 0; i < children_json->size(); ++i) {
        children.push_back(parse_antecedent((*children_json)[i], table, indexed(cp, i)));
      }
      return within(cp, [&] {
        return op[0] == 'a' ? fuzzy::Antecedent::all_of(std::move(children))
                            : fuzzy::Antecedent::any_of(std::move(children));
      });
    }
  }
  auto atom = parse_atom(j, table, path);
  return fuzzy::Antecedent::atom(std::move(atom.variable), std::move(atom.term));
}

double parse_unit(const json& j, const std::string& path) {
  double v = as_number(j, path);
  if (v < 0.0 || v > 1.0) throw ValidationError(path, "must lie in [0, 1]");
  return v;
}

certainty::CFRule parse_cf_rule(const json& j, const FactorTable& table,
                                const fuzzy::LinguisticVariable& output, const std::string& list_path,
                                std::size_t index) {
  std::string path = indexed(list_path, index);
  as_object(j, path);
  std::string id = as_string(require(j, "id", path), path + ".id");
  path = keyed(list_path, id);
  check_keys(j, {"id", "form", "if", "then", "beta", "betas"}, path);
  std::string form_text = as_string(require(j, "form", path), path + ".form");
  auto form = certainty::parse_rule_form(form_text);
  if (!form) throw ValidationError(path + ".form", "unknown rule form '" + form_text + "'");

  std::vector<certainty::TermRef> antecedents;
  const auto& ifs = as_array(require(j, "if", path), path + ".if");
  for (std::size_t i = 0; i < ifs.size(); ++i) {
    auto atom = parse_atom(ifs[i], table, indexed(path + ".if", i));
    antecedents.push_back({atom.variable, atom.term});
  }
  std::vector<certainty::TermRef> consequents;
  const auto& thens = as_array(require(j, "then", path), path + ".then");
  for (std::size_t i = 0; i < thens.size(); ++i) {
    const std::string tp = indexed(path + ".then", i);
    as_object(thens[i], tp);
    check_keys(thens[i], {"risk", "is"}, tp);
    std::string risk = as_string(require(thens[i], "risk", tp), tp + ".risk");
    std::string term = as_string(require(thens[i], "is", tp), tp + ".is");
    if (!output.has_term(term)) throw ValidationError(tp, "unknown output term '" + term + "'");
    consequents.push_back({std::move(risk), std::move(term)});
  }
  std::vector<double> betas;
  const auto* beta = optional_key(j, "beta");
  const auto* beta_list = optional_key(j, "betas");
  if ((beta != nullptr) == (beta_list != nullptr)) {
    throw ValidationError(path, "exactly one of 'beta' or 'betas' is required");
  }
  if (beta != nullptr) {
    betas.push_back(parse_unit(*beta, path + ".beta"));
  } else {
    as_array(*beta_list, path + ".betas");
    for (std::size_t i = 0; i < beta_list->size(); ++i) {
      betas.push_back(parse_unit((*beta_list)[i], indexed(path + ".betas", i)));
    }
  }
  // CFRule's own messages already carry "cf_rules[id]".
  return within(list_path.substr(0, list_path.rfind('.')), [&] {
    return certainty::CFRule(id, *form, std::move(antecedents), std::move(consequents),
                             std::move(betas));
  });
}

RiskSpec parse_risk(const json& j, const fuzzy::LinguisticVariable& shared_output,
                    std::size_t index) {
  std::string path = indexed("risks", index);
  as_object(j, path);
  std::string id = as_string(require(j, "id", path), path + ".id");
  if (id.empty()) throw ValidationError(path + ".id", "risk id must be non-empty");
  path = keyed("risks", id);
  check_keys(j, {"id", "label", "output_variable", "factors", "rules", "cf_rule", "cf_rules", "beliefs"},
             path);
  std::string label;
  if (const auto* l = optional_key(j, "label")) label = as_string(*l, path + ".label");

  bool overridden = false;
  fuzzy::LinguisticVariable output = shared_output;
  if (const auto* o = optional_key(j, "output_variable")) {
    output = parse_variable(*o, path + ".output_variable", false).variable;
    overridden = true;
  }

  const auto& factors_json = as_array(require(j, "factors", path), path + ".factors");
  if (factors_json.empty()) throw ValidationError(path + ".factors", "at least one factor is required");
  std::vector<fuzzy::LinguisticVariable> factors;
  std::vector<FactorInfo> info;
  for (std::size_t i = 0; i < factors_json.size(); ++i) {
    auto parsed = parse_variable(factors_json[i], indexed(path + ".factors", i), true);
    for (const auto& existing : factors) {
      if (existing.name() == parsed.variable.name()) {
        throw ValidationError(keyed(path + ".factors", existing.name()), "duplicate factor");
      }
    }
    factors.push_back(std::move(parsed.variable));
    info.push_back(std::move(parsed.info));
  }
  FactorTable table(factors, info);

  const auto& rules_json = as_array(require(j, "rules", path), path + ".rules");
  if (rules_json.empty()) throw ValidationError(path + ".rules", "at least one rule is required");
  std::vector<fuzzy::FuzzyRule> rules;
  for (std::size_t i = 0; i < rules_json.size(); ++i) {
    std::string rp = indexed(path + ".rules", i);
    const auto& r = as_object(rules_json[i], rp);
    std::string rule_id = as_string(require(r, "id", rp), rp + ".id");
    rp = keyed(path + ".rules", rule_id);
    check_keys(r, {"id", "if", "then", "beta"}, rp);
    auto antecedent = parse_antecedent(require(r, "if", rp), table, rp + ".if");
    std::string then = as_string(require(r, "then", rp), rp + ".then");
    double beta = 1.0;
    if (const auto* b = optional_key(r, "beta")) beta = parse_unit(*b, rp + ".beta");
    rules.push_back({std::move(rule_id), std::move(antecedent), std::move(then), beta});
  }
  auto rule_base = within(path, [&] { return fuzzy::RuleBase(factors, output, rules); });

  std::vector<certainty::CFRule> explicit_rules;
  if (const auto* cfr = optional_key(j, "cf_rules")) {
    as_array(*cfr, path + ".cf_rules");
    for (std::size_t i = 0; i < cfr->size(); ++i) {
      auto rule = parse_cf_rule((*cfr)[i], table, output, path + ".cf_rules", i);
      for (const auto& existing : explicit_rules) {
        if (existing.id() == rule.id()) {
          throw ValidationError(keyed(path + ".cf_rules", rule.id()), "duplicate CF rule id");
        }
      }
      explicit_rules.push_back(std::move(rule));
    }
  }

  std::string cf_rule_id = as_string(require(j, "cf_rule", path), path + ".cf_rule");
  std::optional<certainty::CFRule> designated;
  for (const auto& rule : explicit_rules) {
    if (rule.id() == cf_rule_id) designated = rule;
  }
  if (!designated) {
    auto fuzzy_rule = std::find_if(rules.begin(), rules.end(),
                                   [&](const fuzzy::FuzzyRule& r) { return r.id == cf_rule_id; });
    if (fuzzy_rule == rules.end()) {
      throw ValidationError(path + ".cf_rule", "designated rule '" + cf_rule_id + "' not found");
    }
    designated = within(path, [&] { return certainty::normalize(*fuzzy_rule, id); });
  }
  if (std::none_of(designated->consequents().begin(), designated->consequents().end(),
                   [&](const certainty::TermRef& c) { return c.variable == id; })) {
    throw ValidationError(path + ".cf_rule",
                          "rule '" + cf_rule_id + "' does not conclude about risk '" + id + "'");
  }

  std::optional<certainty::BeliefAssignment> beliefs;
  if (const auto* b = optional_key(j, "beliefs")) {
    const std::string bp = path + ".beliefs";
    as_object(*b, bp);
    certainty::BeliefAssignment assignment;
    for (const auto& [var, terms] : b->items()) {
      const std::string vp = bp + "." + var;
      as_object(terms, vp);
      table.index(var, vp);
      for (const auto& [term, value] : terms.items()) {
        const std::string tp = vp + "." + term;
        assignment.set(var, table.term(var, term, tp), parse_unit(value, tp));
      }
    }
    for (const auto& a : designated->antecedents()) {
      if (!assignment.get(a.variable, a.term)) {
        throw ValidationError(bp, "no belief for " + a.variable + "." + a.term + ", antecedent of '" +
                                      cf_rule_id + "'");
      }
    }
    beliefs = std::move(assignment);
  }

  return RiskSpec{
      .id = std::move(id),
      .label = std::move(label),
      .rule_base = std::move(rule_base),
      .factor_info = std::move(info),
      .output_overridden = overridden,
      .explicit_cf_rules = std::move(explicit_rules),
      .cf_rule_id = std::move(cf_rule_id),
      .cf_rule = std::move(*designated),
      .beliefs = std::move(beliefs),
  };
}

fahp::TFN parse_judgment(const json& j, const fahp::ElicitationScale& scale, const std::string& path) {
  if (j.is_array()) return parse_tfn(j, path);
  std::string text = as_string(j, path);
  bool reciprocal = text.starts_with("1/");
  std::string_view term = reciprocal ? std::string_view(text).substr(2) : std::string_view(text);
  auto it = scale.find(term);
  if (it == scale.end()) throw ValidationError(path, "unknown scale term '" + std::string(term) + "'");
  return reciprocal ? it->second.reciprocal() : it->second;
}

ExpertJudgment parse_expert(const json& j, const fahp::ElicitationScale& scale, std::size_t n,
                            std::size_t index) {
  const std::string path = indexed("experts", index);
  as_object(j, path);
  check_keys(j, {"name", "upper"}, path);
  std::string name;
  if (const auto* nm = optional_key(j, "name")) name = as_string(*nm, path + ".name");
  const std::string up = path + ".upper";
  const auto& rows = as_array(require(j, "upper", path), up);
  if (rows.size() != n - 1) {
    throw ValidationError(up, "expected " + std::to_string(n - 1) + " rows for " + std::to_string(n) +
                                  " risks, got " + std::to_string(rows.size()));
  }
  std::vector<fahp::TFN> upper;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string rp = indexed(up, i);
    as_array(rows[i], rp);
    if (rows[i].size() != n - 1 - i) {
      throw ValidationError(rp, "row " + std::to_string(i) + " needs " + std::to_string(n - 1 - i) +
                                    " entries");
    }
    for (std::size_t k = 0; k < rows[i].size(); ++k) {
      upper.push_back(parse_judgment(rows[i][k], scale, indexed(rp, k)));
    }
  }
  auto matrix = within(path, [&] { return fahp::ComparisonMatrix::from_upper(n, upper); });
  return {std::move(name), std::move(matrix)};
}

const RiskSpec& risk_at(const std::vector<RiskSpec>& risks, std::string_view id, const std::string& path) {
  for (const auto& r : risks) {
    if (r.id == id) return r;
  }
  throw ValidationError(path, "unknown risk '" + std::string(id) + "'");
}

// Checks that every reading names a declared factor and lies in its universe.
void check_reading(const std::vector<RiskSpec>& risks, const InputReading& reading,
                   const std::string& root) {
  for (const auto& [risk_id, values] : reading) {
    const std::string rp = entity_path(root, risk_id);
    const auto& risk = risk_at(risks, risk_id, rp);
    for (const auto& [factor, value] : values) {
      const std::string fp = rp + "." + factor;
      const auto* var = risk.rule_base.find_input(factor);
      if (var == nullptr) throw ValidationError(fp, "unknown factor of risk '" + risk_id + "'");
      if (!var->universe().contains(value)) {
        std::ostringstream msg;
        msg << "value " << value << " is outside the universe [" << var->universe().lo << ", "
            << var->universe().hi << "]";
        throw OutOfRangeError(fp, msg.str());
      }
    }
  }
}

InputReading parse_reading(const json& j, const std::string& root) {
  as_object(j, root);
  InputReading reading;
  for (const auto& [risk, values] : j.items()) {
    const std::string rp = entity_path(root, risk);
    as_object(values, rp);
    auto& out = reading[risk];
    for (const auto& [factor, value] : values.items()) {
      out[factor] = as_number(value, rp + "." + factor);
    }
  }
  return reading;
}

PaperOverrides parse_paper(const json& j, const std::vector<RiskSpec>& risks) {
  const std::string path = "paper_mode";
  as_object(j, path);
  check_keys(j, {"override_memberships", "override_erm", "override_weights"}, path);
  PaperOverrides paper;

  if (const auto* m = optional_key(j, "override_memberships")) {
    const std::string mp = path + ".override_memberships";
    as_object(*m, mp);
    for (const auto& [risk_id, factors] : m->items()) {
      const std::string rp = mp + "." + risk_id;
      const auto& risk = risk_at(risks, risk_id, rp);
      FactorTable table(risk.factors(), risk.factor_info);
      as_object(factors, rp);
      auto& pinned = paper.memberships[risk_id];
      for (const auto& [factor, terms] : factors.items()) {
        const std::string fp = rp + "." + factor;
        table.index(factor, fp);
        as_object(terms, fp);
        for (const auto& [term, value] : terms.items()) {
          const std::string tp = fp + "." + term;
          pinned[factor][table.term(factor, term, tp)] = parse_unit(value, tp);
        }
      }
    }
  }
  if (const auto* e = optional_key(j, "override_erm")) {
    const std::string ep = path + ".override_erm";
    as_object(*e, ep);
    for (const auto& [risk_id, value] : e->items()) {
      const std::string rp = ep + "." + risk_id;
      const auto& risk = risk_at(risks, risk_id, rp);
      double erm = as_number(value, rp);
      const auto& u = risk.rule_base.output().universe();
      if (!u.contains(erm)) throw ValidationError(rp, "pinned ERM lies outside the output universe");
      paper.erm[risk_id] = erm;
    }
  }
  if (const auto* w = optional_key(j, "override_weights")) {
    const std::string wp = path + ".override_weights";
    as_object(*w, wp);
    for (const auto& [risk_id, value] : w->items()) {
      const std::string rp = wp + "." + risk_id;
      risk_at(risks, risk_id, rp);
      double weight = as_number(value, rp);
      if (!(weight > 0.0 && weight <= 1.0)) throw ValidationError(rp, "weight must lie in (0, 1]");
      paper.weights[risk_id] = weight;
    }
    for (const auto& risk : risks) {
      if (!paper.weights.contains(risk.id)) throw ValidationError(wp, "missing weight for risk '" + risk.id + "'");
    }
  }
  return paper;
}

std::string read_file(const std::filesystem::path& path, std::string_view what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + std::string(what) + " '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("failed reading " + std::string(what) + " '" + path.string() + "'");
  return buffer.str();
}

json parse_text(std::string_view text, std::string_view source) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // `byte` is the 1-based offset of the character that stopped the parser.
    std::size_t offset = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    std::size_t line = 1;
    std::size_t line_start = 0;
    for (std::size_t i = 0; i < offset; ++i) {
      if (text[i] == '\n') {
        ++line;
        line_start = i + 1;
      }
    }
    std::string message = e.what();
    if (auto pos = message.find("syntax error"); pos != std::string::npos) message = message.substr(pos);
    throw ParseError(std::string(source), line, offset - line_start + 1, message);
  }
}

json variable_to_json(const fuzzy::LinguisticVariable& var) {
  json terms = json::array();
  for (const auto& t : var.terms()) {
    terms.push_back({{"name", t.name}, {"mf", {t.mf.a(), t.mf.b(), t.mf.c()}}});
  }
  return {{"name", var.name()}, {"universe", {var.universe().lo, var.universe().hi}}, {"terms", terms}};
}

json antecedent_to_json(const fuzzy::Antecedent& a) {
  using Kind = fuzzy::Antecedent::Kind;
  if (a.kind() == Kind::kAtom) return {{"var", a.as_atom().variable}, {"is", a.as_atom().term}};
  json children = json::array();
  for (const auto& c : a.children()) children.push_back(antecedent_to_json(c));
  return {{a.kind() == Kind::kAllOf ? "and" : "or", children}};
}

json tfn_to_json(const fahp::TFN& t) { return {t.l(), t.m(), t.u()}; }

json reading_to_json(const InputReading& reading) {
  json out = json::object();
  for (const auto& [risk, values] : reading) {
    json& r = out[risk] = json::object();
    for (const auto& [factor, value] : values) r[factor] = value;
  }
  return out;
}

}  // namespace

const RiskSpec* Scenario::find_risk(std::string_view id) const noexcept {
  for (const auto& r : risks) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

const RiskSpec& Scenario::risk(std::string_view id) const { return risk_at(risks, id, "risks"); }

std::size_t Scenario::risk_index(std::string_view id) const {
  return static_cast<std::size_t>(&risk(id) - risks.data());
}

Scenario from_json(const json& doc) {
  as_object(doc, "");
  check_keys(doc,
             {"name", "description", "resolution", "output_variable", "elicitation_scale", "risks",
              "experts", "inputs", "paper_mode"},
             "");
  std::string name = as_string(require(doc, "name", ""), "name");
  std::string description;
  if (const auto* d = optional_key(doc, "description")) description = as_string(*d, "description");

  int resolution = fuzzy::kDefaultResolution;
  if (const auto* r = optional_key(doc, "resolution")) {
    if (!r->is_number_integer()) throw ValidationError("resolution", "expected an integer");
    auto value = r->get<long long>();
    if (value < fuzzy::kMinResolution || value > 10'000'000) {
      throw ValidationError("resolution", "must lie in [" + std::to_string(fuzzy::kMinResolution) +
                                              ", 10000000]");
    }
    resolution = static_cast<int>(value);
  }

  auto output = parse_variable(require(doc, "output_variable", ""), "output_variable", false).variable;

  fahp::ElicitationScale scale = fahp::default_scale();
  if (const auto* s = optional_key(doc, "elicitation_scale")) {
    as_object(*s, "elicitation_scale");
    scale.clear();
    for (const auto& [term, tfn] : s->items()) {
      if (term.empty() || term.starts_with("1/")) {
        throw ValidationError("elicitation_scale." + term, "invalid scale term name");
      }
      scale.emplace(term, parse_tfn(tfn, "elicitation_scale." + term));
    }
  }

  const auto& risks_json = as_array(require(doc, "risks", ""), "risks");
  if (risks_json.empty()) throw ValidationError("risks", "at least one risk is required");
  std::vector<RiskSpec> risks;
  for (std::size_t i = 0; i < risks_json.size(); ++i) {
    auto risk = parse_risk(risks_json[i], output, i);
    for (const auto& existing : risks) {
      if (existing.id == risk.id) throw ValidationError(keyed("risks", risk.id), "duplicate risk id");
    }
    risks.push_back(std::move(risk));
  }
  if (risks.size() > 1) {
    for (const auto& risk : risks) {
      for (const auto& c : risk.cf_rule.consequents()) {
        risk_at(risks, c.variable, keyed("risks", risk.id) + ".cf_rule");
      }
    }
  }

  std::vector<ExpertJudgment> experts;
  if (const auto* e = optional_key(doc, "experts")) {
    as_array(*e, "experts");
    if (risks.size() < 2 && !e->empty()) {
      throw ValidationError("experts", "pairwise comparisons need at least two risks");
    }
    for (std::size_t i = 0; i < e->size(); ++i) {
      experts.push_back(parse_expert((*e)[i], scale, risks.size(), i));
    }
  }
  if (risks.size() > 1 && experts.empty()) {
    throw ValidationError("experts", "at least one expert comparison matrix is required");
  }

  InputReading inputs;
  if (const auto* in = optional_key(doc, "inputs")) {
    inputs = parse_reading(*in, "inputs");
    check_reading(risks, inputs, "inputs");
  }

  PaperOverrides paper;
  if (const auto* p = optional_key(doc, "paper_mode")) paper = parse_paper(*p, risks);

  return Scenario{
      .name = std::move(name),
      .description = std::move(description),
      .output = std::move(output),
      .resolution = resolution,
      .scale = std::move(scale),
      .risks = std::move(risks),
      .experts = std::move(experts),
      .inputs = std::move(inputs),
      .paper = std::move(paper),
  };
}

Scenario parse(std::string_view text, std::string_view source) {
  return from_json(parse_text(text, source));
}

Scenario load(const std::filesystem::path& path) {
  std::string text = read_file(path, "scenario file");
  return parse(text, path.string());
}

std::vector<std::string> builtin_ids() { return detail::builtin_ids(); }

Scenario builtin(std::string_view id) {
  auto source = detail::builtin_source(id);
  if (!source) throw ValidationError("scenario", "no builtin scenario named '" + std::string(id) + "'");
  return parse(*source, "builtin:" + std::string(id));
}

Scenario resolve(std::string_view id_or_path) {
  if (detail::builtin_source(id_or_path)) return builtin(id_or_path);
  return load(std::filesystem::path(std::string(id_or_path)));
}

json to_json(const Scenario& s) {
  json doc;
  doc["name"] = s.name;
  if (!s.description.empty()) doc["description"] = s.description;
  doc["resolution"] = s.resolution;
  doc["output_variable"] = variable_to_json(s.output);
  json scale = json::object();
  for (const auto& [term, tfn] : s.scale) scale[term] = tfn_to_json(tfn);
  doc["elicitation_scale"] = scale;

  json risks = json::array();
  for (const auto& r : s.risks) {
    json risk;
    risk["id"] = r.id;
    if (!r.label.empty()) risk["label"] = r.label;
    if (r.output_overridden) risk["output_variable"] = variable_to_json(r.rule_base.output());
    json factors = json::array();
    for (std::size_t i = 0; i < r.factors().size(); ++i) {
      json f = variable_to_json(r.factors()[i]);
      const auto& info = r.factor_info[i];
      if (!info.label.empty()) f["label"] = info.label;
      if (!info.aliases.empty()) {
        json aliases = json::object();
        for (const auto& [alias, term] : info.aliases) aliases[alias] = term;
        f["aliases"] = aliases;
      }
      factors.push_back(f);
    }
    risk["factors"] = factors;
    json rules = json::array();
    for (const auto& rule : r.rule_base.rules()) {
      rules.push_back({{"id", rule.id},
                       {"if", antecedent_to_json(rule.antecedent)},
                       {"then", rule.consequent},
                       {"beta", rule.beta}});
    }
    risk["rules"] = rules;
    risk["cf_rule"] = r.cf_rule_id;
    if (!r.explicit_cf_rules.empty()) {
      json list = json::array();
      for (const auto& cf : r.explicit_cf_rules) {
        json item{{"id", cf.id()}, {"form", std::string(certainty::to_string(cf.form()))}};
        json ifs = json::array();
        for (const auto& a : cf.antecedents()) ifs.push_back({{"var", a.variable}, {"is", a.term}});
        json thens = json::array();
        for (const auto& c : cf.consequents()) thens.push_back({{"risk", c.variable}, {"is", c.term}});
        item["if"] = ifs;
        item["then"] = thens;
        if (cf.form() == certainty::RuleForm::kFanOut) {
          item["betas"] = cf.betas();
        } else {
          item["beta"] = cf.betas().front();
        }
        list.push_back(item);
      }
      risk["cf_rules"] = list;
    }
    if (r.beliefs) {
      json beliefs = json::object();
      for (const auto& [ref, alpha] : r.beliefs->values()) beliefs[ref.variable][ref.term] = alpha;
      risk["beliefs"] = beliefs;
    }
    risks.push_back(risk);
  }
  doc["risks"] = risks;

  json experts = json::array();
  for (const auto& e : s.experts) {
    json rows = json::array();
    const std::size_t n = e.matrix.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      json row = json::array();
      for (std::size_t j = i + 1; j < n; ++j) row.push_back(tfn_to_json(e.matrix(i, j)));
      rows.push_back(row);
    }
    json item{{"upper", rows}};
    if (!e.name.empty()) item["name"] = e.name;
    experts.push_back(item);
  }
  if (!experts.empty()) doc["experts"] = experts;
  if (!s.inputs.empty()) doc["inputs"] = reading_to_json(s.inputs);

  if (!s.paper.empty()) {
    json paper = json::object();
    if (!s.paper.memberships.empty()) {
      json m = json::object();
      for (const auto& [risk, factors] : s.paper.memberships) {
        m[risk] = json::object();
        for (const auto& [factor, terms] : factors) {
          for (const auto& [term, value] : terms) m[risk][factor][term] = value;
        }
      }
      paper["override_memberships"] = m;
    }
    if (!s.paper.erm.empty()) paper["override_erm"] = s.paper.erm;
    if (!s.paper.weights.empty()) paper["override_weights"] = s.paper.weights;
    doc["paper_mode"] = paper;
  }
  return doc;
}

std::string serialize(const Scenario& scenario) { return to_json(scenario).dump(2) + "\n"; }

InputReading parse_inputs(const json& document) {
  if (document.is_object() && document.contains("inputs") && document.size() == 1) {
    return parse_reading(document["inputs"], "inputs");
  }
  return parse_reading(document, "inputs");
}

InputReading load_inputs(const std::filesystem::path& path) {
  std::string text = read_file(path, "inputs file");
  return parse_inputs(parse_text(text, path.string()));
}

InputReading merge_inputs(InputReading base, const InputReading& overrides) {
  for (const auto& [risk, values] : overrides) {
    auto& target = base[risk];
    for (const auto& [factor, value] : values) target[factor] = value;
  }
  return base;
}

WeightTrace compute_weights(const Scenario& scenario, bool paper_mode) {
  WeightTrace trace;
  const std::size_t n = scenario.risks.size();
  if (n == 1) {
    trace.computed = {1.0};
  } else {
    std::vector<fahp::ComparisonMatrix> matrices;
    for (const auto& e : scenario.experts) matrices.push_back(e.matrix);
    trace.aggregated = fahp::aggregate_experts(matrices);
    trace.report = fahp::derive_weights(*trace.aggregated);
    trace.computed = trace.report->crisp_weights;
    if (n <= fahp::kMaxRandomIndexOrder) {
      auto crisp = trace.aggregated->midpoints();
      trace.eigen = fahp::consistency_eigen(crisp);
      trace.given = fahp::consistency_given_weights(crisp, trace.computed);
    }
  }
  trace.used = trace.computed;
  if (paper_mode && !scenario.paper.weights.empty()) {
    for (std::size_t i = 0; i < n; ++i) trace.used[i] = scenario.paper.weights.at(scenario.risks[i].id);
    trace.pinned = true;
  }
  return trace;
}

Assessment assess(const Scenario& scenario, const InputReading& inputs, const AssessOptions& options) {
  const int resolution = options.resolution.value_or(scenario.resolution);
  if (resolution < fuzzy::kMinResolution) {
    throw ValidationError("resolution", "must be at least " + std::to_string(fuzzy::kMinResolution));
  }
  check_reading(scenario.risks, inputs, "inputs");

  Assessment out;
  out.paper_mode = options.paper_mode;
  out.weights = compute_weights(scenario, options.paper_mode);

  for (std::size_t i = 0; i < scenario.risks.size(); ++i) {
    const auto& risk = scenario.risks[i];
    const std::string where = keyed("risks", risk.id);
    RiskTrace t;
    t.risk = risk.id;

    auto reading = inputs.find(risk.id);
    for (const auto& factor : risk.factors()) {
      const std::string fp = "inputs." + risk.id + "." + factor.name();
      if (reading == inputs.end() || !reading->second.contains(factor.name())) {
        throw ValidationError(fp, "missing input value");
      }
      double x = reading->second.find(factor.name())->second;
      t.inputs[factor.name()] = x;
      t.computed_degrees[factor.name()] = within(fp, [&] { return factor.fuzzify(x); });
    }

    t.degrees = t.computed_degrees;
    if (options.paper_mode) {
      if (auto pinned = scenario.paper.memberships.find(risk.id);
          pinned != scenario.paper.memberships.end()) {
        for (const auto& [factor, terms] : pinned->second) {
          for (const auto& [term, value] : terms) {
            double computed = t.computed_degrees.at(factor).at(term);
            if (std::abs(computed - value) > kDiscrepancyTolerance) {
              t.discrepancies.push_back({factor, term, computed, value});
            }
            t.degrees[factor][term] = value;
          }
        }
      }
    }

    t.firings = within(where, [&] { return fuzzy::fire_rules(risk.rule_base, t.degrees); });
    t.activations = fuzzy::aggregate(t.firings, risk.rule_base.output());

    std::optional<double> pinned_erm;
    if (options.paper_mode) {
      if (auto e = scenario.paper.erm.find(risk.id); e != scenario.paper.erm.end()) pinned_erm = e->second;
    }
    if (t.activations.any_positive()) {
      t.erm_computed = fuzzy::defuzzify_centroid(t.activations, risk.rule_base.output(), resolution);
    } else if (!pinned_erm) {
      throw NoRuleFiredError(where + ": no rule fired for the given inputs");
    }
    t.erm_pinned = pinned_erm.has_value();
    t.erm = pinned_erm ? *pinned_erm : *t.erm_computed;
    // ERS takes ERM as a percentage of the output universe.
    const auto& u = risk.rule_base.output().universe();
    const double erm_percent = 100.0 * (t.erm - u.lo) / u.width();

    certainty::BeliefAssignment beliefs;
    if (risk.beliefs) {
      beliefs = *risk.beliefs;
    } else {
      beliefs = certainty::BeliefAssignment::from_degrees(t.degrees);
      t.beliefs_from_degrees = true;
    }
    t.certainty = within(where, [&] {
      return certainty::risk_cf(risk.id, std::span(&risk.cf_rule, 1), risk.cf_rule_id, beliefs);
    });
    t.woi = out.weights.used[i];
    t.ers = within(where, [&] { return scoring::ers(erm_percent, t.certainty.cf, t.woi); });

    out.assessments.push_back(scoring::assess(risk.id, erm_percent, t.certainty.cf, t.woi));
    out.traces.push_back(std::move(t));
  }
  out.ranking = scoring::rank(out.assessments);
  return out;
}

}  // namespace erisk::scenario
