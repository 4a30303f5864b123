#include "erisk/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "erisk/certainty.hpp"
#include "erisk/error.hpp"
#include "erisk/rng.hpp"
#include "erisk/scoring.hpp"

namespace erisk::sensitivity {

namespace {

const scenario::RiskSpec& risk_of(const scenario::Scenario& s, std::string_view risk) {
  const auto* spec = s.find_risk(risk);
  if (spec == nullptr) throw ValidationError("risk", "unknown risk '" + std::string(risk) + "'");
  return *spec;
}

int resolution_of(const scenario::Scenario& s, std::optional<int> override) {
  int r = override.value_or(s.resolution);
  if (r < fuzzy::kMinResolution) {
    throw ValidationError("resolution", "must be at least " + std::to_string(fuzzy::kMinResolution));
  }
  return r;
}

double percent_of_universe(double erm, const fuzzy::LinguisticVariable& output) {
  const auto& u = output.universe();
  return 100.0 * (erm - u.lo) / u.width();
}

void check_unit(double v, const std::string& what) {
  if (!(v >= 0.0 && v <= 1.0)) throw ValidationError(what, "must lie in [0, 1]");
}

}  // namespace

std::vector<double> linspace(double lo, double hi, int steps) {
  if (steps < 1) throw ValidationError("steps", "must be at least 1");
  if (steps == 1) return {lo};
  std::vector<double> out(static_cast<std::size_t>(steps));
  const double step = (hi - lo) / (steps - 1);
  for (int i = 0; i < steps; ++i) out[static_cast<std::size_t>(i)] = lo + step * i;
  out.back() = hi;
  return out;
}

ErmSample evaluate_erm(const scenario::RiskSpec& risk, const fuzzy::CrispInputs& inputs,
                       int resolution) {
  const auto& rb = risk.rule_base;
  auto firings = fuzzy::fire_rules(rb, fuzzy::fuzzify_inputs(rb, inputs));
  auto activations = fuzzy::aggregate(firings, rb.output());
  if (!activations.any_positive()) return {0.0, false};
  return {percent_of_universe(fuzzy::defuzzify_centroid(activations, rb.output(), resolution), rb.output()),
          true};
}

Baseline baseline(const scenario::Scenario& s, const scenario::InputReading& inputs,
                  std::string_view risk_id, bool paper_mode) {
  const auto& risk = risk_of(s, risk_id);
  Baseline out;
  auto reading = inputs.find(risk.id);
  fuzzy::FuzzifiedInputs degrees;
  for (const auto& factor : risk.factors()) {
    const std::string where = "inputs." + risk.id + "." + factor.name();
    if (reading == inputs.end() || !reading->second.contains(factor.name())) {
      throw ValidationError(where, "missing input value");
    }
    double x = reading->second.find(factor.name())->second;
    out.inputs[factor.name()] = x;
    try {
      degrees[factor.name()] = factor.fuzzify(x);
    } catch (const OutOfRangeError& e) {
      throw OutOfRangeError(where, e.message());
    }
  }
  if (paper_mode) {
    if (auto pinned = s.paper.memberships.find(risk.id); pinned != s.paper.memberships.end()) {
      for (const auto& [factor, terms] : pinned->second) {
        for (const auto& [term, value] : terms) degrees[factor][term] = value;
      }
    }
  }
  auto beliefs = risk.beliefs ? *risk.beliefs : certainty::BeliefAssignment::from_degrees(degrees);
  out.cf = certainty::risk_cf(risk.id, std::span(&risk.cf_rule, 1), risk.cf_rule_id, beliefs).cf;
  out.woi = scenario::compute_weights(s, paper_mode).used[s.risk_index(risk.id)];
  return out;
}

std::string_view to_string(Trend trend) noexcept {
  switch (trend) {
    case Trend::kRising: return "rising";
    case Trend::kFalling: return "falling";
    case Trend::kFlat: return "flat";
  }
  return "flat";
}

std::vector<Segment> monotone_segments(std::span<const SweepPoint> samples, double flat_tolerance) {
  std::vector<Segment> out;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    double d = samples[i].ers - samples[i - 1].ers;
    Trend t = d > flat_tolerance ? Trend::kRising : d < -flat_tolerance ? Trend::kFalling : Trend::kFlat;
    if (!out.empty() && out.back().trend == t) {
      out.back().last = i;
    } else {
      out.push_back({i - 1, i, t});
    }
  }
  if (out.empty() && !samples.empty()) out.push_back({0, 0, Trend::kFlat});
  return out;
}

SweepResult oat_sweep(const scenario::Scenario& s, const scenario::InputReading& inputs,
                      std::string_view risk_id, std::string_view factor, const OatOptions& options) {
  const auto& risk = risk_of(s, risk_id);
  const auto* var = risk.rule_base.find_input(factor);
  if (var == nullptr) {
    throw ValidationError("factor", "'" + std::string(factor) + "' is not a factor of risk '" + risk.id + "'");
  }
  const int resolution = resolution_of(s, options.resolution);
  fuzzy::Interval range = options.range.value_or(var->universe());
  if (!(range.lo < range.hi)) throw ValidationError("range", "sweep range is empty");
  if (!var->universe().contains(range.lo) || !var->universe().contains(range.hi)) {
    throw OutOfRangeError("range", "sweep range leaves the universe of '" + var->name() + "'");
  }
  if (options.steps < 2) throw ValidationError("steps", "a sweep needs at least 2 steps");

  auto base = baseline(s, inputs, risk.id, options.paper_mode);
  const double cf = options.cf.value_or(base.cf);
  const double woi = options.woi.value_or(base.woi);

  SweepResult out;
  out.parameter = var->name();
  auto point_inputs = base.inputs;
  for (double x : linspace(range.lo, range.hi, options.steps)) {
    point_inputs[var->name()] = x;
    auto sample = evaluate_erm(risk, point_inputs, resolution);
    if (!sample.fired) ++out.no_fire;
    out.samples.push_back({x, sample.erm, scoring::ers(sample.erm, cf, woi), sample.fired});
  }
  out.segments = monotone_segments(out.samples);
  return out;
}

SweepResult rule_cf_sweep(double woi, double rl, std::span<const double> betas) {
  SweepResult out;
  out.parameter = "beta";
  for (double beta : betas) {
    check_unit(beta, "beta");
    out.samples.push_back({beta, rl, woi * beta * rl, true});
  }
  out.segments = monotone_segments(out.samples);
  return out;
}

SweepResult antecedent_sweep(std::span<const double> alphas, std::size_t index, double beta,
                             double woi, double rl, std::span<const double> grid) {
  if (index >= alphas.size()) throw ValidationError("index", "no antecedent at this position");
  SweepResult out;
  out.parameter = "alpha[" + std::to_string(index) + "]";
  std::vector<double> current(alphas.begin(), alphas.end());
  for (double a : grid) {
    check_unit(a, "alpha");
    current[index] = a;
    double cf = certainty::propagate_disjunctive(current, beta);
    out.samples.push_back({a, rl, woi * cf * rl, true});
  }
  out.segments = monotone_segments(out.samples);
  return out;
}

double TornadoCell::magnitude() const noexcept {
  return std::max(std::abs(change_down), std::abs(change_up));
}

const TornadoRow& TornadoTable::row(std::string_view factor) const {
  for (const auto& r : rows) {
    if (r.factor == factor) return r;
  }
  throw ValidationError("factor", "no tornado row for '" + std::string(factor) + "'");
}

TornadoTable tornado(const scenario::Scenario& s, const scenario::InputReading& inputs,
                     std::string_view risk_id, const TornadoOptions& options) {
  const auto& risk = risk_of(s, risk_id);
  const int resolution = resolution_of(s, options.resolution);
  for (double level : options.levels) {
    if (!(level >= 0.0 && std::isfinite(level))) throw ValidationError("levels", "levels must be non-negative");
  }
  auto base = baseline(s, inputs, risk.id, options.paper_mode);

  TornadoTable table;
  table.risk = risk.id;
  table.cf = options.cf.value_or(base.cf);
  table.woi = options.woi.value_or(base.woi);
  table.levels = options.levels;
  auto base_erm = evaluate_erm(risk, base.inputs, resolution);
  if (!base_erm.fired) ++table.no_fire;
  table.baseline_ers = scoring::ers(base_erm.erm, table.cf, table.woi);
  if (!(table.baseline_ers > 0.0)) {
    throw ValidationError("tornado", "baseline ERS is 0, so relative changes are undefined");
  }

  auto score = [&](const fuzzy::CrispInputs& point) {
    auto sample = evaluate_erm(risk, point, resolution);
    if (!sample.fired) ++table.no_fire;
    return scoring::ers(sample.erm, table.cf, table.woi);
  };
  auto change = [&](double ers) { return 100.0 * (ers - table.baseline_ers) / table.baseline_ers; };

  for (const auto& factor : risk.factors()) {
    TornadoRow row;
    row.factor = factor.name();
    row.baseline_value = base.inputs.at(factor.name());
    const auto& u = factor.universe();
    for (double level : options.levels) {
      TornadoCell cell;
      cell.level = level;
      double down = row.baseline_value * (1.0 - level);
      double up = row.baseline_value * (1.0 + level);
      cell.value_down = std::clamp(down, u.lo, u.hi);
      cell.value_up = std::clamp(up, u.lo, u.hi);
      cell.clamped_down = cell.value_down != down;
      cell.clamped_up = cell.value_up != up;
      auto point = base.inputs;
      point[factor.name()] = cell.value_down;
      cell.ers_down = score(point);
      point[factor.name()] = cell.value_up;
      cell.ers_up = score(point);
      cell.change_down = change(cell.ers_down);
      cell.change_up = change(cell.ers_up);
      row.cells.push_back(cell);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

MonteCarloResult fahp_monte_carlo(const fahp::CrispMatrix& base, std::vector<std::string> risks,
                                  std::vector<double> cf, std::vector<double> erm,
                                  const MonteCarloOptions& options) {
  const std::size_t n = base.size();
  if (risks.size() != n || cf.size() != n || erm.size() != n) {
    throw ValidationError("monte_carlo", "need one risk id, CF and ERM per matrix row");
  }
  if (!(options.sigma >= 0.0 && std::isfinite(options.sigma))) {
    throw ValidationError("sigma", "must be non-negative");
  }
  if (options.n < 1) throw ValidationError("n", "at least one sample is required");
  if (!base.is_positive() || !base.is_reciprocal()) {
    throw ValidationError("matrix", "base matrix must be positive and reciprocal");
  }

  MonteCarloResult out;
  out.risks = std::move(risks);
  out.cf = std::move(cf);
  out.erm = std::move(erm);
  out.options = options;
  out.base_weights = fahp::principal_eigenpair(base).vector;
  out.largest.assign(n, 0);

  for (int k = 0; k < options.n; ++k) {
    rng::Stream stream(rng::substream_seed(options.seed, static_cast<std::uint64_t>(k)));
    fahp::CrispMatrix a(n, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        double v = base(i, j) + options.sigma * stream.normal();
        int tries = 0;
        while (v <= options.min_entry) {
          if (++tries > options.max_redraws) {
            throw ConvergenceError("monte carlo: no admissible draw for entry (" + std::to_string(i) +
                                   ", " + std::to_string(j) + ") after " +
                                   std::to_string(options.max_redraws) + " redraws");
          }
          ++out.redraws;
          v = base(i, j) + options.sigma * stream.normal();
        }
        a(i, j) = v;
        a(j, i) = 1.0 / v;
      }
    }
    auto w = fahp::normalize(fahp::principal_eigenpair(a).vector);
    std::vector<double> ers(n);
    for (std::size_t i = 0; i < n; ++i) ers[i] = scoring::ers(out.erm[i], out.cf[i], w[i]);
    ++out.largest[static_cast<std::size_t>(std::max_element(w.begin(), w.end()) - w.begin())];
    out.weights.push_back(std::move(w));
    out.ers.push_back(std::move(ers));
  }

  auto moments = [&](const std::vector<std::vector<double>>& rows, std::vector<double>& mean,
                     std::vector<double>& sd) {
    mean.assign(n, 0.0);
    sd.assign(n, 0.0);
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < n; ++i) mean[i] += r[i];
    }
    for (auto& m : mean) m /= static_cast<double>(rows.size());
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < n; ++i) sd[i] += (r[i] - mean[i]) * (r[i] - mean[i]);
    }
    for (auto& v : sd) v = std::sqrt(v / static_cast<double>(rows.size()));
  };
  moments(out.weights, out.mean_weights, out.std_weights);
  moments(out.ers, out.mean_ers, out.std_ers);
  return out;
}

SobolResult sobol_risk(const scenario::Scenario& s, std::string_view risk_id,
                       const RiskSobolOptions& options) {
  const auto& risk = risk_of(s, risk_id);
  const int resolution = resolution_of(s, options.resolution);
  std::vector<SobolInput> inputs;
  for (const auto& f : risk.factors()) inputs.push_back({f.name(), f.universe().lo, f.universe().hi});
  const std::size_t cf_at = inputs.size();
  inputs.push_back({"cf", options.cf_range.lo, options.cf_range.hi});
  inputs.push_back({"woi", options.woi_range.lo, options.woi_range.hi});
  check_unit(options.cf_range.lo, "cf_range");
  check_unit(options.cf_range.hi, "cf_range");
  check_unit(options.woi_range.lo, "woi_range");
  check_unit(options.woi_range.hi, "woi_range");

  std::size_t no_fire = 0;
  fuzzy::CrispInputs point;
  for (const auto& f : risk.factors()) point[f.name()] = f.universe().lo;
  Model model = [&](std::span<const double> x) {
    for (std::size_t i = 0; i < cf_at; ++i) point[risk.factors()[i].name()] = x[i];
    auto sample = evaluate_erm(risk, point, resolution);
    if (!sample.fired) ++no_fire;
    return scoring::ers(sample.erm, x[cf_at], x[cf_at + 1]);
  };
  auto result = sobol(inputs, model, options.sobol);
  result.no_fire = no_fire;
  return result;
}

namespace {

nlohmann::json operands(double erm, double cf, double woi) {
  return {{"erm", erm}, {"cf", cf}, {"woi", woi}};
}

// Antecedent beliefs of a risk's designated rule: the declared ones when
// present, otherwise mid-scale placeholders that probes overwrite.
std::vector<double> declared_alphas(const scenario::RiskSpec& risk) {
  std::vector<double> out;
  for (const auto& a : risk.cf_rule.antecedents()) {
    std::optional<double> v;
    if (risk.beliefs) v = risk.beliefs->get(a.variable, a.term);
    out.push_back(v.value_or(0.5));
  }
  return out;
}

double consequent_cf(const certainty::CFRule& rule, std::string_view risk,
                     std::span<const double> alphas) {
  auto values = rule.propagate(alphas);
  const auto& cons = rule.consequents();
  for (std::size_t i = 0; i < cons.size(); ++i) {
    if (cons[i].variable == risk) return values[i];
  }
  return values.front();
}

struct Probe {
  Probe(int number, std::string name) {
    result.number = number;
    result.name = std::move(name);
  }
  AxiomResult result;
  void fail(std::string detail, nlohmann::json witness) {
    if (!result.passed) return;
    result.passed = false;
    result.detail = std::move(detail);
    result.witness = std::move(witness);
  }
};

AxiomResult axiom_monotonicity(const scenario::Scenario& s, const ScoreFn& score,
                               const AxiomOptions& o) {
  Probe p(1, "monotonicity");
  rng::Stream r(rng::substream_seed(o.seed, 1));
  for (int k = 0; k < o.probes; ++k) {
    const double erm = r.uniform(1.0, 99.0);
    const double cf = r.uniform(0.01, 0.99);
    const double woi = r.uniform(0.01, 0.99);
    const double base = score(erm, cf, woi);
    struct Step {
      const char* operand;
      double after;
      double h;
    };
    const Step steps[] = {{"erm", score(erm + 1e-3 * 100.0, cf, woi), 0.1},
                          {"cf", score(erm, cf + 1e-3, woi), 1e-3},
                          {"woi", score(erm, cf, woi + 1e-3), 1e-3}};
    for (const auto& st : steps) {
      if (!(st.after > base)) {
        auto w = operands(erm, cf, woi);
        w["operand"] = st.operand;
        w["h"] = st.h;
        w["before"] = base;
        w["after"] = st.after;
        p.fail(std::string("ERS did not increase with ") + st.operand, w);
      }
    }
    // Rule confidence reaches ERS through the designated rule's CF.
    for (const auto& risk : s.risks) {
      auto alphas = declared_alphas(risk);
      if (k > 0) {
        for (auto& a : alphas) a = r.uniform();
      }
      const double beta = r.uniform(0.0, 0.99);
      auto with_beta = [&](double b) {
        const auto& rule = risk.cf_rule;
        certainty::CFRule probe(rule.id(), rule.form(), rule.antecedents(), rule.consequents(),
                                std::vector<double>(rule.betas().size(), b));
        return score(erm, consequent_cf(probe, risk.id, alphas), woi);
      };
      double lo = with_beta(beta);
      double hi = with_beta(beta + 0.01);
      if (hi < lo - o.tolerance) {
        auto w = operands(erm, std::nan(""), woi);
        w["operand"] = "beta";
        w["risk"] = risk.id;
        w["beta"] = beta;
        w["alphas"] = alphas;
        w["before"] = lo;
        w["after"] = hi;
        p.fail("ERS decreased with rule confidence", w);
      }
    }
  }
  p.result.probes = o.probes;
  if (p.result.passed) p.result.detail = "ERS increases in ERM, CF and WoI and never decreases in beta";
  return p.result;
}

AxiomResult axiom_weight_influence(const scenario::Scenario& s, const ScoreFn& score,
                                   const AxiomOptions& o) {
  Probe p(2, "weight-influence consistency");
  const std::size_t n = s.risks.size();
  p.result.probes = o.probes;
  if (n < 2) {
    p.result.vacuous = true;
    p.result.detail = "single risk: no pair to compare";
    return p.result;
  }
  rng::Stream r(rng::substream_seed(o.seed, 2));
  for (int k = 0; k < o.probes; ++k) {
    std::vector<double> erm(n), cf(n), woi(n), delta_ers(n);
    const double dw = r.uniform(0.001, 0.05);
    for (std::size_t i = 0; i < n; ++i) {
      erm[i] = r.uniform(1.0, 99.0);
      cf[i] = r.uniform(0.01, 0.99);
      woi[i] = r.uniform(0.01, 0.9);
      delta_ers[i] = score(erm[i], cf[i], woi[i] + dw) - score(erm[i], cf[i], woi[i]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        double lhs = delta_ers[i] * erm[j] * cf[j];
        double rhs = delta_ers[j] * erm[i] * cf[i];
        double scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
        if (std::abs(lhs - rhs) > 1e-9 * scale) {
          p.fail("ERS changes are not proportional to ERM*CF",
                 {{"risks", {s.risks[i].id, s.risks[j].id}},
                  {"delta_w", dw},
                  {"delta_ers", {delta_ers[i], delta_ers[j]}},
                  {"erm_cf", {erm[i] * cf[i], erm[j] * cf[j]}}});
        }
      }
    }
  }
  if (p.result.passed) p.result.detail = "equal weight changes give ERS changes proportional to ERM*CF";
  return p.result;
}

AxiomResult axiom_sub_evidence(const scenario::Scenario& s, const ScoreFn& score,
                               const AxiomOptions& o) {
  Probe p(3, "sub-evidence dominance");
  rng::Stream r(rng::substream_seed(o.seed, 3));
  std::size_t checked = 0;
  for (const auto& risk : s.risks) {
    if (risk.cf_rule.form() != certainty::RuleForm::kDisjunctive) continue;
    const std::size_t m = risk.cf_rule.antecedents().size();
    if (m > 16) continue;
    const double beta = risk.cf_rule.betas().front();
    for (int k = 0; k < o.probes; ++k) {
      auto alphas = declared_alphas(risk);
      if (k > 0) {
        for (auto& a : alphas) a = r.uniform();
      }
      const double erm = r.uniform(1.0, 99.0);
      const double woi = r.uniform(0.01, 0.99);
      const double full_cf = certainty::propagate_disjunctive(alphas, beta);
      const double full = score(erm, full_cf, woi);
      for (std::uint32_t mask = 1; mask + 1 < (1u << m); ++mask) {
        std::vector<double> subset;
        for (std::size_t i = 0; i < m; ++i) {
          if (mask & (1u << i)) subset.push_back(alphas[i]);
        }
        const double sub_cf = certainty::propagate_disjunctive(subset, beta);
        ++checked;
        if (sub_cf > full_cf + o.tolerance || score(erm, sub_cf, woi) > full + o.tolerance) {
          p.fail("a strict subset of the evidence outscored the full set",
                 {{"risk", risk.id}, {"alphas", alphas}, {"subset", subset}, {"beta", beta},
                  {"full_cf", full_cf}, {"subset_cf", sub_cf}});
        }
      }
    }
  }
  p.result.probes = o.probes;
  if (checked == 0) {
    p.result.vacuous = true;
    p.result.detail = "no disjunctive CF rule with two or more antecedents";
  } else if (p.result.passed) {
    p.result.detail = std::to_string(checked) + " subset comparisons, none exceeded the full set";
  }
  return p.result;
}

AxiomResult axiom_normalization(const scenario::Scenario& s, const ScoreFn& score,
                                const AxiomOptions& o) {
  Probe p(4, "normalization invariance");
  const std::size_t n = s.risks.size();
  p.result.probes = o.probes;
  if (n < 2) {
    p.result.vacuous = true;
    p.result.detail = "single risk: its weight is 1 under any scaling";
    return p.result;
  }
  constexpr double kBitwiseTolerance = 1e-12;
  const auto weights = fahp::normalize(scenario::compute_weights(s).computed);
  rng::Stream r(rng::substream_seed(o.seed, 4));
  auto ranking = [&](const std::vector<double>& w, const std::vector<double>& erm,
                     const std::vector<double>& cf) {
    std::vector<scoring::RiskAssessment> items;
    for (std::size_t i = 0; i < n; ++i) {
      items.push_back({s.risks[i].id, erm[i], cf[i], w[i], score(erm[i], cf[i], w[i])});
    }
    std::vector<std::string> ids;
    for (const auto& a : scoring::rank(items)) ids.push_back(a.risk);
    return std::pair{items, ids};
  };
  for (int k = 0; k < o.probes; ++k) {
    const double factor = std::exp(r.uniform(-5.0, 5.0));
    std::vector<double> scaled(n), erm(n), cf(n);
    for (std::size_t i = 0; i < n; ++i) {
      scaled[i] = weights[i] * factor;
      erm[i] = r.uniform(1.0, 99.0);
      cf[i] = r.uniform(0.01, 0.99);
    }
    auto renormalized = fahp::normalize(scaled);
    auto [before, order_before] = ranking(weights, erm, cf);
    auto [after, order_after] = ranking(renormalized, erm, cf);
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(renormalized[i] - weights[i]) > kBitwiseTolerance ||
          std::abs(after[i].ers - before[i].ers) > kBitwiseTolerance) {
        p.fail("renormalized weights moved", {{"factor", factor},
                                              {"weights", weights},
                                              {"renormalized", renormalized},
                                              {"risk", s.risks[i].id}});
      }
    }
    if (order_before != order_after) {
      p.fail("ranking changed under uniform weight scaling",
             {{"factor", factor}, {"before", order_before}, {"after", order_after}});
    }
  }
  if (p.result.passed) p.result.detail = "weights, ERS and ranking stable within 1e-12";
  return p.result;
}

AxiomResult axiom_interaction(const scenario::Scenario& s, const ScoreFn& score,
                              const AxiomOptions& o) {
  Probe p(5, "interaction non-negativity");
  rng::Stream r(rng::substream_seed(o.seed, 5));
  for (int k = 0; k < o.probes; ++k) {
    double x[3] = {r.uniform(1.0, 90.0), r.uniform(0.01, 0.9), r.uniform(0.01, 0.9)};
    const double h[3] = {5.0, 0.05, 0.05};
    const char* names[3] = {"erm", "cf", "woi"};
    auto f = [&](int i, double di, int j, double dj) {
      double v[3] = {x[0], x[1], x[2]};
      v[i] += di;
      v[j] += dj;
      return score(v[0], v[1], v[2]);
    };
    const int pairs[3][2] = {{2, 1}, {2, 0}, {1, 0}};
    for (const auto& pr : pairs) {
      int i = pr[0], j = pr[1];
      double d2 = f(i, h[i], j, h[j]) - f(i, h[i], j, 0) - f(i, 0, j, h[j]) + f(i, 0, j, 0);
      if (d2 < -o.tolerance) {
        auto w = operands(x[0], x[1], x[2]);
        w["pair"] = {names[i], names[j]};
        w["cross_difference"] = d2;
        p.fail("negative cross difference", w);
      }
    }
    for (const auto& risk : s.risks) {
      if (risk.cf_rule.form() != certainty::RuleForm::kDisjunctive) continue;
      std::vector<double> alphas(risk.cf_rule.antecedents().size());
      if (alphas.size() < 2) continue;
      for (auto& a : alphas) a = r.uniform();
      auto top = static_cast<std::size_t>(std::max_element(alphas.begin(), alphas.end()) - alphas.begin());
      std::size_t other = (top + 1 + static_cast<std::size_t>(r.uniform() * (alphas.size() - 1))) % alphas.size();
      if (other == top) other = (top + 1) % alphas.size();
      const double beta = risk.cf_rule.betas().front();
      const double before = score(x[0], certainty::propagate_disjunctive(alphas, beta), x[2]);
      auto raised = alphas;
      raised[other] = r.uniform(alphas[other], 1.0);
      const double after = score(x[0], certainty::propagate_disjunctive(raised, beta), x[2]);
      if (after < before - o.tolerance) {
        p.fail("raising a non-dominant antecedent lowered ERS",
               {{"risk", risk.id}, {"alphas", alphas}, {"raised", raised}, {"before", before}, {"after", after}});
      }
    }
  }
  p.result.probes = o.probes;
  if (p.result.passed) {
    p.result.detail = "cross differences in (woi, cf), (woi, erm), (cf, erm) non-negative; "
                      "raising a non-dominant antecedent never lowered ERS";
  }
  return p.result;
}

}  // namespace

std::vector<AxiomResult> axiom_suite(const scenario::Scenario& s, const AxiomOptions& options) {
  if (options.probes < 1) throw ValidationError("probes", "at least one probe is required");
  const ScoreFn score = options.score ? options.score : ScoreFn(scoring::ers);
  return {axiom_monotonicity(s, score, options), axiom_weight_influence(s, score, options),
          axiom_sub_evidence(s, score, options), axiom_normalization(s, score, options),
          axiom_interaction(s, score, options)};
}

}  // namespace erisk::sensitivity
