#include "erisk/cli.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "erisk/error.hpp"
#include "erisk/report.hpp"
#include "erisk/scenario.hpp"
#include "erisk/sensitivity.hpp"

namespace erisk::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

// A malformed flag value that CLI11 itself cannot recognize.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct Common {
  std::string scenario = "patient-dilemma";
  std::string inputs;
  std::vector<std::string> sets;
  std::string out = ".";
  bool paper_mode = false;
  int resolution = 0;
};

void add_common(CLI::App& cmd, Common& c) {
  cmd.add_option("--scenario", c.scenario, "Builtin scenario id or path to a scenario JSON file")
      ->capture_default_str();
  cmd.add_option("--inputs", c.inputs, "JSON file with crisp readings {risk: {factor: value}}");
  cmd.add_option("--set", c.sets, "Override one reading, RISK.FACTOR=VALUE (repeatable)");
  cmd.add_option("--out", c.out, "Directory for report files")->capture_default_str();
  cmd.add_flag("--paper-mode", c.paper_mode, "Pin the scenario's published intermediates");
  cmd.add_option("--resolution", c.resolution, "Output-universe sample count")
      ->check(CLI::Range(fuzzy::kMinResolution, 10'000'000));
}

struct Context {
  scenario::Scenario scenario;
  scenario::InputReading inputs;
  std::optional<int> resolution;
};

scenario::InputReading parse_sets(const std::vector<std::string>& sets) {
  scenario::InputReading out;
  for (const auto& s : sets) {
    auto eq = s.find('=');
    auto dot = s.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot > eq || dot == 0 || dot + 1 == eq) {
      throw UsageError("--set expects RISK.FACTOR=VALUE, got '" + s + "'");
    }
    const std::string value = s.substr(eq + 1);
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size()) throw UsageError("--set value is not a number: '" + s + "'");
    out[s.substr(0, dot)][s.substr(dot + 1, eq - dot - 1)] = x;
  }
  return out;
}

Context load_context(const Common& c) {
  Context ctx{scenario::resolve(c.scenario), {}, std::nullopt};
  ctx.inputs = ctx.scenario.inputs;
  if (!c.inputs.empty()) ctx.inputs = scenario::merge_inputs(ctx.inputs, scenario::load_inputs(c.inputs));
  ctx.inputs = scenario::merge_inputs(ctx.inputs, parse_sets(c.sets));
  if (c.resolution > 0) ctx.resolution = c.resolution;
  return ctx;
}

json config_echo(const std::string& command, const Common& c) {
  json cfg{{"command", command}, {"scenario", c.scenario}, {"paper_mode", c.paper_mode}};
  if (!c.inputs.empty()) cfg["inputs"] = c.inputs;
  if (!c.sets.empty()) cfg["set"] = c.sets;
  if (c.resolution > 0) cfg["resolution"] = c.resolution;
  return cfg;
}

void write_file(const fs::path& dir, const std::string& name, const std::string& content) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
  const fs::path path = dir / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << content;
  out.close();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

void write_json(const fs::path& dir, const std::string& name, const json& doc) {
  write_file(dir, name, doc.dump(2) + "\n");
}

const scenario::RiskSpec& pick_risk(const scenario::Scenario& s, const std::string& id) {
  if (id.empty()) return s.risks.front();
  return s.risk(id);
}

// ERM (percent) and CF per risk from the pipeline, honoring paper mode.
scenario::Assessment baseline_assessment(const Context& ctx, bool paper_mode) {
  return scenario::assess(ctx.scenario, ctx.inputs, {.paper_mode = paper_mode, .resolution = ctx.resolution});
}

void print_trace(std::ostream& out, const scenario::Assessment& a) {
  for (const auto& t : a.traces) {
    out << fmt::format("\n[{}]\n", t.risk);
    for (const auto& [factor, degrees] : t.computed_degrees) {
      out << fmt::format("  {:<18} x={:<6}", factor, report::number(t.inputs.at(factor)));
      for (const auto& [term, mu] : degrees) out << fmt::format(" {}={:.2f}", term, mu);
      out << "\n";
    }
    for (const auto& d : t.discrepancies) {
      out << fmt::format("  pinned {}.{}: {:.2f} (computed {:.2f})\n", d.factor, d.term, d.pinned, d.computed);
    }
    for (const auto& f : t.firings) {
      out << fmt::format("  rule {:<6} -> {:<5} strength {:.3f}\n", f.rule_id, f.consequent, f.strength);
    }
    out << "  activations";
    for (const auto& [term, s] : t.activations.entries()) out << fmt::format(" {}={:.3f}", term, s);
    out << fmt::format("\n  ERM {:.2f}{}  CF {:.3f} ({})  WoI {:.3f}  ERS {:.2f}\n", t.erm,
                       t.erm_pinned ? " (pinned)" : "", t.certainty.cf, t.certainty.rule_id, t.woi, t.ers);
  }
}

int cmd_assess(const Common& c, bool trace, std::ostream& out) {
  auto ctx = load_context(c);
  auto a = baseline_assessment(ctx, c.paper_mode);
  auto doc = report::assessment_json(ctx.scenario, a, true);
  doc["config"] = config_echo("assess", c);
  write_json(c.out, "assessment.json", doc);
  out << report::ranking_table(a);
  if (trace) print_trace(out, a);
  return kExitOk;
}

int cmd_weights(const Common& c, const std::string& cr_mode, std::ostream& out) {
  auto ctx = load_context(c);
  auto w = scenario::compute_weights(ctx.scenario, c.paper_mode);
  const auto mode = cr_mode == "weights" ? fahp::CrMode::kGivenWeights : fahp::CrMode::kEigenvector;
  auto doc = report::weights_json(ctx.scenario, w, mode);
  auto cfg = config_echo("weights", c);
  cfg["cr_mode"] = cr_mode;
  doc["config"] = cfg;
  write_json(c.out, "weights.json", doc);

  out << fmt::format("{:<8} {:>26} {:>10}\n", "risk", "fuzzy weight", "crisp");
  for (std::size_t i = 0; i < ctx.scenario.risks.size(); ++i) {
    std::string fuzzy = "-";
    if (w.report) {
      const auto& t = w.report->fuzzy_weights[i];
      fuzzy = fmt::format("({:.3f}, {:.3f}, {:.3f})", t.l(), t.m(), t.u());
    }
    out << fmt::format("{:<8} {:>26} {:>10.3f}\n", ctx.scenario.risks[i].id, fuzzy, w.computed[i]);
  }
  for (const auto* r : {w.eigen ? &*w.eigen : nullptr, w.given ? &*w.given : nullptr}) {
    if (r == nullptr) continue;
    out << fmt::format("CR ({:<7}) lambda_max {:.4f}  CI {:.4f}  RI {:.2f}  CR {:.4f}  {}\n",
                       fahp::to_string(r->mode), r->lambda_max, r->ci, r->ri, r->cr,
                       r->consistent ? "consistent" : "inconsistent");
  }
  const auto& chosen = mode == fahp::CrMode::kEigenvector ? w.eigen : w.given;
  out << "verdict: " << (!chosen || chosen->consistent ? "consistent" : "inconsistent") << "\n";
  return kExitOk;
}

struct SensitivityArgs {
  std::string risk;
  std::string factor;
  int steps = 0;
  std::optional<double> cf;
  std::optional<double> woi;
  std::optional<double> erm;
  std::vector<double> betas;
  std::optional<double> max_alpha;
  std::vector<double> levels{10, 20, 30, 50};
  double sigma = 0.2;
  int n = 0;
  std::uint64_t seed = 42;
  int probes = 100;
};

double pinned_or_baseline_woi(const Context& ctx, const Common& c, const scenario::RiskSpec& risk) {
  return scenario::compute_weights(ctx.scenario, c.paper_mode).used[ctx.scenario.risk_index(risk.id)];
}

int cmd_oat(const Common& c, const SensitivityArgs& a, std::ostream& out) {
  auto ctx = load_context(c);
  const auto& risk = pick_risk(ctx.scenario, a.risk);
  std::vector<std::string> factors;
  if (a.factor.empty()) {
    for (const auto& f : risk.factors()) factors.push_back(f.name());
  } else {
    factors.push_back(a.factor);
  }
  const int steps = a.steps > 0 ? a.steps : 100;
  for (const auto& factor : factors) {
    sensitivity::OatOptions o{.steps = steps, .range = std::nullopt, .cf = a.cf, .woi = a.woi,
                              .paper_mode = c.paper_mode, .resolution = ctx.resolution};
    auto sweep = sensitivity::oat_sweep(ctx.scenario, ctx.inputs, risk.id, factor, o);
    auto summary = report::sweep_json(sweep);
    auto cfg = config_echo("sensitivity oat", c);
    cfg["risk"] = risk.id;
    cfg["factor"] = factor;
    cfg["steps"] = steps;
    auto base = sensitivity::baseline(ctx.scenario, ctx.inputs, risk.id, c.paper_mode);
    cfg["cf"] = a.cf.value_or(base.cf);
    cfg["woi"] = a.woi.value_or(base.woi);
    summary["config"] = cfg;
    write_file(c.out, "sweep_" + factor + ".csv", report::sweep_csv(sweep));
    write_json(c.out, "sweep_" + factor + ".json", summary);
    out << fmt::format("{:<18} ERS {:.2f} .. {:.2f}  ({} points, {} without a fired rule)\n", factor,
                       summary["ers_min"].get<double>(), summary["ers_max"].get<double>(),
                       sweep.samples.size(), sweep.no_fire);
  }
  return kExitOk;
}

int cmd_cf(const Common& c, const SensitivityArgs& a, std::ostream& out) {
  auto ctx = load_context(c);
  const auto& risk = pick_risk(ctx.scenario, a.risk);
  std::vector<double> betas = a.betas;
  if (betas.empty()) betas = sensitivity::linspace(0.0, 1.0, a.steps > 0 ? a.steps : 5);
  const double woi = a.woi.value_or(pinned_or_baseline_woi(ctx, c, risk));
  double rl = 0.0;
  if (a.erm) {
    rl = *a.erm;
  } else {
    auto assessment = baseline_assessment(ctx, c.paper_mode);
    rl = assessment.assessments[ctx.scenario.risk_index(risk.id)].erm;
  }
  auto sweep = sensitivity::rule_cf_sweep(woi, rl, betas);
  auto summary = report::sweep_json(sweep);
  auto cfg = config_echo("sensitivity cf", c);
  cfg["risk"] = risk.id;
  cfg["woi"] = woi;
  cfg["erm"] = rl;
  cfg["betas"] = betas;
  summary["config"] = cfg;
  write_file(c.out, "sweep_beta.csv", report::sweep_csv(sweep));
  write_json(c.out, "sweep_beta.json", summary);
  for (const auto& p : sweep.samples) out << fmt::format("beta {:.3f}  ERS {:.2f}\n", p.value, p.ers);
  return kExitOk;
}

int cmd_antecedent(const Common& c, const SensitivityArgs& a, std::ostream& out) {
  auto ctx = load_context(c);
  const auto& risk = pick_risk(ctx.scenario, a.risk);
  const auto& rule = risk.cf_rule;
  if (rule.form() != certainty::RuleForm::kDisjunctive) {
    throw ValidationError("risks[" + risk.id + "].cf_rule", "antecedent sweeps need a disjunctive (type3) rule");
  }
  std::size_t index = 0;
  if (!a.factor.empty()) {
    index = rule.antecedents().size();
    for (std::size_t i = 0; i < rule.antecedents().size(); ++i) {
      if (rule.antecedents()[i].variable == a.factor) index = i;
    }
    if (index == rule.antecedents().size()) {
      throw ValidationError("factor", "'" + a.factor + "' is not an antecedent of rule '" + rule.id() + "'");
    }
  }
  auto assessment = baseline_assessment(ctx, c.paper_mode);
  const auto& trace = assessment.traces[ctx.scenario.risk_index(risk.id)];
  const auto& alphas = trace.certainty.alphas;
  const double woi = a.woi.value_or(trace.woi);
  const double rl = a.erm.value_or(assessment.assessments[ctx.scenario.risk_index(risk.id)].erm);
  const double hi = a.max_alpha.value_or(alphas[index]);
  auto grid = sensitivity::linspace(0.0, hi, a.steps > 0 ? a.steps : 5);
  auto sweep = sensitivity::antecedent_sweep(alphas, index, rule.betas().front(), woi, rl, grid);
  const std::string name = rule.antecedents()[index].variable;
  auto summary = report::sweep_json(sweep);
  auto cfg = config_echo("sensitivity antecedent", c);
  cfg["risk"] = risk.id;
  cfg["antecedent"] = name;
  cfg["alphas"] = alphas;
  cfg["beta"] = rule.betas().front();
  cfg["woi"] = woi;
  cfg["erm"] = rl;
  summary["config"] = cfg;
  write_file(c.out, "sweep_alpha_" + name + ".csv", report::sweep_csv(sweep));
  write_json(c.out, "sweep_alpha_" + name + ".json", summary);
  for (const auto& p : sweep.samples) out << fmt::format("alpha {:.3f}  ERS {:.2f}\n", p.value, p.ers);
  return kExitOk;
}

int cmd_tornado(const Common& c, const SensitivityArgs& a, std::ostream& out) {
  auto ctx = load_context(c);
  const auto& risk = pick_risk(ctx.scenario, a.risk);
  sensitivity::TornadoOptions o;
  o.levels.clear();
  for (double pct : a.levels) o.levels.push_back(pct / 100.0);
  o.cf = a.cf;
  o.woi = a.woi;
  o.paper_mode = c.paper_mode;
  o.resolution = ctx.resolution;
  auto table = sensitivity::tornado(ctx.scenario, ctx.inputs, risk.id, o);
  auto summary = report::tornado_json(table);
  auto cfg = config_echo("sensitivity tornado", c);
  cfg["risk"] = risk.id;
  cfg["levels_pct"] = a.levels;
  summary["config"] = cfg;
  write_file(c.out, "tornado.csv", report::tornado_csv(table));
  write_json(c.out, "tornado.json", summary);
  out << fmt::format("{:<18}", "factor");
  for (double pct : a.levels) out << fmt::format(" {:>9}", fmt::format("±{}%", report::number(pct)));
  out << "\n";
  for (const auto& row : table.rows) {
    out << fmt::format("{:<18}", row.factor);
    for (const auto& cell : row.cells) out << fmt::format(" {:>9.3f}", cell.magnitude());
    out << "\n";
  }
  return kExitOk;
}

int cmd_mc(const Common& c, const SensitivityArgs& a, std::ostream& out) {
  auto ctx = load_context(c);
  const auto& s = ctx.scenario;
  if (s.risks.size() < 2) throw ValidationError("experts", "Monte Carlo over weights needs at least two risks");
  auto assessment = baseline_assessment(ctx, c.paper_mode);
  std::vector<std::string> ids;
  std::vector<double> cf, erm;
  for (const auto& r : assessment.assessments) {
    ids.push_back(r.risk);
    cf.push_back(r.cf);
    erm.push_back(r.erm);
  }
  sensitivity::MonteCarloOptions o;
  o.sigma = a.sigma;
  o.n = a.n > 0 ? a.n : 500;
  o.seed = a.seed;
  auto matrix = scenario::compute_weights(s).aggregated->midpoints();
  auto mc = sensitivity::fahp_monte_carlo(matrix, ids, cf, erm, o);
  auto summary = report::mc_json(mc);
  auto cfg = config_echo("sensitivity mc", c);
  cfg["sigma"] = o.sigma;
  cfg["n"] = o.n;
  cfg["seed"] = o.seed;
  summary["config"] = cfg;
  write_file(c.out, "mc_samples.csv", report::mc_samples_csv(mc));
  write_json(c.out, "mc_summary.json", summary);
  out << fmt::format("{} samples, sigma {}, seed {}\n", o.n, report::number(o.sigma), o.seed);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    out << fmt::format("{:<6} w {:.3f} ± {:.3f}  ERS {:.2f} ± {:.2f}  largest in {:.1f}%\n", ids[i],
                       mc.mean_weights[i], mc.std_weights[i], mc.mean_ers[i], mc.std_ers[i],
                       100.0 * static_cast<double>(mc.largest[i]) / o.n);
  }
  return kExitOk;
}

int cmd_sobol(const Common& c, const SensitivityArgs& a, std::ostream& out, std::ostream& err) {
  auto ctx = load_context(c);
  const auto& risk = pick_risk(ctx.scenario, a.risk);
  sensitivity::RiskSobolOptions o;
  o.sobol.n_base = a.n > 0 ? a.n : 1024;
  o.sobol.seed = a.seed;
  o.resolution = ctx.resolution;
  auto result = sensitivity::sobol_risk(ctx.scenario, risk.id, o);
  auto summary = report::sobol_json(result);
  auto cfg = config_echo("sensitivity sobol", c);
  cfg["risk"] = risk.id;
  cfg["n"] = o.sobol.n_base;
  cfg["seed"] = o.sobol.seed;
  cfg["cf_range"] = {o.cf_range.lo, o.cf_range.hi};
  cfg["woi_range"] = {o.woi_range.lo, o.woi_range.hi};
  summary["config"] = cfg;
  write_file(c.out, "sobol.csv", report::sobol_csv(result));
  write_json(c.out, "sobol.json", summary);
  for (const auto& w : result.warnings) err << "warning: " << w << "\n";
  out << fmt::format("{} evaluations (N = {}), seed {}\n", result.evaluations, result.n_base, result.seed);
  for (const auto& i : result.indices) out << fmt::format("{:<18} S1 {:>8.4f}  ST {:>8.4f}\n", i.name, i.s1, i.st);
  return kExitOk;
}

int cmd_axioms(const Common& c, const SensitivityArgs& a, std::ostream& out) {
  auto ctx = load_context(c);
  sensitivity::AxiomOptions o;
  o.seed = a.seed;
  o.probes = a.probes;
  auto results = sensitivity::axiom_suite(ctx.scenario, o);
  auto doc = report::axioms_json(results);
  auto cfg = config_echo("sensitivity axioms", c);
  cfg["seed"] = a.seed;
  cfg["probes"] = a.probes;
  doc["config"] = cfg;
  write_json(c.out, "axioms.json", doc);
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    out << fmt::format("axiom {} {:<28} {}{}\n", r.number, r.name, r.passed ? "pass" : "FAIL",
                       r.vacuous ? " (vacuous)" : "");
  }
  return all ? kExitOk : kExitValidation;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ethical risk scoring: fuzzy inference, certainty factors and fuzzy AHP weights"};
  app.name("erisk");
  app.require_subcommand(1);

  Common common;
  bool trace = false;
  std::string cr_mode = "eigen";
  SensitivityArgs sa;

  auto* assess = app.add_subcommand("assess", "Score every risk and rank them");
  add_common(*assess, common);
  assess->add_flag("--trace", trace, "Print fuzzified degrees, rule firings and activations");

  auto* weights = app.add_subcommand("weights", "Fuzzy AHP weights and consistency ratio");
  add_common(*weights, common);
  weights->add_option("--cr-mode", cr_mode, "Mode that decides the consistency verdict")
      ->check(CLI::IsMember({"eigen", "weights"}))
      ->capture_default_str();

  auto* sens = app.add_subcommand("sensitivity", "Sensitivity analyses");
  sens->require_subcommand(1);
  std::function<int()> action;

  auto add_overrides = [&](CLI::App& cmd) {
    cmd.add_option("--cf", sa.cf, "Hold CF at this value")->check(CLI::Range(0.0, 1.0));
    cmd.add_option("--woi", sa.woi, "Hold the weight at this value")->check(CLI::Range(0.0, 1.0));
  };
  auto add_risk = [&](CLI::App& cmd) { cmd.add_option("--risk", sa.risk, "Risk id (default: the first risk)"); };

  auto* oat = sens->add_subcommand("oat", "One-at-a-time sweep of a factor over its universe");
  add_common(*oat, common);
  add_risk(*oat);
  add_overrides(*oat);
  oat->add_option("--factor", sa.factor, "Factor to sweep (default: every factor)");
  oat->add_option("--steps", sa.steps, "Grid points including both ends (default 100)")->check(CLI::Range(2, 1'000'000));
  oat->callback([&] { action = [&] { return cmd_oat(common, sa, out); }; });

  auto* cf = sens->add_subcommand("cf", "Sweep the CF-bearing rule's confidence beta");
  add_common(*cf, common);
  add_risk(*cf);
  cf->add_option("--woi", sa.woi, "Weight (default: the scenario's)")->check(CLI::Range(0.0, 1.0));
  cf->add_option("--erm", sa.erm, "Risk level in percent (default: the scenario's)")->check(CLI::Range(0.0, 100.0));
  cf->add_option("--betas", sa.betas, "Explicit beta grid")->delimiter(',')->check(CLI::Range(0.0, 1.0));
  cf->add_option("--steps", sa.steps, "Evenly spaced betas over [0, 1] (default 5)")->check(CLI::Range(2, 1'000'000));
  cf->callback([&] { action = [&] { return cmd_cf(common, sa, out); }; });

  auto* ante = sens->add_subcommand("antecedent", "Sweep one antecedent belief of the CF-bearing rule");
  add_common(*ante, common);
  add_risk(*ante);
  ante->add_option("--factor", sa.factor, "Antecedent factor (default: the first)");
  ante->add_option("--woi", sa.woi, "Weight (default: the scenario's)")->check(CLI::Range(0.0, 1.0));
  ante->add_option("--erm", sa.erm, "Risk level in percent (default: the scenario's)")->check(CLI::Range(0.0, 100.0));
  ante->add_option("--max", sa.max_alpha, "Upper end of the grid (default: the baseline belief)")
      ->check(CLI::Range(0.0, 1.0));
  ante->add_option("--steps", sa.steps, "Grid points (default 5)")->check(CLI::Range(2, 1'000'000));
  ante->callback([&] { action = [&] { return cmd_antecedent(common, sa, out); }; });

  auto* tor = sens->add_subcommand("tornado", "Relative ERS change under ± percentage perturbations");
  add_common(*tor, common);
  add_risk(*tor);
  add_overrides(*tor);
  tor->add_option("--levels", sa.levels, "Perturbation levels in percent")
      ->delimiter(',')
      ->check(CLI::Range(0.0, 1000.0))
      ->capture_default_str();
  tor->callback([&] { action = [&] { return cmd_tornado(common, sa, out); }; });

  auto* mc = sens->add_subcommand("mc", "Monte Carlo over noisy pairwise comparisons");
  add_common(*mc, common);
  mc->add_option("--sigma", sa.sigma, "Noise standard deviation")->check(CLI::NonNegativeNumber)->capture_default_str();
  mc->add_option("--n", sa.n, "Sample count (default 500)")->check(CLI::PositiveNumber);
  mc->add_option("--seed", sa.seed, "RNG seed")->capture_default_str();
  mc->callback([&] { action = [&] { return cmd_mc(common, sa, out); }; });

  auto* sob = sens->add_subcommand("sobol", "Sobol indices by Saltelli sampling");
  add_common(*sob, common);
  add_risk(*sob);
  sob->add_option("--n", sa.n, "Base sample size (default 1024)")->check(CLI::Range(2, 1 << 24));
  sob->add_option("--seed", sa.seed, "RNG seed")->capture_default_str();
  sob->callback([&] { action = [&] { return cmd_sobol(common, sa, out, err); }; });

  auto* ax = sens->add_subcommand("axioms", "Check the five sensitivity axioms");
  add_common(*ax, common);
  ax->add_option("--seed", sa.seed, "RNG seed")->capture_default_str();
  ax->add_option("--probes", sa.probes, "Random probe points per axiom")->check(CLI::PositiveNumber)->capture_default_str();
  ax->callback([&] { action = [&] { return cmd_axioms(common, sa, out); }; });

  assess->callback([&] { action = [&] { return cmd_assess(common, trace, out); }; });
  weights->callback([&] { action = [&] { return cmd_weights(common, cr_mode, out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    return action();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}

}  // namespace erisk::cli
