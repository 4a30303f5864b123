#include "erisk/report.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

namespace erisk::report {

using nlohmann::json;

namespace {

json degrees_json(const fuzzy::FuzzifiedInputs& degrees) {
  json out = json::object();
  for (const auto& [var, terms] : degrees) {
    for (const auto& [term, mu] : terms) out[var][term] = mu;
  }
  return out;
}

json activations_json(const fuzzy::ActivationVector& a) {
  json out = json::object();
  for (const auto& [term, strength] : a.entries()) out[term] = strength;
  return out;
}

json assessment_row(const scoring::RiskAssessment& a) {
  return {{"risk", a.risk}, {"erm", a.erm}, {"cf", a.cf}, {"woi", a.woi}, {"ers", a.ers}};
}

json tfns(const std::vector<fahp::TFN>& v) {
  json out = json::array();
  for (const auto& t : v) out.push_back(to_json(t));
  return out;
}

json matrix_json(const fahp::ComparisonMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.size(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

json by_risk(const scenario::Scenario& s, const std::vector<double>& values) {
  json out = json::object();
  for (std::size_t i = 0; i < values.size() && i < s.risks.size(); ++i) out[s.risks[i].id] = values[i];
  return out;
}

std::string join(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  line += '\n';
  return line;
}

}  // namespace

std::string number(double value) { return fmt::format("{}", value); }

json to_json(const fahp::TFN& tfn) { return {tfn.l(), tfn.m(), tfn.u()}; }

json to_json(const fahp::ConsistencyReport& r) {
  json out{{"mode", std::string(fahp::to_string(r.mode))},
           {"lambda_max", r.lambda_max},
           {"ci", r.ci},
           {"ri", r.ri},
           {"cr", r.cr},
           {"consistent", r.consistent},
           {"weights", r.weights}};
  if (r.mode == fahp::CrMode::kEigenvector) out["iterations"] = r.iterations;
  return out;
}

json assessment_json(const scenario::Scenario& s, const scenario::Assessment& a, bool trace) {
  json out;
  out["scenario"] = s.name;
  out["paper_mode"] = a.paper_mode;
  json risks = json::array();
  for (const auto& r : a.assessments) risks.push_back(assessment_row(r));
  out["assessments"] = risks;
  json ranking = json::array();
  for (const auto& r : a.ranking) ranking.push_back(r.risk);
  out["ranking"] = ranking;
  out["weights"] = {{"used", by_risk(s, a.weights.used)},
                    {"computed", by_risk(s, a.weights.computed)},
                    {"pinned", a.weights.pinned}};
  if (!trace) return out;

  json traces = json::array();
  for (const auto& t : a.traces) {
    json item;
    item["risk"] = t.risk;
    item["inputs"] = t.inputs;
    item["fuzzified"] = degrees_json(t.computed_degrees);
    if (a.paper_mode) {
      item["degrees_used"] = degrees_json(t.degrees);
      json discrepancies = json::array();
      for (const auto& d : t.discrepancies) {
        discrepancies.push_back(
            {{"factor", d.factor}, {"term", d.term}, {"computed", d.computed}, {"pinned", d.pinned}});
      }
      item["membership_discrepancies"] = discrepancies;
    }
    json firings = json::array();
    for (const auto& f : t.firings) {
      firings.push_back({{"rule", f.rule_id}, {"consequent", f.consequent}, {"strength", f.strength}});
    }
    item["firings"] = firings;
    item["activations"] = activations_json(t.activations);
    item["erm_computed"] = t.erm_computed ? json(*t.erm_computed) : json(nullptr);
    item["erm"] = t.erm;
    item["erm_pinned"] = t.erm_pinned;
    item["certainty"] = {{"rule", t.certainty.rule_id},
                         {"form", std::string(certainty::to_string(t.certainty.form))},
                         {"alphas", t.certainty.alphas},
                         {"beliefs_from_degrees", t.beliefs_from_degrees},
                         {"cf", t.certainty.cf}};
    item["woi"] = t.woi;
    item["ers"] = t.ers;
    traces.push_back(item);
  }
  out["trace"] = traces;
  json fahp_trace;
  if (a.weights.aggregated) fahp_trace["aggregated_matrix"] = matrix_json(*a.weights.aggregated);
  if (a.weights.report) {
    const auto& r = *a.weights.report;
    fahp_trace["geometric_means"] = tfns(r.geometric_means);
    fahp_trace["geometric_sum"] = to_json(r.geometric_sum);
    fahp_trace["fuzzy_weights"] = tfns(r.fuzzy_weights);
    fahp_trace["bnfp"] = r.bnfp;
    fahp_trace["crisp_weights"] = r.crisp_weights;
  }
  if (a.weights.eigen) fahp_trace["consistency_eigen"] = to_json(*a.weights.eigen);
  if (a.weights.given) fahp_trace["consistency_weights"] = to_json(*a.weights.given);
  out["fahp"] = fahp_trace.is_null() ? json::object() : fahp_trace;
  return out;
}

json weights_json(const scenario::Scenario& s, const scenario::WeightTrace& w, fahp::CrMode verdict_mode) {
  json out;
  out["scenario"] = s.name;
  json ids = json::array();
  for (const auto& r : s.risks) ids.push_back(r.id);
  out["risks"] = ids;
  if (w.aggregated) out["aggregated_matrix"] = matrix_json(*w.aggregated);
  if (w.report) {
    out["geometric_means"] = tfns(w.report->geometric_means);
    out["geometric_sum"] = to_json(w.report->geometric_sum);
    out["fuzzy_weights"] = tfns(w.report->fuzzy_weights);
    out["bnfp"] = w.report->bnfp;
  }
  out["crisp_weights"] = by_risk(s, w.computed);
  if (w.pinned) out["pinned_weights"] = by_risk(s, w.used);
  json consistency = json::object();
  if (w.eigen) consistency["eigen"] = to_json(*w.eigen);
  if (w.given) consistency["weights"] = to_json(*w.given);
  out["consistency"] = consistency;
  out["verdict_mode"] = std::string(fahp::to_string(verdict_mode));
  const auto& chosen = verdict_mode == fahp::CrMode::kEigenvector ? w.eigen : w.given;
  out["consistent"] = chosen ? json(chosen->consistent) : json(true);
  return out;
}

std::string sweep_csv(const sensitivity::SweepResult& sweep) {
  std::string out = join({sweep.parameter, "erm", "ers", "fired"});
  for (const auto& p : sweep.samples) {
    out += join({number(p.value), number(p.erm), number(p.ers), p.fired ? "1" : "0"});
  }
  return out;
}

json sweep_json(const sensitivity::SweepResult& sweep) {
  json segments = json::array();
  for (const auto& seg : sweep.segments) {
    segments.push_back({{"from", sweep.samples[seg.first].value},
                        {"to", sweep.samples[seg.last].value},
                        {"trend", std::string(sensitivity::to_string(seg.trend))}});
  }
  double lo = 0.0, hi = 0.0;
  if (!sweep.samples.empty()) {
    auto [mn, mx] = std::minmax_element(sweep.samples.begin(), sweep.samples.end(),
                                        [](const auto& a, const auto& b) { return a.ers < b.ers; });
    lo = mn->ers;
    hi = mx->ers;
  }
  return {{"parameter", sweep.parameter},
          {"samples", sweep.samples.size()},
          {"no_fire", sweep.no_fire},
          {"ers_min", lo},
          {"ers_max", hi},
          {"ers_range", hi - lo},
          {"segments", segments}};
}

std::string tornado_csv(const sensitivity::TornadoTable& table) {
  std::string out = join({"factor", "level_pct", "value_down", "value_up", "ers_down", "ers_up",
                          "change_down_pct", "change_up_pct", "magnitude_pct"});
  out += join({"baseline", "0", "", "", number(table.baseline_ers), number(table.baseline_ers), "0", "0", "0"});
  for (std::size_t l = 0; l < table.levels.size(); ++l) {
    std::vector<std::size_t> order(table.rows.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      return table.rows[x].cells[l].magnitude() > table.rows[y].cells[l].magnitude();
    });
    for (std::size_t r : order) {
      const auto& row = table.rows[r];
      const auto& c = row.cells[l];
      out += join({row.factor, number(100.0 * c.level), number(c.value_down), number(c.value_up),
                   number(c.ers_down), number(c.ers_up), number(c.change_down), number(c.change_up),
                   number(c.magnitude())});
    }
  }
  return out;
}

json tornado_json(const sensitivity::TornadoTable& table) {
  json rows = json::array();
  for (const auto& row : table.rows) {
    json cells = json::array();
    for (const auto& c : row.cells) {
      cells.push_back({{"level", c.level},
                       {"value_down", c.value_down},
                       {"value_up", c.value_up},
                       {"clamped_down", c.clamped_down},
                       {"clamped_up", c.clamped_up},
                       {"change_down_pct", c.change_down},
                       {"change_up_pct", c.change_up}});
    }
    rows.push_back({{"factor", row.factor}, {"baseline", row.baseline_value}, {"cells", cells}});
  }
  return {{"risk", table.risk}, {"baseline_ers", table.baseline_ers}, {"cf", table.cf},
          {"woi", table.woi},   {"levels", table.levels},             {"no_fire", table.no_fire},
          {"rows", rows}};
}

std::string mc_samples_csv(const sensitivity::MonteCarloResult& mc) {
  std::vector<std::string> header{"sample"};
  for (const auto& r : mc.risks) header.push_back("w_" + r);
  for (const auto& r : mc.risks) header.push_back("ers_" + r);
  header.push_back("largest");
  std::string out = join(header);
  for (std::size_t k = 0; k < mc.weights.size(); ++k) {
    std::vector<std::string> cells{std::to_string(k)};
    for (double w : mc.weights[k]) cells.push_back(number(w));
    for (double e : mc.ers[k]) cells.push_back(number(e));
    const auto& w = mc.weights[k];
    cells.push_back(mc.risks[static_cast<std::size_t>(std::max_element(w.begin(), w.end()) - w.begin())]);
    out += join(cells);
  }
  return out;
}

json mc_json(const sensitivity::MonteCarloResult& mc) {
  json per_risk = json::object();
  for (std::size_t i = 0; i < mc.risks.size(); ++i) {
    per_risk[mc.risks[i]] = {{"cf", mc.cf[i]},
                             {"erm", mc.erm[i]},
                             {"base_weight", mc.base_weights[i]},
                             {"mean_weight", mc.mean_weights[i]},
                             {"std_weight", mc.std_weights[i]},
                             {"mean_ers", mc.mean_ers[i]},
                             {"std_ers", mc.std_ers[i]},
                             {"largest_count", mc.largest[i]},
                             {"largest_share", static_cast<double>(mc.largest[i]) /
                                                   static_cast<double>(mc.weights.size())}};
  }
  return {{"n", mc.options.n},
          {"sigma", mc.options.sigma},
          {"seed", mc.options.seed},
          {"min_entry", mc.options.min_entry},
          {"redraws", mc.redraws},
          {"risks", per_risk}};
}

std::string sobol_csv(const sensitivity::SobolResult& result) {
  std::string out = join({"input", "s1", "st"});
  for (const auto& i : result.indices) out += join({i.name, number(i.s1), number(i.st)});
  return out;
}

json sobol_json(const sensitivity::SobolResult& result) {
  json indices = json::array();
  for (const auto& i : result.indices) indices.push_back({{"input", i.name}, {"s1", i.s1}, {"st", i.st}});
  return {{"n_base", result.n_base},
          {"evaluations", result.evaluations},
          {"seed", result.seed},
          {"mean", result.mean},
          {"variance", result.variance},
          {"no_fire", result.no_fire},
          {"warnings", result.warnings},
          {"indices", indices}};
}

json axioms_json(const std::vector<sensitivity::AxiomResult>& results) {
  json items = json::array();
  std::size_t passed = 0;
  for (const auto& r : results) {
    if (r.passed) ++passed;
    json item{{"axiom", r.number}, {"name", r.name},     {"passed", r.passed},
              {"vacuous", r.vacuous}, {"probes", r.probes}, {"detail", r.detail}};
    if (r.witness) item["witness"] = *r.witness;
    items.push_back(item);
  }
  return {{"passed", passed}, {"total", results.size()}, {"axioms", items}};
}

std::string ranking_table(const scenario::Assessment& a) {
  std::string out = fmt::format("{:<4} {:<8} {:>8} {:>7} {:>7} {:>8}\n", "rank", "risk", "ERM", "CF", "WoI", "ERS");
  int rank = 1;
  for (const auto& r : a.ranking) {
    out += fmt::format("{:<4} {:<8} {:>8.2f} {:>7.3f} {:>7.3f} {:>8.2f}\n", rank++, r.risk, r.erm, r.cf,
                       r.woi, r.ers);
  }
  return out;
}

}  // namespace erisk::report
