#pragma once

// Deterministic CSV and JSON renderings of assessments and analyses. Numbers
// use the shortest representation that round-trips, so identical results
// give byte-identical files.

#include <string>

#include <nlohmann/json.hpp>

#include "erisk/fahp.hpp"
#include "erisk/scenario.hpp"
#include "erisk/sensitivity.hpp"

namespace erisk::report {

std::string number(double value);

nlohmann::json to_json(const fahp::TFN& tfn);
nlohmann::json to_json(const fahp::ConsistencyReport& report);

// `trace` adds the per-risk intermediates and the FAHP derivation.
nlohmann::json assessment_json(const scenario::Scenario& s, const scenario::Assessment& a, bool trace);
nlohmann::json weights_json(const scenario::Scenario& s, const scenario::WeightTrace& w,
                            fahp::CrMode verdict_mode);

std::string sweep_csv(const sensitivity::SweepResult& sweep);
nlohmann::json sweep_json(const sensitivity::SweepResult& sweep);

// Rows grouped by level; within a level sorted by descending bar magnitude
// max(|down|, |up|), ties in factor order. A leading baseline row has zero change.
std::string tornado_csv(const sensitivity::TornadoTable& table);
nlohmann::json tornado_json(const sensitivity::TornadoTable& table);

std::string mc_samples_csv(const sensitivity::MonteCarloResult& mc);
nlohmann::json mc_json(const sensitivity::MonteCarloResult& mc);

std::string sobol_csv(const sensitivity::SobolResult& result);
nlohmann::json sobol_json(const sensitivity::SobolResult& result);

nlohmann::json axioms_json(const std::vector<sensitivity::AxiomResult>& results);

// Fixed-width table of the ranking for terminals.
std::string ranking_table(const scenario::Assessment& a);

}  // namespace erisk::report
