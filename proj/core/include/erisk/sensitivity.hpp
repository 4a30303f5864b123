#pragma once

// Local and global sensitivity of ERS: one-at-a-time sweeps, rule-CF and
// antecedent sweeps, tornado tables, Monte Carlo over the FAHP matrix, Sobol
// indices, and the five-axiom validation suite.
//
// In the pipeline-driven analyses a point where no rule fires is scored with
// ERM 0 and counted instead of aborting the study.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "erisk/fahp.hpp"
#include "erisk/fuzzy.hpp"
#include "erisk/scenario.hpp"

namespace erisk::sensitivity {

// `steps` evenly spaced values from lo to hi, endpoints exact.
std::vector<double> linspace(double lo, double hi, int steps);

// ERM of one risk in percent of its output universe.
struct ErmSample {
  double erm = 0.0;
  bool fired = true;
};

ErmSample evaluate_erm(const scenario::RiskSpec& risk, const fuzzy::CrispInputs& inputs,
                       int resolution);

// CF and WoI a sweep holds fixed: the scenario's baseline values, or the
// pinned ones in paper mode.
struct Baseline {
  fuzzy::CrispInputs inputs;
  double cf = 0.0;
  double woi = 0.0;
};

Baseline baseline(const scenario::Scenario& s, const scenario::InputReading& inputs,
                  std::string_view risk, bool paper_mode = false);

struct SweepPoint {
  double value = 0.0;
  double erm = 0.0;
  double ers = 0.0;
  bool fired = true;
};

enum class Trend { kRising, kFalling, kFlat };

std::string_view to_string(Trend trend) noexcept;

// Maximal run of consecutive samples sharing one trend; `first`/`last` index samples.
struct Segment {
  std::size_t first = 0;
  std::size_t last = 0;
  Trend trend = Trend::kFlat;
};

struct SweepResult {
  std::string parameter;
  std::vector<SweepPoint> samples;
  std::vector<Segment> segments;
  std::size_t no_fire = 0;
};

// Changes within `flat_tolerance` count as flat.
std::vector<Segment> monotone_segments(std::span<const SweepPoint> samples,
                                       double flat_tolerance = 1e-9);

struct OatOptions {
  int steps = 100;
  std::optional<fuzzy::Interval> range;  // defaults to the factor's universe
  std::optional<double> cf;
  std::optional<double> woi;
  bool paper_mode = false;
  std::optional<int> resolution;
};

SweepResult oat_sweep(const scenario::Scenario& s, const scenario::InputReading& inputs,
                      std::string_view risk, std::string_view factor, const OatOptions& options = {});

// ERS = w · β · rl for each β.
SweepResult rule_cf_sweep(double woi, double rl, std::span<const double> betas);

// ERS = w · max(α with α[index] replaced by each grid value) · β · rl.
SweepResult antecedent_sweep(std::span<const double> alphas, std::size_t index, double beta,
                             double woi, double rl, std::span<const double> grid);

inline const std::vector<double> kDefaultTornadoLevels{0.10, 0.20, 0.30, 0.50};

struct TornadoCell {
  double level = 0.0;
  double value_down = 0.0;
  double value_up = 0.0;
  double ers_down = 0.0;
  double ers_up = 0.0;
  double change_down = 0.0;  // percent of the baseline ERS
  double change_up = 0.0;
  bool clamped_down = false;
  bool clamped_up = false;
  double magnitude() const noexcept;  // max(|change_down|, |change_up|)
};

struct TornadoRow {
  std::string factor;
  double baseline_value = 0.0;
  std::vector<TornadoCell> cells;  // parallel to TornadoTable::levels
};

struct TornadoTable {
  std::string risk;
  double baseline_ers = 0.0;
  double cf = 0.0;
  double woi = 0.0;
  std::vector<double> levels;
  std::vector<TornadoRow> rows;  // factor declaration order
  std::size_t no_fire = 0;

  const TornadoRow& row(std::string_view factor) const;
};

struct TornadoOptions {
  std::vector<double> levels = kDefaultTornadoLevels;
  std::optional<double> cf;
  std::optional<double> woi;
  bool paper_mode = false;
  std::optional<int> resolution;
};

// Each factor scaled by (1 - level) and (1 + level), clamped to its universe.
TornadoTable tornado(const scenario::Scenario& s, const scenario::InputReading& inputs,
                     std::string_view risk, const TornadoOptions& options = {});

struct MonteCarloOptions {
  double sigma = 0.2;
  int n = 500;
  std::uint64_t seed = 42;
  double min_entry = 0.01;  // perturbed entries at or below this are redrawn
  int max_redraws = 10000;
};

struct MonteCarloResult {
  std::vector<std::string> risks;
  std::vector<double> cf;
  std::vector<double> erm;
  MonteCarloOptions options;
  std::vector<double> base_weights;
  std::vector<std::vector<double>> weights;  // per sample
  std::vector<std::vector<double>> ers;      // per sample
  std::vector<double> mean_weights;
  std::vector<double> std_weights;  // population
  std::vector<double> mean_ers;
  std::vector<double> std_ers;
  std::vector<std::size_t> largest;  // samples in which each risk has the largest weight
  std::size_t redraws = 0;
};

// Gaussian noise on every upper-triangle entry of `base`, reciprocals rebuilt,
// weights from the principal eigenvector, ERS with the given CF and ERM.
MonteCarloResult fahp_monte_carlo(const fahp::CrispMatrix& base, std::vector<std::string> risks,
                                  std::vector<double> cf, std::vector<double> erm,
                                  const MonteCarloOptions& options = {});

struct SobolInput {
  std::string name;
  double lo = 0.0;
  double hi = 1.0;
};

using Model = std::function<double(std::span<const double>)>;

struct SobolOptions {
  int n_base = 1024;
  std::uint64_t seed = 42;
};

struct SobolIndex {
  std::string name;
  double s1 = 0.0;
  double st = 0.0;
};

struct SobolResult {
  std::vector<SobolIndex> indices;
  int n_base = 0;
  std::size_t evaluations = 0;
  std::uint64_t seed = 0;
  double mean = 0.0;
  double variance = 0.0;
  std::size_t no_fire = 0;
  std::vector<std::string> warnings;
};

// Saltelli design over independent uniform inputs, N·(D+2) model evaluations.
// S1 by the Saltelli (2010) estimator, ST by Jansen's.
SobolResult sobol(std::span<const SobolInput> inputs, const Model& model,
                  const SobolOptions& options = {});

struct RiskSobolOptions {
  SobolOptions sobol;
  fuzzy::Interval cf_range{0.5, 1.0};
  fuzzy::Interval woi_range{0.4, 0.7};
  std::optional<int> resolution;
};

// Inputs are the risk's factors over their universes, then CF and WoI;
// the model is ERS = WoI · CF · ERM.
SobolResult sobol_risk(const scenario::Scenario& s, std::string_view risk,
                       const RiskSobolOptions& options = {});

using ScoreFn = std::function<double(double erm, double cf, double woi)>;

struct AxiomResult {
  int number = 0;
  std::string name;
  bool passed = true;
  bool vacuous = false;
  int probes = 0;
  std::string detail;
  std::optional<nlohmann::json> witness;  // first violating sample
};

struct AxiomOptions {
  int probes = 100;
  std::uint64_t seed = 42;
  double tolerance = 1e-9;
  ScoreFn score;  // defaults to scoring::ers
};

std::vector<AxiomResult> axiom_suite(const scenario::Scenario& s, const AxiomOptions& options = {});

}  // namespace erisk::sensitivity
