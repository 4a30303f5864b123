#pragma once

#include <span>
#include <string>
#include <vector>

namespace erisk::scoring {

// ERM is a percentage in [0, 100]; CF and WoI live on the unit interval, so
// ERS lands in [0, 100].
struct RiskAssessment {
  std::string risk;
  double erm = 0.0;
  double cf = 0.0;
  double woi = 0.0;
  double ers = 0.0;
};

// ERM · CF · WoI. Throws ValidationError for operands outside their ranges.
double ers(double erm, double cf, double woi);

RiskAssessment assess(std::string risk, double erm, double cf, double woi);

// Descending ERS, then descending ERM, then ascending risk id.
std::vector<RiskAssessment> rank(std::span<const RiskAssessment> assessments);

}  // namespace erisk::scoring
