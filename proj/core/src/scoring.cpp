#include "erisk/scoring.hpp"

#include <algorithm>
#include <cmath>

#include "erisk/error.hpp"

namespace erisk::scoring {

double ers(double erm, double cf, double woi) {
  if (!(erm >= 0.0 && erm <= 100.0)) {
    throw ValidationError("erm", "must lie in [0, 100], got " + std::to_string(erm));
  }
  if (!(cf >= 0.0 && cf <= 1.0)) {
    throw ValidationError("cf", "must lie in [0, 1], got " + std::to_string(cf));
  }
  if (!(woi >= 0.0 && woi <= 1.0)) {
    throw ValidationError("woi", "must lie in [0, 1], got " + std::to_string(woi));
  }
  return erm * cf * woi;
}

RiskAssessment assess(std::string risk, double erm, double cf, double woi) {
  return RiskAssessment{std::move(risk), erm, cf, woi, ers(erm, cf, woi)};
}

std::vector<RiskAssessment> rank(std::span<const RiskAssessment> assessments) {
  if (assessments.empty()) throw ValidationError("assessments", "nothing to rank");
  std::vector<RiskAssessment> out(assessments.begin(), assessments.end());
  std::stable_sort(out.begin(), out.end(), [](const RiskAssessment& a, const RiskAssessment& b) {
    if (a.ers != b.ers) return a.ers > b.ers;
    if (a.erm != b.erm) return a.erm > b.erm;
    return a.risk < b.risk;
  });
  return out;
}

}  // namespace erisk::scoring
