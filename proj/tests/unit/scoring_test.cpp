#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "erisk/error.hpp"
#include "erisk/scoring.hpp"

namespace {

using namespace erisk::scoring;

TEST(Ers, CaseStudyProducts) {
  EXPECT_NEAR(ers(78, 0.632, 0.573), 28.25, 0.01);
  EXPECT_NEAR(ers(25, 0.648, 0.282), 4.57, 0.01);
  EXPECT_NEAR(ers(65, 0.525, 0.145), 4.95, 0.01);
  EXPECT_EQ(ers(55, 0.0, 0.4), 0.0);
}

TEST(Ers, RejectsOutOfRange) {
  EXPECT_THROW(ers(101, 0.5, 0.5), erisk::ValidationError);
  EXPECT_THROW(ers(50, 1.5, 0.5), erisk::ValidationError);
  EXPECT_THROW(ers(50, 0.5, -0.1), erisk::ValidationError);
  EXPECT_THROW(ers(NAN, 0.5, 0.5), erisk::ValidationError);
}

TEST(Rank, OrderAndTieBreaks) {
  std::vector<RiskAssessment> a{assess("PH", 78, 0.632, 0.573), assess("AV", 25, 0.648, 0.282),
                                assess("TL", 65, 0.525, 0.145)};
  auto r = rank(a);
  EXPECT_EQ(r[0].risk, "PH");
  EXPECT_EQ(r[1].risk, "TL");
  EXPECT_EQ(r[2].risk, "AV");
  std::vector<RiskAssessment> ties{assess("B", 50, 0.5, 0.5), assess("A", 50, 0.5, 0.5)};
  EXPECT_EQ(rank(ties)[0].risk, "A");
  std::vector<RiskAssessment> erm_tie{assess("A", 40, 0.5, 0.5), assess("B", 50, 0.4, 0.5)};
  EXPECT_EQ(rank(erm_tie)[0].risk, "B");
  std::vector<RiskAssessment> one{assess("X", 1, 1, 1)};
  EXPECT_EQ(rank(one).size(), 1u);
}

class ScoreAxioms : public ::testing::Test {
 protected:
  std::mt19937_64 gen{21};
  double erm() { return std::uniform_real_distribution<double>(1, 99)(gen); }
  double unit() { return std::uniform_real_distribution<double>(0.01, 0.99)(gen); }
};

TEST_F(ScoreAxioms, StrictMonotonicityByFiniteDifference) {
  for (int k = 0; k < 200; ++k) {
    const double e = erm(), c = unit(), w = unit(), h = 1e-4;
    EXPECT_GT(ers(e + h, c, w) - ers(e, c, w), 0.0);
    EXPECT_GT(ers(e, c + h, w) - ers(e, c, w), 0.0);
    EXPECT_GT(ers(e, c, w + h) - ers(e, c, w), 0.0);
  }
}

TEST_F(ScoreAxioms, WeightInfluenceProportionalToEvidence) {
  for (int k = 0; k < 200; ++k) {
    const double ei = erm(), ci = unit(), ej = erm(), cj = unit();
    const double w = 0.3 + 0.2 * unit(), dw = 0.1;
    const double di = ers(ei, ci, w + dw) - ers(ei, ci, w);
    const double dj = ers(ej, cj, w + dw) - ers(ej, cj, w);
    EXPECT_NEAR(di / dj, (ei * ci) / (ej * cj), 1e-9 * (ei * ci) / (ej * cj));
  }
}

TEST_F(ScoreAxioms, MixedSecondDifferenceEqualsThirdOperand) {
  for (int k = 0; k < 200; ++k) {
    const double e = erm(), c = unit() * 0.9, w = unit() * 0.9, h = 0.05;
    const double second = ers(e, c + h, w + h) - ers(e, c + h, w) - ers(e, c, w + h) + ers(e, c, w);
    EXPECT_GE(second, 0.0);
    EXPECT_NEAR(second / (h * h), e, 1e-6 * e);
  }
}

TEST_F(ScoreAxioms, RankingInvariantUnderUniformWeightScaling) {
  for (int k = 0; k < 100; ++k) {
    std::vector<RiskAssessment> a, scaled;
    const double s = 0.1 + unit();
    for (int i = 0; i < 4; ++i) {
      const double e = erm(), c = unit(), w = unit() * 0.9;
      a.push_back(assess("R" + std::to_string(i), e, c, w));
      scaled.push_back(assess("R" + std::to_string(i), e, c, std::min(1.0, w * s)));
    }
    if (s * 0.9 > 1.0) continue;
    auto r1 = rank(a), r2 = rank(scaled);
    for (std::size_t i = 0; i < r1.size(); ++i) EXPECT_EQ(r1[i].risk, r2[i].risk);
  }
}

}  // namespace
