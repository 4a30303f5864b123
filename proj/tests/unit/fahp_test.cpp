#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "erisk/error.hpp"
#include "erisk/fahp.hpp"
#include "oracles.hpp"

namespace {

using namespace erisk::fahp;

void expect_tfn(const TFN& t, double l, double m, double u, double tol) {
  EXPECT_NEAR(t.l(), l, tol);
  EXPECT_NEAR(t.m(), m, tol);
  EXPECT_NEAR(t.u(), u, tol);
}

ComparisonMatrix case_matrix() {
  const std::vector<TFN> upper{{2, 3, 4}, {4, 5, 6}, {2, 3, 4}};
  return ComparisonMatrix::from_upper(3, upper);
}

TEST(Tfn, Arithmetic) {
  auto chain = multiply(multiply(TFN(1, 1, 1), TFN(2, 3, 4)), TFN(4, 5, 6));
  expect_tfn(chain, 8, 15, 24, 1e-12);
  expect_tfn(nth_root(chain, 3), 2.00, 2.47, 2.88, 0.005);
  expect_tfn(divide_fuzzy(TFN(2.00, 2.47, 2.88), TFN(3.19, 4.19, 5.25)), 0.38, 0.59, 0.90, 0.005);
  expect_tfn(add(TFN(1, 2, 3), TFN(1, 1, 2)), 2, 3, 5, 1e-12);
  expect_tfn(TFN(2, 3, 4).reciprocal(), 0.25, 1.0 / 3, 0.5, 1e-12);
  EXPECT_NEAR(TFN(1, 2, 6).bnfp(), 3.0, 1e-12);
}

TEST(Tfn, RejectsInvalid) {
  EXPECT_THROW(TFN(3, 2, 4), erisk::ValidationError);
  EXPECT_THROW(TFN(0, 1, 2), erisk::ValidationError);
  EXPECT_THROW(nth_root(TFN(1, 1, 1), 0), erisk::ValidationError);
}

TEST(Matrix, ReciprocityAndValidation) {
  auto m = case_matrix();
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(m(i, i), TFN(1, 1, 1));
    for (std::size_t j = 0; j < 3; ++j) {
      expect_tfn(m(j, i), m(i, j).reciprocal().l(), m(i, j).reciprocal().m(), m(i, j).reciprocal().u(), 1e-15);
    }
  }
  std::vector<std::vector<TFN>> bad(2, std::vector<TFN>(2, TFN(1, 1, 1)));
  bad[0][1] = TFN(2, 3, 4);
  EXPECT_THROW(ComparisonMatrix{bad}, erisk::ValidationError);
  EXPECT_THROW(ComparisonMatrix::from_upper(3, std::vector<TFN>{{1, 1, 1}}), erisk::ValidationError);
}

TEST(Aggregate, ExpertMeans) {
  const std::vector<ComparisonMatrix> one{case_matrix()};
  EXPECT_EQ(aggregate_experts(one), case_matrix());
  auto two_by = [](TFN a) { return ComparisonMatrix::from_upper(2, std::vector<TFN>{a}); };
  const std::vector<ComparisonMatrix> equal{two_by({2, 3, 4}), two_by({2, 3, 4})};
  expect_tfn(aggregate_experts(equal)(0, 1), 2, 3, 4, 1e-12);
  const std::vector<ComparisonMatrix> mixed{two_by({2, 3, 4}), two_by({4, 5, 6})};
  expect_tfn(aggregate_experts(mixed)(0, 1), 3, 4, 5, 1e-12);
  const std::vector<ComparisonMatrix> sizes{two_by({2, 3, 4}), case_matrix()};
  EXPECT_THROW(aggregate_experts(sizes), erisk::ValidationError);
  EXPECT_THROW(aggregate_experts(std::vector<ComparisonMatrix>{}), erisk::ValidationError);
}

TEST(DeriveWeights, CaseMatrixFromCorrectArithmetic) {
  // Geometric means recomputed by hand: (8,15,24)^(1/3), (0.5,1,2)^(1/3), (1/24,1/15,1/8)^(1/3).
  auto r = derive_weights(case_matrix());
  expect_tfn(r.geometric_means[0], 2.0, std::cbrt(15.0), std::cbrt(24.0), 1e-12);
  expect_tfn(r.geometric_means[1], std::cbrt(0.5), 1.0, std::cbrt(2.0), 1e-12);
  expect_tfn(r.fuzzy_weights[0], 0.431, 0.637, 0.919, 0.001);
  EXPECT_NEAR(std::accumulate(r.crisp_weights.begin(), r.crisp_weights.end(), 0.0), 1.0, 1e-12);
  EXPECT_NEAR(r.crisp_weights[0], 0.629, 0.001);
  EXPECT_GT(r.crisp_weights[0], r.crisp_weights[1]);
  EXPECT_GT(r.crisp_weights[1], r.crisp_weights[2]);
}

TEST(DeriveWeights, SymmetryAndDominance) {
  auto eq = derive_weights(ComparisonMatrix::from_upper(3, std::vector<TFN>(3, TFN(1, 1, 1))));
  for (double w : eq.crisp_weights) EXPECT_NEAR(w, 1.0 / 3, 1e-12);
  auto two = derive_weights(ComparisonMatrix::from_upper(2, std::vector<TFN>{{2, 3, 4}}));
  EXPECT_GT(two.crisp_weights[0], two.crisp_weights[1]);
}

std::vector<TFN> random_upper(std::mt19937_64& gen, std::size_t n) {
  std::uniform_real_distribution<double> u(0.2, 6.0);
  std::vector<TFN> out;
  for (std::size_t k = 0; k < n * (n - 1) / 2; ++k) {
    double p[3] = {u(gen), u(gen), u(gen)};
    std::sort(p, p + 3);
    out.emplace_back(p[0], p[1], p[2]);
  }
  return out;
}

TEST(DeriveWeights, PropertyLowerTriangleRebuildInvariance) {
  std::mt19937_64 gen(3);
  for (int k = 0; k < 50; ++k) {
    auto m = ComparisonMatrix::from_upper(4, random_upper(gen, 4));
    std::vector<std::vector<TFN>> rows(4, std::vector<TFN>(4, TFN(1, 1, 1)));
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) rows[i][j] = m(i, j);
    }
    EXPECT_EQ(derive_weights(ComparisonMatrix(rows)).crisp_weights, derive_weights(m).crisp_weights);
  }
}

TEST(DeriveWeights, PropertyPermutationEquivariance) {
  std::mt19937_64 gen(5);
  for (int k = 0; k < 50; ++k) {
    auto m = ComparisonMatrix::from_upper(4, random_upper(gen, 4));
    std::vector<std::size_t> perm{0, 1, 2, 3};
    std::shuffle(perm.begin(), perm.end(), gen);
    std::vector<std::vector<TFN>> rows(4, std::vector<TFN>(4, TFN(1, 1, 1)));
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) rows[i][j] = m(perm[i], perm[j]);
    }
    auto base = derive_weights(m).crisp_weights;
    auto permuted = derive_weights(ComparisonMatrix(rows)).crisp_weights;
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(permuted[i], base[perm[i]], 1e-12);
  }
}

TEST(DeriveWeights, PropertyStrengtheningACellNeverLowersTheRatio) {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> bump(0.0, 2.0);
  for (int k = 0; k < 100; ++k) {
    auto upper = random_upper(gen, 3);
    auto before = derive_weights(ComparisonMatrix::from_upper(3, upper)).crisp_weights;
    const auto& c = upper[0];
    const double d = bump(gen);
    upper[0] = TFN(c.l() + d, c.m() + d, c.u() + d);
    auto after = derive_weights(ComparisonMatrix::from_upper(3, upper)).crisp_weights;
    EXPECT_GE(after[0] / after[1], before[0] / before[1] - 1e-12);
  }
}

TEST(Normalize, SumsToOneAndIsScaleInvariant) {
  auto w = normalize(std::vector{2.0, 3.0, 5.0});
  EXPECT_NEAR(w[0] + w[1] + w[2], 1.0, 1e-12);
  auto scaled = normalize(std::vector{20.0, 30.0, 50.0});
  EXPECT_EQ(normalize(w), normalize(scaled));
  EXPECT_THROW(normalize(std::vector{1.0, 0.0}), erisk::ValidationError);
  EXPECT_THROW(normalize(std::vector{1.0, -1.0}), erisk::ValidationError);
}

CrispMatrix from_weights(const std::vector<double>& w) {
  CrispMatrix m(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = 0; j < w.size(); ++j) m(i, j) = w[i] / w[j];
  }
  return m;
}

TEST(Consistency, PerfectlyConsistentMatricesInBothModes) {
  std::mt19937_64 gen(13);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  for (std::size_t n = 3; n <= 8; ++n) {
    std::vector<double> w(n);
    for (auto& x : w) x = u(gen);
    auto m = from_weights(w);
    auto eig = consistency_eigen(m);
    auto given = consistency_given_weights(m, normalize(w));
    EXPECT_NEAR(eig.lambda_max, static_cast<double>(n), 1e-8);
    EXPECT_NEAR(eig.cr, 0.0, 1e-8);
    EXPECT_NEAR(given.cr, 0.0, 1e-8);
    EXPECT_TRUE(eig.consistent);
  }
}

TEST(Consistency, CaseMatrixAgainstDenseEigen) {
  auto m = case_matrix().midpoints();
  auto oracle = erisk::testing::dense_principal(m);
  auto eig = consistency_eigen(m);
  EXPECT_NEAR(eig.lambda_max, oracle.value, 1e-8);
  EXPECT_NEAR(eig.lambda_max, 3.039, 0.001);
  EXPECT_NEAR(eig.cr, 0.033, 0.005);
  EXPECT_TRUE(eig.consistent);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(eig.weights[i], oracle.vector[i], 1e-8);
  auto given = consistency_given_weights(m, std::vector{0.573, 0.282, 0.145});
  EXPECT_NEAR(given.lambda_max, 3.13, 0.01);
}

TEST(Consistency, PowerIterationMatchesDenseEigenOnRandomMatrices) {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> u(1.0, 9.0);
  for (int k = 0; k < 30; ++k) {
    const std::size_t n = 3 + k % 6;
    CrispMatrix m(n, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double v = gen() % 2 ? u(gen) : 1.0 / u(gen);
        m(i, j) = v;
        m(j, i) = 1.0 / v;
      }
    }
    auto ours = principal_eigenpair(m);
    auto oracle = erisk::testing::dense_principal(m);
    EXPECT_NEAR(ours.value, oracle.value, 1e-7 * oracle.value);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(ours.vector[i], oracle.vector[i], 1e-7);
  }
}

TEST(Consistency, RandomIndexTableAndSmallOrders) {
  EXPECT_EQ(random_index(1), 0.0);
  EXPECT_EQ(random_index(2), 0.0);
  EXPECT_NEAR(random_index(3), 0.58, 1e-12);
  EXPECT_NEAR(random_index(10), 1.49, 1e-12);
  EXPECT_THROW(random_index(11), erisk::ValidationError);
  CrispMatrix two({{1, 3}, {1.0 / 3, 1}});
  auto r = consistency_eigen(two);
  EXPECT_EQ(r.cr, 0.0);
  EXPECT_TRUE(r.consistent);
}

TEST(Consistency, InputValidation) {
  CrispMatrix nonpos({{1, -1}, {-1, 1}});
  EXPECT_THROW(consistency_eigen(nonpos), erisk::ValidationError);
  EXPECT_THROW(consistency_given_weights(case_matrix().midpoints(), std::vector{0.5, 0.5}), erisk::ValidationError);
}

TEST(Scale, DefaultTable) {
  auto s = default_scale();
  EXPECT_EQ(s.at("Equal"), TFN(1, 1, 1));
  EXPECT_EQ(s.at("Moderate"), TFN(2, 3, 4));
  EXPECT_EQ(s.at("Extreme"), TFN(8, 9, 10));
}

}  // namespace
