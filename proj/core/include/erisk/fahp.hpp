#pragma once

// Fuzzy AHP: expert pairwise comparisons as triangular fuzzy numbers, fuzzy
// geometric-mean weights, BNFP defuzzification and a Saaty consistency check.

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace erisk::fahp {

// Triangular fuzzy number (l, m, u) with 0 < l <= m <= u.
class TFN {
 public:
  TFN(double l, double m, double u);

  double l() const noexcept { return l_; }
  double m() const noexcept { return m_; }
  double u() const noexcept { return u_; }

  // (1/u, 1/m, 1/l)
  TFN reciprocal() const;
  // Best non-fuzzy performance: (l + m + u) / 3.
  double bnfp() const noexcept { return (l_ + m_ + u_) / 3.0; }

  friend bool operator==(const TFN&, const TFN&) = default;

 private:
  double l_;
  double m_;
  double u_;
};

TFN multiply(const TFN& a, const TFN& b);
TFN add(const TFN& a, const TFN& b);
TFN scale(const TFN& a, double k);
TFN nth_root(const TFN& a, int n);
// Bound-reversed division (l1/u2, m1/m2, u1/l2) so the quotient stays ordered.
TFN divide_fuzzy(const TFN& numerator, const TFN& denominator);

using ElicitationScale = std::map<std::string, TFN, std::less<>>;

// Equal (1,1,1), Moderate (2,3,4), Strong (4,5,6), VeryStrong (6,7,8), Extreme (8,9,10).
ElicitationScale default_scale();

class CrispMatrix {
 public:
  explicit CrispMatrix(std::size_t n, double fill = 0.0);
  explicit CrispMatrix(std::vector<std::vector<double>> rows);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }
  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * n_ + j]; }

  bool is_positive() const noexcept;
  bool is_reciprocal(double rel_tol = 1e-9) const noexcept;
  std::vector<double> multiply(std::span<const double> v) const;

  friend bool operator==(const CrispMatrix&, const CrispMatrix&) = default;

 private:
  std::size_t n_;
  std::vector<double> data_;
};

// Reciprocal n×n TFN matrix with unit diagonal.
class ComparisonMatrix {
 public:
  // `upper` lists (i < j) entries row by row: a01, a02, ..., a12, ...
  static ComparisonMatrix from_upper(std::size_t n, std::span<const TFN> upper);
  // Full grid; throws ValidationError unless diagonal and reciprocity hold.
  explicit ComparisonMatrix(std::vector<std::vector<TFN>> rows);

  std::size_t size() const noexcept { return n_; }
  const TFN& operator()(std::size_t i, std::size_t j) const noexcept { return cells_[i * n_ + j]; }
  std::vector<TFN> upper() const;
  // Middle values of every cell.
  CrispMatrix midpoints() const;

  friend bool operator==(const ComparisonMatrix&, const ComparisonMatrix&) = default;

 private:
  ComparisonMatrix(std::size_t n, std::vector<TFN> cells);

  std::size_t n_;
  std::vector<TFN> cells_;
};

// Cellwise mean of the experts' upper triangles; lower triangle by reciprocity.
ComparisonMatrix aggregate_experts(std::span<const ComparisonMatrix> judgments);

struct WeightReport {
  std::vector<TFN> geometric_means;
  TFN geometric_sum{1, 1, 1};
  std::vector<TFN> fuzzy_weights;
  std::vector<double> bnfp;           // before renormalization
  std::vector<double> crisp_weights;  // sums to 1
};

WeightReport derive_weights(const ComparisonMatrix& matrix);

enum class CrMode { kEigenvector, kGivenWeights };

std::string_view to_string(CrMode mode) noexcept;

struct ConsistencyReport {
  CrMode mode = CrMode::kEigenvector;
  double lambda_max = 0.0;
  double ci = 0.0;
  double ri = 0.0;
  double cr = 0.0;
  bool consistent = true;
  std::vector<double> weights;  // the vector lambda_max was evaluated with
  int iterations = 0;           // power-iteration steps (eigenvector mode)
};

inline constexpr double kConsistencyThreshold = 0.10;
inline constexpr std::size_t kMaxRandomIndexOrder = 10;

// Saaty random index for n = 1..10.
double random_index(std::size_t n);

struct Eigenpair {
  double value = 0.0;
  std::vector<double> vector;  // normalized to sum 1
  int iterations = 0;
};

// Perron eigenpair of a positive matrix by power iteration.
Eigenpair principal_eigenpair(const CrispMatrix& matrix, double rel_tol = 1e-10,
                              int max_iterations = 10000);

ConsistencyReport consistency_given_weights(const CrispMatrix& matrix,
                                            std::span<const double> weights);
ConsistencyReport consistency_eigen(const CrispMatrix& matrix);
ConsistencyReport consistency_ratio(const CrispMatrix& matrix, std::span<const double> weights,
                                    CrMode mode);

// w / sum(w); throws unless every entry is positive and finite.
std::vector<double> normalize(std::span<const double> weights);

}  // namespace erisk::fahp
