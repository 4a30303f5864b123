#include "erisk/fahp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "erisk/error.hpp"

namespace erisk::fahp {

namespace {

void check_size(std::size_t n) {
  if (n < 2) throw ValidationError("matrix", "comparison matrices need n >= 2");
}

bool near(double a, double b, double rel_tol) {
  return std::abs(a - b) <= rel_tol * std::max({1.0, std::abs(a), std::abs(b)});
}

std::string cell_name(std::size_t i, std::size_t j) {
  return "matrix[" + std::to_string(i) + "][" + std::to_string(j) + "]";
}

}  // namespace

TFN::TFN(double l, double m, double u) : l_(l), m_(m), u_(u) {
  if (!std::isfinite(l) || !std::isfinite(m) || !std::isfinite(u) || !(l > 0.0) || l > m ||
      m > u) {
    throw ValidationError("tfn", "triangular fuzzy number requires 0 < l <= m <= u, got (" +
                                     std::to_string(l) + ", " + std::to_string(m) + ", " +
                                     std::to_string(u) + ")");
  }
}

TFN TFN::reciprocal() const { return TFN(1.0 / u_, 1.0 / m_, 1.0 / l_); }

TFN multiply(const TFN& a, const TFN& b) { return TFN(a.l() * b.l(), a.m() * b.m(), a.u() * b.u()); }

TFN add(const TFN& a, const TFN& b) { return TFN(a.l() + b.l(), a.m() + b.m(), a.u() + b.u()); }

TFN scale(const TFN& a, double k) {
  if (!(k > 0.0)) throw ValidationError("tfn", "scale factor must be positive");
  return TFN(a.l() * k, a.m() * k, a.u() * k);
}

TFN nth_root(const TFN& a, int n) {
  if (n < 1) throw ValidationError("tfn", "root order must be >= 1");
  const double p = 1.0 / n;
  return TFN(std::pow(a.l(), p), std::pow(a.m(), p), std::pow(a.u(), p));
}

TFN divide_fuzzy(const TFN& numerator, const TFN& denominator) {
  return TFN(numerator.l() / denominator.u(), numerator.m() / denominator.m(),
             numerator.u() / denominator.l());
}

ElicitationScale default_scale() {
  return {
      {"Equal", TFN(1, 1, 1)},      {"Moderate", TFN(2, 3, 4)},  {"Strong", TFN(4, 5, 6)},
      {"VeryStrong", TFN(6, 7, 8)}, {"Extreme", TFN(8, 9, 10)},
  };
}

CrispMatrix::CrispMatrix(std::size_t n, double fill) : n_(n), data_(n * n, fill) {}

CrispMatrix::CrispMatrix(std::vector<std::vector<double>> rows) : n_(rows.size()) {
  data_.reserve(n_ * n_);
  for (const auto& row : rows) {
    if (row.size() != n_) throw ValidationError("matrix", "rows must form a square matrix");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

bool CrispMatrix::is_positive() const noexcept {
  return std::all_of(data_.begin(), data_.end(),
                     [](double x) { return std::isfinite(x) && x > 0.0; });
}

bool CrispMatrix::is_reciprocal(double rel_tol) const noexcept {
  for (std::size_t i = 0; i < n_; ++i) {
    if (!near((*this)(i, i), 1.0, rel_tol)) return false;
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (!near((*this)(i, j) * (*this)(j, i), 1.0, rel_tol)) return false;
    }
  }
  return true;
}

std::vector<double> CrispMatrix::multiply(std::span<const double> v) const {
  std::vector<double> out(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n_; ++j) acc += (*this)(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

ComparisonMatrix::ComparisonMatrix(std::size_t n, std::vector<TFN> cells)
    : n_(n), cells_(std::move(cells)) {}

ComparisonMatrix ComparisonMatrix::from_upper(std::size_t n, std::span<const TFN> upper) {
  check_size(n);
  if (upper.size() != n * (n - 1) / 2) {
    throw ValidationError("matrix", "expected " + std::to_string(n * (n - 1) / 2) +
                                        " upper-triangle entries for n = " + std::to_string(n) +
                                        ", got " + std::to_string(upper.size()));
  }
  std::vector<TFN> cells(n * n, TFN(1, 1, 1));
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++k) {
      cells[i * n + j] = upper[k];
      cells[j * n + i] = upper[k].reciprocal();
    }
  }
  return ComparisonMatrix(n, std::move(cells));
}

ComparisonMatrix::ComparisonMatrix(std::vector<std::vector<TFN>> rows) : n_(rows.size()) {
  check_size(n_);
  cells_.reserve(n_ * n_);
  for (const auto& row : rows) {
    if (row.size() != n_) throw ValidationError("matrix", "rows must form a square matrix");
    cells_.insert(cells_.end(), row.begin(), row.end());
  }
  constexpr double tol = 1e-9;
  for (std::size_t i = 0; i < n_; ++i) {
    const TFN& d = (*this)(i, i);
    if (!near(d.l(), 1, tol) || !near(d.m(), 1, tol) || !near(d.u(), 1, tol)) {
      throw ValidationError(cell_name(i, i), "diagonal entries must be (1, 1, 1)");
    }
    for (std::size_t j = i + 1; j < n_; ++j) {
      const TFN expected = (*this)(i, j).reciprocal();
      const TFN& lower = (*this)(j, i);
      if (!near(lower.l(), expected.l(), tol) || !near(lower.m(), expected.m(), tol) ||
          !near(lower.u(), expected.u(), tol)) {
        throw ValidationError(cell_name(j, i), "must be the reciprocal of " + cell_name(i, j));
      }
    }
  }
}

std::vector<TFN> ComparisonMatrix::upper() const {
  std::vector<TFN> out;
  out.reserve(n_ * (n_ - 1) / 2);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) out.push_back((*this)(i, j));
  }
  return out;
}

CrispMatrix ComparisonMatrix::midpoints() const {
  CrispMatrix crisp(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) crisp(i, j) = (*this)(i, j).m();
  }
  return crisp;
}

ComparisonMatrix aggregate_experts(std::span<const ComparisonMatrix> judgments) {
  if (judgments.empty()) throw ValidationError("experts", "at least one expert matrix is required");
  const std::size_t n = judgments.front().size();
  for (std::size_t e = 1; e < judgments.size(); ++e) {
    if (judgments[e].size() != n) {
      throw ValidationError("experts[" + std::to_string(e) + "]",
                            "matrix size differs from expert 0");
    }
  }
  if (judgments.size() == 1) return judgments.front();

  std::vector<TFN> upper = judgments.front().upper();
  for (std::size_t e = 1; e < judgments.size(); ++e) {
    const auto other = judgments[e].upper();
    for (std::size_t k = 0; k < upper.size(); ++k) upper[k] = add(upper[k], other[k]);
  }
  const double inv = 1.0 / static_cast<double>(judgments.size());
  for (auto& cell : upper) cell = scale(cell, inv);
  return ComparisonMatrix::from_upper(n, upper);
}

WeightReport derive_weights(const ComparisonMatrix& matrix) {
  const std::size_t n = matrix.size();
  WeightReport report;
  report.geometric_means.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    TFN product(1, 1, 1);
    for (std::size_t j = 0; j < n; ++j) product = multiply(product, matrix(i, j));
    report.geometric_means.push_back(nth_root(product, static_cast<int>(n)));
  }
  report.geometric_sum = report.geometric_means.front();
  for (std::size_t i = 1; i < n; ++i) {
    report.geometric_sum = add(report.geometric_sum, report.geometric_means[i]);
  }
  for (const auto& gm : report.geometric_means) {
    report.fuzzy_weights.push_back(divide_fuzzy(gm, report.geometric_sum));
    report.bnfp.push_back(report.fuzzy_weights.back().bnfp());
  }
  report.crisp_weights = normalize(report.bnfp);
  return report;
}

std::string_view to_string(CrMode mode) noexcept {
  return mode == CrMode::kEigenvector ? "eigen" : "weights";
}

double random_index(std::size_t n) {
  static constexpr std::array<double, kMaxRandomIndexOrder> kTable{
      0.0, 0.0, 0.58, 0.90, 1.12, 1.24, 1.32, 1.41, 1.45, 1.49};
  if (n == 0 || n > kMaxRandomIndexOrder) {
    throw ValidationError("matrix", "no random index for n = " + std::to_string(n) +
                                        " (table covers 1..10)");
  }
  return kTable[n - 1];
}

Eigenpair principal_eigenpair(const CrispMatrix& matrix, double rel_tol, int max_iterations) {
  const std::size_t n = matrix.size();
  if (n == 0) throw ValidationError("matrix", "empty matrix");
  if (!matrix.is_positive()) throw ValidationError("matrix", "power iteration needs a positive matrix");

  std::vector<double> v(n, 1.0 / static_cast<double>(n));
  for (int it = 1; it <= max_iterations; ++it) {
    auto next = matrix.multiply(v);
    const double total = std::accumulate(next.begin(), next.end(), 0.0);
    double delta = 0.0;
    double scale_ref = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      next[i] /= total;
      delta = std::max(delta, std::abs(next[i] - v[i]));
      scale_ref = std::max(scale_ref, std::abs(next[i]));
    }
    v = std::move(next);
    if (delta <= rel_tol * scale_ref) {
      // With sum(v) = 1, A v = λ v gives λ = sum(A v).
      const auto av = matrix.multiply(v);
      return {std::accumulate(av.begin(), av.end(), 0.0), std::move(v), it};
    }
  }
  throw ConvergenceError("power iteration did not converge within " +
                         std::to_string(max_iterations) + " iterations");
}

namespace {

void check_consistency_input(const CrispMatrix& matrix) {
  const std::size_t n = matrix.size();
  check_size(n);
  random_index(n);
  if (!matrix.is_positive()) throw ValidationError("matrix", "entries must be positive");
  if (!matrix.is_reciprocal()) throw ValidationError("matrix", "matrix must be reciprocal");
}

void finish(ConsistencyReport& report, std::size_t n) {
  report.ci = (report.lambda_max - static_cast<double>(n)) / static_cast<double>(n - 1);
  report.ri = random_index(n);
  report.cr = report.ri > 0.0 ? report.ci / report.ri : 0.0;
  report.consistent = report.cr < kConsistencyThreshold;
}

}  // namespace

ConsistencyReport consistency_given_weights(const CrispMatrix& matrix,
                                            std::span<const double> weights) {
  check_consistency_input(matrix);
  const std::size_t n = matrix.size();
  if (weights.size() != n) throw ValidationError("weights", "need one weight per criterion");
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw ValidationError("weights", "weights must be positive");
  }
  ConsistencyReport report;
  report.mode = CrMode::kGivenWeights;
  report.weights.assign(weights.begin(), weights.end());
  const auto aw = matrix.multiply(weights);
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) acc += aw[j] / weights[j];
  report.lambda_max = acc / static_cast<double>(n);
  finish(report, n);
  return report;
}

ConsistencyReport consistency_eigen(const CrispMatrix& matrix) {
  check_consistency_input(matrix);
  auto pair = principal_eigenpair(matrix);
  ConsistencyReport report;
  report.mode = CrMode::kEigenvector;
  report.lambda_max = pair.value;
  report.weights = std::move(pair.vector);
  report.iterations = pair.iterations;
  finish(report, matrix.size());
  return report;
}

ConsistencyReport consistency_ratio(const CrispMatrix& matrix, std::span<const double> weights,
                                    CrMode mode) {
  return mode == CrMode::kEigenvector ? consistency_eigen(matrix)
                                      : consistency_given_weights(matrix, weights);
}

std::vector<double> normalize(std::span<const double> weights) {
  if (weights.empty()) throw ValidationError("weights", "empty weight vector");
  double total = 0.0;
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw ValidationError("weights", "weights must be positive");
    total += w;
  }
  std::vector<double> out;
  out.reserve(weights.size());
  for (double w : weights) out.push_back(w / total);
  return out;
}

}  // namespace erisk::fahp
