#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

#include <boost/random/sobol.hpp>

#include "erisk/error.hpp"
#include "erisk/rng.hpp"
#include "erisk/sensitivity.hpp"

namespace erisk::sensitivity {

namespace {

// Row-major N x 2D unit-cube points: a Sobol sequence with a seeded digital
// shift (XOR) per dimension. The all-zero first point is skipped.
std::vector<double> base_design(std::size_t n, std::size_t dims, std::uint64_t seed) {
  boost::random::sobol engine(static_cast<unsigned>(dims));
  engine.discard(dims);
  rng::Stream stream(rng::substream_seed(seed, 0));
  std::vector<std::uint64_t> shift(dims);
  for (auto& s : shift) s = stream.bits();
  std::vector<double> out(n * dims);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t d = 0; d < dims; ++d) {
      std::uint64_t x = static_cast<std::uint64_t>(engine()) ^ shift[d];
      // Midpoint of the 2^-53 cell, so 0 and 1 are never produced.
      out[i * dims + d] = (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
    }
  }
  return out;
}

}  // namespace

SobolResult sobol(std::span<const SobolInput> inputs, const Model& model, const SobolOptions& options) {
  const std::size_t d = inputs.size();
  if (d == 0) throw ValidationError("sobol", "at least one input is required");
  if (options.n_base < 2) throw ValidationError("n", "base sample size must be at least 2");
  for (const auto& in : inputs) {
    if (!(in.lo < in.hi) || !std::isfinite(in.lo) || !std::isfinite(in.hi)) {
      throw ValidationError("sobol." + in.name, "input range must be a finite interval with lo < hi");
    }
  }
  const auto n = static_cast<std::size_t>(options.n_base);

  SobolResult out;
  out.n_base = options.n_base;
  out.seed = options.seed;
  if (!std::has_single_bit(n)) {
    out.warnings.push_back("base sample size " + std::to_string(n) +
                           " is not a power of two; the quasi-random design loses its balance");
  }

  const auto unit = base_design(n, 2 * d, options.seed);
  auto scaled = [&](std::size_t row, std::size_t col) {
    const auto& in = inputs[col % d];
    return in.lo + (in.hi - in.lo) * unit[row * 2 * d + col];
  };

  std::vector<double> fa(n), fb(n);
  std::vector<std::vector<double>> fab(d, std::vector<double>(n));
  std::vector<double> a(d), b(d), ab(d);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < d; ++i) {
      a[i] = scaled(k, i);
      b[i] = scaled(k, d + i);
    }
    fa[k] = model(a);
    fb[k] = model(b);
    for (std::size_t i = 0; i < d; ++i) {
      ab = a;
      ab[i] = b[i];
      fab[i][k] = model(ab);
    }
  }
  out.evaluations = n * (d + 2);

  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) sum += fa[k] + fb[k];
  out.mean = sum / static_cast<double>(2 * n);
  double ss = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    ss += (fa[k] - out.mean) * (fa[k] - out.mean) + (fb[k] - out.mean) * (fb[k] - out.mean);
  }
  out.variance = ss / static_cast<double>(2 * n);

  const bool degenerate = !(out.variance > 0.0);
  if (degenerate) out.warnings.push_back("model output variance is 0; indices reported as 0");
  for (std::size_t i = 0; i < d; ++i) {
    SobolIndex index{inputs[i].name, 0.0, 0.0};
    if (!degenerate) {
      double first = 0.0;
      double total = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        first += fb[k] * (fab[i][k] - fa[k]);
        total += (fa[k] - fab[i][k]) * (fa[k] - fab[i][k]);
      }
      index.s1 = first / static_cast<double>(n) / out.variance;
      index.st = total / static_cast<double>(2 * n) / out.variance;
    }
    out.indices.push_back(std::move(index));
  }
  return out;
}

}  // namespace erisk::sensitivity
