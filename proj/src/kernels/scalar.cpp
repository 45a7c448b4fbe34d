#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "fracprime/kernels/kernels.hpp"

namespace fracprime::kernels::scalar {

namespace {

constexpr std::size_t kBlock = 256;

// Pairwise combination of per-block partial sums.
std::complex<double> pairwise(std::vector<std::complex<double>>& partial) {
  if (partial.empty()) return {};
  while (partial.size() > 1) {
    std::size_t half = (partial.size() + 1) / 2;
    for (std::size_t i = 0; i + half < partial.size(); ++i) partial[i] += partial[i + half];
    partial.resize(half);
  }
  return partial[0];
}

}  // namespace

std::complex<double> sum_unit_phases(std::span<const double> phases,
                                     std::span<const double> weights) {
  if (!weights.empty() && weights.size() != phases.size()) {
    throw std::invalid_argument("sum_unit_phases: weights/phases size mismatch");
  }
  std::vector<std::complex<double>> partial;
  partial.reserve(phases.size() / kBlock + 1);
  for (std::size_t start = 0; start < phases.size(); start += kBlock) {
    const std::size_t stop = std::min(phases.size(), start + kBlock);
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = start; i < stop; ++i) {
      const double r = phases[i] - std::nearbyint(phases[i]);
      const double angle = 2.0 * std::numbers::pi * r;
      const double w = weights.empty() ? 1.0 : weights[i];
      re += w * std::cos(angle);
      im += w * std::sin(angle);
    }
    partial.emplace_back(re, im);
  }
  return pairwise(partial);
}

std::complex<double> lagged_dot(std::span<const std::complex<double>> x, std::size_t lag) {
  if (lag >= x.size()) return {};
  const std::size_t len = x.size() - lag;
  std::vector<std::complex<double>> partial;
  partial.reserve(len / kBlock + 1);
  for (std::size_t start = 0; start < len; start += kBlock) {
    const std::size_t stop = std::min(len, start + kBlock);
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = start; i < stop; ++i) {
      const double ar = x[i + lag].real(), ai = x[i + lag].imag();
      const double br = x[i].real(), bi = x[i].imag();
      re += ar * br + ai * bi;
      im += ai * br - ar * bi;
    }
    partial.emplace_back(re, im);
  }
  return pairwise(partial);
}

void conj_shift_product(std::span<const std::complex<double>> f, std::size_t shift,
                        std::span<std::complex<double>> out) {
  const std::size_t m = f.size();
  if (out.size() != m) throw std::invalid_argument("conj_shift_product: size mismatch");
  if (m == 0) return;
  shift %= m;
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t src = j + shift < m ? j + shift : j + shift - m;
    const double ar = f[j].real(), ai = f[j].imag();
    const double br = f[src].real(), bi = f[src].imag();
    out[j] = {ar * br + ai * bi, ar * bi - ai * br};
  }
}

}  // namespace fracprime::kernels::scalar
