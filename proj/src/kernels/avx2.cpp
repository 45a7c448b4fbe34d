// AVX2 + FMA kernel variants. This translation unit is the only one built
// with -mavx2 -mfma; callers reach it through the runtime dispatcher only
// after the CPU has been checked.

#include <immintrin.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "fracprime/kernels/kernels.hpp"

namespace fracprime::kernels::avx2 {

namespace {

constexpr std::size_t kBlock = 256;

std::complex<double> pairwise(std::vector<std::complex<double>>& partial) {
  if (partial.empty()) return {};
  while (partial.size() > 1) {
    std::size_t half = (partial.size() + 1) / 2;
    for (std::size_t i = 0; i + half < partial.size(); ++i) partial[i] += partial[i + half];
    partial.resize(half);
  }
  return partial[0];
}

double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// cos(2 pi theta), sin(2 pi theta) for four lanes. theta is reduced to
// [-1/2, 1/2], then to an octant r in [-1/8, 1/8] plus a quarter-turn count
// q; Taylor polynomials through x^16 on |x| <= pi/4 are accurate to ~5e-17.
inline void sincos_turns(__m256d theta, __m256d& c_out, __m256d& s_out) {
  const __m256d r = _mm256_sub_pd(
      theta, _mm256_round_pd(theta, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC));
  const __m256d q = _mm256_round_pd(_mm256_mul_pd(r, _mm256_set1_pd(4.0)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  const __m256d r8 = _mm256_fnmadd_pd(q, _mm256_set1_pd(0.25), r);
  const __m256d x = _mm256_mul_pd(r8, _mm256_set1_pd(2.0 * std::numbers::pi));
  const __m256d x2 = _mm256_mul_pd(x, x);

  // sin x = x * (1 - x^2/3! + x^4/5! - ... - x^14/15!)
  __m256d sp = _mm256_set1_pd(-1.0 / 1307674368000.0);
  sp = _mm256_fmadd_pd(sp, x2, _mm256_set1_pd(1.0 / 6227020800.0));
  sp = _mm256_fmadd_pd(sp, x2, _mm256_set1_pd(-1.0 / 39916800.0));
  sp = _mm256_fmadd_pd(sp, x2, _mm256_set1_pd(1.0 / 362880.0));
  sp = _mm256_fmadd_pd(sp, x2, _mm256_set1_pd(-1.0 / 5040.0));
  sp = _mm256_fmadd_pd(sp, x2, _mm256_set1_pd(1.0 / 120.0));
  sp = _mm256_fmadd_pd(sp, x2, _mm256_set1_pd(-1.0 / 6.0));
  sp = _mm256_fmadd_pd(sp, x2, _mm256_set1_pd(1.0));
  const __m256d s = _mm256_mul_pd(sp, x);

  // cos x = 1 - x^2/2! + ... + x^16/16!
  __m256d cp = _mm256_set1_pd(1.0 / 20922789888000.0);
  cp = _mm256_fmadd_pd(cp, x2, _mm256_set1_pd(-1.0 / 87178291200.0));
  cp = _mm256_fmadd_pd(cp, x2, _mm256_set1_pd(1.0 / 479001600.0));
  cp = _mm256_fmadd_pd(cp, x2, _mm256_set1_pd(-1.0 / 3628800.0));
  cp = _mm256_fmadd_pd(cp, x2, _mm256_set1_pd(1.0 / 40320.0));
  cp = _mm256_fmadd_pd(cp, x2, _mm256_set1_pd(-1.0 / 720.0));
  cp = _mm256_fmadd_pd(cp, x2, _mm256_set1_pd(1.0 / 24.0));
  cp = _mm256_fmadd_pd(cp, x2, _mm256_set1_pd(-0.5));
  const __m256d c = _mm256_fmadd_pd(cp, x2, _mm256_set1_pd(1.0));

  // Rotate by i^q: q = 1 -> (-s, c), q = 2 -> (-c, -s), q = 3 -> (s, -c).
  const __m128i qi = _mm256_cvtpd_epi32(q);
  const __m256i q64 = _mm256_cvtepi32_epi64(qi);
  const __m256i one = _mm256_set1_epi64x(1);
  const __m256i two = _mm256_set1_epi64x(2);
  const __m256d swap =
      _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(q64, one), one));
  const __m256d neg_re = _mm256_castsi256_pd(
      _mm256_cmpeq_epi64(_mm256_and_si256(_mm256_add_epi64(q64, one), two), two));
  const __m256d neg_im =
      _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(q64, two), two));
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d re = _mm256_blendv_pd(c, s, swap);
  __m256d im = _mm256_blendv_pd(s, c, swap);
  re = _mm256_xor_pd(re, _mm256_and_pd(neg_re, sign));
  im = _mm256_xor_pd(im, _mm256_and_pd(neg_im, sign));
  c_out = re;
  s_out = im;
}

}  // namespace

std::complex<double> sum_unit_phases(std::span<const double> phases,
                                     std::span<const double> weights) {
  if (!weights.empty() && weights.size() != phases.size()) {
    throw std::invalid_argument("sum_unit_phases: weights/phases size mismatch");
  }
  const bool weighted = !weights.empty();
  std::vector<std::complex<double>> partial;
  partial.reserve(phases.size() / kBlock + 1);
  for (std::size_t start = 0; start < phases.size(); start += kBlock) {
    const std::size_t stop = std::min(phases.size(), start + kBlock);
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    std::size_t i = start;
    for (; i + 4 <= stop; i += 4) {
      __m256d c, s;
      sincos_turns(_mm256_loadu_pd(phases.data() + i), c, s);
      if (weighted) {
        const __m256d w = _mm256_loadu_pd(weights.data() + i);
        acc_re = _mm256_fmadd_pd(w, c, acc_re);
        acc_im = _mm256_fmadd_pd(w, s, acc_im);
      } else {
        acc_re = _mm256_add_pd(acc_re, c);
        acc_im = _mm256_add_pd(acc_im, s);
      }
    }
    double re = hsum(acc_re);
    double im = hsum(acc_im);
    for (; i < stop; ++i) {
      const double r = phases[i] - std::nearbyint(phases[i]);
      const double angle = 2.0 * std::numbers::pi * r;
      const double w = weighted ? weights[i] : 1.0;
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
  const double* base = reinterpret_cast<const double*>(x.data());
  std::vector<std::complex<double>> partial;
  partial.reserve(len / kBlock + 1);
  for (std::size_t start = 0; start < len; start += kBlock) {
    const std::size_t stop = std::min(len, start + kBlock);
    // p accumulates (ar*br, ai*bi); q accumulates (ar*bi, ai*br).
    __m256d p = _mm256_setzero_pd();
    __m256d q = _mm256_setzero_pd();
    std::size_t i = start;
    for (; i + 2 <= stop; i += 2) {
      const __m256d a = _mm256_loadu_pd(base + 2 * (i + lag));
      const __m256d b = _mm256_loadu_pd(base + 2 * i);
      const __m256d b_sw = _mm256_permute_pd(b, 0b0101);
      p = _mm256_fmadd_pd(a, b, p);
      q = _mm256_fmadd_pd(a, b_sw, q);
    }
    alignas(32) double pv[4], qv[4];
    _mm256_store_pd(pv, p);
    _mm256_store_pd(qv, q);
    double re = (pv[0] + pv[1]) + (pv[2] + pv[3]);
    double im = (qv[1] - qv[0]) + (qv[3] - qv[2]);
    for (; i < stop; ++i) {
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
  const double* src = reinterpret_cast<const double*>(f.data());
  double* dst = reinterpret_cast<double*>(out.data());
  const __m256d flip = _mm256_set_pd(-1.0, 1.0, -1.0, 1.0);

  // Output range [j0, j1) reads its shifted partner from [s0, s0 + j1 - j0).
  auto segment = [&](std::size_t j0, std::size_t j1, std::size_t s0) {
    std::size_t j = j0;
    for (; j + 2 <= j1; j += 2) {
      const std::size_t s = s0 + (j - j0);
      const __m256d a = _mm256_loadu_pd(src + 2 * j);
      const __m256d b = _mm256_loadu_pd(src + 2 * s);
      const __m256d p = _mm256_mul_pd(a, b);                               // ar br, ai bi
      const __m256d q = _mm256_mul_pd(a, _mm256_permute_pd(b, 0b0101));  // ar bi, ai br
      _mm256_storeu_pd(dst + 2 * j, _mm256_hadd_pd(p, _mm256_mul_pd(q, flip)));
    }
    for (; j < j1; ++j) {
      const std::size_t s = s0 + (j - j0);
      const double ar = f[j].real(), ai = f[j].imag();
      const double br = f[s].real(), bi = f[s].imag();
      out[j] = {ar * br + ai * bi, ar * bi - ai * br};
    }
  };
  segment(0, m - shift, shift);
  segment(m - shift, m, 0);
}

}  // namespace fracprime::kernels::avx2
