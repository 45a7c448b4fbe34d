#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference in
// kernels::scalar and, on x86-64, an AVX2+FMA variant in kernels::avx2. The
// free functions below dispatch to the variant selected at runtime (the best
// the CPU supports unless overridden with set_isa).
//
// Variants agree to rounding error, not bit-for-bit; a given variant is
// deterministic for a given input.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace fracprime::kernels {

enum class Isa { Scalar, Avx2 };

bool isa_supported(Isa isa);
Isa best_supported_isa();
Isa active_isa();
/// Throws std::invalid_argument if the CPU or the build lacks `isa`.
void set_isa(Isa isa);
std::string_view isa_name(Isa isa);
/// "scalar", "avx2" or "auto".
Isa parse_isa(std::string_view name);

/// sum_i w_i * e(theta_i) with e(x) = exp(2 pi i x). Empty `weights` means
/// unit weights; otherwise sizes must match.
std::complex<double> sum_unit_phases(std::span<const double> phases,
                                     std::span<const double> weights = {});

/// sum_{i + lag < n} x[i + lag] * conj(x[i]).
std::complex<double> lagged_dot(std::span<const std::complex<double>> x, std::size_t lag);

/// out[j] = conj(f[j]) * f[(j + shift) mod m], m = f.size() = out.size().
void conj_shift_product(std::span<const std::complex<double>> f, std::size_t shift,
                        std::span<std::complex<double>> out);

namespace scalar {
std::complex<double> sum_unit_phases(std::span<const double> phases,
                                     std::span<const double> weights);
std::complex<double> lagged_dot(std::span<const std::complex<double>> x, std::size_t lag);
void conj_shift_product(std::span<const std::complex<double>> f, std::size_t shift,
                        std::span<std::complex<double>> out);
}  // namespace scalar

#if defined(FRACPRIME_HAVE_AVX2)
namespace avx2 {
std::complex<double> sum_unit_phases(std::span<const double> phases,
                                     std::span<const double> weights);
std::complex<double> lagged_dot(std::span<const std::complex<double>> x, std::size_t lag);
void conj_shift_product(std::span<const std::complex<double>> f, std::size_t shift,
                        std::span<std::complex<double>> out);
}  // namespace avx2
#endif

}  // namespace fracprime::kernels
