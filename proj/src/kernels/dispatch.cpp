#include <atomic>
#include <stdexcept>
#include <string>

#include "fracprime/kernels/kernels.hpp"

namespace fracprime::kernels {

namespace {

struct KernelTable {
  Isa isa;
  std::complex<double> (*sum_unit_phases)(std::span<const double>, std::span<const double>);
  std::complex<double> (*lagged_dot)(std::span<const std::complex<double>>, std::size_t);
  void (*conj_shift_product)(std::span<const std::complex<double>>, std::size_t,
                             std::span<std::complex<double>>);
};

constexpr KernelTable kScalar{Isa::Scalar, &scalar::sum_unit_phases, &scalar::lagged_dot,
                              &scalar::conj_shift_product};
#if defined(FRACPRIME_HAVE_AVX2)
constexpr KernelTable kAvx2{Isa::Avx2, &avx2::sum_unit_phases, &avx2::lagged_dot,
                            &avx2::conj_shift_product};
#endif

const KernelTable* table_for(Isa isa) {
#if defined(FRACPRIME_HAVE_AVX2)
  if (isa == Isa::Avx2) return &kAvx2;
#endif
  (void)isa;
  return &kScalar;
}

std::atomic<const KernelTable*>& active() {
  static std::atomic<const KernelTable*> table{table_for(best_supported_isa())};
  return table;
}

}  // namespace

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(FRACPRIME_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

Isa best_supported_isa() { return isa_supported(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar; }

Isa active_isa() { return active().load()->isa; }

void set_isa(Isa isa) {
  if (!isa_supported(isa)) {
    throw std::invalid_argument("kernel ISA '" + std::string(isa_name(isa)) +
                                "' is not available on this machine/build");
  }
  active().store(table_for(isa));
}

std::string_view isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

Isa parse_isa(std::string_view name) {
  if (name == "scalar") return Isa::Scalar;
  if (name == "avx2") return Isa::Avx2;
  if (name == "auto") return best_supported_isa();
  throw std::invalid_argument("unknown kernel ISA '" + std::string(name) + "'");
}

std::complex<double> sum_unit_phases(std::span<const double> phases,
                                     std::span<const double> weights) {
  return active().load()->sum_unit_phases(phases, weights);
}

std::complex<double> lagged_dot(std::span<const std::complex<double>> x, std::size_t lag) {
  return active().load()->lagged_dot(x, lag);
}

void conj_shift_product(std::span<const std::complex<double>> f, std::size_t shift,
                        std::span<std::complex<double>> out) {
  active().load()->conj_shift_product(f, shift, out);
}

}  // namespace fracprime::kernels
