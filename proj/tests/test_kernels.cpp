#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "fracprime/averages.hpp"
#include "fracprime/cli/config.hpp"
#include "fracprime/kernels/kernels.hpp"
#include "fracprime/seminorms.hpp"

using namespace fracprime;
using C = std::complex<double>;

namespace {

std::vector<double> random_phases(std::mt19937_64& rng, std::size_t n, double spread) {
  std::uniform_real_distribution<double> u(-spread, spread);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

std::vector<C> random_vec(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  std::vector<C> v(n);
  for (auto& z : v) z = C(g(rng), g(rng));
  return v;
}

// Plain loops in long double.
C naive_phases(const std::vector<double>& p, const std::vector<double>& w) {
  long double re = 0, im = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const long double a = 2 * M_PIl * static_cast<long double>(p[i]);
    const long double wt = w.empty() ? 1.0L : w[i];
    re += wt * std::cos(a);
    im += wt * std::sin(a);
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

C naive_lagged(const std::vector<C>& x, std::size_t lag) {
  std::complex<long double> acc = 0;
  for (std::size_t i = 0; i + lag < x.size(); ++i) {
    acc += std::complex<long double>(x[i + lag]) * std::conj(std::complex<long double>(x[i]));
  }
  return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

struct IsaGuard {
  kernels::Isa saved = kernels::active_isa();
  ~IsaGuard() { kernels::set_isa(saved); }
};

}  // namespace

TEST_CASE("scalar kernels match naive loops") {
  std::mt19937_64 rng(1);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 255u, 256u, 257u, 1000u}) {
    const auto p = random_phases(rng, n, 40.0);
    const auto w = random_phases(rng, n, 1.0);
    CHECK(std::abs(kernels::scalar::sum_unit_phases(p, {}) - naive_phases(p, {})) < 1e-11 * (1 + n));
    CHECK(std::abs(kernels::scalar::sum_unit_phases(p, w) - naive_phases(p, w)) < 1e-11 * (1 + n));
    const auto x = random_vec(rng, n);
    for (std::size_t lag : {0u, 1u, 2u, 7u}) {
      CHECK(std::abs(kernels::scalar::lagged_dot(x, lag) - naive_lagged(x, lag)) < 1e-11 * (1 + n));
    }
    if (n == 0) continue;
    std::vector<C> out(n);
    kernels::scalar::conj_shift_product(x, 3 % n, out);
    for (std::size_t j = 0; j < n; ++j) CHECK(out[j] == std::conj(x[j]) * x[(j + 3) % n]);
  }
  const std::vector<double> two = {0.0, 0.5};
  const std::vector<double> one = {1.0};
  CHECK_THROWS(kernels::scalar::sum_unit_phases(two, one));
}

TEST_CASE("avx2 kernels match scalar kernels") {
  if (!kernels::isa_supported(kernels::Isa::Avx2)) {
    MESSAGE("AVX2 unavailable; equivalence not exercised");
    return;
  }
#if defined(FRACPRIME_HAVE_AVX2)
  std::mt19937_64 rng(2);
  for (std::size_t n = 0; n <= 70; ++n) {
    for (double spread : {0.5, 1e3, 1e6}) {
      const auto p = random_phases(rng, n, spread);
      const auto w = random_phases(rng, n, 2.0);
      CHECK(std::abs(kernels::avx2::sum_unit_phases(p, {}) - kernels::scalar::sum_unit_phases(p, {})) < 1e-12 * (1 + n));
      CHECK(std::abs(kernels::avx2::sum_unit_phases(p, w) - kernels::scalar::sum_unit_phases(p, w)) < 1e-12 * (1 + n));
    }
    const auto x = random_vec(rng, n);
    for (std::size_t lag : {0u, 1u, 3u, 4u, 9u, 80u}) {
      CHECK(std::abs(kernels::avx2::lagged_dot(x, lag) - kernels::scalar::lagged_dot(x, lag)) < 1e-12 * (1 + n));
    }
    if (n == 0) continue;
    std::vector<C> a(n), b(n);
    for (std::size_t shift : {std::size_t{0}, std::size_t{1}, n / 2, n - 1}) {
      kernels::avx2::conj_shift_product(x, shift, a);
      kernels::scalar::conj_shift_product(x, shift, b);
      for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(a[j] - b[j]) < 1e-14 * (1 + std::abs(b[j])));
    }
  }
  // Exact lattice points.
  const std::vector<double> quarters = {0.0, 0.25, 0.5, 0.75, 1.0, -0.25, 2.5, 7.75};
  const C s = kernels::avx2::sum_unit_phases(quarters, {});
  CHECK(std::abs(s - kernels::scalar::sum_unit_phases(quarters, {})) < 1e-14);
#endif
}

TEST_CASE("dispatch selects and routes kernels") {
  IsaGuard guard;
  CHECK(kernels::parse_isa("scalar") == kernels::Isa::Scalar);
  CHECK(kernels::parse_isa("auto") == kernels::best_supported_isa());
  CHECK_THROWS(kernels::parse_isa("neon"));
  CHECK(kernels::isa_name(kernels::Isa::Avx2) == "avx2");
  kernels::set_isa(kernels::Isa::Scalar);
  CHECK(kernels::active_isa() == kernels::Isa::Scalar);
  std::mt19937_64 rng(3);
  const auto p = random_phases(rng, 300, 5.0);
  CHECK(kernels::sum_unit_phases(p) == kernels::scalar::sum_unit_phases(p, {}));
  if (!kernels::isa_supported(kernels::Isa::Avx2)) CHECK_THROWS(kernels::set_isa(kernels::Isa::Avx2));
}

TEST_CASE("end-to-end results agree across kernels") {
  if (!kernels::isa_supported(kernels::Isa::Avx2)) return;
  IsaGuard guard;
  const auto table = primes::sieve(200000);
  const std::vector<averages::IterateSpec> fam = {
      averages::IterateSpec(cli::parse_poly_expr("t^(3/2)"), averages::Mode::Primes),
      averages::IterateSpec(cli::parse_poly_expr("t^(3/2) + t^(11/10)"), averages::Mode::Primes)};
  const double t[2] = {0.3, 0.7};
  const std::vector<systems::Observable> fs = {systems::FourierPoly::character(1, {1, 0}),
                                               systems::FourierPoly::character(1, {1, 0})};
  const auto rot = systems::System::rotation();
  std::vector<double> out;
  for (auto isa : {kernels::Isa::Scalar, kernels::Isa::Avx2}) {
    kernels::set_isa(isa);
    out.push_back(std::abs(averages::weyl_sum(fam, t, 10000, &table, averages::WeylArgument::Raw)));
    out.push_back(averages::multi_average(rot, fam, fs, averages::Unweighted{}, 10000, &table).distance);
    std::vector<C> v(7);
    for (std::size_t x = 0; x < 7; ++x) v[x] = systems::e(static_cast<double>(x * x * x) / 7);
    out.push_back(seminorms::gowers_norm_cyclic(systems::CyclicFunction(v), 3));
  }
  for (std::size_t i = 0; i < 3; ++i) CHECK(out[i] == doctest::Approx(out[i + 3]).epsilon(1e-10));
}
