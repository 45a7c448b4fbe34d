#include <doctest.h>

#include <cmath>
#include <random>

#include "fracprime/seminorms.hpp"

using namespace fracprime::systems;
using namespace fracprime::seminorms;

namespace {

// E_{x, h_1..h_s} prod_eps C^{|eps|} f(x + eps . h), raised to 1/2^s.
double brute_gowers(const CyclicFunction& f, int s) {
  const std::size_t m = f.modulus();
  std::vector<std::size_t> h(s, 0);
  Complex total = 0;
  std::size_t count = 0;
  while (true) {
    for (std::size_t x = 0; x < m; ++x) {
      Complex prod = 1;
      for (unsigned mask = 0; mask < (1u << s); ++mask) {
        std::size_t pt = x;
        int weight = 0;
        for (int i = 0; i < s; ++i) {
          if (mask >> i & 1) {
            pt += h[i];
            ++weight;
          }
        }
        const Complex v = f[pt % m];
        prod *= weight % 2 ? std::conj(v) : v;
      }
      total += prod;
      ++count;
    }
    int i = 0;
    while (i < s && ++h[i] == m) h[i++] = 0;
    if (i == s) break;
  }
  return std::pow(std::max(0.0, total.real() / count), 1.0 / (1 << s));
}

CyclicFunction random_cyclic(std::mt19937_64& rng, std::size_t m) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> v(m);
  for (auto& z : v) z = Complex(u(rng), u(rng));
  return CyclicFunction(v);
}

FourierPoly random_fourier(std::mt19937_64& rng, int terms) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  FourierPoly f(1);
  for (int i = 0; i < terms; ++i) {
    f.add({static_cast<std::int64_t>(rng() % 11) - 5, 0}, Complex(u(rng), u(rng)));
  }
  return f;
}

}  // namespace

TEST_CASE("cyclic Gowers norms examples") {
  for (int s = 1; s <= 4; ++s) CHECK(gowers_norm_cyclic(CyclicFunction::constant(5, 1.0), s) == doctest::Approx(1.0));
  const auto c = CyclicFunction::character(5, 1);
  CHECK(gowers_norm_cyclic(c, 1) < 1e-12);
  CHECK(gowers_norm_cyclic(c, 2) == doctest::Approx(1.0));
  CHECK(brute_gowers(c, 2) == doctest::Approx(1.0));
  CHECK_THROWS(gowers_norm_cyclic(c, 0));
}

TEST_CASE("cyclic Gowers norms match brute force") {
  std::mt19937_64 rng(17);
  for (std::size_t m = 2; m <= 7; ++m) {
    for (int s = 1; s <= 3; ++s) {
      for (int trial = 0; trial < 3; ++trial) {
        const auto f = random_cyclic(rng, m);
        CHECK(std::fabs(gowers_norm_cyclic(f, s) - brute_gowers(f, s)) < 1e-10);
      }
    }
  }
  // Quadratic phase: U2 small but U3 = 1.
  std::vector<Complex> q(7);
  for (std::size_t x = 0; x < 7; ++x) q[x] = e(static_cast<double>(x * x) / 7);
  const CyclicFunction quad(q);
  CHECK(gowers_norm_cyclic(quad, 3) == doctest::Approx(1.0));
  CHECK(gowers_norm_cyclic(quad, 2) < 0.7);
}

TEST_CASE("cyclic Gowers norms are monotone and conjugation invariant") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = random_cyclic(rng, 2 + rng() % 8);
    for (int s = 1; s <= 3; ++s) {
      CHECK(gowers_norm_cyclic(f, s) <= gowers_norm_cyclic(f, s + 1) + 1e-12);
      CHECK(gowers_norm_cyclic(f.conj(), s) == doctest::Approx(gowers_norm_cyclic(f, s)).epsilon(1e-12));
    }
  }
}

TEST_CASE("Fourier oracle on the rotation") {
  const auto x = FourierPoly::character(1, {1, 0});
  for (int s = 2; s <= 5; ++s) CHECK(fourier_seminorm_rotation(x, s) == doctest::Approx(1.0));
  const auto two = x + FourierPoly::character(1, {2, 0});
  CHECK(fourier_seminorm_rotation(two, 2) == doctest::Approx(std::pow(2.0, 0.25)));
  CHECK(fourier_seminorm_rotation(FourierPoly(1), 3) == 0.0);
  CHECK_THROWS(fourier_seminorm_rotation(x, 1));
  CHECK_THROWS(fourier_seminorm_rotation(FourierPoly(2), 2));
}

TEST_CASE("rotation estimates approach the oracle") {
  const auto rot = System::rotation();
  const auto x = FourierPoly::character(1, {1, 0});
  const std::uint64_t n1000[1] = {1000};
  const auto est = hk_seminorm_estimate(rot, x, 2, n1000);
  REQUIRE(est.value);
  CHECK(std::fabs(*est.value - 1.0) < 1e-2);
  CHECK(est.schedule == std::vector<std::uint64_t>{1000});

  const auto two = x + FourierPoly::character(1, {2, 0});
  const std::uint64_t n10k[1] = {10000};
  CHECK(*hk_seminorm_estimate(rot, two, 2, n10k).value ==
        doctest::Approx(std::pow(2.0, 0.25)).epsilon(0.02));

  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_fourier(rng, 1 + static_cast<int>(rng() % 5));
    const double oracle = fourier_seminorm_rotation(f, 2);
    const auto v = hk_seminorm_estimate(rot, f, 2, n1000);
    REQUIRE(v.value);
    CHECK(std::fabs(*v.value - oracle) < 1e-2);
    CHECK(std::fabs(*v.value - oracle) <= 5 * oracle * std::pow(1000.0, -0.25) + 1e-3);
    CHECK(*hk_seminorm_estimate(rot, f.conj(), 2, n1000).value == doctest::Approx(*v.value).epsilon(1e-9));
  }
}

TEST_CASE("skew estimates separate the second and third seminorms") {
  const auto skew = System::skew();
  const auto y = FourierPoly::character(2, {0, 1});
  for (std::uint64_t N : {10u, 200u, 1000u}) {
    const std::uint64_t sched[1] = {N};
    const auto est = hk_seminorm_estimate(skew, y, 2, sched);
    REQUIRE(est.value);
    CHECK(*est.value == doctest::Approx(std::pow(static_cast<double>(N), -0.25)).epsilon(1e-12));
  }
  const std::uint64_t s3[2] = {200, 200};
  const auto third = hk_seminorm_estimate(skew, y, 3, s3);
  REQUIRE(third.value);
  CHECK(*third.value >= 0.5);
  CHECK(*hk_seminorm_estimate(skew, y, 1, {}).value == 0.0);
}

TEST_CASE("estimate contracts") {
  const auto skew = System::skew();
  const auto y = FourierPoly::character(2, {0, 1});
  CHECK(default_schedule(1).empty());
  CHECK(default_schedule(2) == std::vector<std::uint64_t>{1000});
  CHECK(default_schedule(3) == std::vector<std::uint64_t>{200, 200});
  const std::uint64_t one[1] = {10};
  const std::uint64_t zero[1] = {0};
  CHECK_THROWS(hk_seminorm_estimate(System::cyclic(5), y, 2, one));
  CHECK_THROWS(hk_seminorm_estimate(skew, y, 4, default_schedule(3)));
  CHECK_THROWS(hk_seminorm_estimate(skew, y, 3, one));
  CHECK_THROWS(hk_seminorm_estimate(skew, y, 2, zero));

  FourierPoly wide(2);
  for (std::int64_t k = 1; k <= 30; ++k) wide.add({k, 1}, 1.0);
  const std::uint64_t s3[2] = {50, 50};
  const auto hit = hk_seminorm_estimate(skew, wide, 3, s3, 20);
  CHECK(hit.term_budget_hit);
  CHECK_FALSE(hit.value);
  CHECK_FALSE(hit.message.empty());
}
