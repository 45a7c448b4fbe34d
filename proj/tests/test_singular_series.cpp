#include <doctest.h>

#include <cmath>
#include <vector>

#include "fracprime/singular_series.hpp"

using namespace fracprime::primes;

namespace {

// Independent plain sieve for the oracle products.
std::vector<std::uint64_t> plain_primes(std::uint64_t limit) {
  std::vector<bool> composite(limit + 1, false);
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 2; n <= limit; ++n) {
    if (composite[n]) continue;
    out.push_back(n);
    for (std::uint64_t m = n * n; m <= limit; m += n) composite[m] = true;
  }
  return out;
}

// Literal truncated Euler product with nu_p counted by brute force.
double oracle_series(const std::vector<std::uint64_t>& primes, const std::vector<std::int64_t>& v,
                     std::uint64_t P) {
  const double k = static_cast<double>(v.size());
  double prod = 1.0;
  for (auto p : primes) {
    if (p > P) break;
    std::vector<bool> hit(p, false);
    int nu = 0;
    for (auto x : v) {
      const auto r = static_cast<std::uint64_t>(((x % static_cast<std::int64_t>(p)) + p) % p);
      if (!hit[r]) ++nu;
      hit[r] = true;
    }
    prod *= std::pow(1.0 - 1.0 / p, -k) * (1.0 - nu / static_cast<double>(p));
  }
  return prod;
}

}  // namespace

TEST_CASE("singular series special values") {
  const auto table = sieve(1000000);
  for (std::int64_t h : {0, 1, 7, 1000}) {
    const std::int64_t v[1] = {h};
    for (std::uint64_t P : {2u, 100u, 1000000u}) CHECK(singular_series(table, v, P).value == 1.0);
  }
  const std::int64_t adj[2] = {0, 1};
  CHECK(singular_series(table, adj, 1000).value == 0.0);
  const std::int64_t twin[2] = {0, 2};
  const auto g = singular_series(table, twin, 1000000);
  // Twin prime constant 2 prod_{p>2} (1 - (p-1)^-2).
  double twin_oracle = 2.0;
  for (auto p : plain_primes(1000000)) {
    if (p > 2) twin_oracle *= 1.0 - 1.0 / ((p - 1.0) * (p - 1.0));
  }
  CHECK(std::fabs(g.value - twin_oracle) < 1e-3);
  CHECK(g.value == doctest::Approx(1.3203236316937391).epsilon(1e-6));
  CHECK(g.tail_bound > 0.0);
  CHECK(g.tail_bound < 1e-5);
}

TEST_CASE("singular series matches the literal product") {
  const auto table = sieve(20000);
  const auto primes = plain_primes(20000);
  const std::vector<std::vector<std::int64_t>> sets = {
      {0, 2}, {0, 4}, {0, 6}, {0, 2, 6}, {0, 4, 6}, {0, 2, 6, 8}, {0, 30, 210}, {0, 1, 3}};
  for (const auto& v : sets) {
    for (std::uint64_t P : {300u, 5000u, 20000u}) {
      CHECK(singular_series(table, v, P).value == doctest::Approx(oracle_series(primes, v, P)).epsilon(1e-12));
    }
  }
}

TEST_CASE("singular series invariance") {
  const auto table = sieve(10000);
  const std::vector<std::int64_t> base = {0, 2, 6, 8};
  const double g = singular_series(table, base, 10000).value;
  for (std::int64_t c : {-5, 1, 17, 1000}) {
    std::vector<std::int64_t> shifted = base;
    for (auto& x : shifted) x += c;
    CHECK(singular_series(table, shifted, 10000).value == doctest::Approx(g).epsilon(1e-14));
  }
  const std::vector<std::int64_t> perm = {8, 0, 6, 2};
  CHECK(singular_series(table, perm, 10000).value == doctest::Approx(g).epsilon(1e-14));
  const std::vector<std::int64_t> dup = {0, 0};
  CHECK(std::isinf(singular_series(table, dup, 1000).tail_bound));
}

TEST_CASE("singular series tail bound holds") {
  const auto table = sieve(1000000);
  const std::vector<std::vector<std::int64_t>> sets = {{0, 2}, {0, 6}, {0, 2, 6}, {0, 4, 6, 10}};
  for (const auto& v : sets) {
    for (std::uint64_t P : {1000u, 10000u}) {
      const auto a = singular_series(table, v, P);
      for (std::uint64_t Q : {P * 10, std::uint64_t{1000000}}) {
        CHECK(std::fabs(singular_series(table, v, Q).value - a.value) <= a.tail_bound);
      }
    }
  }
}

TEST_CASE("fast evaluator matches the direct product") {
  const auto table = sieve(100000);
  SingularSeriesEvaluator eval(table, 100000, 4);
  for (std::int64_t h = 1; h <= 300; ++h) {
    const std::vector<std::int64_t> v = {0, h};
    CHECK(eval(v) == doctest::Approx(singular_series(table, v, 100000).value).epsilon(1e-12));
  }
  const std::vector<std::int64_t> quad = {0, 2, 6, 8};
  CHECK(eval(quad) == doctest::Approx(singular_series(table, quad, 100000).value).epsilon(1e-12));
}

TEST_CASE("tuple bound check") {
  const auto table = sieve(1000100);
  const std::int64_t twin[2] = {0, 2};
  const auto r = check_tuple_bound(table, 100000, twin, 2.0, 100000);
  CHECK(r.ratio > 0.0);
  CHECK(r.ratio <= 2.0);
  CHECK(r.within_bound);
  CHECK_FALSE(r.degenerate);
  const std::int64_t adj[2] = {0, 1};
  const auto d = check_tuple_bound(table, 1000, adj, 2.0, 1000);
  CHECK(d.count <= 1);
  CHECK(d.degenerate);
  const std::int64_t one[1] = {0};
  const auto p = check_tuple_bound(table, 1000000, one, 2.0, 1000);
  CHECK(p.ratio == doctest::Approx(78498.0 * std::log(1e6) / 1e6));
  CHECK(p.ratio >= 0.9);
  CHECK(p.ratio <= 1.2);
}

TEST_CASE("mean squared singular series") {
  const auto table = sieve(200000);
  CHECK(avg_singular_sq(table, 1, 1, 1000).mean_all == 0.0);
  std::vector<double> means;
  for (std::uint64_t H : {100u, 1000u, 10000u}) means.push_back(avg_singular_sq(table, H, 1, 20000).mean_all);
  for (std::size_t i = 1; i < means.size(); ++i) {
    CHECK(means[i] / means[i - 1] >= 0.8);
    CHECK(means[i] / means[i - 1] <= 1.25);
  }
  const auto two = avg_singular_sq(table, 50, 2, 1000);
  CHECK(std::isfinite(two.mean_all));
  CHECK(two.mean_star <= 2 * two.mean_all);
  CHECK(two.mean_all <= 2 * two.mean_star);
  CHECK(two.total == 2500);
  CHECK(two.total - two.star == 50);

  const std::uint64_t checkpoints[4] = {1000, 10000, 31623, 100000};
  const auto run = running_singular_sq_means(table, checkpoints, 200000);
  REQUIRE(run.size() == 4);
  const auto l1 = avg_singular_sq(table, 1000, 1, 200000);
  CHECK(run[0] == doctest::Approx(l1.mean_all).epsilon(1e-12));
  CHECK(run[1] / run[0] < 1.1);
  CHECK(run[3] / run[1] < 1.1);
}
