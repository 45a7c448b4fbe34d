#include <doctest.h>

#include <cmath>

#include "fracprime/cli/config.hpp"
#include "fracprime/iterates.hpp"

using namespace fracprime;
using namespace fracprime::averages;

namespace {

IterateSpec spec(const char* text, Mode mode) { return IterateSpec(cli::parse_poly_expr(text), mode); }

}  // namespace

TEST_CASE("iterate examples") {
  const auto table = primes::sieve(1000);
  CHECK(iterate_value(spec("t^(1/2)", Mode::Primes), 2, &table) == 1);
  const auto cube = spec("t^(3/2)", Mode::Integers);
  CHECK(iterate_value(cube, 4, nullptr) == 8);
  CHECK(guarded_floor(cube, 4).extended);
  CHECK(guarded_floor(cube, 9).value == 27);
  CHECK(iterate_value(spec("t^(1/2) + t^(1/10)", Mode::Primes), 1, &table) == 2);
}

TEST_CASE("perfect powers floor exactly") {
  const auto root = spec("t^(1/2)", Mode::Integers);
  const auto threehalves = spec("t^(3/2)", Mode::Integers);
  for (std::int64_t k = 1; k <= 3000; ++k) {
    const auto sq = static_cast<std::uint64_t>(k * k);
    CHECK(iterate_value(root, sq, nullptr) == k);
    if (k > 1) CHECK(iterate_value(root, sq - 1, nullptr) == k - 1);
    CHECK(iterate_value(threehalves, sq, nullptr) == k * k * k);
  }
  const auto fifth = spec("t^(5/2)", Mode::Integers);
  for (std::int64_t k = 1000; k <= 1010; ++k) {
    CHECK(iterate_value(fifth, static_cast<std::uint64_t>(k * k), nullptr) == k * k * k * k * k);
  }
}

TEST_CASE("floor agrees with the extended evaluation") {
  const auto a = spec("t^(3/2) + 1/3*t^(11/10)", Mode::Integers);
  for (std::uint64_t x = 1; x <= 20000; x += 7) {
    CHECK(iterate_value(a, x, nullptr) == static_cast<std::int64_t>(std::floor(a.eval_extended(x))));
  }
}

TEST_CASE("iterate contracts") {
  CHECK_THROWS(IterateSpec(cli::parse_poly_expr("5"), Mode::Integers));
  CHECK_THROWS(IterateSpec(cli::parse_poly_expr("h1*t^(1/2)"), Mode::Integers));
  const auto table = primes::sieve(100);
  const auto p = spec("t^(1/2)", Mode::Primes);
  CHECK_THROWS_AS(iterate_value(p, 1000, &table), std::out_of_range);
  CHECK_THROWS(iterate_value(p, 1, nullptr));
  CHECK(iterate_argument(Mode::Primes, 5, &table) == 11);
  CHECK(iterate_argument(Mode::Integers, 5, nullptr) == 5);
  CHECK(parse_mode("primes") == Mode::Primes);
  CHECK(mode_name(Mode::Integers) == "integers");
  CHECK_THROWS(parse_mode("reals"));
  CHECK(required_table_limit(Mode::Integers, 100) == 100);
  CHECK(required_table_limit(Mode::Primes, 25) >= 97);
}

TEST_CASE("iterate_values lists n = 1..N") {
  const auto table = primes::sieve(2000);
  const auto sq = spec("t^2", Mode::Primes);
  const auto v = iterate_values(sq, 200, &table);
  REQUIRE(v.size() == 200);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto p = static_cast<std::int64_t>(table.nth_prime(i + 1));
    CHECK(v[i] == p * p);
    if (i > 0) CHECK(v[i] % 4 == 1);
  }
}
