#include "fracprime/singular_series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace fracprime::primes {

namespace {

// (1 - 1/p)^{-k} (1 - nu/p), arranged so that k = 1, nu = 1 gives exactly 1.
double local_factor(std::uint64_t p, int nu, int k) {
  const double pd = static_cast<double>(p);
  double f = (pd - nu) / (pd - 1.0);
  const double g = pd / (pd - 1.0);
  for (int i = 1; i < k; ++i) f *= g;
  return f;
}

std::int64_t max_difference(std::span<const std::int64_t> values) {
  if (values.empty()) return 0;
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return *hi - *lo;
}

bool all_distinct(std::span<const std::int64_t> values) {
  std::vector<std::int64_t> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) == v.end();
}

void check_cutoff(const PrimeTable& table, std::span<const std::int64_t> values,
                  std::uint64_t prime_cutoff) {
  const auto k = static_cast<std::uint64_t>(values.size());
  const auto diff = static_cast<std::uint64_t>(max_difference(values));
  if (prime_cutoff < diff) {
    throw std::invalid_argument("prime cutoff " + std::to_string(prime_cutoff) +
                                " is below the maximal difference " + std::to_string(diff));
  }
  if (prime_cutoff < std::max<std::uint64_t>(2 * k, 2)) {
    throw std::invalid_argument("prime cutoff must be at least max(2k, 2)");
  }
  table.require(prime_cutoff, "singular series cutoff");
}

}  // namespace

SingularSeries singular_series(const PrimeTable& table, std::span<const std::int64_t> values,
                               std::uint64_t prime_cutoff) {
  check_cutoff(table, values, prime_cutoff);
  const int k = static_cast<int>(values.size());
  SingularSeries out;
  out.prime_cutoff = prime_cutoff;
  double product = 1.0;
  for (auto p : table.primes()) {
    if (p > prime_cutoff) break;
    product *= local_factor(p, nu_p(p, values), k);
    if (product == 0.0) break;
  }
  out.value = product;
  if (!all_distinct(values)) {
    out.tail_bound = product == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  } else {
    // sum_{p > P} p^{-2} <= sum_{odd n > P} n^{-2} <= 1 / (2 (P - 1)).
    const double tail_sum = 1.0 / (2.0 * (static_cast<double>(prime_cutoff) - 1.0));
    out.tail_bound = product * std::expm1(static_cast<double>(k) * k * tail_sum);
  }
  return out;
}

SingularSeriesEvaluator::SingularSeriesEvaluator(const PrimeTable& table,
                                                 std::uint64_t prime_cutoff, int max_k)
    : table_(&table), cutoff_(prime_cutoff), max_k_(max_k) {
  if (max_k < 1) throw std::invalid_argument("max_k must be >= 1");
  if (prime_cutoff < static_cast<std::uint64_t>(2 * max_k)) {
    throw std::invalid_argument("prime cutoff must be at least 2 * max_k");
  }
  table.require(prime_cutoff, "singular series cutoff");
  generic_.assign(static_cast<std::size_t>(max_k) + 1, 1.0);
  for (int k = 1; k <= max_k; ++k) {
    double product = 1.0;
    for (auto p : table.primes()) {
      if (p > prime_cutoff) break;
      if (p <= static_cast<std::uint64_t>(k)) continue;
      product *= local_factor(p, k, k);
    }
    generic_[static_cast<std::size_t>(k)] = product;
  }
  smallest_factor_.assign(prime_cutoff + 1, 0);
  for (std::uint64_t i = 2; i <= prime_cutoff; ++i) {
    if (smallest_factor_[i] != 0) continue;
    for (std::uint64_t j = i; j <= prime_cutoff; j += i) {
      if (smallest_factor_[j] == 0) smallest_factor_[j] = static_cast<std::uint32_t>(i);
    }
  }
}

double SingularSeriesEvaluator::operator()(std::span<const std::int64_t> values) const {
  const int k = static_cast<int>(values.size());
  if (k == 0) return 1.0;
  if (k > max_k_) throw std::invalid_argument("tuple longer than the evaluator's max_k");
  if (static_cast<std::uint64_t>(max_difference(values)) > cutoff_) {
    throw std::invalid_argument("prime cutoff is below the maximal difference");
  }
  if (!all_distinct(values)) return singular_series(*table_, values, cutoff_).value;

  double value = generic_[static_cast<std::size_t>(k)];
  for (auto p : table_->primes()) {
    if (p > static_cast<std::uint64_t>(k) || p > cutoff_) break;
    value *= local_factor(p, nu_p(p, values), k);
  }
  if (value == 0.0) return 0.0;

  std::vector<std::uint32_t> divisors;
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      auto d = static_cast<std::uint64_t>(std::llabs(values[i] - values[j]));
      while (d > 1) {
        const std::uint32_t q = smallest_factor_[d];
        divisors.push_back(q);
        while (d % q == 0) d /= q;
      }
    }
  }
  std::sort(divisors.begin(), divisors.end());
  divisors.erase(std::unique(divisors.begin(), divisors.end()), divisors.end());
  for (auto q : divisors) {
    if (q <= static_cast<std::uint32_t>(k)) continue;
    value *= local_factor(q, nu_p(q, values), k) / local_factor(q, k, k);
  }
  return value;
}

TupleBoundCheck check_tuple_bound(const PrimeTable& table, std::uint64_t N,
                                  std::span<const std::int64_t> shifts, double C_k,
                                  std::uint64_t prime_cutoff) {
  if (N < 2) throw std::invalid_argument("check_tuple_bound requires N >= 2");
  TupleBoundCheck out;
  out.count = count_prime_tuples(table, N, shifts);
  out.singular = singular_series(table, shifts, prime_cutoff).value;
  const double scale = static_cast<double>(N) /
                       std::pow(std::log(static_cast<double>(N)), static_cast<double>(shifts.size()));
  if (out.singular == 0.0) {
    out.degenerate = out.count > 0;
    out.ratio = std::numeric_limits<double>::quiet_NaN();
    out.within_bound = out.count == 0;
    return out;
  }
  out.ratio = static_cast<double>(out.count) / (out.singular * scale);
  out.within_bound = out.ratio <= C_k;
  return out;
}

SingularMoment avg_singular_sq(const PrimeTable& table, std::uint64_t H, int l,
                               std::uint64_t prime_cutoff) {
  if (l != 1 && l != 2) throw std::invalid_argument("avg_singular_sq supports l in {1, 2}");
  if (H == 0) throw std::invalid_argument("avg_singular_sq requires H >= 1");
  if (prime_cutoff < static_cast<std::uint64_t>(l) * H) {
    throw std::invalid_argument("prime cutoff must be at least l * H");
  }
  const SingularSeriesEvaluator eval(table, prime_cutoff, 1 << l);
  SingularMoment out;
  double sum_all = 0.0;
  double sum_star = 0.0;
  std::vector<std::int64_t> h(static_cast<std::size_t>(l), 1);
  while (true) {
    const auto c = cube(h);
    const double g = eval(c);
    sum_all += g * g;
    ++out.total;
    if (is_star(h)) {
      sum_star += g * g;
      ++out.star;
    }
    std::size_t i = 0;
    while (i < h.size() && h[i] == static_cast<std::int64_t>(H)) h[i++] = 1;
    if (i == h.size()) break;
    ++h[i];
  }
  out.mean_all = sum_all / static_cast<double>(out.total);
  out.mean_star = out.star ? sum_star / static_cast<double>(out.star) : 0.0;
  return out;
}

std::vector<double> running_singular_sq_means(const PrimeTable& table,
                                              std::span<const std::uint64_t> checkpoints,
                                              std::uint64_t prime_cutoff) {
  if (checkpoints.empty()) return {};
  if (!std::is_sorted(checkpoints.begin(), checkpoints.end()) || checkpoints.front() == 0) {
    throw std::invalid_argument("checkpoints must be positive and increasing");
  }
  if (prime_cutoff < checkpoints.back()) {
    throw std::invalid_argument("prime cutoff must cover the largest checkpoint");
  }
  const SingularSeriesEvaluator eval(table, prime_cutoff, 2);
  std::vector<double> means;
  double sum = 0.0;
  std::size_t next = 0;
  for (std::uint64_t h = 1; h <= checkpoints.back(); ++h) {
    const std::int64_t pair[2] = {0, static_cast<std::int64_t>(h)};
    const double g = eval(pair);
    sum += g * g;
    while (next < checkpoints.size() && checkpoints[next] == h) {
      means.push_back(sum / static_cast<double>(h));
      ++next;
    }
  }
  return means;
}

}  // namespace fracprime::primes
