#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fracprime/primes.hpp"

namespace fracprime::primes {

/// Truncated Euler product prod_{p <= P} (1 - 1/p)^{-k} (1 - nu_p/p).
struct SingularSeries {
  double value = 0.0;
  /// Absolute bound on |G(infinity) - G(P)|: value * (exp(k^2 sum_{p>P} p^-2) - 1).
  /// Infinite when the values are not distinct (the full product diverges).
  double tail_bound = 0.0;
  std::uint64_t prime_cutoff = 0;
};

/// Requires prime_cutoff >= max pairwise difference, >= 2k and <= table.limit().
SingularSeries singular_series(const PrimeTable& table, std::span<const std::int64_t> values,
                               std::uint64_t prime_cutoff);

/// Same truncated product evaluated in O(#prime factors of the differences):
/// the generic factor (nu_p = k) is prefix-multiplied once, and only primes
/// dividing some pairwise difference are corrected. Falls back to the direct
/// product when values repeat.
class SingularSeriesEvaluator {
 public:
  SingularSeriesEvaluator(const PrimeTable& table, std::uint64_t prime_cutoff, int max_k);

  double operator()(std::span<const std::int64_t> values) const;
  std::uint64_t prime_cutoff() const { return cutoff_; }

 private:
  const PrimeTable* table_;
  std::uint64_t cutoff_;
  int max_k_;
  std::vector<double> generic_;               // generic_[k] = prod_{k < p <= P} f_p(k)
  std::vector<std::uint32_t> smallest_factor_;  // up to the cutoff
};

struct TupleBoundCheck {
  std::uint64_t count = 0;
  double singular = 0.0;
  /// count / (G * N / (log N)^k); NaN when degenerate.
  double ratio = 0.0;
  bool within_bound = false;
  /// G == 0 while count > 0 (possible only at desk scale).
  bool degenerate = false;
};

TupleBoundCheck check_tuple_bound(const PrimeTable& table, std::uint64_t N,
                                  std::span<const std::int64_t> shifts, double C_k,
                                  std::uint64_t prime_cutoff);

struct SingularMoment {
  double mean_all = 0.0;
  double mean_star = 0.0;
  std::uint64_t total = 0;
  std::uint64_t star = 0;
};

/// E_{h in [H]^l} G_{2^l}(cube(h))^2 for l in {1, 2}; also reports the mean
/// over star tuples. Requires prime_cutoff >= l * H.
SingularMoment avg_singular_sq(const PrimeTable& table, std::uint64_t H, int l,
                               std::uint64_t prime_cutoff);

/// Running means of G_2(0, h)^2 over h <= H at each checkpoint H (increasing).
std::vector<double> running_singular_sq_means(const PrimeTable& table,
                                              std::span<const std::uint64_t> checkpoints,
                                              std::uint64_t prime_cutoff);

}  // namespace fracprime::primes
