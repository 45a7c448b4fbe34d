#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <vector>

namespace fracprime::primes {

/// Thrown when a sieve would exceed the configured memory budget.
class SieveBudgetError : public std::runtime_error {
 public:
  SieveBudgetError(std::uint64_t limit, std::uint64_t required_bytes, std::uint64_t budget_bytes);
  std::uint64_t required_bytes() const { return required_bytes_; }

 private:
  std::uint64_t required_bytes_;
};

/// Primality of every integer in [0, limit], stored one bit per odd number,
/// plus the increasing list of primes (nth_prime(1) == 2).
class PrimeTable {
 public:
  PrimeTable() = default;

  std::uint64_t limit() const { return limit_; }
  bool is_prime(std::int64_t n) const;
  /// 1-based: nth_prime(1) == 2. Throws std::out_of_range past the table.
  std::uint64_t nth_prime(std::uint64_t n) const;
  /// Number of primes <= x (x clamped to the limit is an error; throws).
  std::uint64_t pi(std::uint64_t x) const;
  std::span<const std::uint64_t> primes() const { return primes_; }
  /// Odd-number bitset: bit i set iff 2i+1 is prime.
  std::span<const std::uint64_t> odd_bits() const { return bits_; }

  /// Throws std::out_of_range("table too small ...") unless n <= limit().
  void require(std::uint64_t n, const char* what) const;

  friend PrimeTable sieve(std::uint64_t, std::uint64_t);
  friend PrimeTable from_odd_bits(std::uint64_t, std::vector<std::uint64_t>);

 private:
  std::uint64_t limit_ = 0;
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint64_t> primes_;
};

inline constexpr std::uint64_t kDefaultSieveBudgetBytes = std::uint64_t{4} << 30;

/// Bytes a table up to `limit` occupies (bitset plus prime list estimate).
std::uint64_t sieve_bytes_required(std::uint64_t limit);

/// Sieve of Eratosthenes over the odd numbers. Requires limit >= 2.
PrimeTable sieve(std::uint64_t limit, std::uint64_t budget_bytes = kDefaultSieveBudgetBytes);

/// Builds a table from an odd-number bitset (as stored in the cache file).
PrimeTable from_odd_bits(std::uint64_t limit, std::vector<std::uint64_t> bits);

// Sieve cache file: 8-byte magic "FPSIEVE1", 8-byte little-endian limit, then
// one bit per odd integer 1, 3, 5, ... <= limit, least significant bit first.
void save_cache(const PrimeTable& table, const std::filesystem::path& path);
PrimeTable load_cache(const std::filesystem::path& path);
/// Loads `path` when it holds a table with limit >= `limit`, otherwise sieves
/// and rewrites the cache.
PrimeTable sieve_cached(std::uint64_t limit, const std::filesystem::path& path);

/// Limit large enough to hold the n-th prime (Rosser-Schoenfeld upper bound).
std::uint64_t nth_prime_upper_bound(std::uint64_t n);

/// log n on primes, 0 elsewhere.
double von_mangoldt_prime(const PrimeTable& table, std::int64_t n);

/// prod over eps in {0,1}^k of von_mangoldt_prime(n + eps . h).
double delta_von_mangoldt(const PrimeTable& table, std::span<const std::int64_t> h,
                          std::int64_t n);

/// Subset sums eps . h over eps in {0,1}^l, ordered by |eps| and then
/// lexicographically by support: (0, h1, h2, h3, h1+h2, h1+h3, h2+h3, h1+h2+h3).
std::vector<std::int64_t> cube(std::span<const std::int64_t> h);
bool is_star(std::span<const std::int64_t> h);

/// |{ n in [1, N] : n + s prime for every shift s }|.
std::uint64_t count_prime_tuples(const PrimeTable& table, std::uint64_t N,
                                 std::span<const std::int64_t> shifts);

/// Number of residue classes mod p occupied by `values`.
int nu_p(std::uint64_t p, std::span<const std::int64_t> values);

/// |[N]^l minus ([N]^l)^*| by enumeration.
std::uint64_t star_complement_count(std::uint64_t N, int l);

/// Empirical E_{n in [N]} (Delta_h Lambda')(n + c) for a star tuple h.
double check_cor_primes(const PrimeTable& table, std::span<const std::int64_t> h,
                        std::int64_t c, std::uint64_t N);

}  // namespace fracprime::primes
