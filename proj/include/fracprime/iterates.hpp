#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "fracprime/fracpoly.hpp"
#include "fracprime/primes.hpp"

namespace fracprime::averages {

/// Integers: argument n. Primes: argument p_n, the n-th prime.
enum class Mode { Integers, Primes };

std::string_view mode_name(Mode mode);
Mode parse_mode(std::string_view text);

/// Tolerance below which a floor is re-done in extended precision.
inline constexpr double kFloorGuardBand = 1e-9;

/// An iterate x -> a(x) with a parameter-free, non-constant a.
class IterateSpec {
 public:
  IterateSpec(fracpoly::RealExpPoly poly, Mode mode);

  const fracpoly::RealExpPoly& poly() const { return poly_; }
  Mode mode() const { return mode_; }

  /// a(x) in double precision, together with sum |c_j x^{d_j}| as a scale.
  std::pair<double, double> eval_with_scale(double x) const;
  double eval(double x) const { return eval_with_scale(x).first; }
  /// a(x) with 64-bit-mantissa powers, for fractional parts of large values.
  long double eval_long(long double x) const;
  /// a(x) in ~50 significant digits.
  long double eval_extended(std::uint64_t x) const;

 private:
  fracpoly::RealExpPoly poly_;
  Mode mode_;
  std::vector<std::pair<double, double>> terms_;  // (exponent, coefficient)
  std::vector<std::pair<long double, long double>> terms_long_;
};

struct GuardedFloor {
  std::int64_t value = 0;
  /// The double result sat inside the guard band.
  bool extended = false;
};

/// floor(a(x)) for an integer x >= 1.
GuardedFloor guarded_floor(const IterateSpec& spec, std::uint64_t x);

/// n or p_n. Primes mode needs a table; throws std::out_of_range past it.
std::uint64_t iterate_argument(Mode mode, std::uint64_t n, const primes::PrimeTable* table);

/// floor(a(n)) or floor(a(p_n)), n >= 1.
std::int64_t iterate_value(const IterateSpec& spec, std::uint64_t n,
                           const primes::PrimeTable* table);

/// iterate_value for n = 1..N.
std::vector<std::int64_t> iterate_values(const IterateSpec& spec, std::uint64_t N,
                                         const primes::PrimeTable* table);

/// Largest integer argument the mode touches for n <= N (p_N bound for Primes).
std::uint64_t required_table_limit(Mode mode, std::uint64_t N);

}  // namespace fracprime::averages
