#include "fracprime/iterates.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fracprime::averages {

namespace {

using Extended = boost::multiprecision::cpp_bin_float_50;

Extended to_extended(const Rational& r) {
  return Extended(boost::multiprecision::numerator(r)) /
         Extended(boost::multiprecision::denominator(r));
}

Extended extended_sum(const fracpoly::RealExpPoly& poly, std::uint64_t x) {
  const std::vector<std::int64_t> none;
  const Extended xe(x);
  Extended sum = 0;
  for (const auto& [exponent, c] : poly.coefficient_values(none)) {
    sum += to_extended(c) * (exponent == 0 ? Extended(1) : pow(xe, to_extended(exponent)));
  }
  return sum;
}

}  // namespace

std::string_view mode_name(Mode mode) { return mode == Mode::Integers ? "integers" : "primes"; }

Mode parse_mode(std::string_view text) {
  if (text == "integers") return Mode::Integers;
  if (text == "primes") return Mode::Primes;
  throw std::invalid_argument("unknown mode '" + std::string(text) + "' (integers|primes)");
}

IterateSpec::IterateSpec(fracpoly::RealExpPoly poly, Mode mode)
    : poly_(std::move(poly)), mode_(mode) {
  if (poly_.num_params() != 0) throw std::invalid_argument("iterates take no parameters");
  if (poly_.is_constant_in_t()) throw std::invalid_argument("iterate polynomial is constant in t");
  const std::vector<std::int64_t> none;
  for (const auto& [exponent, c] : poly_.coefficient_values(none)) {
    terms_.emplace_back(to_double(exponent), to_double(c));
    terms_long_.emplace_back(to_extended(exponent).convert_to<long double>(),
                             to_extended(c).convert_to<long double>());
  }
}

std::pair<double, double> IterateSpec::eval_with_scale(double x) const {
  double value = 0.0;
  double scale = 0.0;
  for (const auto& [d, c] : terms_) {
    const double v = c * (d == 0.0 ? 1.0 : std::pow(x, d));
    value += v;
    scale += std::fabs(v);
  }
  return {value, scale};
}

long double IterateSpec::eval_long(long double x) const {
  long double value = 0.0L;
  for (const auto& [d, c] : terms_long_) value += c * (d == 0.0L ? 1.0L : std::pow(x, d));
  return value;
}

long double IterateSpec::eval_extended(std::uint64_t x) const {
  return extended_sum(poly_, x).convert_to<long double>();
}

GuardedFloor guarded_floor(const IterateSpec& spec, std::uint64_t x) {
  if (x == 0) throw std::domain_error("iterate argument must be >= 1");
  const auto [v, scale] = spec.eval_with_scale(static_cast<double>(x));
  const double tol = std::max(kFloorGuardBand, 64.0 * std::numeric_limits<double>::epsilon() * scale);
  const double nearest = std::nearbyint(v);
  if (std::fabs(v - nearest) >= tol) {
    if (std::fabs(v) > 9e18) throw std::overflow_error("iterate value exceeds int64");
    return {static_cast<std::int64_t>(std::floor(v)), false};
  }
  const Extended sum = extended_sum(spec.poly(), x);
  const Extended r = round(sum);
  const Extended snap = Extended("1e-35") * (abs(sum) > 1 ? abs(sum) : Extended(1));
  const Extended fl = abs(sum - r) < snap ? r : floor(sum);
  return {fl.convert_to<std::int64_t>(), true};
}

std::uint64_t iterate_argument(Mode mode, std::uint64_t n, const primes::PrimeTable* table) {
  if (n == 0) throw std::invalid_argument("iterate index must be >= 1");
  if (mode == Mode::Integers) return n;
  if (!table) throw std::invalid_argument("primes mode requires a prime table");
  return table->nth_prime(n);
}

std::int64_t iterate_value(const IterateSpec& spec, std::uint64_t n,
                           const primes::PrimeTable* table) {
  return guarded_floor(spec, iterate_argument(spec.mode(), n, table)).value;
}

std::vector<std::int64_t> iterate_values(const IterateSpec& spec, std::uint64_t N,
                                         const primes::PrimeTable* table) {
  if (spec.mode() == Mode::Primes) {
    if (!table) throw std::invalid_argument("primes mode requires a prime table");
    if (table->primes().size() < N) {
      throw std::out_of_range("prime table too small: holds " +
                              std::to_string(table->primes().size()) + " primes, need " +
                              std::to_string(N));
    }
  }
  std::vector<std::int64_t> out(N);
  for (std::uint64_t n = 1; n <= N; ++n) {
    const std::uint64_t x = spec.mode() == Mode::Integers ? n : table->primes()[n - 1];
    out[n - 1] = guarded_floor(spec, x).value;
  }
  return out;
}

std::uint64_t required_table_limit(Mode mode, std::uint64_t N) {
  return mode == Mode::Integers ? N : primes::nth_prime_upper_bound(N);
}

}  // namespace fracprime::averages
