#pragma once

// Closed-form measure-preserving systems with exact integration:
//   Cyclic(m):    x -> x + 1 on Z/m, observables are value vectors;
//   Rotation(a):  x -> x + a on the circle;
//   Skew(a):      (x, y) -> (x + a, y + x) on the 2-torus,
//                 T^n(x, y) = (x + n a, y + n x + n(n-1) a / 2).
// Circle and torus observables are finite Fourier sums, so pullbacks,
// products and integrals are all exact up to the rounding of amplitudes.

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace fracprime::systems {

using Complex = std::complex<double>;
using Frequency = std::array<std::int64_t, 2>;

/// e(x) = exp(2 pi i x).
Complex e(double turns);

/// sqrt(2) - 1 rounded to double; the default irrational angle.
inline constexpr double kDefaultAlpha = 0.41421356237309504880;

/// A double-precision angle held as the exact dyadic rational m / 2^s it
/// represents, so frac(K * alpha) is exact for any 128-bit integer K.
class DyadicAngle {
 public:
  /// Any finite alpha whose dyadic denominator is at most 2^63; throws
  /// std::invalid_argument otherwise. Integers give zero phase.
  explicit DyadicAngle(double alpha);
  double value() const { return value_; }
  /// frac(K * alpha) in [0, 1), computed exactly then rounded once.
  double frac_times(__int128 K) const;

 private:
  double value_;
  std::uint64_t mantissa_;
  unsigned shift_;
};

class TermBudgetExceeded : public std::runtime_error {
 public:
  TermBudgetExceeded(std::size_t terms, std::size_t budget);
};

inline constexpr std::size_t kDefaultTermBudget = 100000;

class FourierPoly {
 public:
  explicit FourierPoly(int dim = 1);

  static FourierPoly character(int dim, Frequency k, Complex amplitude = 1.0);
  static FourierPoly constant(int dim, Complex c);

  int dim() const { return dim_; }
  const std::map<Frequency, Complex>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  Complex coefficient(const Frequency& k) const;

  /// Adds amplitude * e(k . x); terms that cancel exactly are removed.
  void add(const Frequency& k, Complex amplitude);
  FourierPoly& operator+=(const FourierPoly& other);
  FourierPoly& operator-=(const FourierPoly& other);
  friend FourierPoly operator+(FourierPoly a, const FourierPoly& b) { return a += b; }
  friend FourierPoly operator-(FourierPoly a, const FourierPoly& b) { return a -= b; }
  FourierPoly scaled(Complex c) const;
  /// Negated frequencies, conjugated amplitudes.
  FourierPoly conj() const;

  /// sum |amplitude|, an upper bound for the sup norm.
  double sup_bound() const;
  /// L^2 norm by Parseval.
  double l2_norm() const;
  Complex evaluate(double x, double y = 0.0) const;

  friend bool operator==(const FourierPoly&, const FourierPoly&) = default;

 private:
  int dim_;
  std::map<Frequency, Complex> terms_;
};

class CyclicFunction {
 public:
  explicit CyclicFunction(std::vector<Complex> values);

  static CyclicFunction constant(std::uint64_t m, Complex c);
  static CyclicFunction indicator(std::uint64_t m, std::uint64_t residue);
  /// x -> e(k x / m).
  static CyclicFunction character(std::uint64_t m, std::int64_t k);

  std::uint64_t modulus() const { return values_.size(); }
  const std::vector<Complex>& values() const { return values_; }
  Complex operator[](std::size_t x) const { return values_[x]; }

  CyclicFunction conj() const;
  Complex mean() const;
  double l2_norm() const;

  friend bool operator==(const CyclicFunction&, const CyclicFunction&) = default;

 private:
  std::vector<Complex> values_;
};

using Observable = std::variant<FourierPoly, CyclicFunction>;

struct Cyclic {
  std::uint64_t modulus;
};
struct Rotation {
  double alpha;
};
struct Skew {
  double alpha;
};

class System {
 public:
  static System cyclic(std::uint64_t modulus);
  static System rotation(double alpha = kDefaultAlpha);
  static System skew(double alpha = kDefaultAlpha);

  const std::variant<Cyclic, Rotation, Skew>& variant() const { return spec_; }
  bool is_cyclic() const { return std::holds_alternative<Cyclic>(spec_); }
  bool is_rotation() const { return std::holds_alternative<Rotation>(spec_); }
  bool is_skew() const { return std::holds_alternative<Skew>(spec_); }
  std::uint64_t modulus() const;
  /// Torus dimension of Fourier observables (1 or 2); 0 for Cyclic.
  int dimension() const;
  const DyadicAngle& angle() const;
  /// "cyclic:5", "rotation:alpha=0.41421356237309503", ...
  std::string describe() const;

 private:
  explicit System(std::variant<Cyclic, Rotation, Skew> spec);
  std::variant<Cyclic, Rotation, Skew> spec_;
  DyadicAngle angle_{kDefaultAlpha};
};

/// Throws std::invalid_argument if the observable does not live on `sys`.
void check_compatible(const System& sys, const Observable& f);

/// f o T^n, for any integer n.
FourierPoly apply_power(const System& sys, const FourierPoly& f, std::int64_t n);
CyclicFunction apply_power(const System& sys, const CyclicFunction& f, std::int64_t n);
Observable apply_power(const System& sys, const Observable& f, std::int64_t n);

Complex integrate(const FourierPoly& f);
Complex integrate(const CyclicFunction& f);
Complex integrate(const System& sys, const Observable& f);

/// Exact product; throws TermBudgetExceeded past `budget` terms.
FourierPoly multiply(const FourierPoly& f, const FourierPoly& g,
                     std::size_t budget = kDefaultTermBudget);
CyclicFunction multiply(const CyclicFunction& f, const CyclicFunction& g);
Observable multiply(const Observable& f, const Observable& g,
                    std::size_t budget = kDefaultTermBudget);

/// integral of f * g without forming the product.
Complex integrate_product(const FourierPoly& f, const FourierPoly& g);
/// integral of conj(f) * g.
Complex inner_product(const FourierPoly& f, const FourierPoly& g);

double l2_norm(const Observable& f);
double l2_distance(const Observable& f, const Observable& g);
double l2_distance(const FourierPoly& f, const FourierPoly& g);
double l2_distance(const CyclicFunction& f, const CyclicFunction& g);

/// Constant observable c in the representation `sys` uses.
Observable constant_observable(const System& sys, Complex c);

/// Fejer-smoothed indicator of the arc [start, start + length) on the circle:
/// 0 <= g <= 1 and integral exactly `length`.
FourierPoly fejer_arc(double start, double length, int order);

}  // namespace fracprime::systems
