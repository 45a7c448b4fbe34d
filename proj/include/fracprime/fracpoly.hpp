#pragma once

// Polynomials with real (here: exact rational) exponents and integer
// parameters, together with the equivalence/type calculus and the van der
// Corput reduction that drives PET induction.
//
// A RealExpPoly in k parameters is a finite sum  sum_j p_j(h_1..h_k) t^{d_j}
// where each p_j is a ParamPolynomial with rational coefficients and each
// d_j >= 0 is rational. Every object is immutable once built and canonical:
// zero coefficients are never stored, so structural equality is equality of
// functions.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracprime/rational.hpp"

namespace fracprime::fracpoly {

using Powers = std::vector<std::uint32_t>;

class ParamPolynomial {
 public:
  explicit ParamPolynomial(std::size_t num_params = 0) : num_params_(num_params) {}

  static ParamPolynomial constant(std::size_t num_params, const Rational& c);
  static ParamPolynomial monomial(std::size_t num_params, const Rational& c, Powers powers);
  /// h_{index+1} raised to `power`.
  static ParamPolynomial variable(std::size_t num_params, std::size_t index,
                                  std::uint32_t power = 1);

  std::size_t num_params() const { return num_params_; }
  bool is_zero() const { return monomials_.empty(); }
  bool is_constant() const;
  const std::map<Powers, Rational>& monomials() const { return monomials_; }

  /// Adds c * h^powers, keeping the canonical form.
  void add_monomial(const Powers& powers, const Rational& c);

  /// Same polynomial viewed in `num_params` >= num_params() variables.
  ParamPolynomial with_params(std::size_t num_params) const;

  Rational evaluate(std::span<const std::int64_t> h) const;

  ParamPolynomial operator-() const;
  ParamPolynomial& operator+=(const ParamPolynomial& other);
  ParamPolynomial& operator-=(const ParamPolynomial& other);
  friend ParamPolynomial operator+(ParamPolynomial a, const ParamPolynomial& b) { return a += b; }
  friend ParamPolynomial operator-(ParamPolynomial a, const ParamPolynomial& b) { return a -= b; }
  friend ParamPolynomial operator*(const ParamPolynomial& a, const ParamPolynomial& b);
  ParamPolynomial scaled(const Rational& c) const;

  friend bool operator==(const ParamPolynomial&, const ParamPolynomial&) = default;

  std::string to_string() const;

 private:
  std::size_t num_params_;
  std::map<Powers, Rational> monomials_;
};

class RealExpPoly {
 public:
  explicit RealExpPoly(std::size_t num_params = 0) : num_params_(num_params) {}

  /// c * t^exponent with a constant coefficient.
  static RealExpPoly power(std::size_t num_params, const Rational& exponent,
                           const Rational& c = Rational(1));
  static RealExpPoly term(const Rational& exponent, const ParamPolynomial& coeff);

  /// Adds coeff * t^exponent. Exponents must be non-negative.
  void add_term(const Rational& exponent, const ParamPolynomial& coeff);

  std::size_t num_params() const { return num_params_; }
  const std::map<Rational, ParamPolynomial>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  /// No term with a positive exponent.
  bool is_constant_in_t() const;
  /// Every term with a positive exponent has a non-integer exponent.
  bool is_fractional() const;

  /// Largest exponent with a nonzero coefficient; 0 for nonzero constants and
  /// -1 for the zero polynomial (so that floor() gives deg(0) = -1).
  Rational fractional_degree() const;
  /// Integer part of the fractional degree; -1 for the zero polynomial.
  int degree() const;

  RealExpPoly with_params(std::size_t num_params) const;

  /// Exact coefficient values p_j(h) keyed by exponent (zeros dropped).
  std::map<Rational, Rational> coefficient_values(std::span<const std::int64_t> h) const;

  /// sum_j p_j(h) t^{d_j}. Coefficients are evaluated exactly, the powers of t
  /// in double precision. Throws std::domain_error unless t > 0.
  double eval(std::span<const std::int64_t> h, double t) const;
  double eval(double t) const { return eval({}, t); }

  RealExpPoly operator-() const;
  RealExpPoly& operator+=(const RealExpPoly& other);
  RealExpPoly& operator-=(const RealExpPoly& other);
  friend RealExpPoly operator+(RealExpPoly a, const RealExpPoly& b) { return a += b; }
  friend RealExpPoly operator-(RealExpPoly a, const RealExpPoly& b) { return a -= b; }
  RealExpPoly scaled(const Rational& c) const;

  friend bool operator==(const RealExpPoly&, const RealExpPoly&) = default;

  /// e.g. "-t^(6/5) + 3/2*h1*t^(1/2)"; parameters print as h1..hk.
  std::string to_string() const;

 private:
  std::size_t num_params_;
  std::map<Rational, ParamPolynomial> terms_;
};

/// Ordered, nonempty list of polynomials sharing one parameter count.
class Family {
 public:
  Family() = default;
  explicit Family(std::vector<RealExpPoly> members);

  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  std::size_t num_params() const { return members_.empty() ? 0 : members_.front().num_params(); }
  const RealExpPoly& operator[](std::size_t i) const { return members_[i]; }
  const std::vector<RealExpPoly>& members() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  friend bool operator==(const Family&, const Family&) = default;

 private:
  std::vector<RealExpPoly> members_;
};

/// (d, k_d, ..., k_0): maximal integral degree and the number of
/// equivalence classes at each degree from d down to 0.
struct TypeVector {
  int degree = 0;
  std::vector<int> counts;

  std::vector<int> as_vector() const;
  std::string to_string() const;

  friend bool operator==(const TypeVector&, const TypeVector&) = default;
  friend std::strong_ordering operator<=>(const TypeVector& a, const TypeVector& b);
};

bool type_lt(const TypeVector& a, const TypeVector& b);

/// a ~= b: equal degrees and deg(a - b) strictly smaller.
bool equivalent(const RealExpPoly& a, const RealExpPoly& b);

bool is_nice(const Family& family);
bool is_fractional(const Family& family);

/// Truncated Taylor expansion of a(h, t + h_{k+1}) through order deg(a), as a
/// polynomial in k+1 parameters. Terms whose exponent would become negative
/// are part of the negligible remainder and are dropped.
RealExpPoly taylor_shift(const RealExpPoly& f);

/// The family { ~a_i - a, a_i - a : i } in k+1 parameters, with functions
/// constant in t removed and exact duplicates collapsed to their first
/// occurrence. `anchor` is 0-based. Throws std::out_of_range.
Family vdc_op(const Family& family, std::size_t anchor);

/// Throws std::invalid_argument when every member is identically zero.
TypeVector type_vector(const Family& family);

/// Anchor for the type-reducing vdC step (0-based). Requires a nice fractional
/// family whose first member has fractional degree > 1; throws
/// std::invalid_argument otherwise. Case (i), mixed fractional degrees: the
/// member of index >= 1 with minimal fractional degree. Case (ii): the member
/// maximizing the fractional degree of a~_1 - a_i. Ties go to the lowest index.
std::size_t choose_a(const Family& family);

struct PetStep {
  Family before;
  std::size_t anchor;
  Family after;
  TypeVector type_before;
  TypeVector type_after;
};

struct PetTrace {
  Family initial;
  std::vector<PetStep> steps;

  const Family& final_family() const { return steps.empty() ? initial : steps.back().after; }
};

/// Raised when the reduction breaks one of its own guarantees (a non-nice or
/// non-decreasing step, or running out of steps). Indicates an engine bug.
class PetEngineError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline constexpr std::size_t kDefaultPetMaxSteps = 64;

/// Applies choose_a + vdc_op until every member has fractional degree < 1,
/// checking niceness, fractionality and strict type descent at every step.
PetTrace pet_reduce(const Family& family, std::size_t max_steps = kDefaultPetMaxSteps);

}  // namespace fracprime::fracpoly
