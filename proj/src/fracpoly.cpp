#include "fracprime/fracpoly.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace fracprime::fracpoly {

// ---------------------------------------------------------------------------
// ParamPolynomial

ParamPolynomial ParamPolynomial::constant(std::size_t num_params, const Rational& c) {
  ParamPolynomial p(num_params);
  p.add_monomial(Powers(num_params, 0), c);
  return p;
}

ParamPolynomial ParamPolynomial::monomial(std::size_t num_params, const Rational& c,
                                          Powers powers) {
  if (powers.size() != num_params) {
    throw std::invalid_argument("monomial power vector has wrong length");
  }
  ParamPolynomial p(num_params);
  p.add_monomial(powers, c);
  return p;
}

ParamPolynomial ParamPolynomial::variable(std::size_t num_params, std::size_t index,
                                          std::uint32_t power) {
  if (index >= num_params) throw std::out_of_range("parameter index out of range");
  Powers powers(num_params, 0);
  powers[index] = power;
  return monomial(num_params, Rational(1), std::move(powers));
}

bool ParamPolynomial::is_constant() const {
  if (monomials_.empty()) return true;
  if (monomials_.size() > 1) return false;
  const auto& powers = monomials_.begin()->first;
  return std::all_of(powers.begin(), powers.end(), [](auto p) { return p == 0; });
}

void ParamPolynomial::add_monomial(const Powers& powers, const Rational& c) {
  if (powers.size() != num_params_) {
    throw std::invalid_argument("monomial power vector has wrong length");
  }
  if (c == 0) return;
  auto [it, inserted] = monomials_.try_emplace(powers, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) monomials_.erase(it);
  }
}

ParamPolynomial ParamPolynomial::with_params(std::size_t num_params) const {
  if (num_params < num_params_) {
    throw std::invalid_argument("cannot drop parameters from a polynomial");
  }
  ParamPolynomial out(num_params);
  for (const auto& [powers, c] : monomials_) {
    Powers extended = powers;
    extended.resize(num_params, 0);
    out.monomials_.emplace(std::move(extended), c);
  }
  return out;
}

Rational ParamPolynomial::evaluate(std::span<const std::int64_t> h) const {
  if (h.size() != num_params_) {
    throw std::invalid_argument("parameter vector has length " + std::to_string(h.size()) +
                                ", expected " + std::to_string(num_params_));
  }
  Rational total = 0;
  for (const auto& [powers, c] : monomials_) {
    BigInt value = 1;
    for (std::size_t i = 0; i < powers.size(); ++i) {
      value *= boost::multiprecision::pow(BigInt(h[i]), powers[i]);
    }
    total += c * Rational(value);
  }
  return total;
}

ParamPolynomial ParamPolynomial::operator-() const { return scaled(Rational(-1)); }

ParamPolynomial& ParamPolynomial::operator+=(const ParamPolynomial& other) {
  if (other.num_params_ != num_params_) {
    throw std::invalid_argument("parameter count mismatch");
  }
  for (const auto& [powers, c] : other.monomials_) add_monomial(powers, c);
  return *this;
}

ParamPolynomial& ParamPolynomial::operator-=(const ParamPolynomial& other) {
  if (other.num_params_ != num_params_) {
    throw std::invalid_argument("parameter count mismatch");
  }
  for (const auto& [powers, c] : other.monomials_) add_monomial(powers, -c);
  return *this;
}

ParamPolynomial operator*(const ParamPolynomial& a, const ParamPolynomial& b) {
  if (a.num_params_ != b.num_params_) throw std::invalid_argument("parameter count mismatch");
  ParamPolynomial out(a.num_params_);
  for (const auto& [pa, ca] : a.monomials_) {
    for (const auto& [pb, cb] : b.monomials_) {
      Powers powers(pa.size());
      for (std::size_t i = 0; i < pa.size(); ++i) powers[i] = pa[i] + pb[i];
      out.add_monomial(powers, ca * cb);
    }
  }
  return out;
}

ParamPolynomial ParamPolynomial::scaled(const Rational& c) const {
  ParamPolynomial out(num_params_);
  if (c == 0) return out;
  for (const auto& [powers, coeff] : monomials_) out.monomials_.emplace(powers, coeff * c);
  return out;
}

std::string ParamPolynomial::to_string() const {
  if (monomials_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest total degree first reads more naturally.
  std::vector<std::pair<Powers, Rational>> ordered(monomials_.rbegin(), monomials_.rend());
  for (const auto& [powers, c] : ordered) {
    Rational magnitude = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool has_vars = std::any_of(powers.begin(), powers.end(), [](auto p) { return p != 0; });
    bool wrote = false;
    if (magnitude != 1 || !has_vars) {
      os << fracprime::to_string(magnitude);
      wrote = true;
    }
    for (std::size_t i = 0; i < powers.size(); ++i) {
      if (powers[i] == 0) continue;
      if (wrote) os << "*";
      os << "h" << (i + 1);
      if (powers[i] > 1) os << "^" << powers[i];
      wrote = true;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// RealExpPoly

RealExpPoly RealExpPoly::power(std::size_t num_params, const Rational& exponent,
                               const Rational& c) {
  RealExpPoly f(num_params);
  f.add_term(exponent, ParamPolynomial::constant(num_params, c));
  return f;
}

RealExpPoly RealExpPoly::term(const Rational& exponent, const ParamPolynomial& coeff) {
  RealExpPoly f(coeff.num_params());
  f.add_term(exponent, coeff);
  return f;
}

void RealExpPoly::add_term(const Rational& exponent, const ParamPolynomial& coeff) {
  if (exponent < 0) throw std::invalid_argument("negative exponent " + fracprime::to_string(exponent));
  if (coeff.num_params() != num_params_) throw std::invalid_argument("parameter count mismatch");
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(exponent, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool RealExpPoly::is_constant_in_t() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
}

bool RealExpPoly::is_fractional() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) {
    return kv.first == 0 || !fracprime::is_integer(kv.first);
  });
}

Rational RealExpPoly::fractional_degree() const {
  if (terms_.empty()) return Rational(-1);
  return terms_.rbegin()->first;
}

int RealExpPoly::degree() const {
  return fracprime::floor(fractional_degree()).convert_to<int>();
}

RealExpPoly RealExpPoly::with_params(std::size_t num_params) const {
  RealExpPoly out(num_params);
  for (const auto& [e, p] : terms_) out.terms_.emplace(e, p.with_params(num_params));
  return out;
}

std::map<Rational, Rational> RealExpPoly::coefficient_values(
    std::span<const std::int64_t> h) const {
  std::map<Rational, Rational> out;
  for (const auto& [e, p] : terms_) {
    Rational v = p.evaluate(h);
    if (v != 0) out.emplace(e, v);
  }
  return out;
}

double RealExpPoly::eval(std::span<const std::int64_t> h, double t) const {
  if (!(t > 0)) throw std::domain_error("eval requires t > 0");
  double total = 0.0;
  for (const auto& [e, c] : coefficient_values(h)) {
    total += to_double(c) * (e == 0 ? 1.0 : std::pow(t, to_double(e)));
  }
  return total;
}

RealExpPoly RealExpPoly::operator-() const { return scaled(Rational(-1)); }

RealExpPoly& RealExpPoly::operator+=(const RealExpPoly& other) {
  if (other.num_params_ != num_params_) throw std::invalid_argument("parameter count mismatch");
  for (const auto& [e, p] : other.terms_) add_term(e, p);
  return *this;
}

RealExpPoly& RealExpPoly::operator-=(const RealExpPoly& other) {
  if (other.num_params_ != num_params_) throw std::invalid_argument("parameter count mismatch");
  for (const auto& [e, p] : other.terms_) add_term(e, -p);
  return *this;
}

RealExpPoly RealExpPoly::scaled(const Rational& c) const {
  RealExpPoly out(num_params_);
  if (c == 0) return out;
  for (const auto& [e, p] : terms_) out.terms_.emplace(e, p.scaled(c));
  return out;
}

std::string RealExpPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, p] = *it;
    std::string coeff = p.to_string();
    bool single = p.monomials().size() == 1;
    bool negative = single && p.monomials().begin()->second < 0;
    if (single && negative) coeff = p.scaled(Rational(-1)).to_string();
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (e == 0) {
      os << (single ? coeff : "(" + coeff + ")");
      continue;
    }
    if (coeff != "1") os << (single ? coeff : "(" + coeff + ")") << "*";
    os << "t^(" << fracprime::to_string(e) << ")";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Family and type calculus

Family::Family(std::vector<RealExpPoly> members) : members_(std::move(members)) {
  if (members_.empty()) throw std::invalid_argument("a family must be nonempty");
  const std::size_t k = members_.front().num_params();
  for (const auto& m : members_) {
    if (m.num_params() != k) throw std::invalid_argument("family members disagree on k");
  }
}

std::vector<int> TypeVector::as_vector() const {
  std::vector<int> v;
  v.reserve(counts.size() + 1);
  v.push_back(degree);
  v.insert(v.end(), counts.begin(), counts.end());
  return v;
}

std::string TypeVector::to_string() const {
  std::ostringstream os;
  os << "(";
  auto v = as_vector();
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

std::strong_ordering operator<=>(const TypeVector& a, const TypeVector& b) {
  auto va = a.as_vector();
  auto vb = b.as_vector();
  return std::lexicographical_compare_three_way(va.begin(), va.end(), vb.begin(), vb.end());
}

bool type_lt(const TypeVector& a, const TypeVector& b) { return (a <=> b) < 0; }

bool equivalent(const RealExpPoly& a, const RealExpPoly& b) {
  const int da = a.degree();
  if (da != b.degree()) return false;
  return (a - b).degree() < da;
}

bool is_nice(const Family& family) {
  if (family.empty()) return false;
  const auto& first = family[0];
  const Rational top = first.fractional_degree();
  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto& a = family[i];
    if (a.fractional_degree() > top) return false;
    if (a.is_constant_in_t()) return false;
    if (i > 0 && (first - a).is_constant_in_t()) return false;
  }
  return true;
}

bool is_fractional(const Family& family) {
  return std::all_of(family.begin(), family.end(),
                     [](const RealExpPoly& a) { return a.is_fractional(); });
}

RealExpPoly taylor_shift(const RealExpPoly& f) {
  const std::size_t k = f.num_params();
  RealExpPoly out(k + 1);
  const int d = f.degree();
  for (const auto& [e, p] : f.terms()) {
    const ParamPolynomial base = p.with_params(k + 1);
    // falling(e, j) / j!, accumulated incrementally.
    Rational factor = 1;
    for (int j = 0; j <= d; ++j) {
      if (j > 0) factor *= (e - Rational(j - 1)) / Rational(j);
      if (factor == 0) break;
      const Rational exponent = e - Rational(j);
      if (exponent < 0) break;
      out.add_term(exponent,
                   (base * ParamPolynomial::variable(k + 1, k, static_cast<std::uint32_t>(j)))
                       .scaled(factor));
    }
  }
  return out;
}

Family vdc_op(const Family& family, std::size_t anchor) {
  if (anchor >= family.size()) {
    throw std::out_of_range("vdC anchor index " + std::to_string(anchor) +
                            " outside family of size " + std::to_string(family.size()));
  }
  const std::size_t k = family.num_params() + 1;
  const RealExpPoly a = family[anchor].with_params(k);
  std::vector<RealExpPoly> candidates;
  candidates.reserve(2 * family.size());
  for (const auto& member : family) candidates.push_back(taylor_shift(member) - a);
  for (const auto& member : family) candidates.push_back(member.with_params(k) - a);

  std::vector<RealExpPoly> kept;
  std::set<std::string> seen;
  for (auto& c : candidates) {
    if (c.is_constant_in_t()) continue;
    if (!seen.insert(c.to_string()).second) continue;
    kept.push_back(std::move(c));
  }
  if (kept.empty()) {
    throw std::invalid_argument("vdC operation removed every function of the family");
  }
  return Family(std::move(kept));
}

TypeVector type_vector(const Family& family) {
  std::vector<const RealExpPoly*> nonzero;
  for (const auto& a : family) {
    if (!a.is_zero()) nonzero.push_back(&a);
  }
  if (nonzero.empty()) throw std::invalid_argument("type of an all-zero family is undefined");

  int d = -1;
  for (const auto* a : nonzero) d = std::max(d, a->degree());

  TypeVector type;
  type.degree = d;
  type.counts.assign(static_cast<std::size_t>(d) + 1, 0);
  // Within a degree stratum, a ~= b iff their terms of exponent >= deg agree,
  // so the printed truncation is a class key.
  std::vector<std::set<std::string>> reps(static_cast<std::size_t>(d) + 1);
  for (const auto* a : nonzero) {
    const int deg = a->degree();
    RealExpPoly head(a->num_params());
    for (const auto& [e, c] : a->terms()) {
      if (e >= deg) head.add_term(e, c);
    }
    reps[static_cast<std::size_t>(deg)].insert(head.to_string());
  }
  for (int deg = d; deg >= 0; --deg) {
    type.counts[static_cast<std::size_t>(d - deg)] =
        static_cast<int>(reps[static_cast<std::size_t>(deg)].size());
  }
  return type;
}

std::size_t choose_a(const Family& family) {
  if (!is_nice(family)) throw std::invalid_argument("choose_a requires a nice family");
  if (!is_fractional(family)) throw std::invalid_argument("choose_a requires a fractional family");
  if (family[0].fractional_degree() <= 1) {
    throw std::invalid_argument("choose_a requires f-deg(a_1) > 1");
  }
  const Rational top = family[0].fractional_degree();
  const bool same_degree = std::all_of(family.begin(), family.end(), [&](const RealExpPoly& a) {
    return a.fractional_degree() == top;
  });

  if (!same_degree) {
    std::size_t best = 1;
    for (std::size_t i = 2; i < family.size(); ++i) {
      if (family[i].fractional_degree() < family[best].fractional_degree()) best = i;
    }
    return best;
  }

  const std::size_t k = family.num_params() + 1;
  const RealExpPoly shifted_first = taylor_shift(family[0]);
  // Maximal fractional degree of a~_1 - a_i; this also maximizes the integral
  // degree, and among equal integral degrees it is the choice that keeps the
  // vdC family nice.
  std::size_t best = 0;
  Rational best_degree = -2;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const Rational deg = (shifted_first - family[i].with_params(k)).fractional_degree();
    if (deg > best_degree) {
      best_degree = deg;
      best = i;
    }
  }
  return best;
}

PetTrace pet_reduce(const Family& family, std::size_t max_steps) {
  if (!is_nice(family)) throw std::invalid_argument("pet_reduce requires a nice family");
  if (!is_fractional(family)) throw std::invalid_argument("pet_reduce requires a fractional family");

  PetTrace trace;
  trace.initial = family;
  Family current = family;
  TypeVector current_type = type_vector(current);
  while (current[0].fractional_degree() >= 1) {
    if (trace.steps.size() >= max_steps) {
      throw PetEngineError("PET reduction did not terminate within " +
                           std::to_string(max_steps) + " steps");
    }
    const std::size_t anchor = choose_a(current);
    Family next = vdc_op(current, anchor);
    if (!is_nice(next)) {
      throw PetEngineError("vdC step " + std::to_string(trace.steps.size()) +
                           " produced a family that is not nice");
    }
    if (!is_fractional(next)) {
      throw PetEngineError("vdC step " + std::to_string(trace.steps.size()) +
                           " produced a non-fractional family");
    }
    TypeVector next_type = type_vector(next);
    if (!type_lt(next_type, current_type)) {
      throw PetEngineError("vdC step " + std::to_string(trace.steps.size()) +
                           " did not decrease the type: " + current_type.to_string() + " -> " +
                           next_type.to_string());
    }
    trace.steps.push_back(PetStep{current, anchor, next, current_type, next_type});
    current = std::move(next);
    current_type = std::move(next_type);
  }
  return trace;
}

}  // namespace fracprime::fracpoly
