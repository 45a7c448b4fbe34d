#include "fracprime/systems.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace fracprime::systems {

Complex e(double turns) {
  const double r = turns - std::nearbyint(turns);
  const double angle = 2.0 * std::numbers::pi * r;
  return {std::cos(angle), std::sin(angle)};
}

DyadicAngle::DyadicAngle(double alpha) : value_(alpha), mantissa_(0), shift_(0) {
  if (!std::isfinite(alpha)) throw std::invalid_argument("angle must be finite");
  if (alpha == 0.0) return;
  int exp2 = 0;
  const double frac = std::frexp(std::fabs(alpha), &exp2);
  auto m = static_cast<std::uint64_t>(std::ldexp(frac, 53));
  int s = 53 - exp2;
  const int tz = std::countr_zero(m);
  m >>= tz;
  s -= tz;
  if (s <= 0) {
    // alpha is an integer: every multiple has zero fractional part.
    mantissa_ = 0;
    shift_ = 0;
    return;
  }
  if (s > 63) throw std::invalid_argument("angle too small for exact dyadic phases");
  mantissa_ = m;
  shift_ = static_cast<unsigned>(s);
}

double DyadicAngle::frac_times(__int128 K) const {
  if (mantissa_ == 0) return 0.0;
  if (value_ < 0) K = -K;
  using u128 = unsigned __int128;
  const u128 mask = (u128(1) << shift_) - 1;
  const u128 k_mod = static_cast<u128>(K) & mask;
  const u128 prod = (k_mod * mantissa_) & mask;
  return std::ldexp(static_cast<double>(static_cast<std::uint64_t>(prod)),
                    -static_cast<int>(shift_));
}

TermBudgetExceeded::TermBudgetExceeded(std::size_t terms, std::size_t budget)
    : std::runtime_error("term budget exceeded: " + std::to_string(terms) + " terms > budget " +
                         std::to_string(budget)) {}

// FourierPoly

FourierPoly::FourierPoly(int dim) : dim_(dim) {
  if (dim != 1 && dim != 2) throw std::invalid_argument("FourierPoly dimension must be 1 or 2");
}

FourierPoly FourierPoly::character(int dim, Frequency k, Complex amplitude) {
  FourierPoly f(dim);
  f.add(k, amplitude);
  return f;
}

FourierPoly FourierPoly::constant(int dim, Complex c) { return character(dim, {0, 0}, c); }

Complex FourierPoly::coefficient(const Frequency& k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? Complex{} : it->second;
}

void FourierPoly::add(const Frequency& k, Complex amplitude) {
  if (dim_ == 1 && k[1] != 0) {
    throw std::invalid_argument("one-dimensional FourierPoly with a second frequency");
  }
  if (amplitude == Complex{}) return;
  auto [it, inserted] = terms_.try_emplace(k, amplitude);
  if (!inserted) {
    it->second += amplitude;
    if (it->second == Complex{}) terms_.erase(it);
  }
}

FourierPoly& FourierPoly::operator+=(const FourierPoly& other) {
  if (other.dim_ != dim_) throw std::invalid_argument("FourierPoly dimension mismatch");
  for (const auto& [k, a] : other.terms_) add(k, a);
  return *this;
}

FourierPoly& FourierPoly::operator-=(const FourierPoly& other) {
  if (other.dim_ != dim_) throw std::invalid_argument("FourierPoly dimension mismatch");
  for (const auto& [k, a] : other.terms_) add(k, -a);
  return *this;
}

FourierPoly FourierPoly::scaled(Complex c) const {
  FourierPoly out(dim_);
  for (const auto& [k, a] : terms_) out.add(k, a * c);
  return out;
}

FourierPoly FourierPoly::conj() const {
  FourierPoly out(dim_);
  for (const auto& [k, a] : terms_) out.terms_.emplace(Frequency{-k[0], -k[1]}, std::conj(a));
  return out;
}

double FourierPoly::sup_bound() const {
  double s = 0.0;
  for (const auto& [k, a] : terms_) s += std::abs(a);
  return s;
}

double FourierPoly::l2_norm() const {
  double s = 0.0;
  for (const auto& [k, a] : terms_) s += std::norm(a);
  return std::sqrt(s);
}

Complex FourierPoly::evaluate(double x, double y) const {
  Complex s{};
  for (const auto& [k, a] : terms_) {
    s += a * e(static_cast<double>(k[0]) * x + static_cast<double>(k[1]) * y);
  }
  return s;
}

// CyclicFunction

CyclicFunction::CyclicFunction(std::vector<Complex> values) : values_(std::move(values)) {
  if (values_.size() < 2) throw std::invalid_argument("cyclic modulus must be >= 2");
}

CyclicFunction CyclicFunction::constant(std::uint64_t m, Complex c) {
  return CyclicFunction(std::vector<Complex>(m, c));
}

CyclicFunction CyclicFunction::indicator(std::uint64_t m, std::uint64_t residue) {
  std::vector<Complex> v(m, 0.0);
  if (m > 0) v[residue % m] = 1.0;
  return CyclicFunction(std::move(v));
}

CyclicFunction CyclicFunction::character(std::uint64_t m, std::int64_t k) {
  std::vector<Complex> v(m);
  const auto mm = static_cast<std::int64_t>(m);
  for (std::int64_t x = 0; x < mm; ++x) {
    const std::int64_t r = ((k % mm) * x % mm + mm) % mm;
    v[static_cast<std::size_t>(x)] = e(static_cast<double>(r) / static_cast<double>(mm));
  }
  return CyclicFunction(std::move(v));
}

CyclicFunction CyclicFunction::conj() const {
  std::vector<Complex> v(values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::conj(values_[i]);
  return CyclicFunction(std::move(v));
}

Complex CyclicFunction::mean() const {
  Complex s{};
  for (auto v : values_) s += v;
  return s / static_cast<double>(values_.size());
}

double CyclicFunction::l2_norm() const {
  double s = 0.0;
  for (auto v : values_) s += std::norm(v);
  return std::sqrt(s / static_cast<double>(values_.size()));
}

// System

System::System(std::variant<Cyclic, Rotation, Skew> spec) : spec_(spec) {
  if (auto* c = std::get_if<Cyclic>(&spec_)) {
    if (c->modulus < 2) throw std::invalid_argument("cyclic modulus must be >= 2");
    return;
  }
  const double alpha = is_rotation() ? std::get<Rotation>(spec_).alpha : std::get<Skew>(spec_).alpha;
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  angle_ = DyadicAngle(alpha);
}

System System::cyclic(std::uint64_t modulus) { return System(Cyclic{modulus}); }
System System::rotation(double alpha) { return System(Rotation{alpha}); }
System System::skew(double alpha) { return System(Skew{alpha}); }

std::uint64_t System::modulus() const {
  if (!is_cyclic()) throw std::logic_error("modulus() on a non-cyclic system");
  return std::get<Cyclic>(spec_).modulus;
}

int System::dimension() const {
  if (is_cyclic()) return 0;
  return is_rotation() ? 1 : 2;
}

const DyadicAngle& System::angle() const {
  if (is_cyclic()) throw std::logic_error("angle() on a cyclic system");
  return angle_;
}

std::string System::describe() const {
  if (is_cyclic()) return "cyclic:" + std::to_string(modulus());
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s:alpha=%.17g", is_rotation() ? "rotation" : "skew",
                angle_.value());
  return buf;
}

void check_compatible(const System& sys, const Observable& f) {
  if (sys.is_cyclic()) {
    const auto* c = std::get_if<CyclicFunction>(&f);
    if (!c) throw std::invalid_argument("cyclic system requires a CyclicFunction observable");
    if (c->modulus() != sys.modulus()) {
      throw std::invalid_argument("observable modulus " + std::to_string(c->modulus()) +
                                  " does not match system modulus " +
                                  std::to_string(sys.modulus()));
    }
    return;
  }
  const auto* p = std::get_if<FourierPoly>(&f);
  if (!p) throw std::invalid_argument(sys.describe() + " requires a FourierPoly observable");
  if (p->dim() != sys.dimension()) {
    throw std::invalid_argument("observable dimension " + std::to_string(p->dim()) +
                                " does not match system dimension " +
                                std::to_string(sys.dimension()));
  }
}

FourierPoly apply_power(const System& sys, const FourierPoly& f, std::int64_t n) {
  check_compatible(sys, f);
  const DyadicAngle& alpha = sys.angle();
  FourierPoly out(f.dim());
  if (sys.is_rotation()) {
    for (const auto& [k, a] : f.terms()) {
      out.add(k, a * e(alpha.frac_times(static_cast<__int128>(k[0]) * n)));
    }
    return out;
  }
  const __int128 tri = static_cast<__int128>(n) * (static_cast<__int128>(n) - 1) / 2;
  for (const auto& [k, a] : f.terms()) {
    const __int128 K = static_cast<__int128>(k[0]) * n + static_cast<__int128>(k[1]) * tri;
    const __int128 k1 = static_cast<__int128>(k[0]) + static_cast<__int128>(n) * k[1];
    if (k1 > INT64_MAX || k1 < INT64_MIN) throw std::overflow_error("skew frequency overflow");
    out.add({static_cast<std::int64_t>(k1), k[1]}, a * e(alpha.frac_times(K)));
  }
  return out;
}

CyclicFunction apply_power(const System& sys, const CyclicFunction& f, std::int64_t n) {
  check_compatible(sys, f);
  const auto m = static_cast<std::int64_t>(f.modulus());
  const std::int64_t shift = ((n % m) + m) % m;
  std::vector<Complex> v(f.values().size());
  for (std::int64_t x = 0; x < m; ++x) {
    v[static_cast<std::size_t>(x)] = f[static_cast<std::size_t>((x + shift) % m)];
  }
  return CyclicFunction(std::move(v));
}

Observable apply_power(const System& sys, const Observable& f, std::int64_t n) {
  return std::visit([&](const auto& g) -> Observable { return apply_power(sys, g, n); }, f);
}

Complex integrate(const FourierPoly& f) { return f.coefficient({0, 0}); }
Complex integrate(const CyclicFunction& f) { return f.mean(); }

Complex integrate(const System& sys, const Observable& f) {
  check_compatible(sys, f);
  return std::visit([](const auto& g) { return integrate(g); }, f);
}

FourierPoly multiply(const FourierPoly& f, const FourierPoly& g, std::size_t budget) {
  if (f.dim() != g.dim()) throw std::invalid_argument("FourierPoly dimension mismatch");
  FourierPoly out(f.dim());
  for (const auto& [kf, af] : f.terms()) {
    for (const auto& [kg, ag] : g.terms()) {
      out.add({kf[0] + kg[0], kf[1] + kg[1]}, af * ag);
      if (out.size() > budget) throw TermBudgetExceeded(out.size(), budget);
    }
  }
  return out;
}

CyclicFunction multiply(const CyclicFunction& f, const CyclicFunction& g) {
  if (f.modulus() != g.modulus()) throw std::invalid_argument("cyclic modulus mismatch");
  std::vector<Complex> v(f.values().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f[i] * g[i];
  return CyclicFunction(std::move(v));
}

Observable multiply(const Observable& f, const Observable& g, std::size_t budget) {
  if (f.index() != g.index()) throw std::invalid_argument("observable kind mismatch");
  if (const auto* c = std::get_if<CyclicFunction>(&f)) {
    return multiply(*c, std::get<CyclicFunction>(g));
  }
  return multiply(std::get<FourierPoly>(f), std::get<FourierPoly>(g), budget);
}

Complex integrate_product(const FourierPoly& f, const FourierPoly& g) {
  if (f.dim() != g.dim()) throw std::invalid_argument("FourierPoly dimension mismatch");
  const FourierPoly& small = f.size() <= g.size() ? f : g;
  const FourierPoly& large = f.size() <= g.size() ? g : f;
  Complex s{};
  for (const auto& [k, a] : small.terms()) s += a * large.coefficient({-k[0], -k[1]});
  return s;
}

Complex inner_product(const FourierPoly& f, const FourierPoly& g) {
  if (f.dim() != g.dim()) throw std::invalid_argument("FourierPoly dimension mismatch");
  const FourierPoly& small = f.size() <= g.size() ? f : g;
  const FourierPoly& large = f.size() <= g.size() ? g : f;
  const bool f_small = &small == &f;
  Complex s{};
  for (const auto& [k, a] : small.terms()) {
    const Complex b = large.coefficient(k);
    s += f_small ? std::conj(a) * b : std::conj(b) * a;
  }
  return s;
}

double l2_distance(const FourierPoly& f, const FourierPoly& g) {
  FourierPoly d = f;
  d -= g;
  return d.l2_norm();
}

double l2_distance(const CyclicFunction& f, const CyclicFunction& g) {
  if (f.modulus() != g.modulus()) throw std::invalid_argument("cyclic modulus mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < f.values().size(); ++i) s += std::norm(f[i] - g[i]);
  return std::sqrt(s / static_cast<double>(f.modulus()));
}

double l2_norm(const Observable& f) {
  return std::visit([](const auto& g) { return g.l2_norm(); }, f);
}

double l2_distance(const Observable& f, const Observable& g) {
  if (f.index() != g.index()) throw std::invalid_argument("observable kind mismatch");
  if (const auto* c = std::get_if<CyclicFunction>(&f)) {
    return l2_distance(*c, std::get<CyclicFunction>(g));
  }
  return l2_distance(std::get<FourierPoly>(f), std::get<FourierPoly>(g));
}

Observable constant_observable(const System& sys, Complex c) {
  if (sys.is_cyclic()) return CyclicFunction::constant(sys.modulus(), c);
  return FourierPoly::constant(sys.dimension(), c);
}

FourierPoly fejer_arc(double start, double length, int order) {
  if (!(length >= 0.0 && length <= 1.0)) throw std::invalid_argument("arc length must be in [0, 1]");
  if (order < 0) throw std::invalid_argument("Fejer order must be >= 0");
  FourierPoly g(1);
  g.add({0, 0}, length);
  const double K1 = static_cast<double>(order) + 1.0;
  for (int k = 1; k <= order; ++k) {
    for (int sign : {1, -1}) {
      const double kk = static_cast<double>(sign * k);
      const Complex hat = (e(-kk * start) - e(-kk * (start + length))) /
                          Complex(0.0, 2.0 * std::numbers::pi * kk);
      g.add({sign * k, 0}, (1.0 - k / K1) * hat);
    }
  }
  return g;
}

}  // namespace fracprime::systems
