#include "fracprime/seminorms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fracprime/kernels/kernels.hpp"

namespace fracprime::seminorms {

using systems::Complex;
using systems::CyclicFunction;
using systems::FourierPoly;

namespace {

// ||f||_s^{2^s} on Z/m, consuming `scratch` one level per recursion step.
double cyclic_power(std::span<const Complex> f, int s,
                    std::vector<std::vector<Complex>>& scratch) {
  if (s == 1) {
    Complex sum{};
    for (auto v : f) sum += v;
    return std::norm(sum / static_cast<double>(f.size()));
  }
  auto& g = scratch[static_cast<std::size_t>(s)];
  double total = 0.0;
  for (std::size_t n = 0; n < f.size(); ++n) {
    kernels::conj_shift_product(f, n, g);
    total += cyclic_power(g, s - 1, scratch);
  }
  return total / static_cast<double>(f.size());
}

double hk_power(const systems::System& sys, const FourierPoly& f, int s,
                std::span<const std::uint64_t> schedule, std::size_t budget) {
  if (s == 1) return std::norm(systems::integrate(f));
  const std::uint64_t N = schedule.front();
  double total = 0.0;
  if (s == 2) {
    for (std::uint64_t n = 0; n < N; ++n) {
      const FourierPoly shifted = systems::apply_power(sys, f, static_cast<std::int64_t>(n));
      total += std::norm(systems::inner_product(f, shifted));
    }
  } else {
    const FourierPoly fbar = f.conj();
    for (std::uint64_t n = 0; n < N; ++n) {
      const FourierPoly shifted = systems::apply_power(sys, f, static_cast<std::int64_t>(n));
      total += hk_power(sys, systems::multiply(fbar, shifted, budget), s - 1,
                        schedule.subspan(1), budget);
    }
  }
  return total / static_cast<double>(N);
}

double root(double power, int s) {
  return std::pow(std::max(power, 0.0), 1.0 / std::ldexp(1.0, s));
}

}  // namespace

double gowers_norm_cyclic(const CyclicFunction& f, int s) {
  if (s < 1) throw std::invalid_argument("Gowers norm degree must be >= 1");
  std::vector<std::vector<Complex>> scratch(static_cast<std::size_t>(s) + 1,
                                            std::vector<Complex>(f.modulus()));
  return root(cyclic_power(f.values(), s, scratch), s);
}

std::vector<std::uint64_t> default_schedule(int s) {
  switch (s) {
    case 1: return {};
    case 2: return {1000};
    case 3: return {200, 200};
    default: throw std::invalid_argument("seminorm estimates support 1 <= s <= 3");
  }
}

SeminormEstimate hk_seminorm_estimate(const systems::System& sys, const FourierPoly& f, int s,
                                      std::span<const std::uint64_t> schedule,
                                      std::size_t budget) {
  if (s < 1 || s > 3) throw std::invalid_argument("seminorm estimates support 1 <= s <= 3");
  if (sys.is_cyclic()) throw std::invalid_argument("hk_seminorm_estimate needs rotation or skew");
  systems::check_compatible(sys, f);
  if (schedule.size() != static_cast<std::size_t>(s - 1)) {
    throw std::invalid_argument("schedule must have s - 1 entries");
  }
  if (std::find(schedule.begin(), schedule.end(), 0u) != schedule.end()) {
    throw std::invalid_argument("schedule entries must be positive");
  }
  SeminormEstimate out;
  out.s = s;
  out.schedule.assign(schedule.begin(), schedule.end());
  try {
    out.value = root(hk_power(sys, f, s, schedule, budget), s);
  } catch (const systems::TermBudgetExceeded& e) {
    out.term_budget_hit = true;
    out.message = e.what();
  }
  return out;
}

double fourier_seminorm_rotation(const FourierPoly& f, int s) {
  if (s < 2) throw std::invalid_argument("Fourier closed form needs s >= 2");
  if (f.dim() != 1) throw std::invalid_argument("Fourier closed form needs a 1-dimensional f");
  const double q = std::ldexp(1.0, s);
  double sum = 0.0;
  for (const auto& [k, a] : f.terms()) sum += std::pow(std::abs(a), q);
  return std::pow(sum, 1.0 / q);
}

}  // namespace fracprime::seminorms
