#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fracprime/systems.hpp"

namespace fracprime::seminorms {

/// ||f||_s on Z/m via P_1(f) = |E f|^2, P_{s+1}(f) = E_n P_s(conj(f) T^n f),
/// where the Cesaro averages close exactly after m terms. Requires s >= 1.
double gowers_norm_cyclic(const systems::CyclicFunction& f, int s);

struct SeminormEstimate {
  int s = 1;
  /// Withheld when the term budget was exceeded.
  std::optional<double> value;
  /// Truncation length per recursion level, outermost first.
  std::vector<std::uint64_t> schedule;
  bool term_budget_hit = false;
  std::string message;
};

/// 10^3 for s = 2, (200, 200) for s = 3, empty for s = 1.
std::vector<std::uint64_t> default_schedule(int s);

/// Finite-N recursion on a Rotation or Skew system, each level averaging
/// over n = 0..N-1 with the exact |integral|^2 base case. Requires
/// 1 <= s <= 3 and schedule.size() == s - 1.
SeminormEstimate hk_seminorm_estimate(const systems::System& sys, const systems::FourierPoly& f,
                                      int s, std::span<const std::uint64_t> schedule,
                                      std::size_t budget = systems::kDefaultTermBudget);

/// (sum_k |f^(k)|^{2^s})^{1/2^s}, the closed form on the circle rotation.
/// Requires s >= 2 and a one-dimensional f.
double fourier_seminorm_rotation(const systems::FourierPoly& f, int s);

}  // namespace fracprime::seminorms
