#pragma once

// Weyl sums, weighted multiple ergodic averages, recurrence profiles and the
// numeric van der Corput inequality. Summation runs over n = 1..N; weights
// are functions of the summation index n.

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fracprime/experiment.hpp"
#include "fracprime/fracpoly.hpp"
#include "fracprime/iterates.hpp"
#include "fracprime/primes.hpp"
#include "fracprime/systems.hpp"

namespace fracprime::averages {

using systems::Complex;
using systems::Observable;

/// Floor: e(sum [a_i(x)] t_i), t_i exact dyadic doubles.
/// Raw:   e(sum a_i(x) t_i), the Weyl-criterion form for (a_i(x)) mod 1.
enum class WeylArgument { Floor, Raw };

Complex weyl_sum(std::span<const IterateSpec> family, std::span<const double> t, std::uint64_t N,
                 const primes::PrimeTable* table, WeylArgument arg = WeylArgument::Floor);

/// weyl_sum at every checkpoint of a strictly increasing list, in one pass.
std::vector<Complex> weyl_sum_series(std::span<const IterateSpec> family,
                                     std::span<const double> t,
                                     std::span<const std::uint64_t> checkpoints,
                                     const primes::PrimeTable* table,
                                     WeylArgument arg = WeylArgument::Floor);

struct Unweighted {};
/// Lambda'(n): log n on primes, 0 elsewhere.
struct VonMangoldt {};
/// (Delta_h Lambda')(n) = prod_eps Lambda'(n + eps . h).
struct DeltaVonMangoldt {
  std::vector<std::int64_t> h;
};
/// c(n) = period[(n - 1) mod period.size()], |c| <= 1.
struct Bounded {
  std::vector<double> period;
};
using WeightSpec = std::variant<Unweighted, VonMangoldt, DeltaVonMangoldt, Bounded>;

/// "none", "lambda", "delta:1,2", "bounded:1,-1".
std::string describe(const WeightSpec& w);
/// Unweighted and VonMangoldt averages tend to prod integral f_i; the others to 0.
bool targets_product_of_integrals(const WeightSpec& w);
/// w(n) for n = 1..N.
std::vector<double> weight_values(const WeightSpec& w, std::uint64_t N,
                                  const primes::PrimeTable* table);
/// Largest integer a weight reads for n <= N.
std::uint64_t weight_table_limit(const WeightSpec& w, std::uint64_t N);

struct AverageResult {
  std::uint64_t N = 0;
  Observable average;
  Observable target;
  /// L^2 distance from average to target.
  double distance = 0.0;
};

/// E_{n<=N} w(n) prod_i T^{[a_i(.)]} f_i as an exact observable.
AverageResult multi_average(const systems::System& sys, std::span<const IterateSpec> iterates,
                            std::span<const Observable> functions, const WeightSpec& weight,
                            std::uint64_t N, const primes::PrimeTable* table,
                            std::size_t budget = systems::kDefaultTermBudget);

std::vector<AverageResult> multi_average_series(
    const systems::System& sys, std::span<const IterateSpec> iterates,
    std::span<const Observable> functions, const WeightSpec& weight,
    std::span<const std::uint64_t> checkpoints, const primes::PrimeTable* table,
    std::size_t budget = systems::kDefaultTermBudget);

struct RecurrenceProfile {
  std::vector<std::uint64_t> N;
  /// E_{n<=N} integral g prod_i T^{-[a_i(.)]} g.
  std::vector<double> values;
  /// (integral g)^{l+1}.
  double benchmark = 0.0;
};

/// Requires 0 <= g <= 1 (checked on Cyclic values; on Fourier observables
/// the caller supplies e.g. a Fejer arc).
RecurrenceProfile recurrence_profile(const systems::System& sys, const Observable& g,
                                     std::span<const IterateSpec> iterates,
                                     std::span<const std::uint64_t> checkpoints,
                                     const primes::PrimeTable* table,
                                     std::size_t budget = systems::kDefaultTermBudget);

struct VdcCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

inline constexpr double kVdcSlack = 1e-9;

/// u holds N vectors of dimension dim, row-major. Evaluates
///   ||E u(n)||^2  <=  (2/H) E ||u(n)||^2
///                    + 4 E_{h<=H} (1 - h/H) Re (1/N) sum_{n<=N-h} <u(n+h), u(n)>.
/// Requires 1 <= H <= N.
VdcCheck vdc_inequality_check(std::span<const Complex> u, std::size_t dim, std::size_t H);

/// floor(exp(sqrt(log N))).
std::uint64_t l_n(std::uint64_t N);

/// E_{h in [L_N]^k} || E_{n<=N} (Delta_h Lambda')(n) prod_i T^{[a_i(n)]} f_i ||.
double delta_mainav(const systems::System& sys, std::span<const IterateSpec> iterates,
                    std::span<const Observable> functions, int k, std::uint64_t N,
                    const primes::PrimeTable& table,
                    std::size_t budget = systems::kDefaultTermBudget);

/// Integers-mode multi_average with Lambda'(n) weights (the prime average
/// E_{n<=N} Lambda'(n) prod T^{[a_i(n)]} f_i) across N_list; the series holds
/// the L^2 norm of the average. Metadata records finite-N seminorm estimates
/// of degree s for every Fourier observable.
ExperimentResult cfprime_experiment(const systems::System& sys, const fracpoly::Family& family,
                                    std::span<const Observable> functions, int s,
                                    std::span<const std::uint64_t> N_list,
                                    const primes::PrimeTable& table,
                                    std::size_t budget = systems::kDefaultTermBudget);

/// Grid search for a nonzero t on (1/q)Z^l mod 1 maximizing |weyl_sum| at N.
struct WeylWitness {
  std::vector<double> t;
  double modulus = 0.0;
};
WeylWitness find_weyl_witness(std::span<const IterateSpec> family, int q, std::uint64_t N,
                              const primes::PrimeTable* table);

}  // namespace fracprime::averages
