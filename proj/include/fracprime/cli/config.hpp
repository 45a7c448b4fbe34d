#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fracprime/averages.hpp"
#include "fracprime/fracpoly.hpp"
#include "fracprime/primes.hpp"
#include "fracprime/systems.hpp"

namespace fracprime::cli {

struct RunConfig {
  std::string subcommand;
  std::string system = "rotation";
  std::string family_path;
  /// Inline family members, e.g. "t^(3/2) + t^(11/10)".
  std::vector<std::string> polys;
  std::string mode = "primes";
  std::string weight = "none";
  std::string N_list;
  std::string out_dir = ".";
  std::string cache_path;
  bool svg = false;
  std::uint64_t seed = 1;
  std::string kernel = "auto";

  std::vector<std::string> t;
  std::string argument = "floor";
  std::vector<std::string> functions;
  int s = 2;
  bool cf = false;
  int mainav_k = 0;
  std::string measure;
  std::string shifts;
  std::uint64_t limit = 0;
  double slack = 0.02;
  double expect_decay = 0.0;
  bool expect_decreasing = false;
  double expect_min = -1.0;
  double C_k = 0.0;
  int random_functions = 0;
  int witness_grid = 0;
};

/// "cyclic:m", "rotation", "rotation:<alpha>", "skew", "skew:<alpha>".
systems::System parse_system(std::string_view text);
/// "none", "lambda", "delta:h1,h2,...", "bounded:c1,c2,...".
averages::WeightSpec parse_weight(std::string_view text);
/// Comma-separated positive integers, scientific notation allowed ("1e3,1e4").
/// Throws unless strictly increasing.
std::vector<std::uint64_t> parse_N_list(std::string_view text);
std::vector<std::int64_t> parse_int_list(std::string_view text);
/// A rational or decimal, e.g. "1/4", "0.25", "1".
double parse_real(std::string_view text);
Rational parse_exact(std::string_view text);

/// Sums of terms c*t^e with rational or decimal c and e, e.g.
/// "t^(3/2) + t^(11/10)", "2*t^1.5 - 1/2*t^0.5", "3".
fracpoly::RealExpPoly parse_poly_expr(std::string_view text);

/// Inline polys if any were given, else the family file.
fracpoly::Family load_config_family(const RunConfig& cfg);

/// "one", "char:k" (e(kx), or e(kx/m) on cyclic:m), "char:k1,k2" (skew),
/// "indicator:r" (cyclic), "arc:start,length[,order]" (rotation),
/// "@file.json" or inline JSON.
systems::Observable parse_observable(const systems::System& sys, std::string_view text);

/// Sieve covering `limit`, through the cache file when one is configured.
primes::PrimeTable make_table(const RunConfig& cfg, std::uint64_t limit);

}  // namespace fracprime::cli
