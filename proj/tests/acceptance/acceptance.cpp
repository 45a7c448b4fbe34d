// Acceptance runner: one PASS/FAIL line per criterion, exit 0 iff all pass.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fracprime/averages.hpp"
#include "fracprime/cli/config.hpp"
#include "fracprime/fracpoly.hpp"
#include "fracprime/primes.hpp"
#include "fracprime/seminorms.hpp"
#include "fracprime/singular_series.hpp"
#include "fracprime/systems.hpp"

using namespace fracprime;
using averages::IterateSpec;
using averages::Mode;
using systems::Complex;
using systems::CyclicFunction;
using systems::FourierPoly;
using systems::Observable;
using systems::System;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

fracpoly::RealExpPoly P(const char* text) { return cli::parse_poly_expr(text); }

fracpoly::Family F(std::initializer_list<const char*> members) {
  std::vector<fracpoly::RealExpPoly> v;
  std::size_t k = 0;
  for (auto m : members) {
    v.push_back(P(m));
    k = std::max(k, v.back().num_params());
  }
  for (auto& m : v) m = m.with_params(k);
  return fracpoly::Family(std::move(v));
}

IterateSpec spec(const char* text, Mode mode) { return IterateSpec(P(text), mode); }

fs::path work_dir() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / "fracprime_acceptance";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

// p_{10^5} = 1299709; the cache is shared with the CLI reruns.
const primes::PrimeTable& table() {
  static const primes::PrimeTable t = primes::sieve_cached(1400000, work_dir() / "sieve.bin");
  return t;
}

bool trial_division(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// ---- 1: worked PET examples ----
void criterion1(Outcome& o) {
  using fracpoly::type_vector;
  const auto four = F({"h1*t^(5/2) + h1^2*t^(21/10)", "h1*t^(5/2)",
                       "h1*t^(5/2) + h1^2*t^(21/10) + h1*t^(3/2)", "t^(1/2)"});
  o.require(type_vector(four).as_vector() == std::vector<int>{2, 2, 0, 1}, "type (2,2,0,1)");
  const auto three = F({"t^(3/2)", "t^(3/2) + t^(11/10)", "t^(3/2) + t^(6/5)"});
  o.require(type_vector(three).as_vector() == std::vector<int>{1, 3, 0}, "type (1,3,0)");
  const auto expected =
      F({"-t^(6/5) + 3/2*h1*t^(1/2)", "-t^(6/5) + t^(11/10) + 3/2*h1*t^(1/2) + 11/10*h1*t^(1/10)",
         "3/2*h1*t^(1/2) + 6/5*h1*t^(1/5)", "-t^(6/5)", "-t^(6/5) + t^(11/10)"});
  const auto out = fracpoly::vdc_op(three, 2);
  o.require(out == expected, "five-member vdC family term-for-term");
  o.require(type_vector(out).as_vector() == std::vector<int>{1, 2, 1}, "type (1,2,1)");
  o.detail << type_vector(four).to_string() << " " << type_vector(three).to_string() << " -> "
           << type_vector(out).to_string() << " ";
}

// ---- 2: type reduction over random nice families ----
Rational random_exponent(std::mt19937_64& rng) {
  while (true) {
    const int q = 2 + static_cast<int>(rng() % 9);
    const int p = 1 + static_cast<int>(rng() % (3 * q - 1));
    if (p % q != 0) return Rational(p, q);
  }
}

fracpoly::ParamPolynomial random_coeff(std::mt19937_64& rng, std::size_t k) {
  fracpoly::ParamPolynomial c(k);
  for (int m = 0; m < 1 + static_cast<int>(rng() % 2); ++m) {
    fracpoly::Powers pw(k);
    for (auto& p : pw) p = static_cast<std::uint32_t>(rng() % 3);
    const auto v = static_cast<std::int64_t>(rng() % 9) - 4;
    c.add_monomial(pw, Rational(v == 0 ? 2 : v, 1 + static_cast<int>(rng() % 4)));
  }
  return c.is_zero() ? fracpoly::ParamPolynomial::constant(k, Rational(1)) : c;
}

void criterion2(Outcome& o) {
  std::mt19937_64 rng(424242);
  int accepted = 0, passed = 0, attempts = 0;
  while (accepted < 500 && attempts < 500000) {
    ++attempts;
    const std::size_t k = rng() % 3;
    const std::size_t l = 1 + rng() % 4;
    std::vector<fracpoly::RealExpPoly> members;
    for (std::size_t i = 0; i < l; ++i) {
      fracpoly::RealExpPoly f(k);
      if (i > 0 && rng() % 2) f = members[rng() % i];
      for (int j = 0; j < 1 + static_cast<int>(rng() % 2); ++j) f.add_term(random_exponent(rng), random_coeff(rng, k));
      members.push_back(f);
    }
    std::size_t top = 0;
    for (std::size_t i = 1; i < l; ++i) {
      if (members[i].fractional_degree() > members[top].fractional_degree()) top = i;
    }
    std::swap(members[0], members[top]);
    const fracpoly::Family fam(std::move(members));
    if (fam[0].fractional_degree() <= 1 || !fracpoly::is_nice(fam) || !fracpoly::is_fractional(fam)) continue;
    ++accepted;
    const auto next = fracpoly::vdc_op(fam, fracpoly::choose_a(fam));
    passed += fracpoly::is_nice(next) && fracpoly::is_fractional(next) &&
              fracpoly::type_lt(fracpoly::type_vector(next), fracpoly::type_vector(fam));
  }
  o.require(accepted >= 500, "generated >= 500 families");
  o.require(passed == accepted, "every step nice, fractional and type-decreasing");
  o.detail << passed << "/" << accepted << " families ";
}

// ---- 3: van der Corput inequality ----
void criterion3(Outcome& o) {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> g;
  int ok = 0, cross = 0, cross_ok = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t N = 1 + rng() % 1000;
    const std::size_t dim = 1 + rng() % 3;
    const std::size_t H = 1 + rng() % N;
    const double drift = rng() % 3 == 0 ? 2.0 : 0.0;
    std::vector<Complex> u(N * dim);
    for (auto& z : u) z = Complex(g(rng) + drift, g(rng));
    const auto r = averages::vdc_inequality_check(u, dim, H);
    ok += r.lhs <= r.rhs + 1e-9;
    if (N * H * dim > 200000) continue;
    // Independent evaluation of both sides.
    ++cross;
    std::vector<Complex> mean(dim);
    double sq = 0;
    for (std::size_t n = 0; n < N; ++n) {
      for (std::size_t j = 0; j < dim; ++j) {
        mean[j] += u[n * dim + j];
        sq += std::norm(u[n * dim + j]);
      }
    }
    double lhs = 0;
    for (auto& m : mean) lhs += std::norm(m / static_cast<double>(N));
    double corr = 0;
    for (std::size_t h = 1; h < H; ++h) {
      double c = 0;
      for (std::size_t n = 0; n + h < N; ++n) {
        for (std::size_t j = 0; j < dim; ++j) c += (u[(n + h) * dim + j] * std::conj(u[n * dim + j])).real();
      }
      corr += (1.0 - static_cast<double>(h) / H) * c / N;
    }
    const double rhs = 2.0 / H * sq / N + 4.0 / H * corr;
    cross_ok += std::fabs(lhs - r.lhs) <= 1e-9 * (1 + lhs) && std::fabs(rhs - r.rhs) <= 1e-9 * (1 + std::fabs(rhs)) &&
                lhs <= rhs + 1e-9;
  }
  o.require(ok == 1000, "lhs <= rhs + 1e-9 on all instances");
  o.require(cross_ok == cross, "direct evaluation agrees");
  o.detail << ok << "/1000 instances, " << cross_ok << "/" << cross << " cross-checked ";
}

// ---- 4: sieve and singular series ----
void criterion4(Outcome& o) {
  const auto& tb = table();
  const std::int64_t one[1] = {5};
  const std::int64_t adj[2] = {0, 1};
  const std::int64_t twin[2] = {0, 2};
  o.require(primes::singular_series(tb, one, 1000000).value == 1.0, "G1 = 1");
  o.require(primes::singular_series(tb, adj, 1000000).value == 0.0, "G2(0,1) = 0");
  // Truncated product from a separate plain sieve.
  std::vector<bool> composite(1000001, false);
  double oracle = 1.0;
  for (std::uint64_t p = 2; p <= 1000000; ++p) {
    if (composite[p]) continue;
    for (std::uint64_t m = p * p; m <= 1000000; m += p) composite[m] = true;
    const double nu = p == 2 ? 1.0 : 2.0;
    oracle *= std::pow(1.0 - 1.0 / p, -2.0) * (1.0 - nu / p);
  }
  const double g2 = primes::singular_series(tb, twin, 1000000).value;
  o.require(std::fabs(g2 - oracle) < 1e-3, "G2(0,2) vs truncated product");
  o.detail << "G2(0,2)=" << fmt(g2) << " ";

  bool counts_ok = true;
  const std::vector<std::vector<std::int64_t>> sets = {{0}, {0, 2}, {0, 4}, {0, 6}, {0, 2, 6}, {0, 4, 6}, {0, 2, 6, 8}};
  for (const auto& s : sets) {
    for (std::uint64_t N : {10u, 100u, 1000u, 10000u}) {
      std::uint64_t brute = 0;
      for (std::int64_t n = 1; n <= static_cast<std::int64_t>(N); ++n) {
        bool all = true;
        for (auto x : s) all = all && trial_division(n + x);
        brute += all;
      }
      counts_ok = counts_ok && primes::count_prime_tuples(tb, N, s) == brute;
    }
  }
  o.require(counts_ok, "tuple counts vs trial division");

  const std::uint64_t cps[3] = {1000, 10000, 100000};
  const auto means = primes::running_singular_sq_means(tb, cps, 1000000);
  bool growth_ok = true;
  for (std::size_t i = 1; i < 3; ++i) growth_ok = growth_ok && means[i] / means[i - 1] < 1.10;
  o.require(growth_ok, "running mean grows < 10% per decade");
  o.detail << "means " << fmt(means[0]) << "," << fmt(means[1]) << "," << fmt(means[2]) << " ";
}

// ---- 5: seminorms ----
double brute_gowers(const CyclicFunction& f, int s) {
  const std::size_t m = f.modulus();
  std::vector<std::size_t> h(s, 0);
  double total = 0;
  std::size_t count = 0;
  while (true) {
    for (std::size_t x = 0; x < m; ++x) {
      Complex prod = 1;
      for (unsigned mask = 0; mask < (1u << s); ++mask) {
        std::size_t pt = x;
        for (int i = 0; i < s; ++i) pt += (mask >> i & 1) ? h[i] : 0;
        const Complex v = f[pt % m];
        prod *= __builtin_popcount(mask) % 2 ? std::conj(v) : v;
      }
      total += prod.real();
      ++count;
    }
    int i = 0;
    while (i < s && ++h[i] == m) h[i++] = 0;
    if (i == s) break;
  }
  return std::pow(std::max(0.0, total / count), 1.0 / (1 << s));
}

void criterion5(Outcome& o) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  auto random_cyclic = [&](std::size_t m) {
    std::vector<Complex> v(m);
    for (auto& z : v) z = Complex(u(rng), u(rng));
    return CyclicFunction(v);
  };
  double worst = 0;
  for (std::size_t m = 2; m <= 7; ++m) {
    for (int s = 1; s <= 3; ++s) {
      for (int t = 0; t < 3; ++t) {
        const auto f = random_cyclic(m);
        worst = std::max(worst, std::fabs(seminorms::gowers_norm_cyclic(f, s) - brute_gowers(f, s)));
      }
    }
  }
  o.require(worst < 1e-10, "Gowers vs brute force");
  int mono = 0;
  for (int t = 0; t < 100; ++t) {
    const auto f = random_cyclic(2 + rng() % 6);
    bool ok = true;
    for (int s = 1; s <= 3; ++s) ok = ok && seminorms::gowers_norm_cyclic(f, s) <= seminorms::gowers_norm_cyclic(f, s + 1) + 1e-12;
    mono += ok;
  }
  o.require(mono == 100, "monotone on 100 functions");

  const auto rot = System::rotation();
  const std::uint64_t n1000[1] = {1000};
  double worst_rot = 0;
  for (int t = 0; t < 20; ++t) {
    FourierPoly f(1);
    const int terms = 1 + static_cast<int>(rng() % 5);
    for (int j = 0; j < terms; ++j) f.add({static_cast<std::int64_t>(rng() % 13) - 6, 0}, Complex(u(rng), u(rng)));
    const auto est = seminorms::hk_seminorm_estimate(rot, f, 2, n1000);
    worst_rot = std::max(worst_rot, est.value ? std::fabs(*est.value - seminorms::fourier_seminorm_rotation(f, 2)) : 1e9);
  }
  o.require(worst_rot < 1e-2, "rotation estimate within 1e-2 of oracle");

  const auto skew = System::skew();
  const auto y = FourierPoly::character(2, {0, 1});
  const auto s2 = seminorms::hk_seminorm_estimate(skew, y, 2, n1000);
  const double target = std::pow(1000.0, -0.25);
  o.require(s2.value && std::fabs(*s2.value - target) <= 1e-12 * target, "skew s=2 equals N^-1/4");
  const std::uint64_t s3sched[2] = {200, 200};
  const auto s3 = seminorms::hk_seminorm_estimate(skew, y, 3, s3sched);
  o.require(s3.value && *s3.value >= 0.5, "skew s=3 >= 0.5");
  o.detail << "brute err " << fmt(worst) << ", rotation err " << fmt(worst_rot) << ", skew s2 "
           << fmt(s2.value.value_or(-1)) << ", s3 " << fmt(s3.value.value_or(-1)) << " ";
}

// ---- 6: equidistribution ----
void criterion6(Outcome& o) {
  const auto& tb = table();
  const std::vector<IterateSpec> root = {spec("t^(1/2)", Mode::Primes)};
  const double one[1] = {1.0};
  const std::uint64_t cps[2] = {1000, 100000};
  const auto w = averages::weyl_sum_series(root, one, cps, &tb, averages::WeylArgument::Raw);
  o.require(std::abs(w[1]) <= std::abs(w[0]) / 3, "|W(1e5)| <= |W(1e3)|/3");
  const std::vector<IterateSpec> sq = {spec("t^2", Mode::Integers)};
  const double quarter[1] = {0.25};
  const double ctrl = std::abs(averages::weyl_sum(sq, quarter, 10000, nullptr));
  o.require(std::fabs(ctrl - 0.7071) <= 0.01, "t^2 control modulus 0.7071");
  o.detail << "|W| " << fmt(std::abs(w[0])) << " -> " << fmt(std::abs(w[1])) << ", control " << fmt(ctrl) << " ";
}

// ---- 7: joint ergodicity ----
void criterion7(Outcome& o) {
  const auto& tb = table();
  const auto rot = System::rotation();
  const std::vector<IterateSpec> fam = {spec("t^(3/2)", Mode::Primes), spec("t^(3/2) + t^(11/10)", Mode::Primes)};
  const std::vector<Observable> fs = {FourierPoly::character(1, {1, 0}), FourierPoly::character(1, {1, 0})};
  const std::uint64_t cps[3] = {1000, 10000, 100000};
  const auto series = averages::multi_average_series(rot, fam, fs, averages::Unweighted{}, cps, &tb);
  o.require(series[1].distance < series[0].distance && series[2].distance < series[1].distance,
            "distance strictly decreasing");
  const auto c4 = System::cyclic(4);
  const std::vector<IterateSpec> sq = {spec("t^2", Mode::Primes)};
  const std::vector<Observable> f4 = {CyclicFunction::character(4, 1)};
  const auto obstruction = averages::multi_average(c4, sq, f4, averages::Unweighted{}, 100000, &tb);
  o.require(obstruction.distance >= 0.9, "cyclic 4 distance >= 0.9");
  const auto vals = averages::iterate_values(sq[0], 100000, &tb);
  bool residues = true;
  for (std::size_t n = 1; n < vals.size(); ++n) residues = residues && vals[n] % 4 == 1;
  o.require(residues, "[p_n^2] = 1 mod 4 for n >= 2");
  o.detail << "distances " << fmt(series[0].distance) << "," << fmt(series[1].distance) << ","
           << fmt(series[2].distance) << "; cyclic 4 " << fmt(obstruction.distance) << " ";
}

// ---- 8: recurrence ----
void criterion8(Outcome& o) {
  const auto& tb = table();
  const auto c5 = System::cyclic(5);
  const std::uint64_t cps[1] = {100000};
  const std::vector<IterateSpec> fam = {spec("t^(1/2)", Mode::Primes), spec("t^(1/10)", Mode::Primes)};
  const auto prof = averages::recurrence_profile(c5, CyclicFunction::indicator(5, 0), fam, cps, &tb);
  const double bound = std::pow(0.2, 3) - 0.02;
  o.require(prof.values[0] >= bound, "profile >= (1/5)^3 - 0.02");
  const std::vector<IterateSpec> info = {spec("t^(1/2)", Mode::Primes), spec("t^(3/2)", Mode::Primes)};
  const auto prof2 = averages::recurrence_profile(c5, CyclicFunction::indicator(5, 0), info, cps, &tb);
  o.require(prof2.values[0] >= bound, "informative family profile >= bound");
  o.detail << "{t^1/2,t^1/10} " << fmt(prof.values[0]) << ", {t^1/2,t^3/2} " << fmt(prof2.values[0])
           << " vs " << fmt(bound) << " ";
}

// ---- 9: vanishing-seminorm decay ----
void criterion9(Outcome& o) {
  const auto& tb = table();
  const auto skew = System::skew();
  const fracpoly::Family fam({P("t^(3/2)")});
  const std::uint64_t Ns[3] = {1000, 10000, 100000};
  const std::vector<Observable> y = {FourierPoly::character(2, {0, 1})};
  const auto r = averages::cfprime_experiment(skew, fam, y, 2, Ns, tb);
  o.require(r.values[1].real() < r.values[0].real() && r.values[2].real() < r.values[1].real(),
            "L2 norm strictly decreasing");
  const std::vector<Observable> one = {systems::constant_observable(skew, 1.0)};
  const auto c = averages::cfprime_experiment(skew, fam, one, 2, Ns, tb);
  o.require(c.values[2].real() >= 0.9 * c.values[0].real() && c.values[2].real() > 0.9, "constant control does not decay");
  o.detail << "e(y) " << fmt(r.values[0].real()) << "," << fmt(r.values[1].real()) << "," << fmt(r.values[2].real())
           << "; control " << fmt(c.values[0].real()) << "," << fmt(c.values[2].real()) << " ";
}

// ---- 10: determinism of every subcommand ----
int run_cli(const std::string& args) {
  const std::string cmd = std::string(FRACPRIME_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion10(Outcome& o) {
  (void)table();
  const std::string cache = (work_dir() / "sieve.bin").string();
  const std::vector<std::pair<std::string, std::string>> runs = {
      {"equidist", "equidist --poly 't^(1/2)' --mode primes --t 1 --arg raw --N 1e3,1e4,1e5 --cache " + cache},
      {"jointavg", "jointavg --system rotation --poly 't^(3/2); t^(3/2) + t^(11/10)' --f char:1 --f char:1 --N 1e3,1e4 --cache " + cache},
      {"recurrence", "recurrence --system cyclic:5 --poly 't^(1/2); t^(1/10)' --f indicator:0 --N 1e3,1e4 --cache " + cache},
      {"seminorm", "seminorm --system skew --f char:0,1 --s 2 --random 5 --seed 3"},
      {"pet", "pet --poly 't^(3/2); t^(3/2) + t^(11/10)'"},
      {"sieve", "sieve --shifts 0,2 --N 1e3,1e4,1e5 --cache " + cache},
  };
  int same = 0;
  for (const auto& [name, args] : runs) {
    const auto a = work_dir() / (name + "_a");
    const auto b = work_dir() / (name + "_b");
    fs::remove_all(a);
    fs::remove_all(b);
    const int ca = run_cli(args + " --out " + a.string());
    const int cb = run_cli(args + " --out " + b.string());
    const auto csv = slurp(a / (name + ".csv"));
    const bool ok = ca == 0 && cb == 0 && !csv.empty() && csv == slurp(b / (name + ".csv"));
    o.require(ok, name);
    same += ok;
  }
  o.detail << same << "/" << runs.size() << " subcommands byte-identical ";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    double budget_seconds;
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, 1, criterion1},    {2, 30, criterion2},  {3, 10, criterion3},  {4, 60, criterion4},
      {5, 300, criterion5},  {6, 120, criterion6}, {7, 300, criterion7}, {8, 120, criterion8},
      {9, 300, criterion9},  {10, 600, criterion10}};
  // The shared sieve is built (or loaded from cache) outside the timed region.
  (void)table();
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(secs < c.budget_seconds, "runtime " + fmt(secs) + "s over " + fmt(c.budget_seconds) + "s");
    failures += !o.pass;
    std::cout << "criterion " << c.id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail.str() << "("
              << fmt(secs) << "s)" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
