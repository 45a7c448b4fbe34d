#include "fracprime/cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "fracprime/experiment.hpp"
#include "fracprime/fracpoly_json.hpp"
#include "fracprime/kernels/kernels.hpp"
#include "fracprime/seminorms.hpp"
#include "fracprime/singular_series.hpp"
#include "fracprime/systems_json.hpp"

namespace fracprime::cli {

namespace {

using averages::IterateSpec;
using systems::Observable;

class Invariants {
 public:
  void check(bool ok, const std::string& name, const std::string& detail = "") {
    std::cout << "invariant " << name << ": " << (ok ? "PASS" : "FAIL");
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << '\n';
    if (!ok) failed_.push_back(name);
  }
  int exit_code() const {
    if (failed_.empty()) return 0;
    std::cout << "violated:";
    for (const auto& f : failed_) std::cout << ' ' << f;
    std::cout << '\n';
    return 1;
  }

 private:
  std::vector<std::string> failed_;
};

std::string fmt(double v) { return format_double(v); }

std::vector<std::uint64_t> schedule(const RunConfig& cfg, const char* fallback) {
  return parse_N_list(cfg.N_list.empty() ? fallback : cfg.N_list);
}

std::vector<IterateSpec> iterates_of(const fracpoly::Family& family, averages::Mode mode) {
  if (family.num_params() != 0) throw std::invalid_argument("iterates must be parameter-free");
  std::vector<IterateSpec> out;
  for (const auto& a : family) out.emplace_back(a, mode);
  return out;
}

nlohmann::ordered_json family_strings(const fracpoly::Family& family) {
  auto j = nlohmann::ordered_json::array();
  for (const auto& a : family) j.push_back(a.to_string());
  return j;
}

void base_metadata(ExperimentResult& r, const RunConfig& cfg) {
  r.metadata["subcommand"] = cfg.subcommand;
  r.metadata["seed"] = cfg.seed;
  r.metadata["kernel"] = std::string(kernels::isa_name(kernels::active_isa()));
  r.metadata["reduction_block"] = 256;
}

void emit(ExperimentResult& r, const RunConfig& cfg,
          std::chrono::steady_clock::time_point start) {
  r.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::cout << "N=" << r.N[i] << " value=" << fmt(r.values[i].real());
    if (r.complex_values) std::cout << " imag=" << fmt(r.values[i].imag()) << " abs=" << fmt(std::abs(r.values[i]));
    std::cout << '\n';
  }
  write_artifacts(r, cfg.out_dir, cfg.svg);
}

std::vector<Observable> functions_of(const RunConfig& cfg, const systems::System& sys,
                                     std::size_t count) {
  std::vector<Observable> out;
  for (const auto& f : cfg.functions) out.push_back(parse_observable(sys, f));
  if (out.size() == 1 && count > 1) out.resize(count, out.front());
  if (out.size() != count) {
    throw std::invalid_argument("expected " + std::to_string(count) + " functions, got " +
                                std::to_string(out.size()));
  }
  return out;
}

bool strictly_decreasing(const std::vector<std::complex<double>>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(std::abs(v[i]) < std::abs(v[i - 1]))) return false;
  }
  return true;
}

}  // namespace

int cmd_equidist(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const auto family = load_config_family(cfg);
  const auto mode = averages::parse_mode(cfg.mode);
  const auto specs = iterates_of(family, mode);
  std::vector<double> t;
  for (const auto& s : cfg.t) t.push_back(parse_real(s));
  if (t.empty()) t.assign(specs.size(), 0.0);
  if (t.size() != specs.size()) throw std::invalid_argument("need one --t per family member");
  const auto arg = cfg.argument == "raw" ? averages::WeylArgument::Raw
                   : cfg.argument == "floor"
                       ? averages::WeylArgument::Floor
                       : throw std::invalid_argument("--arg must be floor or raw");
  const auto Ns = schedule(cfg, "1000,10000,100000");
  std::optional<primes::PrimeTable> table;
  if (mode == averages::Mode::Primes) {
    table = make_table(cfg, primes::nth_prime_upper_bound(Ns.back()));
  }
  const primes::PrimeTable* tp = table ? &*table : nullptr;
  const auto series = averages::weyl_sum_series(specs, t, Ns, tp, arg);

  ExperimentResult r;
  r.name = "equidist";
  r.complex_values = true;
  for (std::size_t i = 0; i < Ns.size(); ++i) r.push(Ns[i], series[i]);
  base_metadata(r, cfg);
  r.metadata["iterates"] = family_strings(family);
  r.metadata["mode"] = std::string(averages::mode_name(mode));
  r.metadata["t"] = t;
  r.metadata["argument"] = cfg.argument;

  Invariants inv;
  bool bounded = true;
  for (auto v : series) bounded = bounded && std::abs(v) <= 1.0 + 1e-12;
  inv.check(bounded, "weyl_sum_bounded");
  if (std::all_of(t.begin(), t.end(), [](double x) { return x == 0.0; })) {
    bool ones = true;
    for (auto v : series) ones = ones && v == std::complex<double>(1.0, 0.0);
    inv.check(ones, "weyl_sum_zero_argument");
  }
  if (cfg.expect_decay > 0.0) {
    const double first = std::abs(series.front()), last = std::abs(series.back());
    inv.check(last * cfg.expect_decay <= first, "weyl_sum_decay",
              "ratio " + fmt(last > 0 ? first / last : INFINITY));
  }
  if (cfg.witness_grid > 0) {
    const auto w = averages::find_weyl_witness(specs, cfg.witness_grid, Ns.back(), tp);
    r.metadata["witness"] = {{"t", w.t}, {"modulus", w.modulus}, {"grid", cfg.witness_grid}};
    std::cout << "witness modulus=" << fmt(w.modulus) << '\n';
  }
  emit(r, cfg, start);
  return inv.exit_code();
}

int cmd_jointavg(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const auto sys = parse_system(cfg.system);
  const auto family = load_config_family(cfg);
  const auto functions = functions_of(cfg, sys, family.size());
  const auto Ns = schedule(cfg, "1000,10000,100000");
  Invariants inv;
  ExperimentResult r;

  if (cfg.cf) {
    const auto table = make_table(cfg, Ns.back());
    r = averages::cfprime_experiment(sys, family, functions, cfg.s, Ns, table);
  } else {
    const auto mode = averages::parse_mode(cfg.mode);
    const auto specs = iterates_of(family, mode);
    std::uint64_t limit = mode == averages::Mode::Primes
                              ? primes::nth_prime_upper_bound(Ns.back())
                              : 0;
    if (cfg.mainav_k > 0) {
      limit = std::max(limit, Ns.back() + static_cast<std::uint64_t>(cfg.mainav_k) *
                                              averages::l_n(Ns.back()));
      const auto table = make_table(cfg, limit);
      r.name = "jointavg";
      for (auto N : Ns) {
        r.push(N, averages::delta_mainav(sys, specs, functions, cfg.mainav_k, N, table));
      }
      r.metadata["weight"] = "delta-mainav:k=" + std::to_string(cfg.mainav_k);
    } else {
      const auto weight = parse_weight(cfg.weight);
      limit = std::max(limit, averages::weight_table_limit(weight, Ns.back()));
      std::optional<primes::PrimeTable> table;
      if (limit > 0) table = make_table(cfg, limit);
      const auto series = averages::multi_average_series(sys, specs, functions, weight, Ns,
                                                         table ? &*table : nullptr);
      r.name = "jointavg";
      for (const auto& a : series) r.push(a.N, a.distance);
      r.metadata["weight"] = averages::describe(weight);
      r.metadata["target"] = systems::to_json(series.back().target);
    }
    r.metadata["mode"] = std::string(averages::mode_name(mode));
    r.metadata["system"] = sys.describe();
    r.metadata["iterates"] = family_strings(family);
    auto& fs = r.metadata["functions"] = nlohmann::ordered_json::array();
    for (const auto& f : functions) fs.push_back(systems::to_json(f));
  }
  r.name = "jointavg";
  base_metadata(r, cfg);
  r.metadata["cf"] = cfg.cf;

  bool finite = true;
  for (auto v : r.values) finite = finite && std::isfinite(v.real()) && v.real() >= 0.0;
  inv.check(finite, "distance_finite_nonnegative");
  if (cfg.expect_decreasing) inv.check(strictly_decreasing(r.values), "strictly_decreasing");
  if (cfg.expect_min >= 0.0) {
    inv.check(r.values.back().real() >= cfg.expect_min, "distance_at_least",
              fmt(r.values.back().real()) + " vs " + fmt(cfg.expect_min));
  }
  emit(r, cfg, start);
  return inv.exit_code();
}

int cmd_recurrence(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const auto sys = parse_system(cfg.system);
  const auto family = load_config_family(cfg);
  const auto mode = averages::parse_mode(cfg.mode);
  const auto specs = iterates_of(family, mode);
  std::string gtext = cfg.functions.empty() ? "" : cfg.functions.front();
  if (gtext.empty()) gtext = sys.is_cyclic() ? "indicator:0" : "arc:0,0.3";
  const Observable g = parse_observable(sys, gtext);
  const auto Ns = schedule(cfg, "1000,10000,100000");
  std::optional<primes::PrimeTable> table;
  if (mode == averages::Mode::Primes) table = make_table(cfg, primes::nth_prime_upper_bound(Ns.back()));
  const auto profile = averages::recurrence_profile(sys, g, specs, Ns, table ? &*table : nullptr);

  ExperimentResult r;
  r.name = "recurrence";
  for (std::size_t i = 0; i < Ns.size(); ++i) r.push(Ns[i], profile.values[i]);
  base_metadata(r, cfg);
  r.metadata["system"] = sys.describe();
  r.metadata["iterates"] = family_strings(family);
  r.metadata["mode"] = std::string(averages::mode_name(mode));
  r.metadata["g"] = systems::to_json(g);
  r.metadata["benchmark"] = profile.benchmark;
  r.metadata["slack"] = cfg.slack;
  std::cout << "benchmark=" << fmt(profile.benchmark) << '\n';

  Invariants inv;
  bool unit = true;
  for (double v : profile.values) unit = unit && v >= -1e-9 && v <= 1.0 + 1e-9;
  inv.check(unit, "profile_in_unit_interval");
  inv.check(profile.values.back() >= profile.benchmark - cfg.slack, "recurrence_lower_bound",
            fmt(profile.values.back()) + " >= " + fmt(profile.benchmark) + " - " + fmt(cfg.slack));
  emit(r, cfg, start);
  return inv.exit_code();
}

namespace {

Observable random_observable(const systems::System& sys, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  if (sys.is_cyclic()) {
    std::vector<std::complex<double>> v(sys.modulus());
    for (auto& x : v) x = {u(rng), u(rng)};
    return systems::CyclicFunction(std::move(v));
  }
  std::uniform_int_distribution<int> terms(1, 5), freq(-4, 4);
  systems::FourierPoly p(sys.dimension());
  const int n = terms(rng);
  for (int i = 0; i < n; ++i) {
    const std::int64_t k1 = freq(rng);
    const std::int64_t k2 = sys.dimension() == 2 ? freq(rng) : 0;
    p.add({k1, k2}, {u(rng), u(rng)});
  }
  return p;
}

}  // namespace

int cmd_seminorm(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const auto sys = parse_system(cfg.system);
  std::string measure = cfg.measure;
  if (measure.empty()) measure = sys.is_cyclic() ? "gowers" : "hk";
  if (measure != "gowers" && measure != "hk" && measure != "fourier") {
    throw std::invalid_argument("--measure must be gowers, hk or fourier");
  }
  if (measure == "gowers" && !sys.is_cyclic()) throw std::invalid_argument("gowers needs cyclic:m");
  if (measure != "gowers" && sys.is_cyclic()) throw std::invalid_argument(measure + " needs rotation or skew");
  if (measure == "fourier" && !sys.is_rotation()) throw std::invalid_argument("fourier needs rotation");

  std::vector<Observable> fs;
  std::mt19937_64 rng(cfg.seed);
  for (int i = 0; i < cfg.random_functions; ++i) fs.push_back(random_observable(sys, rng));
  for (const auto& f : cfg.functions) fs.push_back(parse_observable(sys, f));
  if (fs.empty()) throw std::invalid_argument("no functions (--f or --random)");
  const auto Ns = schedule(cfg, "1000");

  ExperimentResult r;
  r.name = "seminorm";
  base_metadata(r, cfg);
  r.metadata["system"] = sys.describe();
  r.metadata["measure"] = measure;
  r.metadata["s"] = cfg.s;
  auto& fj = r.metadata["functions"] = nlohmann::ordered_json::array();
  for (const auto& f : fs) fj.push_back(systems::to_json(f));
  Invariants inv;

  // One row per (function, N) for hk; per (function, degree) for gowers.
  std::uint64_t row = 0;
  bool monotone = true, conj_ok = true, oracle_ok = true, budget_ok = true;
  for (const auto& f : fs) {
    if (measure == "gowers") {
      const auto& c = std::get<systems::CyclicFunction>(f);
      double prev = 0.0;
      for (int s = 1; s <= cfg.s; ++s) {
        const double v = seminorms::gowers_norm_cyclic(c, s);
        monotone = monotone && v >= prev - 1e-12;
        prev = v;
        conj_ok = conj_ok && std::fabs(seminorms::gowers_norm_cyclic(c.conj(), s) - v) <= 1e-12;
        r.push(++row, v);
      }
    } else if (measure == "fourier") {
      const auto& p = std::get<systems::FourierPoly>(f);
      const double v = seminorms::fourier_seminorm_rotation(p, cfg.s);
      conj_ok = conj_ok && std::fabs(seminorms::fourier_seminorm_rotation(p.conj(), cfg.s) - v) <= 1e-12;
      r.push(++row, v);
    } else {
      const auto& p = std::get<systems::FourierPoly>(f);
      for (auto N : Ns) {
        const std::vector<std::uint64_t> sched(static_cast<std::size_t>(std::max(cfg.s - 1, 0)), N);
        const auto est = seminorms::hk_seminorm_estimate(sys, p, cfg.s, sched);
        if (!est.value) {
          budget_ok = false;
          std::cout << "term budget: " << est.message << '\n';
          r.push(++row, std::nan(""));
          continue;
        }
        const double v = *est.value;
        const auto est_c = seminorms::hk_seminorm_estimate(sys, p.conj(), cfg.s, sched);
        conj_ok = conj_ok && est_c.value && std::fabs(*est_c.value - v) <= 1e-9;
        if (sys.is_rotation() && cfg.s == 2) {
          const double oracle = seminorms::fourier_seminorm_rotation(p, 2);
          const double tol = 5.0 * oracle * std::pow(static_cast<double>(N), -0.25) + 1e-3;
          oracle_ok = oracle_ok && std::fabs(v - oracle) <= tol;
        }
        r.push(++row, v);
      }
    }
  }
  inv.check(conj_ok, "conjugation_invariant");
  if (measure == "gowers") inv.check(monotone, "gowers_monotone");
  if (measure == "hk") {
    inv.check(budget_ok, "term_budget_respected");
    if (sys.is_rotation() && cfg.s == 2) inv.check(oracle_ok, "hk_matches_fourier_oracle");
  }
  emit(r, cfg, start);
  return inv.exit_code();
}

int cmd_pet(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const auto family = load_config_family(cfg);
  Invariants inv;
  ExperimentResult r;
  r.name = "pet";
  base_metadata(r, cfg);
  try {
    const auto trace = fracpoly::pet_reduce(family);
    std::cout << "initial type " << fracpoly::type_vector(trace.initial).to_string() << '\n';
    r.push(0, static_cast<double>(family.size()));
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
      const auto& st = trace.steps[i];
      std::cout << "step " << i + 1 << ": anchor " << st.anchor << " type "
                << st.type_before.to_string() << " -> " << st.type_after.to_string() << '\n';
      for (const auto& a : st.after) std::cout << "  " << a.to_string() << '\n';
      r.push(i + 1, static_cast<double>(st.after.size()));
    }
    inv.check(true, "type_strictly_decreasing");
    std::filesystem::create_directories(cfg.out_dir);
    std::ofstream(std::filesystem::path(cfg.out_dir) / "pet_trace.json")
        << fracpoly::to_json(trace).dump(2) << '\n';
    r.metadata["steps"] = trace.steps.size();
  } catch (const fracpoly::PetEngineError& e) {
    inv.check(false, "type_strictly_decreasing", e.what());
  }
  emit(r, cfg, start);
  return inv.exit_code();
}

namespace {

bool is_prime_trial(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace

int cmd_sieve(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const auto Ns = schedule(cfg, "10000");
  const std::vector<std::int64_t> shifts =
      cfg.shifts.empty() ? std::vector<std::int64_t>{} : parse_int_list(cfg.shifts);
  std::int64_t max_shift = 0;
  for (auto s : shifts) max_shift = std::max(max_shift, s);
  std::uint64_t limit = std::max<std::uint64_t>(cfg.limit, Ns.back() + static_cast<std::uint64_t>(max_shift));
  const std::string measure = cfg.measure.empty() ? (shifts.empty() ? "pi" : "tuples") : cfg.measure;
  if (measure == "singular") limit = std::max<std::uint64_t>(limit, 2 * Ns.back());
  const auto table = make_table(cfg, limit);
  std::cout << "limit=" << table.limit() << " pi=" << table.pi(table.limit()) << '\n';

  ExperimentResult r;
  r.name = "sieve";
  base_metadata(r, cfg);
  r.metadata["limit"] = table.limit();
  r.metadata["measure"] = measure;
  r.metadata["shifts"] = shifts;
  Invariants inv;
  const std::uint64_t P = std::max<std::uint64_t>(table.limit(), 4);
  {
    const std::int64_t one[1] = {0};
    const std::int64_t twin[2] = {0, 1};
    inv.check(primes::singular_series(table, one, std::max<std::uint64_t>(P, 2)).value == 1.0,
              "singular_series_k1_is_one");
    inv.check(primes::singular_series(table, twin, P).value == 0.0, "singular_series_parity_zero");
  }

  if (measure == "pi") {
    for (auto N : Ns) r.push(N, static_cast<double>(table.pi(N)));
  } else if (measure == "tuples") {
    if (shifts.empty()) throw std::invalid_argument("tuples needs --shifts");
    bool brute_ok = true, bound_ok = true;
    for (auto N : Ns) {
      const auto count = primes::count_prime_tuples(table, N, shifts);
      r.push(N, static_cast<double>(count));
      if (N <= 10000) {
        std::uint64_t brute = 0;
        for (std::uint64_t n = 1; n <= N; ++n) {
          bool all = true;
          for (auto s : shifts) all = all && is_prime_trial(static_cast<std::int64_t>(n) + s);
          brute += all;
        }
        brute_ok = brute_ok && brute == count;
      }
      if (cfg.C_k > 0.0 && N >= 2) {
        const std::uint64_t cutoff = std::max<std::uint64_t>(
            {static_cast<std::uint64_t>(2 * shifts.size()), static_cast<std::uint64_t>(max_shift),
             std::min<std::uint64_t>(table.limit(), 1000000)});
        const auto b = primes::check_tuple_bound(table, N, shifts, cfg.C_k, cutoff);
        bound_ok = bound_ok && b.within_bound;
      }
    }
    inv.check(brute_ok, "tuple_count_matches_trial_division");
    if (cfg.C_k > 0.0) inv.check(bound_ok, "tuple_upper_bound");
    const auto G = primes::singular_series(table, shifts,
                                           std::max<std::uint64_t>({P, 2 * shifts.size()}));
    r.metadata["singular_series"] = G.value;
    r.metadata["singular_tail_bound"] = G.tail_bound;
    std::cout << "singular_series=" << fmt(G.value) << " tail_bound=" << fmt(G.tail_bound) << '\n';
  } else if (measure == "singular") {
    const auto means = primes::running_singular_sq_means(table, Ns, table.limit());
    for (std::size_t i = 0; i < Ns.size(); ++i) r.push(Ns[i], means[i]);
    bool stable = true;
    for (std::size_t i = 1; i < Ns.size(); ++i) {
      const double decades = std::log10(static_cast<double>(Ns[i]) / static_cast<double>(Ns[i - 1]));
      const double growth = std::pow(means[i] / means[i - 1], 1.0 / decades) - 1.0;
      stable = stable && growth < 0.10;
    }
    inv.check(stable, "singular_mean_growth_below_10_percent_per_decade");
  } else if (measure == "star") {
    const int l = std::clamp(cfg.s, 1, 2);
    for (auto N : Ns) {
      const auto m = primes::avg_singular_sq(table, N, l, std::max<std::uint64_t>(table.limit(), l * N));
      r.push(N, m.mean_star);
    }
  } else if (measure == "cor") {
    if (shifts.empty()) throw std::invalid_argument("cor needs --shifts");
    for (auto N : Ns) r.push(N, primes::check_cor_primes(table, shifts, 0, N));
  } else {
    throw std::invalid_argument("--measure must be pi, tuples, singular, star or cor");
  }
  emit(r, cfg, start);
  return inv.exit_code();
}

int run(int argc, char** argv) {
  CLI::App app{"fracprime: fractional powers of primes, multiple averages and PET reduction"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--system", cfg.system, "cyclic:m | rotation[:alpha] | skew[:alpha]");
    sub->add_option("--family", cfg.family_path, "family JSON file");
    sub->add_option("--poly", cfg.polys, "inline family member(s); ';' separates members");
    sub->add_option("--mode", cfg.mode, "integers | primes");
    sub->add_option("--weight", cfg.weight, "none | lambda | delta:h1,... | bounded:c1,...");
    sub->add_option("--N", cfg.N_list, "comma-separated increasing N schedule");
    sub->add_option("--out", cfg.out_dir, "output directory");
    sub->add_option("--cache", cfg.cache_path, "sieve cache file");
    sub->add_flag("--svg", cfg.svg, "also write an SVG chart");
    sub->add_option("--seed", cfg.seed, "seed for generated inputs");
    sub->add_option("--kernel", cfg.kernel, "scalar | avx2 | auto");
    sub->add_option("--f,--functions", cfg.functions, "observable(s): one, char:k, indicator:r, arc:a,l[,K], @file");
    sub->add_option("--s", cfg.s, "seminorm degree");
    sub->add_option("--measure", cfg.measure, "subcommand-specific quantity");
  };

  auto* eq = app.add_subcommand("equidist", "Weyl sums of floored iterates");
  add_common(eq);
  eq->add_option("--t", cfg.t, "one real per iterate")->delimiter(',');
  eq->add_option("--arg", cfg.argument, "floor | raw");
  eq->add_option("--expect-decay", cfg.expect_decay, "assert |W(first N)| >= ratio * |W(last N)|");
  eq->add_option("--witness-grid", cfg.witness_grid, "grid search for a non-decaying t");

  auto* ja = app.add_subcommand("jointavg", "multiple ergodic averages");
  add_common(ja);
  ja->add_flag("--cf", cfg.cf, "prime-weighted average of integer iterates, L2 norm series");
  ja->add_option("--mainav", cfg.mainav_k, "average ||.|| over h in [L_N]^k with Delta_h weights");
  ja->add_flag("--expect-decreasing", cfg.expect_decreasing, "assert a strictly decreasing series");
  ja->add_option("--expect-min", cfg.expect_min, "assert the last value is at least this");

  auto* rc = app.add_subcommand("recurrence", "recurrence profile against (integral g)^(l+1)");
  add_common(rc);
  rc->add_option("--slack", cfg.slack, "allowed shortfall below the benchmark");

  auto* sn = app.add_subcommand("seminorm", "Gowers norms and finite-N seminorm estimates");
  add_common(sn);
  sn->add_option("--random", cfg.random_functions, "add this many seeded random functions");

  auto* pt = app.add_subcommand("pet", "PET reduction trace with type vectors");
  add_common(pt);

  auto* sv = app.add_subcommand("sieve", "sieve, tuple counts and singular series");
  add_common(sv);
  sv->add_option("--shifts", cfg.shifts, "comma-separated shifts");
  sv->add_option("--limit", cfg.limit, "sieve limit");
  sv->add_option("--C", cfg.C_k, "tuple bound constant C_k");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  try {
    kernels::set_isa(kernels::parse_isa(cfg.kernel));
    if (*eq) return (cfg.subcommand = "equidist", cmd_equidist(cfg));
    if (*ja) return (cfg.subcommand = "jointavg", cmd_jointavg(cfg));
    if (*rc) return (cfg.subcommand = "recurrence", cmd_recurrence(cfg));
    if (*sn) return (cfg.subcommand = "seminorm", cmd_seminorm(cfg));
    if (*pt) return (cfg.subcommand = "pet", cmd_pet(cfg));
    if (*sv) return (cfg.subcommand = "sieve", cmd_sieve(cfg));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace fracprime::cli
