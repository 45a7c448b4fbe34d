#include "fracprime/averages.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "fracprime/kernels/kernels.hpp"
#include "fracprime/seminorms.hpp"
#include "fracprime/systems_json.hpp"

namespace fracprime::averages {

using systems::CyclicFunction;
using systems::DyadicAngle;
using systems::FourierPoly;
using systems::Frequency;

namespace {

void check_checkpoints(std::span<const std::uint64_t> cps) {
  if (cps.empty()) throw std::invalid_argument("N schedule is empty");
  if (cps.front() == 0) throw std::invalid_argument("N schedule entries must be >= 1");
  for (std::size_t i = 1; i < cps.size(); ++i) {
    if (cps[i] <= cps[i - 1]) throw std::invalid_argument("N schedule must be strictly increasing");
  }
}

using IterateTable = std::vector<std::vector<std::int64_t>>;

IterateTable all_iterates(std::span<const IterateSpec> specs, std::uint64_t N,
                          const primes::PrimeTable* table) {
  IterateTable out;
  out.reserve(specs.size());
  for (const auto& s : specs) out.push_back(iterate_values(s, N, table));
  return out;
}

// sum_{n <= N_j} w(n) prod_i T^{sign * m_i(n)} f_i for every checkpoint N_j
// (undivided). Empty weights mean w = 1.
class Accumulator {
 public:
  Accumulator(const systems::System& sys, const IterateTable& m, int sign,
              std::span<const Observable> f, std::span<const double> w,
              std::span<const std::uint64_t> cps, std::size_t budget)
      : sys_(sys), m_(m), sign_(sign), f_(f), w_(w), cps_(cps), budget_(budget) {
    for (std::uint64_t n = 0; n < cps.back(); ++n) {
      if (w.empty() || w[n] != 0.0) active_.push_back(n);
    }
  }

  std::vector<Observable> run() {
    if (sys_.is_cyclic()) return run_cyclic();
    if (sys_.is_rotation()) return run_rotation();
    return run_skew();
  }

 private:
  double weight(std::uint64_t n) const { return w_.empty() ? 1.0 : w_[n]; }
  std::int64_t shift(std::size_t i, std::uint64_t n) const { return sign_ * m_[i][n]; }

  // Index in active_ one past the last n < N for each checkpoint.
  std::vector<std::size_t> segment_ends() const {
    std::vector<std::size_t> ends;
    for (auto N : cps_) {
      ends.push_back(static_cast<std::size_t>(
          std::lower_bound(active_.begin(), active_.end(), N) - active_.begin()));
    }
    return ends;
  }

  std::vector<Observable> run_cyclic() {
    const auto mod = static_cast<std::int64_t>(sys_.modulus());
    std::vector<const CyclicFunction*> fs;
    for (const auto& f : f_) fs.push_back(&std::get<CyclicFunction>(f));
    std::vector<Complex> acc(static_cast<std::size_t>(mod));
    std::vector<std::int64_t> s(fs.size());
    std::vector<Observable> out;
    const auto ends = segment_ends();
    std::size_t a = 0;
    for (std::size_t j = 0; j < cps_.size(); ++j) {
      for (; a < ends[j]; ++a) {
        const std::uint64_t n = active_[a];
        for (std::size_t i = 0; i < fs.size(); ++i) s[i] = ((shift(i, n) % mod) + mod) % mod;
        const double w = weight(n);
        for (std::int64_t x = 0; x < mod; ++x) {
          Complex p = w;
          for (std::size_t i = 0; i < fs.size(); ++i) {
            p *= (*fs[i])[static_cast<std::size_t>((x + s[i]) % mod)];
          }
          acc[static_cast<std::size_t>(x)] += p;
        }
      }
      out.emplace_back(CyclicFunction(acc));
    }
    return out;
  }

  // Each combination of one term per factor keeps its frequency for all n,
  // so its contribution is amplitude * sum_n w(n) e(alpha * sum_i k_i m_i(n)).
  std::vector<Observable> run_rotation() {
    std::vector<std::vector<std::pair<std::int64_t, Complex>>> terms;
    std::size_t combos = 1;
    for (const auto& f : f_) {
      const auto& p = std::get<FourierPoly>(f);
      std::vector<std::pair<std::int64_t, Complex>> t;
      for (const auto& [k, a] : p.terms()) t.emplace_back(k[0], a);
      if (t.empty()) return std::vector<Observable>(cps_.size(), FourierPoly(1));
      combos *= t.size();
      if (combos > budget_) throw systems::TermBudgetExceeded(combos, budget_);
      terms.push_back(std::move(t));
    }
    const DyadicAngle& alpha = sys_.angle();
    const auto ends = segment_ends();
    std::vector<double> weights;
    if (!w_.empty()) {
      for (auto n : active_) weights.push_back(w_[n]);
    }
    std::vector<FourierPoly> out(cps_.size(), FourierPoly(1));
    std::vector<double> phases(active_.size());
    std::vector<std::size_t> idx(terms.size(), 0);
    for (std::size_t c = 0; c < combos; ++c) {
      std::int64_t freq = 0;
      Complex amp = 1.0;
      for (std::size_t i = 0; i < terms.size(); ++i) {
        freq += terms[i][idx[i]].first;
        amp *= terms[i][idx[i]].second;
      }
      for (std::size_t a = 0; a < active_.size(); ++a) {
        __int128 K = 0;
        for (std::size_t i = 0; i < terms.size(); ++i) {
          K += static_cast<__int128>(terms[i][idx[i]].first) * shift(i, active_[a]);
        }
        phases[a] = alpha.frac_times(K);
      }
      Complex running{};
      std::size_t lo = 0;
      for (std::size_t j = 0; j < cps_.size(); ++j) {
        const std::size_t hi = ends[j];
        const std::span<const double> ph(phases.data() + lo, hi - lo);
        const std::span<const double> wt =
            weights.empty() ? std::span<const double>() : std::span<const double>(weights.data() + lo, hi - lo);
        running += kernels::sum_unit_phases(ph, wt);
        out[j].add({freq, 0}, amp * running);
        lo = hi;
      }
      for (std::size_t i = terms.size(); i-- > 0;) {
        if (++idx[i] < terms[i].size()) break;
        idx[i] = 0;
      }
    }
    return {out.begin(), out.end()};
  }

  std::vector<Observable> run_skew() {
    FourierPoly acc(2);
    std::vector<Observable> out;
    const auto ends = segment_ends();
    std::size_t a = 0;
    for (std::size_t j = 0; j < cps_.size(); ++j) {
      for (; a < ends[j]; ++a) {
        const std::uint64_t n = active_[a];
        FourierPoly prod = FourierPoly::constant(2, weight(n));
        for (std::size_t i = 0; i < f_.size(); ++i) {
          prod = systems::multiply(
              prod, systems::apply_power(sys_, std::get<FourierPoly>(f_[i]), shift(i, n)), budget_);
        }
        acc += prod;
        if (acc.size() > budget_) throw systems::TermBudgetExceeded(acc.size(), budget_);
      }
      out.emplace_back(acc);
    }
    return out;
  }

  const systems::System& sys_;
  const IterateTable& m_;
  int sign_;
  std::span<const Observable> f_;
  std::span<const double> w_;
  std::span<const std::uint64_t> cps_;
  std::size_t budget_;
  std::vector<std::uint64_t> active_;
};

Observable scaled(const Observable& f, double c) {
  if (const auto* p = std::get_if<FourierPoly>(&f)) return p->scaled(c);
  std::vector<Complex> v(std::get<CyclicFunction>(f).values());
  for (auto& x : v) x *= c;
  return CyclicFunction(std::move(v));
}

void check_functions(const systems::System& sys, std::size_t iterates,
                     std::span<const Observable> functions) {
  if (iterates == 0) throw std::invalid_argument("at least one iterate is required");
  if (iterates != functions.size()) {
    throw std::invalid_argument("number of iterates and functions differ");
  }
  for (const auto& f : functions) systems::check_compatible(sys, f);
}

Complex product_of_integrals(const systems::System& sys, std::span<const Observable> functions) {
  Complex p = 1.0;
  for (const auto& f : functions) p *= systems::integrate(sys, f);
  return p;
}

std::vector<AverageResult> series_from_table(const systems::System& sys, const IterateTable& m,
                                             std::span<const Observable> functions,
                                             const WeightSpec& weight,
                                             std::span<const double> w,
                                             std::span<const std::uint64_t> cps,
                                             std::size_t budget) {
  Accumulator acc(sys, m, +1, functions, w, cps, budget);
  const auto sums = acc.run();
  const Observable target = systems::constant_observable(
      sys, targets_product_of_integrals(weight) ? product_of_integrals(sys, functions) : 0.0);
  std::vector<AverageResult> out;
  for (std::size_t j = 0; j < cps.size(); ++j) {
    AverageResult r;
    r.N = cps[j];
    r.average = scaled(sums[j], 1.0 / static_cast<double>(cps[j]));
    r.target = target;
    r.distance = systems::l2_distance(r.average, r.target);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

// Weyl sums

std::vector<Complex> weyl_sum_series(std::span<const IterateSpec> family,
                                     std::span<const double> t,
                                     std::span<const std::uint64_t> cps,
                                     const primes::PrimeTable* table, WeylArgument arg) {
  check_checkpoints(cps);
  if (family.empty()) throw std::invalid_argument("weyl_sum needs a nonempty family");
  if (t.size() != family.size()) throw std::invalid_argument("weyl_sum: one t per iterate");
  for (const auto& s : family) {
    if (s.mode() != family.front().mode()) throw std::invalid_argument("weyl_sum: mixed modes");
  }
  const std::uint64_t N = cps.back();
  std::vector<double> phases(N, 0.0);
  if (arg == WeylArgument::Floor) {
    for (double ti : t) {
      if (!(ti >= 0.0 && ti < 1.0)) throw std::invalid_argument("Floor weyl_sum needs t in [0, 1)");
    }
    for (std::size_t i = 0; i < family.size(); ++i) {
      if (t[i] == 0.0) continue;
      const DyadicAngle angle(t[i]);
      const auto b = iterate_values(family[i], N, table);
      for (std::uint64_t n = 0; n < N; ++n) {
        const double p = phases[n] + angle.frac_times(b[n]);
        phases[n] = p - std::floor(p);
      }
    }
  } else {
    for (std::size_t i = 0; i < family.size(); ++i) {
      if (t[i] == 0.0) continue;
      const long double ti = t[i];
      for (std::uint64_t n = 1; n <= N; ++n) {
        const auto x = static_cast<long double>(iterate_argument(family[i].mode(), n, table));
        long double p = ti * family[i].eval_long(x);
        p -= std::floor(p);
        const double q = phases[n - 1] + static_cast<double>(p);
        phases[n - 1] = q - std::floor(q);
      }
    }
  }
  std::vector<Complex> out;
  Complex running{};
  std::uint64_t lo = 0;
  for (auto hi : cps) {
    running += kernels::sum_unit_phases(std::span<const double>(phases.data() + lo, hi - lo));
    out.push_back(running / static_cast<double>(hi));
    lo = hi;
  }
  return out;
}

Complex weyl_sum(std::span<const IterateSpec> family, std::span<const double> t, std::uint64_t N,
                 const primes::PrimeTable* table, WeylArgument arg) {
  const std::uint64_t cp[1] = {N};
  return weyl_sum_series(family, t, cp, table, arg).front();
}

// Weights

std::string describe(const WeightSpec& w) {
  struct V {
    std::string operator()(const Unweighted&) const { return "none"; }
    std::string operator()(const VonMangoldt&) const { return "lambda"; }
    std::string operator()(const DeltaVonMangoldt& d) const {
      std::string s = "delta:";
      for (std::size_t i = 0; i < d.h.size(); ++i) s += (i ? "," : "") + std::to_string(d.h[i]);
      return s;
    }
    std::string operator()(const Bounded& b) const {
      std::string s = "bounded:";
      for (std::size_t i = 0; i < b.period.size(); ++i) s += (i ? "," : "") + format_double(b.period[i]);
      return s;
    }
  };
  return std::visit(V{}, w);
}

bool targets_product_of_integrals(const WeightSpec& w) {
  return std::holds_alternative<Unweighted>(w) || std::holds_alternative<VonMangoldt>(w);
}

std::uint64_t weight_table_limit(const WeightSpec& w, std::uint64_t N) {
  if (std::holds_alternative<VonMangoldt>(w)) return N;
  if (const auto* d = std::get_if<DeltaVonMangoldt>(&w)) {
    std::uint64_t extra = 0;
    for (auto h : d->h) extra += static_cast<std::uint64_t>(std::max<std::int64_t>(h, 0));
    return N + extra;
  }
  return 0;
}

std::vector<double> weight_values(const WeightSpec& w, std::uint64_t N,
                                  const primes::PrimeTable* table) {
  std::vector<double> out(N, 1.0);
  if (std::holds_alternative<Unweighted>(w)) return out;
  if (const auto* b = std::get_if<Bounded>(&w)) {
    if (b->period.empty()) throw std::invalid_argument("bounded weight needs a nonempty period");
    for (double c : b->period) {
      if (!(std::fabs(c) <= 1.0)) throw std::invalid_argument("bounded weight entries need |c| <= 1");
    }
    for (std::uint64_t n = 1; n <= N; ++n) out[n - 1] = b->period[(n - 1) % b->period.size()];
    return out;
  }
  if (!table) throw std::invalid_argument(describe(w) + " weight needs a prime table");
  table->require(weight_table_limit(w, N), "weight");
  if (std::holds_alternative<VonMangoldt>(w)) {
    for (std::uint64_t n = 1; n <= N; ++n) {
      out[n - 1] = primes::von_mangoldt_prime(*table, static_cast<std::int64_t>(n));
    }
    return out;
  }
  const auto& h = std::get<DeltaVonMangoldt>(w).h;
  for (std::uint64_t n = 1; n <= N; ++n) {
    out[n - 1] = primes::delta_von_mangoldt(*table, h, static_cast<std::int64_t>(n));
  }
  return out;
}

// Multiple averages

std::vector<AverageResult> multi_average_series(const systems::System& sys,
                                                std::span<const IterateSpec> iterates,
                                                std::span<const Observable> functions,
                                                const WeightSpec& weight,
                                                std::span<const std::uint64_t> cps,
                                                const primes::PrimeTable* table,
                                                std::size_t budget) {
  check_checkpoints(cps);
  check_functions(sys, iterates.size(), functions);
  const auto m = all_iterates(iterates, cps.back(), table);
  const auto w = weight_values(weight, cps.back(), table);
  const std::span<const double> ws =
      std::holds_alternative<Unweighted>(weight) ? std::span<const double>() : std::span<const double>(w);
  return series_from_table(sys, m, functions, weight, ws, cps, budget);
}

AverageResult multi_average(const systems::System& sys, std::span<const IterateSpec> iterates,
                            std::span<const Observable> functions, const WeightSpec& weight,
                            std::uint64_t N, const primes::PrimeTable* table,
                            std::size_t budget) {
  const std::uint64_t cp[1] = {N};
  return multi_average_series(sys, iterates, functions, weight, cp, table, budget).front();
}

RecurrenceProfile recurrence_profile(const systems::System& sys, const Observable& g,
                                     std::span<const IterateSpec> iterates,
                                     std::span<const std::uint64_t> cps,
                                     const primes::PrimeTable* table, std::size_t budget) {
  check_checkpoints(cps);
  systems::check_compatible(sys, g);
  if (const auto* c = std::get_if<CyclicFunction>(&g)) {
    for (auto v : c->values()) {
      if (v.imag() != 0.0 || v.real() < 0.0 || v.real() > 1.0) {
        throw std::invalid_argument("recurrence needs 0 <= g <= 1");
      }
    }
  }
  const std::vector<Observable> functions(iterates.size(), g);
  check_functions(sys, iterates.size(), functions);
  const auto m = all_iterates(iterates, cps.back(), table);
  Accumulator acc(sys, m, -1, functions, {}, cps, budget);
  const auto sums = acc.run();
  RecurrenceProfile out;
  const double mean = systems::integrate(sys, g).real();
  out.benchmark = std::pow(mean, static_cast<double>(iterates.size() + 1));
  for (std::size_t j = 0; j < cps.size(); ++j) {
    Complex v;
    if (const auto* c = std::get_if<CyclicFunction>(&g)) {
      v = systems::multiply(*c, std::get<CyclicFunction>(sums[j])).mean();
    } else {
      v = systems::integrate_product(std::get<FourierPoly>(g), std::get<FourierPoly>(sums[j]));
    }
    out.N.push_back(cps[j]);
    out.values.push_back(v.real() / static_cast<double>(cps[j]));
  }
  return out;
}

// van der Corput

VdcCheck vdc_inequality_check(std::span<const Complex> u, std::size_t dim, std::size_t H) {
  if (dim == 0 || u.empty() || u.size() % dim != 0) {
    throw std::invalid_argument("vdc: u must hold N >= 1 vectors of dimension dim >= 1");
  }
  const std::size_t N = u.size() / dim;
  if (H < 1 || H > N) throw std::invalid_argument("vdc: H must satisfy 1 <= H <= N");
  const double Nd = static_cast<double>(N);
  const double Hd = static_cast<double>(H);
  double mean_sq = 0.0;
  double norms = 0.0;
  for (std::size_t d = 0; d < dim; ++d) {
    Complex s{};
    for (std::size_t n = 0; n < N; ++n) s += u[n * dim + d];
    mean_sq += std::norm(s / Nd);
  }
  for (auto v : u) norms += std::norm(v);
  double corr = 0.0;
  for (std::size_t h = 1; h < H; ++h) {
    const double c = kernels::lagged_dot(u, h * dim).real() / Nd;
    corr += (1.0 - static_cast<double>(h) / Hd) * c;
  }
  VdcCheck out;
  out.lhs = mean_sq;
  out.rhs = 2.0 / Hd * (norms / Nd) + 4.0 * corr / Hd;
  out.holds = out.lhs <= out.rhs + kVdcSlack;
  return out;
}

std::uint64_t l_n(std::uint64_t N) {
  if (N == 0) throw std::invalid_argument("l_n requires N >= 1");
  return static_cast<std::uint64_t>(
      std::floor(std::exp(std::sqrt(std::log(static_cast<long double>(N))))));
}

double delta_mainav(const systems::System& sys, std::span<const IterateSpec> iterates,
                    std::span<const Observable> functions, int k, std::uint64_t N,
                    const primes::PrimeTable& table, std::size_t budget) {
  if (k < 1) throw std::invalid_argument("delta_mainav needs k >= 1");
  if (N == 0) throw std::invalid_argument("delta_mainav needs N >= 1");
  check_functions(sys, iterates.size(), functions);
  const std::uint64_t L = l_n(N);
  const auto m = all_iterates(iterates, N, &table);
  const std::uint64_t cp[1] = {N};
  std::vector<std::int64_t> h(static_cast<std::size_t>(k), 1);
  double total = 0.0;
  std::uint64_t count = 0;
  while (true) {
    const WeightSpec weight = DeltaVonMangoldt{h};
    const auto w = weight_values(weight, N, &table);
    total += systems::l2_norm(series_from_table(sys, m, functions, weight, w, cp, budget).front().average);
    ++count;
    std::size_t i = 0;
    while (i < h.size() && h[i] == static_cast<std::int64_t>(L)) h[i++] = 1;
    if (i == h.size()) break;
    ++h[i];
  }
  return total / static_cast<double>(count);
}

ExperimentResult cfprime_experiment(const systems::System& sys, const fracpoly::Family& family,
                                    std::span<const Observable> functions, int s,
                                    std::span<const std::uint64_t> N_list,
                                    const primes::PrimeTable& table, std::size_t budget) {
  const auto start = std::chrono::steady_clock::now();
  if (family.num_params() != 0) throw std::invalid_argument("cfprime_experiment needs k = 0");
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      if ((family[i] - family[j]).is_constant_in_t()) {
        throw std::invalid_argument("family members " + std::to_string(i) + " and " +
                                    std::to_string(j) + " differ by a constant");
      }
    }
  }
  std::vector<IterateSpec> iterates;
  for (const auto& a : family) iterates.emplace_back(a, Mode::Integers);
  const auto series =
      multi_average_series(sys, iterates, functions, VonMangoldt{}, N_list, &table, budget);

  ExperimentResult out;
  out.name = "cfprime";
  for (const auto& r : series) out.push(r.N, systems::l2_norm(r.average));
  auto& meta = out.metadata;
  meta["system"] = sys.describe();
  meta["mode"] = "integers";
  meta["weight"] = "lambda";
  auto& its = meta["iterates"] = nlohmann::ordered_json::array();
  for (const auto& a : family) its.push_back(a.to_string());
  auto& fs = meta["functions"] = nlohmann::ordered_json::array();
  auto& sn = meta["seminorms"] = nlohmann::ordered_json::array();
  for (const auto& f : functions) {
    fs.push_back(systems::to_json(f));
    nlohmann::ordered_json e;
    e["s"] = s;
    if (const auto* p = std::get_if<FourierPoly>(&f); p && !sys.is_cyclic()) {
      const auto sched = seminorms::default_schedule(s);
      const auto est = seminorms::hk_seminorm_estimate(sys, *p, s, sched, budget);
      e["schedule"] = est.schedule;
      if (est.value) e["value"] = *est.value;
      e["term_budget_hit"] = est.term_budget_hit;
    } else if (const auto* c = std::get_if<CyclicFunction>(&f)) {
      e["value"] = seminorms::gowers_norm_cyclic(*c, s);
    }
    sn.push_back(e);
  }
  meta["kernel"] = std::string(kernels::isa_name(kernels::active_isa()));
  out.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

WeylWitness find_weyl_witness(std::span<const IterateSpec> family, int q, std::uint64_t N,
                              const primes::PrimeTable* table) {
  if (q < 2) throw std::invalid_argument("grid denominator must be >= 2");
  const std::size_t l = family.size();
  std::vector<int> j(l, 0);
  WeylWitness best;
  std::vector<double> t(l);
  while (true) {
    std::size_t i = 0;
    while (i < l && j[i] == q - 1) j[i++] = 0;
    if (i == l) break;
    ++j[i];
    for (std::size_t r = 0; r < l; ++r) t[r] = static_cast<double>(j[r]) / q;
    const double mod = std::abs(weyl_sum(family, t, N, table));
    if (mod > best.modulus) best = {t, mod};
  }
  return best;
}

}  // namespace fracprime::averages
