#include "fracprime/primes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <string>

namespace fracprime::primes {

namespace {

constexpr std::array<char, 8> kCacheMagic = {'F', 'P', 'S', 'I', 'E', 'V', 'E', '1'};

std::uint64_t odd_count(std::uint64_t limit) { return (limit + 1) / 2; }

bool test_bit(const std::vector<std::uint64_t>& bits, std::uint64_t i) {
  return (bits[i >> 6] >> (i & 63)) & 1U;
}

std::vector<std::uint64_t> collect_primes(std::uint64_t limit,
                                          const std::vector<std::uint64_t>& bits) {
  std::vector<std::uint64_t> primes;
  if (limit >= 2) primes.push_back(2);
  const std::uint64_t n_odd = odd_count(limit);
  for (std::size_t w = 0; w < bits.size(); ++w) {
    std::uint64_t word = bits[w];
    while (word != 0) {
      const int b = __builtin_ctzll(word);
      const std::uint64_t i = w * 64 + static_cast<std::uint64_t>(b);
      if (i < n_odd) primes.push_back(2 * i + 1);
      word &= word - 1;
    }
  }
  return primes;
}

}  // namespace

SieveBudgetError::SieveBudgetError(std::uint64_t limit, std::uint64_t required_bytes,
                                   std::uint64_t budget_bytes)
    : std::runtime_error("sieve up to " + std::to_string(limit) + " needs " +
                         std::to_string(required_bytes) + " bytes, budget is " +
                         std::to_string(budget_bytes) + " bytes"),
      required_bytes_(required_bytes) {}

bool PrimeTable::is_prime(std::int64_t n) const {
  if (n < 2) return false;
  const auto u = static_cast<std::uint64_t>(n);
  if (u > limit_) {
    throw std::out_of_range("table too small: " + std::to_string(u) + " exceeds sieve limit " +
                            std::to_string(limit_));
  }
  if (u == 2) return true;
  if ((u & 1U) == 0) return false;
  return test_bit(bits_, u >> 1);
}

std::uint64_t PrimeTable::nth_prime(std::uint64_t n) const {
  if (n == 0 || n > primes_.size()) {
    throw std::out_of_range("table too small: prime #" + std::to_string(n) +
                            " not within sieve limit " + std::to_string(limit_));
  }
  return primes_[n - 1];
}

std::uint64_t PrimeTable::pi(std::uint64_t x) const {
  require(x, "pi(x)");
  return static_cast<std::uint64_t>(std::upper_bound(primes_.begin(), primes_.end(), x) -
                                    primes_.begin());
}

void PrimeTable::require(std::uint64_t n, const char* what) const {
  if (n > limit_) {
    throw std::out_of_range(std::string("table too small for ") + what + ": needs " +
                            std::to_string(n) + ", sieve limit is " + std::to_string(limit_));
  }
}

std::uint64_t sieve_bytes_required(std::uint64_t limit) {
  const std::uint64_t bitset = (odd_count(limit) + 63) / 64 * 8;
  const double ln = std::log(std::max<double>(static_cast<double>(limit), 3.0));
  const auto prime_estimate =
      static_cast<std::uint64_t>(1.26 * static_cast<double>(limit) / ln) + 16;
  return bitset + prime_estimate * sizeof(std::uint64_t);
}

PrimeTable sieve(std::uint64_t limit, std::uint64_t budget_bytes) {
  if (limit < 2) throw std::invalid_argument("sieve limit must be at least 2");
  const std::uint64_t required = sieve_bytes_required(limit);
  if (required > budget_bytes) throw SieveBudgetError(limit, required, budget_bytes);

  const std::uint64_t n_odd = odd_count(limit);
  std::vector<std::uint64_t> bits((n_odd + 63) / 64, ~std::uint64_t{0});
  if (n_odd % 64 != 0) bits.back() = (std::uint64_t{1} << (n_odd % 64)) - 1;
  bits[0] &= ~std::uint64_t{1};  // 1 is not prime

  for (std::uint64_t p = 3; p * p <= limit; p += 2) {
    if (!test_bit(bits, p >> 1)) continue;
    for (std::uint64_t i = (p * p) >> 1; i < n_odd; i += p) {
      bits[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }
  }
  return from_odd_bits(limit, std::move(bits));
}

PrimeTable from_odd_bits(std::uint64_t limit, std::vector<std::uint64_t> bits) {
  const std::uint64_t n_odd = odd_count(limit);
  if (bits.size() != (n_odd + 63) / 64) {
    throw std::invalid_argument("odd-number bitset has wrong length for the limit");
  }
  PrimeTable table;
  table.limit_ = limit;
  table.primes_ = collect_primes(limit, bits);
  table.bits_ = std::move(bits);
  return table;
}

void save_cache(const PrimeTable& table, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write sieve cache " + tmp);
    out.write(kCacheMagic.data(), kCacheMagic.size());
    std::array<char, 8> limit_bytes{};
    for (int i = 0; i < 8; ++i) {
      limit_bytes[static_cast<std::size_t>(i)] = static_cast<char>((table.limit() >> (8 * i)) & 0xFF);
    }
    out.write(limit_bytes.data(), limit_bytes.size());
    const std::uint64_t n_bytes = (odd_count(table.limit()) + 7) / 8;
    std::vector<char> payload(n_bytes);
    const auto words = table.odd_bits();
    for (std::uint64_t b = 0; b < n_bytes; ++b) {
      payload[b] = static_cast<char>((words[b / 8] >> (8 * (b % 8))) & 0xFF);
    }
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    if (!out) throw std::runtime_error("failed writing sieve cache " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

PrimeTable load_cache(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open sieve cache " + path.string());
  std::array<char, 8> magic{};
  std::array<unsigned char, 8> limit_bytes{};
  in.read(magic.data(), magic.size());
  in.read(reinterpret_cast<char*>(limit_bytes.data()), limit_bytes.size());
  if (!in || magic != kCacheMagic) {
    throw std::runtime_error("sieve cache " + path.string() + " has a bad header");
  }
  std::uint64_t limit = 0;
  for (int i = 7; i >= 0; --i) limit = (limit << 8) | limit_bytes[static_cast<std::size_t>(i)];
  if (limit < 2) throw std::runtime_error("sieve cache " + path.string() + " has limit < 2");

  const std::uint64_t n_odd = odd_count(limit);
  const std::uint64_t n_bytes = (n_odd + 7) / 8;
  std::vector<unsigned char> payload(n_bytes);
  in.read(reinterpret_cast<char*>(payload.data()), static_cast<std::streamsize>(n_bytes));
  if (!in || in.peek() != std::char_traits<char>::eof()) {
    throw std::runtime_error("sieve cache " + path.string() + " has the wrong length");
  }
  std::vector<std::uint64_t> words((n_odd + 63) / 64, 0);
  for (std::uint64_t b = 0; b < n_bytes; ++b) {
    words[b / 8] |= static_cast<std::uint64_t>(payload[b]) << (8 * (b % 8));
  }
  if (n_odd % 64 != 0) words.back() &= (std::uint64_t{1} << (n_odd % 64)) - 1;
  return from_odd_bits(limit, std::move(words));
}

PrimeTable sieve_cached(std::uint64_t limit, const std::filesystem::path& path) {
  if (std::filesystem::exists(path)) {
    try {
      PrimeTable cached = load_cache(path);
      if (cached.limit() >= limit) return cached;
    } catch (const std::runtime_error&) {
      // Unreadable or stale cache: rebuild below.
    }
  }
  PrimeTable table = sieve(limit);
  save_cache(table, path);
  return table;
}

std::uint64_t nth_prime_upper_bound(std::uint64_t n) {
  if (n < 6) return 13;
  const double x = static_cast<double>(n);
  return static_cast<std::uint64_t>(x * (std::log(x) + std::log(std::log(x)))) + 1;
}

double von_mangoldt_prime(const PrimeTable& table, std::int64_t n) {
  return table.is_prime(n) ? std::log(static_cast<double>(n)) : 0.0;
}

double delta_von_mangoldt(const PrimeTable& table, std::span<const std::int64_t> h,
                          std::int64_t n) {
  if (h.size() >= 63) throw std::invalid_argument("too many shifts");
  const std::uint64_t masks = std::uint64_t{1} << h.size();
  double product = 1.0;
  for (std::uint64_t mask = 0; mask < masks; ++mask) {
    std::int64_t m = n;
    for (std::size_t i = 0; i < h.size(); ++i) {
      if ((mask >> i) & 1U) m += h[i];
    }
    const double v = von_mangoldt_prime(table, m);
    if (v == 0.0) return 0.0;
    product *= v;
  }
  return product;
}

std::vector<std::int64_t> cube(std::span<const std::int64_t> h) {
  const std::size_t l = h.size();
  if (l >= 31) throw std::invalid_argument("cube dimension too large");
  std::vector<std::vector<std::size_t>> supports;
  supports.reserve(std::size_t{1} << l);
  for (std::uint32_t mask = 0; mask < (1U << l); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < l; ++i) {
      if ((mask >> i) & 1U) s.push_back(i);
    }
    supports.push_back(std::move(s));
  }
  std::sort(supports.begin(), supports.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  std::vector<std::int64_t> out;
  out.reserve(supports.size());
  for (const auto& s : supports) {
    std::int64_t sum = 0;
    for (auto i : s) sum += h[i];
    out.push_back(sum);
  }
  return out;
}

bool is_star(std::span<const std::int64_t> h) {
  auto c = cube(h);
  std::sort(c.begin(), c.end());
  return std::adjacent_find(c.begin(), c.end()) == c.end();
}

std::uint64_t count_prime_tuples(const PrimeTable& table, std::uint64_t N,
                                 std::span<const std::int64_t> shifts) {
  std::int64_t max_shift = 0;
  for (auto s : shifts) max_shift = std::max(max_shift, s);
  table.require(N + static_cast<std::uint64_t>(max_shift), "count_prime_tuples");
  std::uint64_t count = 0;
  for (std::uint64_t n = 1; n <= N; ++n) {
    bool all = true;
    for (auto s : shifts) {
      if (!table.is_prime(static_cast<std::int64_t>(n) + s)) {
        all = false;
        break;
      }
    }
    if (all) ++count;
  }
  return count;
}

int nu_p(std::uint64_t p, std::span<const std::int64_t> values) {
  if (p == 0) throw std::invalid_argument("nu_p: p must be positive");
  const auto mod = static_cast<std::int64_t>(p);
  std::vector<std::int64_t> residues;
  residues.reserve(values.size());
  for (auto v : values) residues.push_back(((v % mod) + mod) % mod);
  std::sort(residues.begin(), residues.end());
  return static_cast<int>(std::unique(residues.begin(), residues.end()) - residues.begin());
}

std::uint64_t star_complement_count(std::uint64_t N, int l) {
  if (l < 1) throw std::invalid_argument("star_complement_count: l must be >= 1");
  if (N == 0) return 0;
  std::vector<std::int64_t> h(static_cast<std::size_t>(l), 1);
  std::uint64_t count = 0;
  while (true) {
    if (!is_star(h)) ++count;
    std::size_t i = 0;
    while (i < h.size() && h[i] == static_cast<std::int64_t>(N)) h[i++] = 1;
    if (i == h.size()) break;
    ++h[i];
  }
  return count;
}

double check_cor_primes(const PrimeTable& table, std::span<const std::int64_t> h,
                        std::int64_t c, std::uint64_t N) {
  if (!is_star(h)) throw std::invalid_argument("check_cor_primes requires a star tuple");
  if (N == 0) throw std::invalid_argument("check_cor_primes requires N >= 1");
  if (c < 0) throw std::invalid_argument("check_cor_primes requires c >= 0");
  const std::int64_t span_sum = std::accumulate(h.begin(), h.end(), std::int64_t{0});
  table.require(N + static_cast<std::uint64_t>(c + span_sum), "check_cor_primes");
  double total = 0.0;
  for (std::uint64_t n = 1; n <= N; ++n) {
    total += delta_von_mangoldt(table, h, static_cast<std::int64_t>(n) + c);
  }
  return total / static_cast<double>(N);
}

}  // namespace fracprime::primes
