#include "fracprime/cli/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "fracprime/fracpoly_json.hpp"
#include "fracprime/systems_json.hpp"

namespace fracprime::cli {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    out.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Hand-rolled recursive descent over the small term grammar
//   expr   := ['-'|'+'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := number | 't' ['^' power] | 'h'<index> ['^' integer]
//   power  := number | '(' number ')'
class PolyParser {
 public:
  explicit PolyParser(std::string_view text) : s_(text) {}

  struct Term {
    Rational coeff{1};
    Rational exponent{0};
    std::map<std::size_t, std::uint32_t> params;
  };

  std::vector<Term> parse() {
    std::vector<Term> terms;
    skip();
    bool negative = false;
    if (accept('-')) negative = true;
    else accept('+');
    while (true) {
      Term t = term();
      if (negative) t.coeff = -t.coeff;
      terms.push_back(std::move(t));
      skip();
      if (pos_ == s_.size()) break;
      if (accept('+')) negative = false;
      else if (accept('-')) negative = true;
      else fail("expected '+' or '-'");
    }
    return terms;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("polynomial '" + std::string(s_) + "': " + what + " at offset " +
                                std::to_string(pos_));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Rational number() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.' || s_[pos_] == '/')) {
      ++pos_;
    }
    if (start == pos_) fail("expected a number");
    return parse_exact(s_.substr(start, pos_ - start));
  }

  Rational power() {
    if (accept('(')) {
      bool neg = accept('-');
      Rational r = number();
      if (!accept(')')) fail("expected ')'");
      return neg ? Rational(-r) : r;
    }
    return number();
  }

  Term term() {
    Term t;
    do factor(t);
    while (accept('*'));
    return t;
  }

  void factor(Term& t) {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    const char c = s_[pos_];
    if (c == 't') {
      ++pos_;
      t.exponent += accept('^') ? power() : Rational(1);
    } else if (c == 'h') {
      ++pos_;
      const Rational idx = number();
      if (!is_integer(idx) || idx < 1) fail("parameter index must be a positive integer");
      std::uint32_t p = 1;
      if (accept('^')) {
        const Rational e = power();
        if (!is_integer(e) || e < 0) fail("parameter powers must be non-negative integers");
        p = static_cast<std::uint32_t>(e);
      }
      t.params[static_cast<std::size_t>(idx) - 1] += p;
    } else {
      t.coeff *= number();
    }
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Rational parse_exact(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw std::invalid_argument("empty number");
  const auto dot = text.find('.');
  if (dot == std::string_view::npos) return parse_rational(text);
  if (text.find('/') != std::string_view::npos) {
    throw std::invalid_argument("number '" + std::string(text) + "' mixes '.' and '/'");
  }
  const bool neg = text.front() == '-';
  std::string digits(text.substr(neg ? 1 : 0, dot - (neg ? 1 : 0)));
  const std::string frac(text.substr(dot + 1));
  for (char c : digits + frac) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
    }
  }
  BigInt num(digits.empty() ? "0" : digits);
  BigInt den(1);
  for (char c : frac) {
    num = num * 10 + (c - '0');
    den *= 10;
  }
  Rational r(num, den);
  return neg ? Rational(-r) : r;
}

double parse_real(std::string_view text) { return to_double(parse_exact(text)); }

fracpoly::RealExpPoly parse_poly_expr(std::string_view text) {
  const auto terms = PolyParser(text).parse();
  std::size_t k = 0;
  for (const auto& t : terms) {
    for (const auto& [i, p] : t.params) k = std::max(k, i + 1);
  }
  fracpoly::RealExpPoly out(k);
  for (const auto& t : terms) {
    fracpoly::Powers powers(k, 0);
    for (const auto& [i, p] : t.params) powers[i] = p;
    out.add_term(t.exponent, fracpoly::ParamPolynomial::monomial(k, t.coeff, powers));
  }
  return out;
}

fracpoly::Family load_config_family(const RunConfig& cfg) {
  if (cfg.polys.empty()) {
    if (cfg.family_path.empty()) throw std::invalid_argument("no family given (--family or --poly)");
    return fracpoly::load_family(cfg.family_path);
  }
  std::vector<fracpoly::RealExpPoly> members;
  std::size_t k = 0;
  for (const auto& p : cfg.polys) {
    for (auto piece : split(p, ';')) {
      if (trim(piece).empty()) continue;
      members.push_back(parse_poly_expr(piece));
      k = std::max(k, members.back().num_params());
    }
  }
  for (auto& m : members) m = m.with_params(k);
  return fracpoly::Family(std::move(members));
}

systems::System parse_system(std::string_view text) {
  text = trim(text);
  const auto colon = text.find(':');
  const std::string_view kind = text.substr(0, colon);
  const std::string_view arg = colon == std::string_view::npos ? "" : text.substr(colon + 1);
  if (kind == "cyclic") {
    if (arg.empty()) throw std::invalid_argument("cyclic system needs a modulus (cyclic:m)");
    return systems::System::cyclic(std::stoull(std::string(arg)));
  }
  const double alpha = arg.empty() ? systems::kDefaultAlpha : std::stod(std::string(arg));
  if (kind == "rotation") return systems::System::rotation(alpha);
  if (kind == "skew") return systems::System::skew(alpha);
  throw std::invalid_argument("unknown system '" + std::string(text) +
                              "' (cyclic:m | rotation[:alpha] | skew[:alpha])");
}

std::vector<std::int64_t> parse_int_list(std::string_view text) {
  std::vector<std::int64_t> out;
  for (auto piece : split(text, ',')) {
    piece = trim(piece);
    if (piece.empty()) throw std::invalid_argument("empty entry in integer list");
    std::size_t used = 0;
    const std::string s(piece);
    out.push_back(std::stoll(s, &used));
    if (used != s.size()) throw std::invalid_argument("malformed integer '" + s + "'");
  }
  return out;
}

averages::WeightSpec parse_weight(std::string_view text) {
  text = trim(text);
  if (text == "none") return averages::Unweighted{};
  if (text == "lambda") return averages::VonMangoldt{};
  if (text.starts_with("delta:")) return averages::DeltaVonMangoldt{parse_int_list(text.substr(6))};
  if (text.starts_with("bounded:")) {
    averages::Bounded b;
    for (auto piece : split(text.substr(8), ',')) b.period.push_back(parse_real(piece));
    return b;
  }
  throw std::invalid_argument("unknown weight '" + std::string(text) +
                              "' (none | lambda | delta:h1,... | bounded:c1,...)");
}

std::vector<std::uint64_t> parse_N_list(std::string_view text) {
  std::vector<std::uint64_t> out;
  for (auto piece : split(text, ',')) {
    piece = trim(piece);
    const std::string s(piece);
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() || !(v >= 1.0) || v != std::floor(v) || v > 1e15) {
      throw std::invalid_argument("N entries must be positive integers, got '" + s + "'");
    }
    out.push_back(static_cast<std::uint64_t>(v));
  }
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out[i] <= out[i - 1]) throw std::invalid_argument("N schedule must be strictly increasing");
  }
  if (out.empty()) throw std::invalid_argument("empty N schedule");
  return out;
}

systems::Observable parse_observable(const systems::System& sys, std::string_view text) {
  text = trim(text);
  if (text.starts_with("@")) {
    std::ifstream in{std::string(text.substr(1))};
    if (!in) throw std::invalid_argument("cannot open function file " + std::string(text.substr(1)));
    auto f = systems::observable_from_json(nlohmann::json::parse(in));
    systems::check_compatible(sys, f);
    return f;
  }
  if (text.starts_with("{")) {
    auto f = systems::observable_from_json(nlohmann::json::parse(text));
    systems::check_compatible(sys, f);
    return f;
  }
  const auto colon = text.find(':');
  const std::string_view kind = text.substr(0, colon);
  const std::string_view arg = colon == std::string_view::npos ? "" : text.substr(colon + 1);
  if (kind == "one") return systems::constant_observable(sys, 1.0);
  if (kind == "char") {
    const auto k = parse_int_list(arg);
    if (sys.is_cyclic()) {
      if (k.size() != 1) throw std::invalid_argument("cyclic characters take one frequency");
      return systems::CyclicFunction::character(sys.modulus(), k[0]);
    }
    if (k.size() != static_cast<std::size_t>(sys.dimension())) {
      throw std::invalid_argument("character frequency must have " +
                                  std::to_string(sys.dimension()) + " entries on " +
                                  sys.describe());
    }
    return systems::FourierPoly::character(sys.dimension(), {k[0], k.size() > 1 ? k[1] : 0});
  }
  if (kind == "indicator") {
    if (!sys.is_cyclic()) throw std::invalid_argument("indicator functions need a cyclic system");
    const auto r = parse_int_list(arg);
    const auto m = static_cast<std::int64_t>(sys.modulus());
    return systems::CyclicFunction::indicator(sys.modulus(),
                                              static_cast<std::uint64_t>(((r.at(0) % m) + m) % m));
  }
  if (kind == "arc") {
    if (!sys.is_rotation()) throw std::invalid_argument("Fejer arcs need a rotation system");
    const auto parts = split(arg, ',');
    if (parts.size() < 2 || parts.size() > 3) {
      throw std::invalid_argument("arc takes start,length[,order]");
    }
    const int order = parts.size() == 3 ? std::stoi(std::string(parts[2])) : 20;
    return systems::fejer_arc(parse_real(parts[0]), parse_real(parts[1]), order);
  }
  throw std::invalid_argument("unknown function '" + std::string(text) + "'");
}

primes::PrimeTable make_table(const RunConfig& cfg, std::uint64_t limit) {
  limit = std::max<std::uint64_t>(limit, 2);
  if (cfg.cache_path.empty()) return primes::sieve(limit);
  return primes::sieve_cached(limit, cfg.cache_path);
}

}  // namespace fracprime::cli
