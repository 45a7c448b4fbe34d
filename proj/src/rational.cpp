#include "fracprime/rational.hpp"

#include <stdexcept>

namespace fracprime {

namespace {

BigInt parse_integer(std::string_view text, std::string_view whole) {
  if (text.empty()) {
    throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
  }
  std::size_t start = (text.front() == '-' || text.front() == '+') ? 1 : 0;
  if (start == text.size()) {
    throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
  }
  for (std::size_t i = start; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') {
      throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
    }
  }
  BigInt value(std::string(text.substr(start)));
  return text.front() == '-' ? BigInt(-value) : value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = trim(text);
  const auto slash = whole.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_integer(whole, whole));
  }
  BigInt num = parse_integer(trim(whole.substr(0, slash)), whole);
  BigInt den = parse_integer(trim(whole.substr(slash + 1)), whole);
  if (den == 0) {
    throw std::invalid_argument("zero denominator in '" + std::string(whole) + "'");
  }
  return Rational(num, den);
}

std::string to_string(const Rational& value) {
  const BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

BigInt floor(const Rational& value) {
  const BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  BigInt q = num / den;  // truncates toward zero
  if (num < 0 && q * den != num) q -= 1;
  return q;
}

bool is_integer(const Rational& value) {
  return boost::multiprecision::denominator(value) == 1;
}

}  // namespace fracprime
