#include "umbral/rational.hpp"

#include <cctype>

#include "umbral/error.hpp"

namespace umbral {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Integer parse_integer(std::string_view digits, std::string_view whole) {
  digits = trim(digits);
  std::size_t start = 0;
  if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) start = 1;
  if (start == digits.size()) {
    throw Error(ErrorCode::InvalidArgument, "malformed rational '" + std::string(whole) + "'");
  }
  for (std::size_t i = start; i < digits.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(digits[i]))) {
      throw Error(ErrorCode::InvalidArgument, "malformed rational '" + std::string(whole) + "'");
    }
  }
  std::string text(digits[0] == '+' ? digits.substr(1) : digits);
  return Integer(text, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  Integer num = parse_integer(text.substr(0, slash), text);
  Integer den = parse_integer(text.substr(slash + 1), text);
  if (den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator in '" + std::string(text) + "'");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rational factorial(unsigned n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

Rational binomial(unsigned n, unsigned k) {
  if (k > n) return Rational(0);
  Integer b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Rational(b);
}

Rational pow(const Rational& base, unsigned exponent) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
  return r;
}

bool is_integer(const Rational& value) { return value.get_den() == 1; }

}  // namespace umbral
