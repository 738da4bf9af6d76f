#include "momentkernel/precision.hpp"

#include <cctype>
#include <cmath>
#include <ios>

namespace momentkernel {

PrecisionScope::PrecisionScope(unsigned bits) : saved_digits10_(Real::default_precision()) {
  Real::default_precision(digits10_for_bits(bits));
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_digits10_); }

unsigned digits10_for_bits(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120));
}

unsigned precision_bits(const Real& x) {
  return static_cast<unsigned>(mpfr_get_prec(x.backend().data()));
}

Real unit_roundoff(unsigned bits) {
  PrecisionScope scope(bits);
  Real u(1);
  mpfr_div_2ui(u.backend().data(), u.backend().data(), bits, MPFR_RNDN);
  return u;
}

Real to_real(const Rational& q, unsigned bits) {
  PrecisionScope scope(bits);
  return Real(q);
}

Real to_real(long long v, unsigned bits) {
  PrecisionScope scope(bits);
  return Real(v);
}

bool is_rational_literal(std::string_view text) {
  if (text.empty()) return false;
  std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  bool digits = false;
  bool slash = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits = true;
    } else if (c == '/' && !slash && digits) {
      slash = true;
      digits = false;
    } else {
      return false;
    }
  }
  return digits;
}

namespace {

// Decimal digits with an optional sign. GMP reads a leading 0 as an octal
// prefix, so leading zeros are dropped first.
Integer decimal_integer(std::string digits) {
  bool negative = false;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
    negative = digits.front() == '-';
    digits.erase(digits.begin());
  }
  const auto first = digits.find_first_not_of('0');
  digits = first == std::string::npos ? "0" : digits.substr(first);
  const Integer v(digits);
  return negative ? Integer(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  if (s.empty()) throw MomentError("empty numeric literal");
  if (is_rational_literal(s)) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(decimal_integer(s));
    const Integer den = decimal_integer(s.substr(slash + 1));
    if (den == 0) throw MomentError("zero denominator in '" + s + "'");
    return Rational(decimal_integer(s.substr(0, slash)), den);
  }
  // Decimal literal: mantissa digits with an optional point and exponent.
  std::size_t i = 0;
  bool negative = false;
  if (s[i] == '+' || s[i] == '-') negative = s[i++] == '-';
  std::string mantissa;
  long long fraction_digits = 0;
  bool seen_point = false;
  bool any_digit = false;
  for (; i < s.size() && s[i] != 'e' && s[i] != 'E'; ++i) {
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      mantissa.push_back(s[i]);
      any_digit = true;
      if (seen_point) ++fraction_digits;
    } else if (s[i] == '.' && !seen_point) {
      seen_point = true;
    } else {
      throw MomentError("malformed numeric literal '" + s + "'");
    }
  }
  if (!any_digit) throw MomentError("malformed numeric literal '" + s + "'");
  long long exponent = 0;
  if (i < s.size()) {
    const std::string exp_text = s.substr(i + 1);
    if (exp_text.empty()) throw MomentError("malformed exponent in '" + s + "'");
    std::size_t used = 0;
    try {
      exponent = std::stoll(exp_text, &used);
    } catch (const std::exception&) {
      throw MomentError("malformed exponent in '" + s + "'");
    }
    if (used != exp_text.size()) throw MomentError("malformed exponent in '" + s + "'");
  }
  exponent -= fraction_digits;
  Rational value{decimal_integer(mantissa)};
  const Integer scale = bmp::pow(Integer(10), static_cast<unsigned>(exponent < 0 ? -exponent : exponent));
  if (exponent < 0) {
    value /= scale;
  } else {
    value *= scale;
  }
  return negative ? Rational(-value) : value;
}

Rational pow_int(const Rational& q, unsigned k) {
  return Rational(bmp::pow(bmp::numerator(q), k), bmp::pow(bmp::denominator(q), k));
}

Real parse_real(std::string_view text, unsigned bits) { return to_real(parse_rational(text), bits); }

std::string to_decimal(const Real& x, unsigned bits) {
  return x.str(static_cast<std::streamsize>(digits10_for_bits(bits)), std::ios_base::scientific);
}

std::string to_decimal(const Rational& q) { return to_decimal(to_real(q, 256), 256); }

std::string to_fraction(const Rational& q) {
  if (bmp::denominator(q) == 1) return bmp::numerator(q).str();
  return bmp::numerator(q).str() + "/" + bmp::denominator(q).str();
}

}  // namespace momentkernel
