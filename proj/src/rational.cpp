#include "xcov/rational.hpp"

#include "xcov/errors.hpp"

#include <cctype>
#include <cstdio>

namespace xcov {

namespace {

BigInt parse_digits(std::string_view digits, std::size_t offset) {
  BigInt value = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(digits[i]))) {
      throw ParseError("expected digit in number", offset + i);
    }
    value = value * 10 + (digits[i] - '0');
  }
  return value;
}

}  // namespace

ExactScalar parse_exact(std::string_view text) {
  if (text.empty()) throw ParseError("empty number", 0);

  std::size_t pos = 0;
  bool negative = false;
  if (text[0] == '+' || text[0] == '-') {
    negative = text[0] == '-';
    pos = 1;
  }
  std::string_view body = text.substr(pos);
  if (body.empty()) throw ParseError("sign without digits", pos);

  ExactScalar value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (num.empty() || den.empty()) throw ParseError("malformed fraction", pos + slash);
    BigInt d = parse_digits(den, pos + slash + 1);
    if (d == 0) throw ParseError("zero denominator", pos + slash + 1);
    value = ExactScalar(parse_digits(num, pos), d);
  } else {
    int exponent = 0;
    if (auto e = body.find_first_of("eE"); e != std::string_view::npos) {
      auto exp_text = body.substr(e + 1);
      bool exp_negative = false;
      std::size_t k = 0;
      if (!exp_text.empty() && (exp_text[0] == '+' || exp_text[0] == '-')) {
        exp_negative = exp_text[0] == '-';
        k = 1;
      }
      if (k == exp_text.size()) throw ParseError("malformed exponent", pos + e);
      BigInt magnitude = parse_digits(exp_text.substr(k), pos + e + 1 + k);
      if (magnitude > 400) throw ParseError("exponent out of range", pos + e);
      exponent = magnitude.convert_to<int>() * (exp_negative ? -1 : 1);
      body = body.substr(0, e);
    }
    std::string_view int_part = body;
    std::string_view frac_part;
    if (auto dot = body.find('.'); dot != std::string_view::npos) {
      int_part = body.substr(0, dot);
      frac_part = body.substr(dot + 1);
    }
    if (int_part.empty() && frac_part.empty()) throw ParseError("no digits in number", pos);
    BigInt mantissa = parse_digits(int_part, pos);
    for (std::size_t i = 0; i < frac_part.size(); ++i) {
      char c = frac_part[i];
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        throw ParseError("expected digit in number", pos + int_part.size() + 1 + i);
      }
      mantissa = mantissa * 10 + (c - '0');
    }
    exponent -= static_cast<int>(frac_part.size());
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(std::abs(exponent)));
    value = exponent >= 0 ? ExactScalar(mantissa * scale) : ExactScalar(mantissa, scale);
  }
  return negative ? ExactScalar(-value) : value;
}

std::string to_fraction_string(const ExactScalar& value) {
  const BigInt& den = boost::multiprecision::denominator(value);
  if (den == 1) return boost::multiprecision::numerator(value).str();
  return boost::multiprecision::numerator(value).str() + "/" + den.str();
}

double to_double(const ExactScalar& value) { return value.convert_to<double>(); }

std::string format_g12(double value) {
  char buffer[64];
  if (value == 0) value = 0;  // no "-0"
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  return buffer;
}

ExactScalar ipow(const ExactScalar& base, unsigned exponent) {
  ExactScalar result = 1;
  ExactScalar factor = base;
  while (exponent > 0) {
    if (exponent & 1u) result *= factor;
    exponent >>= 1;
    if (exponent > 0) factor *= factor;
  }
  return result;
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt result = 1;
  for (unsigned i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
  }
  return result;
}

}  // namespace xcov
