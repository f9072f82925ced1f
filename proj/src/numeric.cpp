#include "souvlaki/numeric.hpp"

#include <cstdio>
#include <limits>

#include "souvlaki/errors.hpp"

namespace souvlaki {

BigInt ipow(std::int64_t base, unsigned exponent) {
  BigInt result = 1;
  BigInt b = base;
  while (exponent > 0) {
    if (exponent & 1U) result *= b;
    b *= b;
    exponent >>= 1U;
  }
  return result;
}

Rational rpow(const Rational& base, unsigned exponent) {
  return Rational(boost::multiprecision::pow(numerator(base), exponent),
                  boost::multiprecision::pow(denominator(base), exponent));
}

std::string to_fraction(const Rational& value) {
  return numerator(value).str() + "/" + denominator(value).str();
}

Rational parse_fraction(std::string_view text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) return Rational(BigInt(std::string(text)));
    BigInt num(std::string(text.substr(0, slash)));
    BigInt den(std::string(text.substr(slash + 1)));
    if (den == 0) throw InvalidArgument("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw InvalidArgument("not a rational: '" + std::string(text) + "'");
  }
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

long double to_long_double(const Rational& value) {
  // convert_to<long double> goes through the exact quotient, so no overflow for huge p and q.
  return value.convert_to<long double>();
}

std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::int64_t to_int64(const BigInt& value) {
  if (value > std::numeric_limits<std::int64_t>::max() ||
      value < std::numeric_limits<std::int64_t>::min()) {
    throw CoordinateError("integer does not fit in 64 bits: " + value.str());
  }
  return value.convert_to<std::int64_t>();
}

}  // namespace souvlaki
