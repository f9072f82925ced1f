#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace souvlaki {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt ipow(std::int64_t base, unsigned exponent);
Rational rpow(const Rational& base, unsigned exponent);

/// Serializes as `p/q` even for integers, so that every field parses back as a rational.
std::string to_fraction(const Rational& value);
Rational parse_fraction(std::string_view text);

double to_double(const Rational& value);
long double to_long_double(const Rational& value);

/// 17 significant digits: enough for a lossless double round trip.
std::string format_real(double value);

std::int64_t to_int64(const BigInt& value);

}  // namespace souvlaki
