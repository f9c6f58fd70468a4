#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dcurv {

// Exact arithmetic carrier for all curvature values. boost cpp_rational keeps
// values canonical: lowest terms, denominator > 0, zero stored as 0/1.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational rat(long long num, long long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  return Rational(BigInt(num), BigInt(den));
}

// "p/q" when the denominator is not 1, plain "p" otherwise.
inline std::string to_string(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) {
    s += '/';
    s += denominator(r).str();
  }
  return s;
}

inline Rational parse_rational(std::string_view text) {
  auto bad = [&] { throw std::invalid_argument("malformed rational: '" + std::string(text) + "'"); };
  auto parse_int = [&](std::string_view part) -> BigInt {
    if (part.empty()) bad();
    std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (i == part.size()) bad();
    for (std::size_t j = i; j < part.size(); ++j)
      if (!std::isdigit(static_cast<unsigned char>(part[j]))) bad();
    return BigInt(std::string(part));
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  BigInt num = parse_int(text.substr(0, slash));
  BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) bad();
  return Rational(num, den);
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace dcurv
