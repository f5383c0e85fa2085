#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace topo {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt pow10(long long k) {
  BigInt r = 1;
  while (k-- > 0) r *= 10;
  return r;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::string to_string(const Rational& r) { return r.str(); }

inline Rational rational_pow(const Rational& base, int exp) {
  Rational r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace topo
