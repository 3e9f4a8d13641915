#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace symspec {

// Exact rational arithmetic used by the series engine and the closed-form
// coefficient formulas.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

// Serializes as "p/q" (or just "p" when q == 1), matching the CLI JSON format.
inline std::string to_fraction_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace symspec
