#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace mprover {

// Exact path counts. Never rounded.
using PathCount = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(const PathCount& n) { return n.convert_to<double>(); }

inline Rational make_rational(const PathCount& num, const PathCount& den) {
  return Rational(num, den);
}

inline std::string to_string(const PathCount& n) { return n.str(); }

// "num/den" in lowest terms.
inline std::string to_string(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

// Accepts "n", "n/d" or a decimal such as "0.25" (read exactly).
Rational parse_rational(const std::string& text);

// C(n, k) exactly; 0 when k > n.
PathCount binomial(const PathCount& n, const PathCount& k);

}  // namespace mprover
