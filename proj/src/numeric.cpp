#include "mprover/numeric.hpp"

#include <cctype>

#include "mprover/error.hpp"

namespace mprover {

namespace {

PathCount parse_integer(const std::string& digits, const std::string& whole) {
  if (digits.empty()) throw Error(Errc::ParseError, "bad number: '" + whole + "'");
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw Error(Errc::ParseError, "bad number: '" + whole + "'");
    }
  }
  return PathCount(digits);
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string body = text;
  bool negative = false;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
    negative = body[0] == '-';
    body.erase(0, 1);
  }
  Rational value;
  if (auto slash = body.find('/'); slash != std::string::npos) {
    PathCount num = parse_integer(body.substr(0, slash), text);
    PathCount den = parse_integer(body.substr(slash + 1), text);
    if (den == 0) throw Error(Errc::ParseError, "zero denominator: '" + text + "'");
    value = Rational(num, den);
  } else if (auto dot = body.find('.'); dot != std::string::npos) {
    std::string int_part = body.substr(0, dot);
    std::string frac_part = body.substr(dot + 1);
    if (int_part.empty()) int_part = "0";
    if (frac_part.empty()) frac_part = "0";
    PathCount scale = boost::multiprecision::pow(PathCount(10),
                                                 static_cast<unsigned>(frac_part.size()));
    value = Rational(parse_integer(int_part, text)) +
            Rational(parse_integer(frac_part, text), scale);
  } else {
    value = Rational(parse_integer(body, text));
  }
  return negative ? Rational(-value) : value;
}

PathCount binomial(const PathCount& n, const PathCount& k) {
  if (k < 0 || n < 0 || k > n) return 0;
  PathCount kk = k;
  if (kk > n - kk) kk = n - kk;
  PathCount result = 1;
  for (PathCount i = 1; i <= kk; ++i) {
    result *= n - kk + i;
    result /= i;
  }
  return result;
}

}  // namespace mprover
