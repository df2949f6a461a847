#pragma once

#include <limits>
#include <string>

#include <json.hpp>

#include "mprover/belief.hpp"
#include "mprover/error.hpp"
#include "mprover/numeric.hpp"

namespace mprover::detail {

using nlohmann::json;

// Integers that fit in 64 bits are written as JSON numbers, larger ones as
// decimal strings. Readers accept both.
inline json count_to_json(const PathCount& n) {
  if (n >= 0 && n <= std::numeric_limits<std::uint64_t>::max()) {
    return json(n.convert_to<std::uint64_t>());
  }
  return json(n.str());
}

inline PathCount count_from_json(const json& j, Errc err = Errc::MalformedFile) {
  if (j.is_number_unsigned()) return PathCount(j.get<std::uint64_t>());
  if (j.is_number_integer()) return PathCount(j.get<std::int64_t>());
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s.empty() || s.find_first_not_of("-0123456789") != std::string::npos) {
      throw Error(err, "bad integer '" + s + "'");
    }
    return PathCount(s);
  }
  throw Error(err, "expected an integer, got " + j.dump());
}

inline json rational_to_json(const PathCount& num, const PathCount& den) {
  return json{{"num", count_to_json(num)}, {"den", count_to_json(den)}};
}

inline json rational_to_json(const Rational& r) {
  return rational_to_json(numerator(r), denominator(r));
}

inline Rational rational_from_json(const json& j, Errc err = Errc::MalformedFile) {
  if (!j.is_object() || !j.contains("num") || !j.contains("den")) {
    throw Error(err, "expected {num, den}, got " + j.dump());
  }
  PathCount den = count_from_json(j.at("den"), err);
  if (den == 0) throw Error(err, "zero denominator");
  return Rational(count_from_json(j.at("num"), err), den);
}

json context_to_json(const ContextTag& context);
ContextTag context_from_json(const json& j);

}  // namespace mprover::detail
