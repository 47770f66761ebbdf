#pragma once

#include <limits>
#include <sstream>
#include <string>
#include <variant>

#include "ajc/rational.hpp"

namespace ajc {

/// An exact rational when the whole computation path stayed exact,
/// otherwise a binary64 value.
using Value = std::variant<Rational, double>;

inline bool is_exact(const Value& v) { return std::holds_alternative<Rational>(v); }

inline double to_double(const Value& v) {
  return is_exact(v) ? std::get<Rational>(v).to_double() : std::get<double>(v);
}

inline std::string value_str(const Value& v) {
  if (is_exact(v)) return std::get<Rational>(v).str();
  std::ostringstream os;
  os.precision(std::numeric_limits<double>::max_digits10);
  os << std::get<double>(v);
  return os.str();
}

/// Exact comparison when both sides are rational, binary64 otherwise.
inline bool value_less(const Value& a, const Value& b) {
  if (is_exact(a) && is_exact(b)) return std::get<Rational>(a) < std::get<Rational>(b);
  return to_double(a) < to_double(b);
}

}  // namespace ajc
