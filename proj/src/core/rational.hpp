#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace svf {

using Rational = mpq_class;

// Accepts "p/q", "p", with optional leading sign. Result is canonicalized.
Rational parse_rational(std::string_view text);

// Canonical text form: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& value);

inline bool is_zero(const Rational& value) { return sgn(value) == 0; }

}  // namespace svf
