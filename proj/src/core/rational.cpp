#include "core/rational.hpp"

#include <cctype>

#include "core/error.hpp"

namespace svf {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Input: return "input error";
    case ErrorKind::Precondition: return "precondition error";
    case ErrorKind::Unsupported: return "unsupported model";
    case ErrorKind::Resource: return "resource error";
    case ErrorKind::Consistency: return "consistency error";
    case ErrorKind::Internal: return "internal error";
  }
  return "error";
}

namespace {

bool valid_integer(std::string_view digits, bool allow_sign) {
  if (digits.empty()) return false;
  std::size_t start = 0;
  if (allow_sign && (digits[0] == '-' || digits[0] == '+')) start = 1;
  if (start == digits.size()) return false;
  for (std::size_t i = start; i < digits.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(digits[i]))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_integer(num, true) || !valid_integer(den, false))
    fail(ErrorKind::Input, "malformed rational '" + std::string(text) + "'");
  std::string num_text(num);
  if (num_text[0] == '+') num_text.erase(0, 1);
  mpz_class p(num_text, 10);
  mpz_class q(std::string(den), 10);
  if (q == 0) fail(ErrorKind::Input, "zero denominator in '" + std::string(text) + "'");
  Rational value(p, q);
  value.canonicalize();
  return value;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

}  // namespace svf
