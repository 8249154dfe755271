#include "finq/scalar.hpp"

#include <cctype>

namespace finq {

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw DomainError("empty number");
  try {
    if (auto slash = s.find('/'); slash != std::string::npos) {
      BigInt num(s.substr(0, slash)), den(s.substr(slash + 1));
      if (den == 0) throw DomainError("zero denominator in '" + text + "'");
      return Rational(num, den);
    }
    // Decimal with optional exponent, parsed digit by digit so 1e-3 stays exact.
    std::size_t pos = 0;
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
    BigInt digits = 0;
    long scale = 0;
    bool seen_digit = false, seen_point = false;
    for (; pos < s.size(); ++pos) {
      char c = s[pos];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        digits = digits * 10 + (c - '0');
        if (seen_point) --scale;
        seen_digit = true;
      } else if (c == '.' && !seen_point) {
        seen_point = true;
      } else {
        break;
      }
    }
    if (!seen_digit) throw DomainError("not a number: '" + text + "'");
    if (pos < s.size()) {
      if (s[pos] != 'e' && s[pos] != 'E') throw DomainError("not a number: '" + text + "'");
      scale += std::stol(s.substr(pos + 1));
    }
    Rational value(digits);
    BigInt ten = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(scale < 0 ? -scale : scale));
    value = scale < 0 ? value / Rational(ten) : value * Rational(ten);
    return negative ? Rational(-value) : value;
  } catch (const std::invalid_argument&) {
    throw DomainError("not a number: '" + text + "'");
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const DomainError*>(&e)) throw;
    throw DomainError("not a number: '" + text + "'");
  }
}

}  // namespace finq
