#include "netdefend/rational.hpp"

#include <cctype>
#include <map>
#include <stdexcept>

namespace netdef {

namespace {

Int parse_int(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty integer");
  std::size_t i = 0;
  bool neg = false;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) throw std::invalid_argument("sign without digits");
  Int v = 0;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw std::invalid_argument("not a number: " + std::string(s));
    v = v * 10 + (s[i] - '0');
  }
  return neg ? Int(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Int num = parse_int(text.substr(0, slash));
    Int den = parse_int(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view frac = text.substr(dot + 1);
    Int whole = parse_int(text.substr(0, dot));
    if (frac.empty()) return Rational(whole);
    Int frac_digits = parse_int(frac);
    if (frac_digits < 0) throw std::invalid_argument("malformed decimal");
    Int scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    bool neg = !text.empty() && text[0] == '-';
    Rational r = Rational(abs(whole)) + Rational(frac_digits, scale);
    return neg ? -r : r;
  }
  return Rational(parse_int(text));
}

std::string format_rational(const Rational& value) {
  std::string num = numerator(value).str();
  if (denominator(value) == 1) return num;
  return num + "/" + denominator(value).str();
}

std::string format_repeating_decimal(const Rational& value) {
  Int num = numerator(value);
  Int den = denominator(value);
  std::string out;
  if (num < 0) {
    out = "-";
    num = -num;
  }
  out += Int(num / den).str();
  Int rem = num % den;
  if (rem == 0) return out;
  out += ".";
  // Long division, detecting the first repeated remainder.
  std::map<Int, std::size_t> seen;
  std::string digits;
  while (rem != 0 && !seen.count(rem)) {
    seen[rem] = digits.size();
    rem *= 10;
    digits += static_cast<char>('0' + static_cast<int>(rem / den));
    rem %= den;
  }
  if (rem == 0) return out + digits;
  std::size_t start = seen[rem];
  return out + digits.substr(0, start) + "(" + digits.substr(start) + ")";
}

}  // namespace netdef
