#include "evlab/rational.hpp"

#include <cctype>
#include <stdexcept>
#include <string>

namespace evlab {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string original(text);
  auto fail = [&] { throw std::invalid_argument("not a number: '" + original + "'"); };

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    const bool negative = !num.empty() && num.front() == '-';
    if (negative) num.remove_prefix(1);
    if (!all_digits(num) || !all_digits(den)) fail();
    Rational q(std::string(negative ? "-" : "") + std::string(num) + "/" + std::string(den), 10);
    if (q.get_den() == 0) fail();
    q.canonicalize();
    return q;
  }

  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  long exponent = 0;
  if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    auto exp_text = text.substr(e + 1);
    const bool exp_negative = !exp_text.empty() && exp_text.front() == '-';
    if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) exp_text.remove_prefix(1);
    if (!all_digits(exp_text) || exp_text.size() > 4) fail();
    exponent = std::stol(std::string(exp_text)) * (exp_negative ? -1 : 1);
    text = text.substr(0, e);
  }
  std::string digits;
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto whole = text.substr(0, dot);
    const auto frac = text.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac))) {
      fail();
    }
    digits = std::string(whole) + std::string(frac);
    exponent -= static_cast<long>(frac.size());
  } else {
    if (!all_digits(text)) fail();
    digits = std::string(text);
  }
  mpz_class value(digits, 10);  // base 0 would read a leading zero as octal
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational q = exponent < 0 ? Rational(value, scale) : Rational(value * scale);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

}  // namespace evlab
