#include "detlab/semifield.hpp"

#include <cctype>
#include <stdexcept>

namespace detlab {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

BigInt pow10(std::size_t k) {
  BigInt p = 1;
  for (std::size_t i = 0; i < k; ++i) p *= 10;
  return p;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string original(text);
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  Rational result;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw std::invalid_argument("not a rational number: '" + original + "'");
    const BigInt d{std::string(den)};
    if (d == 0) throw std::invalid_argument("zero denominator: '" + original + "'");
    result = Rational(BigInt(std::string(num)), d);
  } else {
    auto dot = text.find('.');
    auto int_part = text.substr(0, dot);
    std::string_view frac_part = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
    if (dot != std::string_view::npos && frac_part.empty())
      throw std::invalid_argument("not a rational number: '" + original + "'");
    if (int_part.empty() && dot == std::string_view::npos)
      throw std::invalid_argument("not a rational number: '" + original + "'");
    if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)))
      throw std::invalid_argument("not a rational number: '" + original + "'");
    if (int_part.empty() && frac_part.empty()) throw std::invalid_argument("not a rational number: '" + original + "'");
    BigInt whole = int_part.empty() ? BigInt(0) : BigInt(std::string(int_part));
    BigInt frac = frac_part.empty() ? BigInt(0) : BigInt(std::string(frac_part));
    const BigInt scale = pow10(frac_part.size());
    result = Rational(whole * scale + frac, scale);
  }
  return negative ? Rational(-result) : result;
}

std::string format_rational(const Rational& value) {
  BigInt num = boost::multiprecision::numerator(value);
  BigInt den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();

  BigInt rest = den;
  std::size_t twos = 0, fives = 0;
  while (rest % 2 == 0) {
    rest /= 2;
    ++twos;
  }
  while (rest % 5 == 0) {
    rest /= 5;
    ++fives;
  }
  if (rest != 1) return num.str() + "/" + den.str();

  const std::size_t digits = std::max(twos, fives);
  const BigInt scale = pow10(digits);
  const bool negative = num < 0;
  BigInt scaled = (negative ? BigInt(-num) : num) * (scale / den);
  BigInt whole = scaled / scale;
  std::string frac = BigInt(scaled % scale).str();
  frac.insert(0, digits - frac.size(), '0');
  return (negative ? "-" : "") + whole.str() + "." + frac;
}

bool BooleanSemifield::inverse(bool x) {
  if (!x) throw std::domain_error("bool semifield: zero has no inverse");
  return true;
}

bool BooleanSemifield::parse(std::string_view text) {
  if (text == "1") return true;
  if (text == "0") return false;
  throw std::invalid_argument("not a bool weight: '" + std::string(text) + "'");
}

TropicalWeight TropicalSemifield::plus(const TropicalWeight& x, const TropicalWeight& y) {
  if (x.infinite) return y;
  if (y.infinite) return x;
  return x.value <= y.value ? x : y;
}

TropicalWeight TropicalSemifield::times(const TropicalWeight& x, const TropicalWeight& y) {
  if (x.infinite || y.infinite) return TropicalWeight::inf();
  return TropicalWeight::of(x.value + y.value);
}

TropicalWeight TropicalSemifield::inverse(const TropicalWeight& x) {
  if (x.infinite) throw std::domain_error("tropical semifield: zero (inf) has no inverse");
  return TropicalWeight::of(-x.value);
}

bool TropicalSemifield::less(const TropicalWeight& x, const TropicalWeight& y) {
  if (x.infinite) return false;
  if (y.infinite) return true;
  return x.value < y.value;
}

TropicalWeight TropicalSemifield::parse(std::string_view text) {
  if (text == "inf" || text == "+inf" || text == "-inf" || text == "infinity")
    throw std::invalid_argument("tropical weight 'inf' is not allowed; omit the line instead");
  return TropicalWeight::of(parse_rational(text));
}

std::string TropicalSemifield::format(const TropicalWeight& x) {
  return x.infinite ? "inf" : format_rational(x.value);
}

}  // namespace detlab
