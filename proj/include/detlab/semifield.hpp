#pragma once

#include <concepts>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace detlab {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Parses a decimal ("-1.25", "3") or fraction ("7/3") literal exactly.
/// Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

/// Canonical text: integer, terminating decimal, or p/q when the decimal
/// expansion does not terminate.
std::string format_rational(const Rational& value);

// A commutative semifield, exposed as a stateless policy type. Equality is
// exact; `less` is an arbitrary total order used for canonical sorting.
template <class K>
concept Semifield = requires(const typename K::value_type& x, const typename K::value_type& y, std::string_view s) {
  { K::zero() } -> std::convertible_to<typename K::value_type>;
  { K::one() } -> std::convertible_to<typename K::value_type>;
  { K::plus(x, y) } -> std::convertible_to<typename K::value_type>;
  { K::times(x, y) } -> std::convertible_to<typename K::value_type>;
  { K::inverse(x) } -> std::convertible_to<typename K::value_type>;
  { K::equal(x, y) } -> std::convertible_to<bool>;
  { K::less(x, y) } -> std::convertible_to<bool>;
  { K::is_zero(x) } -> std::convertible_to<bool>;
  { K::parse(s) } -> std::convertible_to<typename K::value_type>;
  { K::format(x) } -> std::convertible_to<std::string>;
  { K::zero_sum_free } -> std::convertible_to<bool>;
  { K::name } -> std::convertible_to<std::string_view>;
};

/// <{0,1}, or, and, 0, 1>
struct BooleanSemifield {
  using value_type = bool;
  static constexpr bool zero_sum_free = true;
  static constexpr std::string_view name = "bool";

  static bool zero() { return false; }
  static bool one() { return true; }
  static bool plus(bool x, bool y) { return x || y; }
  static bool times(bool x, bool y) { return x && y; }
  static bool inverse(bool x);
  static bool equal(bool x, bool y) { return x == y; }
  static bool less(bool x, bool y) { return x < y; }
  static bool is_zero(bool x) { return !x; }
  static bool parse(std::string_view text);
  static std::string format(bool x) { return x ? "1" : "0"; }
};

/// Element of the tropical semifield: a rational, or +infinity (the zero).
struct TropicalWeight {
  bool infinite = true;
  Rational value = 0;

  static TropicalWeight inf() { return {}; }
  static TropicalWeight of(Rational v) { return {false, std::move(v)}; }

  friend bool operator==(const TropicalWeight& a, const TropicalWeight& b) {
    return a.infinite == b.infinite && (a.infinite || a.value == b.value);
  }
};

/// <Q u {inf}, min, +, inf, 0> with exact rational arithmetic.
struct TropicalSemifield {
  using value_type = TropicalWeight;
  static constexpr bool zero_sum_free = true;
  static constexpr std::string_view name = "tropical";

  static TropicalWeight zero() { return TropicalWeight::inf(); }
  static TropicalWeight one() { return TropicalWeight::of(0); }
  static TropicalWeight plus(const TropicalWeight& x, const TropicalWeight& y);
  static TropicalWeight times(const TropicalWeight& x, const TropicalWeight& y);
  static TropicalWeight inverse(const TropicalWeight& x);
  static bool equal(const TropicalWeight& x, const TropicalWeight& y) { return x == y; }
  static bool less(const TropicalWeight& x, const TropicalWeight& y);
  static bool is_zero(const TropicalWeight& x) { return x.infinite; }
  /// Rejects "inf": a zero weight is written by omitting the line.
  static TropicalWeight parse(std::string_view text);
  static std::string format(const TropicalWeight& x);
};

static_assert(Semifield<BooleanSemifield>);
static_assert(Semifield<TropicalSemifield>);

}  // namespace detlab
