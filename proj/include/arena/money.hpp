#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace arena {

// Exact currency amount in integer cents. All prices, budgets, and costs are
// held in this form; floating point enters only at the reward/metric boundary.
struct Money {
  std::int64_t cents = 0;

  constexpr auto operator<=>(const Money&) const = default;

  double dollars() const { return static_cast<double>(cents) / 100.0; }
};

constexpr Money cents(std::int64_t c) { return Money{c}; }
constexpr Money dollars(std::int64_t d) { return Money{d * 100}; }

// Nearest-cent rounding, ties away from zero.
Money money_from_dollars(double value);

// Canonical form: '$' + integer part + '.' + exactly two decimals.
// format_money(Money{5600}) == "$56.00".
std::string format_money(Money m);

// Lenient numeric parse: optional '$', optional thousands commas, zero to two
// decimal places, surrounding whitespace. Anything else (sign, >2 decimals,
// stray text, empty) is rejected.
std::optional<Money> parse_money(std::string_view text);

}  // namespace arena
