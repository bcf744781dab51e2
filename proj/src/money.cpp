#include "arena/money.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace arena {

namespace {

constexpr std::int64_t kMaxUnits = 999'999'999'999LL;  // parse guard

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Money money_from_dollars(double value) {
  return Money{static_cast<std::int64_t>(std::llround(value * 100.0))};
}

std::string format_money(Money m) {
  std::int64_t c = m.cents;
  std::string sign;
  if (c < 0) {
    sign = "-";
    c = -c;
  }
  std::string out = sign + "$" + std::to_string(c / 100) + ".";
  std::int64_t frac = c % 100;
  out += static_cast<char>('0' + frac / 10);
  out += static_cast<char>('0' + frac % 10);
  return out;
}

std::optional<Money> parse_money(std::string_view text) {
  size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  std::string_view s = text.substr(b, e - b);
  if (s.empty()) return std::nullopt;
  if (s.front() == '$') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;

  std::string whole, frac;
  size_t dot = s.find('.');
  std::string_view int_part = (dot == std::string_view::npos) ? s : s.substr(0, dot);
  if (dot != std::string_view::npos) {
    std::string_view f = s.substr(dot + 1);
    if (f.empty() || f.size() > 2 || !all_digits(f)) return std::nullopt;
    frac.assign(f);
  }
  if (int_part.empty()) return std::nullopt;

  // Strip thousands separators; groups after the first must be three digits.
  size_t group = 0, group_len = 0;
  for (char c : int_part) {
    if (c == ',') {
      if (group_len == 0) return std::nullopt;
      if (group > 0 && group_len != 3) return std::nullopt;
      ++group;
      group_len = 0;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    whole += c;
    ++group_len;
  }
  if (group_len == 0 || (group > 0 && group_len != 3)) return std::nullopt;
  if (whole.size() > 12) return std::nullopt;

  std::int64_t units = std::strtoll(whole.c_str(), nullptr, 10);
  if (units > kMaxUnits) return std::nullopt;
  std::int64_t c = units * 100;
  if (frac.size() == 1) {
    c += (frac[0] - '0') * 10;
  } else if (frac.size() == 2) {
    c += (frac[0] - '0') * 10 + (frac[1] - '0');
  }
  return Money{c};
}

}  // namespace arena
