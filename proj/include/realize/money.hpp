#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "realize/error.hpp"

namespace realize {

/// Share counts. Always non-negative; events require strictly positive.
using Shares = std::int64_t;

/// Exact peso amount held as signed integer centavos.
class Money {
 public:
  constexpr Money() = default;

  static constexpr Money centavos(std::int64_t c) { return Money(c); }
  static constexpr Money pesos(std::int64_t p) { return Money(p * 100); }

  constexpr std::int64_t raw() const { return centavos_; }
  constexpr bool is_negative() const { return centavos_ < 0; }
  constexpr bool is_zero() const { return centavos_ == 0; }

  constexpr Money operator-() const { return Money(-centavos_); }
  constexpr Money operator+(Money o) const { return Money(centavos_ + o.centavos_); }
  constexpr Money operator-(Money o) const { return Money(centavos_ - o.centavos_); }
  constexpr Money& operator+=(Money o) {
    centavos_ += o.centavos_;
    return *this;
  }
  constexpr Money& operator-=(Money o) {
    centavos_ -= o.centavos_;
    return *this;
  }
  /// Per-share amount times a share count.
  constexpr Money operator*(Shares qty) const { return Money(centavos_ * qty); }

  constexpr auto operator<=>(const Money&) const = default;

 private:
  constexpr explicit Money(std::int64_t c) : centavos_(c) {}
  std::int64_t centavos_ = 0;
};

constexpr Money operator*(Shares qty, Money m) { return m * qty; }
constexpr Money abs(Money m) { return m.is_negative() ? -m : m; }
constexpr Money min(Money a, Money b) { return a < b ? a : b; }
constexpr Money max(Money a, Money b) { return a < b ? b : a; }

/// Non-negative fraction, at most one.
class Rate {
 public:
  constexpr Rate(std::int64_t numerator, std::int64_t denominator)
      : num_(numerator), den_(denominator) {
    if (den_ <= 0 || num_ < 0 || num_ > den_) {
      throw std::invalid_argument("rate must satisfy 0 <= n <= d, d > 0");
    }
  }
  static constexpr Rate percent(std::int64_t p) { return Rate(p, 100); }

  constexpr std::int64_t numerator() const { return num_; }
  constexpr std::int64_t denominator() const { return den_; }

  friend constexpr bool operator==(const Rate& a, const Rate& b) {
    return static_cast<__int128>(a.num_) * b.den_ ==
           static_cast<__int128>(b.num_) * a.den_;
  }

  /// "10%", or "n/d" when not a whole percent.
  std::string to_string() const {
    if ((num_ * 100) % den_ == 0) return std::to_string(num_ * 100 / den_) + "%";
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  std::int64_t num_;
  std::int64_t den_;
};

/// amount x rate rounded to the centavo, ties to even.
constexpr Money apply_rate(Money amount, Rate rate) {
  if (amount.is_negative()) {
    throw Error(ErrorCode::NegativeBase, "rate applied to a negative amount");
  }
  const __int128 product = static_cast<__int128>(amount.raw()) * rate.numerator();
  const __int128 den = rate.denominator();
  __int128 q = product / den;
  const __int128 r = product % den;
  if (2 * r > den || (2 * r == den && (q % 2) != 0)) ++q;
  return Money::centavos(static_cast<std::int64_t>(q));
}

struct MoneyFormat {
  bool thousands = true;
  /// Drop ".00" on whole amounts.
  bool trim_whole = false;
  bool peso_sign = false;
  /// Render negatives as "(1,000.00)" instead of "-1,000.00".
  bool parens = false;
};

inline std::string format_money(Money m, MoneyFormat f = {}) {
  const bool neg = m.is_negative();
  // centavos of INT64_MIN cannot occur for realistic amounts; unsigned keeps it safe.
  const std::uint64_t mag = neg ? 0 - static_cast<std::uint64_t>(m.raw())
                                : static_cast<std::uint64_t>(m.raw());
  std::string whole = std::to_string(mag / 100);
  if (f.thousands) {
    for (int i = static_cast<int>(whole.size()) - 3; i > 0; i -= 3) {
      whole.insert(static_cast<std::size_t>(i), ",");
    }
  }
  const auto cents = mag % 100;
  std::string body = f.peso_sign ? "₱" + whole : whole;
  if (!(f.trim_whole && cents == 0)) {
    body += '.';
    body += static_cast<char>('0' + cents / 10);
    body += static_cast<char>('0' + cents % 10);
  }
  if (!neg) return body;
  return f.parens ? "(" + body + ")" : "-" + body;
}

/// Plain "1234.50" form used by the DSL printer.
inline std::string to_decimal_string(Money m) {
  return format_money(m, {.thousands = false, .trim_whole = true});
}

/// Parses an unsigned decimal with at most two fraction digits ("50", "0.25").
inline std::optional<Money> parse_money(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::int64_t whole = 0;
  std::size_t i = 0;
  bool any = false;
  for (; i < text.size() && text[i] != '.'; ++i) {
    const char c = text[i];
    if (c < '0' || c > '9') return std::nullopt;
    if (whole > (INT64_MAX / 100 - 9) / 10) return std::nullopt;
    whole = whole * 10 + (c - '0');
    any = true;
  }
  if (!any) return std::nullopt;
  std::int64_t cents = 0;
  if (i < text.size()) {
    const auto frac = text.substr(i + 1);
    if (frac.empty() || frac.size() > 2) return std::nullopt;
    for (char c : frac) {
      if (c < '0' || c > '9') return std::nullopt;
      cents = cents * 10 + (c - '0');
    }
    if (frac.size() == 1) cents *= 10;
  }
  return Money::centavos(whole * 100 + cents);
}

}  // namespace realize
