#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "realize/error.hpp"
#include "realize/money.hpp"

namespace realize {

/// Discrete time index. Events at the same tick keep scenario order.
struct Tick {
  std::int64_t value = 0;

  constexpr auto operator<=>(const Tick&) const = default;
  std::string to_string() const { return "t" + std::to_string(value); }
};

/// A security. Two holdings are identical iff their symbols are equal.
class SecurityId {
 public:
  SecurityId() = default;
  explicit SecurityId(std::string symbol) : symbol_(std::move(symbol)) {
    if (symbol_.empty()) throw std::invalid_argument("empty security symbol");
  }

  const std::string& symbol() const { return symbol_; }
  auto operator<=>(const SecurityId&) const = default;

 private:
  std::string symbol_;
};

/// Per-share quotes keyed by security and tick.
class PricePath {
 public:
  /// Returns false when a quote for (sec, t) already exists.
  bool set(const SecurityId& sec, Tick t, Money price) {
    return quotes_[sec].emplace(t, price).second;
  }

  bool has(const SecurityId& sec, Tick t) const {
    const auto it = quotes_.find(sec);
    return it != quotes_.end() && it->second.count(t) != 0;
  }

  bool quotes(const SecurityId& sec) const { return quotes_.count(sec) != 0; }

  const std::map<SecurityId, std::map<Tick, Money>>& all() const { return quotes_; }

  bool operator==(const PricePath&) const = default;

 private:
  std::map<SecurityId, std::map<Tick, Money>> quotes_;
};

inline Money price_at(const PricePath& path, const SecurityId& sec, Tick t) {
  const auto& all = path.all();
  if (const auto it = all.find(sec); it != all.end()) {
    if (const auto q = it->second.find(t); q != it->second.end()) return q->second;
  }
  throw Error(ErrorCode::MissingPrice,
              "no price for " + sec.symbol() + " at " + t.to_string());
}

}  // namespace realize
