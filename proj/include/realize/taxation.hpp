#pragma once

#include <cstdint>
#include <map>
#include <string_view>
#include <vector>

#include "realize/market.hpp"
#include "realize/money.hpp"
#include "realize/realization.hpp"

namespace realize {

/// PaperFlat: 10% of the whole net gain.
/// Statutory: 5% of the first ₱100,000.00 of net gain, 10% of the excess.
enum class RateSchedule { PaperFlat, Statutory };

constexpr std::string_view to_string(RateSchedule s) {
  return s == RateSchedule::PaperFlat ? "paper" : "statutory";
}

inline constexpr Money kStatutoryTierBoundary = Money::pesos(100'000);
inline constexpr Rate kLowerTierRate{5, 100};
inline constexpr Rate kFlatRate{10, 100};

/// Groups realization events into netting periods.
struct NettingWindow {
  enum class Kind { PerTick, Fixed, WholeRun };
  Kind kind = Kind::PerTick;
  std::int64_t width = 1;  // Fixed only: ticks [k*width, (k+1)*width)

  static NettingWindow per_tick() { return {}; }
  static NettingWindow whole_run() { return {Kind::WholeRun, 0}; }
  static NettingWindow fixed(std::int64_t w) { return {Kind::Fixed, w}; }

  std::int64_t key(Tick t) const {
    switch (kind) {
      case Kind::PerTick: return t.value;
      case Kind::Fixed: return t.value >= 0 ? t.value / width : -((-t.value + width - 1) / width);
      case Kind::WholeRun: return 0;
    }
    return 0;
  }

  bool operator==(const NettingWindow&) const = default;
};

struct PeriodNet {
  /// Tick of the last realization in the window; tax accrues there.
  Tick period;
  Money net_gain;
  bool operator==(const PeriodNet&) const = default;
};

struct TaxLine {
  Tick period;
  Money net_capital_gain;  // signed; losses are reported, never carried over
  Money tax_due;
  bool operator==(const TaxLine&) const = default;
};

struct TaxTimeline {
  std::vector<TaxLine> lines;
  Money total_tax;
  bool operator==(const TaxTimeline&) const = default;
};

/// Signed sum of gains per netting window. Windows without events are omitted.
inline std::vector<PeriodNet> net_by_period(const std::vector<RealizationEvent>& events,
                                            NettingWindow window = {}) {
  std::map<std::int64_t, PeriodNet> acc;
  for (const auto& e : events) {
    auto [it, fresh] = acc.try_emplace(window.key(e.at), PeriodNet{e.at, Money{}});
    it->second.net_gain += e.gain_total;
    if (it->second.period < e.at) it->second.period = e.at;
  }
  std::vector<PeriodNet> out;
  out.reserve(acc.size());
  for (auto& [key, p] : acc) out.push_back(p);
  return out;
}

inline Money tax_due(Money net_gain, RateSchedule schedule) {
  if (net_gain <= Money{}) return Money{};
  if (schedule == RateSchedule::PaperFlat) return apply_rate(net_gain, kFlatRate);
  return apply_rate(min(net_gain, kStatutoryTierBoundary), kLowerTierRate) +
         apply_rate(max(net_gain - kStatutoryTierBoundary, Money{}), kFlatRate);
}

inline TaxTimeline tax_timeline(const std::vector<RealizationEvent>& events,
                                NettingWindow window = {},
                                RateSchedule schedule = RateSchedule::PaperFlat) {
  TaxTimeline t;
  for (const auto& p : net_by_period(events, window)) {
    const Money tax = tax_due(p.net_gain, schedule);
    t.lines.push_back({p.period, p.net_gain, tax});
    t.total_tax += tax;
  }
  return t;
}

}  // namespace realize
